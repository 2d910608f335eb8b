#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meadows/sampling.hpp"
#include "meadows/term.hpp"

using namespace meadows;

TEST_CASE("parse/print round trips the spec examples") {
  Term t = parse("zero(x)*x", Signature::meadow());
  CHECK(t.kind() == Kind::Mul);
  CHECK(t.child(0).kind() == Kind::PseudoZero);
  CHECK(print(t) == "zero(x) * x");

  CHECK(parse("x^-1", Signature::meadow()) == Term::inv(Term::var("x")));
  CHECK(print(Term::pseudo_one(Term::var("x"))) == "one(x)");
  CHECK(print(Term::numeral(3)) == "n(3)");
  CHECK(print(Term::mul(Term::add(Term::var("x"), Term::var("y")),
                        Term::inv(Term::var("z")))) == "(x + y) * z^-1");
}

TEST_CASE("signature gates symbols") {
  CHECK_THROWS_AS(parse("s(x)", Signature::meadow()), ParseError);
  CHECK_NOTHROW(parse("s(x)", Signature::signed_meadow()));
  CHECK_THROWS_AS(parse("i", Signature::signed_meadow()), ParseError);
  CHECK_NOTHROW(parse("conj(i)", Signature::complex_meadow()));
  CHECK_THROWS_AS(parse("s(x)", Signature::complex_meadow()), ParseError);
  CHECK_NOTHROW(parse("s(re(x))", Signature::complex_meadow(true)));
}

TEST_CASE("grammar corner cases") {
  CHECK(parse("x^-2") == Term::power(Term::var("x"), -2));
  CHECK(parse("x^0") == Term::power(Term::var("x"), 0));
  CHECK(parse("-x*y") == Term::mul(Term::neg(Term::var("x")), Term::var("y")));
  CHECK(parse("a - b") == Term::sub(Term::var("a"), Term::var("b")));
  CHECK(parse("a + -b") == Term::add(Term::var("a"), Term::neg(Term::var("b"))));
  CHECK(parse("x_1 * ab2") ==
        Term::mul(Term::var("x_1"), Term::var("ab2")));
  CHECK_THROWS_AS(parse("x +"), ParseError);
  CHECK_THROWS_AS(parse("(x"), ParseError);
  CHECK_THROWS_AS(parse("n(x)"), ParseError);
}

TEST_CASE("expand_derived matches the defining equations") {
  Term x = Term::var("x");
  CHECK(expand_derived(Term::pseudo_one(x)) == Term::mul(x, Term::inv(x)));
  CHECK(expand_derived(Term::numeral(3)) ==
        Term::add(Term::add(Term::one(), Term::one()), Term::one()));
  CHECK(expand_derived(Term::numeral(0)) == Term::zero());
  CHECK(expand_derived(Term::power(x, 0)) == Term::one());
  CHECK(expand_derived(Term::power(x, 3)) == Term::mul(Term::mul(x, x), x));
  CHECK(expand_derived(Term::power(x, -2)) ==
        Term::mul(Term::inv(x), Term::inv(x)));

  Term re_x = expand_derived(Term::re(x));
  CHECK(re_x == Term::mul(Term::inv(Term::add(Term::one(), Term::one())),
                          Term::add(x, Term::conj(x))));
  CHECK_THROWS_AS(expand_derived(Term::re(x), Signature::meadow()), SignatureError);
  CHECK_THROWS_AS(expand_derived(Term::imag(), Signature::signed_meadow()),
                  SignatureError);
}

TEST_CASE("substitute is simultaneous") {
  Term x = Term::var("x");
  Term y = Term::var("y");
  CHECK(substitute(Term::add(x, y), {{"x", Term::zero()}}) ==
        Term::add(Term::zero(), y));
  // no re-substitution into the image
  CHECK(substitute(x, {{"x", Term::mul(x, x)}}) == Term::mul(x, x));
  // swap
  Term swapped = substitute(Term::add(x, y), {{"x", y}, {"y", x}});
  CHECK(swapped == Term::add(y, x));
}

TEST_CASE("free_vars") {
  CHECK(free_vars(parse("x + y^-1")) == VarSet{"x", "y"});
  CHECK(free_vars(Term::numeral(5)).empty());
  CHECK(free_vars(parse("one(x) * 0")) == VarSet{"x"});
}

TEST_CASE("round trip on random terms") {
  Rng g(42);
  TermGenConfig cfg;
  cfg.sig = Signature::complex_meadow(true);
  cfg.allow_derived = true;
  for (int k = 0; k < 500; k++) {
    Term t = sample_term(g, cfg);
    CAPTURE(print(t));
    CHECK(parse(print(t)) == t);
  }
}

TEST_CASE("expand_derived is idempotent and variable-preserving") {
  Rng g(7);
  TermGenConfig cfg;
  cfg.sig = Signature::complex_meadow(true);
  cfg.allow_derived = true;
  for (int k = 0; k < 500; k++) {
    Term t = sample_term(g, cfg);
    Term e = expand_derived(t);
    CHECK(expand_derived(e) == e);
    CHECK(free_vars(e) == free_vars(t));
  }
}

TEST_CASE("substitution distributes over constructors") {
  Rng g(11);
  TermGenConfig cfg;
  cfg.allow_derived = true;
  for (int k = 0; k < 200; k++) {
    Term a = sample_term(g, cfg);
    Term b = sample_term(g, cfg);
    Subst m{{"x", sample_term(g, cfg)}, {"y", sample_term(g, cfg)}};
    CHECK(substitute(Term::add(a, b), m) ==
          Term::add(substitute(a, m), substitute(b, m)));
    CHECK(substitute(Term::inv(a), m) == Term::inv(substitute(a, m)));
    CHECK(substitute(Term::pseudo_zero(a), m) ==
          Term::pseudo_zero(substitute(a, m)));
  }
}
