#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meadows/eval.hpp"
#include "meadows/sampling.hpp"
#include "meadows/theory.hpp"

using namespace meadows;

namespace {

Assignment q(std::initializer_list<std::pair<std::string, Rat>> xs) {
  Assignment a;
  for (auto& [k, v] : xs) a[k] = v;
  return a;
}

}  // namespace

TEST_CASE("Q0 evaluation: totalized inverse and sign") {
  CHECK(eval_q0(parse("0^-1"), {}) == 0);
  CHECK(eval_q0(parse("s(n(2) - n(5))"), {}) == -1);
  CHECK(eval_q0(parse("one(x)", Signature::meadow()), q({{"x", Rat(3, 4)}})) == 1);
  CHECK(eval_q0(parse("one(x)", Signature::meadow()), q({{"x", Rat(0)}})) == 0);
  CHECK(eval_q0(parse("x^-1"), q({{"x", Rat(2, 3)}})) == Rat(3, 2));
  CHECK_THROWS_AS(eval_q0(parse("x"), {}), EvalError);
  CHECK_THROWS_AS(eval_q0(Term::imag(), {}), EvalError);
}

TEST_CASE("C0 evaluation: Gaussian rationals") {
  CHECK(eval_c0(parse("i*i"), {}) == GaussRat(Rat(-1)));
  CHECK(eval_c0(parse("conj(i)"), {}) == -GaussRat::i());
  Assignment a;
  a["x"] = GaussRat(Rat(1), Rat(1));  // 1 + i
  CHECK(eval_c0(parse("x * x^-1"), a) == GaussRat(Rat(1)));
  CHECK(eval_c0(parse("re(x)"), a) == GaussRat(Rat(1)));
  CHECK(eval_c0(parse("im(x)"), a) == GaussRat(Rat(1)));
  CHECK_THROWS_AS(eval_c0(parse("s(x)", Signature::complex_meadow(true)), a), EvalError);
  CHECK(eval_c0(parse("s(x)", Signature::complex_meadow(true)), a, true) ==
        GaussRat(Rat(1)));
}

TEST_CASE("zmod inverse by CRT") {
  CHECK(zmod_inverse(10, {10, 2}).residue == 8);
  CHECK(zmod_inverse(10, {10, 0}).residue == 0);
  CHECK(zmod_inverse(6, {6, 5}).residue == 5);
  CHECK_THROWS_AS(zmod_inverse(4, {4, 2}), EvalError);
  // x*x*y = x and involution, for every squarefree n up to 30
  for (long long n : {2, 3, 5, 6, 7, 10, 15, 21, 30}) {
    for (long long x = 0; x < n; x++) {
      long long y = zmod_inverse(n, {n, x}).residue;
      CHECK((x * x % n) * y % n == x % n);
      CHECK(zmod_inverse(n, {n, y}).residue == x);
    }
  }
  // brute-force uniqueness check for the spec examples
  for (auto [n, x, want] : std::vector<std::tuple<long long, long long, long long>>{
           {10, 2, 8}, {6, 5, 5}}) {
    std::vector<long long> candidates;
    for (long long y = 0; y < n; y++)
      if (x * x * y % n == x) candidates.push_back(y);
    // the meadow inverse is the unique candidate that is also an involution
    long long got = zmod_inverse(n, {n, x}).residue;
    CHECK(std::count(candidates.begin(), candidates.end(), got) == 1);
    CHECK(got == want);
  }
}

TEST_CASE("zmod evaluation") {
  CHECK(eval_zmod(10, parse("n(2)*n(5)"), {}).residue == 0);
  CHECK(eval_zmod(10, parse("one(n(2))", Signature::meadow()), {}).residue == 6);
  CHECK(eval_zmod(10, parse("0^-1"), {}).residue == 0);
  CHECK_THROWS_AS(eval_zmod(12, parse("x"), {}), EvalError);
}

TEST_CASE("value literals parse and print") {
  CHECK(rat_to_string(rat_parse("3/4")) == "3/4");
  CHECK(gauss_to_string(gauss_parse("1+2i")) == "1+2i");
  CHECK(gauss_to_string(gauss_parse("-i")) == "-i");
  CHECK(gauss_to_string(gauss_parse("3/4-1/2i")) == "3/4-1/2i");
  CHECK(gauss_to_string(gauss_parse("7")) == "7");
  CHECK(gauss_parse("i") == GaussRat::i());
}

TEST_CASE("every Md axiom holds in q0, c0 and zmod:10 on 200 samples") {
  Theory md = Theory::parse("Md");
  for (const Model& m : {Model::parse("q0"), Model::parse("c0"), Model::parse("zmod:10")}) {
    for (const AxiomInstance& ax : md.instances()) {
      std::vector<std::string> vars(free_vars(ax.lhs).begin(), free_vars(ax.lhs).end());
      for (auto& v : free_vars(ax.rhs))
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      SampleConfig cfg;
      cfg.seed = 99;
      cfg.magnitude = 1000;
      for (std::uint64_t k = 0; k < 200; k++) {
        Assignment a = sample_assignment(m, vars, cfg, k);
        CAPTURE(ax.name);
        CHECK(eval_in(m, ax.lhs, a) == eval_in(m, ax.rhs, a));
      }
    }
  }
}

TEST_CASE("IL holds in q0/c0 and fails in zmod:10") {
  SampleConfig cfg;
  cfg.seed = 5;
  Rng g(17);
  for (int k = 0; k < 200; k++) {
    Rat v = sample_rat(g, 100000);
    if (v == 0) continue;
    Assignment a;
    a["x"] = v;
    CHECK(eval_q0(parse("x * x^-1"), a) == 1);
    GaussRat z = sample_gauss(g, 100000);
    if (z.is_zero()) continue;
    Assignment b;
    b["x"] = z;
    CHECK(eval_c0(parse("x * x^-1"), b) == GaussRat(Rat(1)));
  }
  Assignment two;
  two["x"] = ZmodVal{10, 2};
  CHECK(eval_zmod(10, parse("x * x^-1"), two).residue != 1);
}

TEST_CASE("OF1-OF4 hold over ordered Q via s(y-x)=1") {
  Rng g(23);
  auto less = [](const Rat& x, const Rat& y) {
    Assignment a;
    a["u"] = x;
    a["v"] = y;
    return eval_q0(parse("s(v - u)"), a) == 1;
  };
  for (int k = 0; k < 200; k++) {
    Rat x = sample_rat(g, 1000), y = sample_rat(g, 1000), z = sample_rat(g, 1000);
    // OF1
    if (x != 0) CHECK((less(x, Rat(0)) || less(Rat(0), x)));
    // OF2
    if (less(x, y)) CHECK(!(less(y, x) || x == y));
    // OF3
    if (less(x, y)) CHECK(less(x + z, y + z));
    // OF4
    if (less(x, y) && less(Rat(0), z)) CHECK(less(x * z, y * z));
  }
}
