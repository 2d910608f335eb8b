#include "meadows/smf.hpp"

#include <functional>
#include <sstream>
#include <unordered_map>

namespace meadows {

struct SmfNode {
  bool leaf;
  Fraction frac;      // leaf
  Term guard;         // inner
  Smf zero_branch, one_branch;
  int level = 0;
};

Smf Smf::leaf(Term num, Term den) {
  auto n = std::make_shared<SmfNode>();
  n->leaf = true;
  n->frac = {std::move(num), std::move(den)};
  n->level = 0;
  return Smf(std::move(n));
}

Smf Smf::guard(Term g, Smf zb, Smf ob) {
  auto n = std::make_shared<SmfNode>();
  n->leaf = false;
  n->guard = std::move(g);
  n->level = 1 + std::max(zb.level(), ob.level());
  n->zero_branch = std::move(zb);
  n->one_branch = std::move(ob);
  return Smf(std::move(n));
}

bool Smf::is_leaf() const { return node_->leaf; }
const Fraction& Smf::fraction() const { return node_->frac; }
const Term& Smf::guard_term() const { return node_->guard; }
const Smf& Smf::zero_branch() const { return node_->zero_branch; }
const Smf& Smf::one_branch() const { return node_->one_branch; }
int Smf::level() const { return node_->level; }

bool Smf::operator==(const Smf& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->leaf != o.node_->leaf || node_->level != o.node_->level) return false;
  if (node_->leaf)
    return node_->frac.num == o.node_->frac.num && node_->frac.den == o.node_->frac.den;
  return node_->guard == o.node_->guard && node_->zero_branch == o.node_->zero_branch &&
         node_->one_branch == o.node_->one_branch;
}

// ---------------------------------------------------------------------------
// pseudo_simplify

namespace {

bool ring_zero_const(const Term& t) {
  return t.is(Kind::Zero) || (t.is(Kind::Numeral) && t.numeral_value() == 0);
}
bool ring_one_const(const Term& t) {
  return t.is(Kind::One) || (t.is(Kind::Numeral) && t.numeral_value() == 1);
}

// square root of t when t is syntactically a square: u*u, u^2, u^{2k}
bool square_root_of(const Term& t, Term& out) {
  if (t.is(Kind::Mul) && t.child(0) == t.child(1)) {
    out = t.child(0);
    return true;
  }
  if (t.is(Kind::Power) && t.exponent() >= 2 && t.exponent() % 2 == 0) {
    long long h = t.exponent() / 2;
    out = h == 1 ? t.child(0) : Term::power(t.child(0), h);
    return true;
  }
  return false;
}

Term simp(const Term& t);

// one rewrite attempt at the root; returns invalid Term when none applies
Term root_rule(const Term& t) {
  Term inv;
  switch (t.kind()) {
    case Kind::PseudoZero: {
      const Term& a = t.child(0);
      if (ring_zero_const(a)) return Term::one();
      if (ring_one_const(a)) return Term::zero();
      Term r;
      if (square_root_of(a, r)) return Term::pseudo_zero(r);
      return inv;
    }
    case Kind::PseudoOne: {
      const Term& a = t.child(0);
      if (ring_zero_const(a)) return Term::zero();
      if (ring_one_const(a)) return Term::one();
      Term r;
      if (square_root_of(a, r)) return Term::pseudo_one(r);
      return inv;
    }
    case Kind::Mul: {
      const Term& x = t.child(0);
      const Term& y = t.child(1);
      auto pair_rule = [](const Term& a, const Term& b) -> Term {
        Term inv;
        if (a.is(Kind::PseudoZero)) {
          if (b.is(Kind::PseudoZero)) {
            if (a.child(0) == b.child(0)) return a;  // PC1
            // PC4: 0_s * 0_{s+t} -> 0_s * 0_t
            const Term& s = a.child(0);
            const Term& sum = b.child(0);
            if (sum.is(Kind::Add)) {
              if (sum.child(0) == s)
                return Term::mul(a, Term::pseudo_zero(sum.child(1)));
              if (sum.child(1) == s)
                return Term::mul(a, Term::pseudo_zero(sum.child(0)));
            }
            return inv;
          }
          if (a.child(0) == b) return Term::zero();  // PC3
          return inv;
        }
        if (a.is(Kind::PseudoOne)) {
          if (b.is(Kind::PseudoOne)) {
            if (a.child(0) == b.child(0)) return a;  // PC5
            return Term::pseudo_one(Term::mul(a.child(0), b.child(0)));  // PC8
          }
          if (a.child(0) == b) return b;  // PC7
          return inv;
        }
        return inv;
      };
      Term r = pair_rule(x, y);
      if (r.valid()) return r;
      return pair_rule(y, x);
    }
    default:
      return inv;
  }
}

Term rebuild(const Term& t, std::vector<Term> kids) {
  switch (t.kind()) {
    case Kind::Neg: return Term::neg(kids[0]);
    case Kind::Add: return Term::add(kids[0], kids[1]);
    case Kind::Mul: return Term::mul(kids[0], kids[1]);
    case Kind::Inv: return Term::inv(kids[0]);
    case Kind::Sign: return Term::sign(kids[0]);
    case Kind::Conj: return Term::conj(kids[0]);
    case Kind::Sub: return Term::sub(kids[0], kids[1]);
    case Kind::PseudoOne: return Term::pseudo_one(kids[0]);
    case Kind::PseudoZero: return Term::pseudo_zero(kids[0]);
    case Kind::Re: return Term::re(kids[0]);
    case Kind::Im: return Term::im(kids[0]);
    case Kind::Power: return Term::power(kids[0], t.exponent());
    default: return t;
  }
}

Term simp(const Term& t) {
  Term cur = t;
  if (cur.arity() > 0) {
    std::vector<Term> kids;
    kids.reserve(cur.arity());
    bool changed = false;
    for (const Term& k : cur.children()) {
      Term nk = simp(k);
      if (!(nk == k)) changed = true;
      kids.push_back(std::move(nk));
    }
    if (changed) cur = rebuild(cur, std::move(kids));
  }
  for (;;) {
    Term r = root_rule(cur);
    if (!r.valid()) return cur;
    cur = simp(r);
  }
}

}  // namespace

Term pseudo_simplify(const Term& t) { return simp(t); }

// ---------------------------------------------------------------------------
// SMF construction
//
// All combinators below are equalities derivable from Md alone, so they
// hold in every meadow, including ones with proper zero divisors where
// 0_g and 1_g are not {0,1}-valued. The load-bearing identities:
//   (0_g + 1_g) = 1                          guard merging for + and *
//   0_b * (a * b^-1) = 0                     dropping a fraction under 0_b
//   1_b * 1_d * (a/b + c/d) = 1_b * 1_d * (ad+cb)/(bd)
//   (a * b^-1)^-1 = (b*b) * (a*b)^-1         leaf inverse, no guard needed
//   s(a * b^-1) = s(a*b) * 1^-1              leaf sign (S4, S5)

namespace {

// Guard identity: canonical polynomial, sign-normalized (0_{-t} = 0_t is
// Md-derivable). Only syntactic ring equality is used, so merging two
// guards with the same key is sound in every meadow.
Term guard_key(const Term& g, bool with_sign) {
  Polynomial p;
  Subst names;
  if (with_sign) {
    std::map<Term, std::string> atoms;
    p = canon_poly_atoms(g, &atoms, &names);
  } else {
    p = canon_poly(g);
  }
  if (!p.terms().empty() && p.terms().rbegin()->second < 0) p = -p;
  Term t = p.to_term();
  return names.empty() ? t : substitute(t, names);
}

struct Builder {
  bool with_sign;
  std::map<Term, bool> ctx;  // guard key -> pinned branch

  Smf leaf0(Term n) { return Smf::leaf(std::move(n), Term::one()); }

  // constant-guard knowledge that is sound in every meadow: 1_1 = 1_{-1} = 1
  // and 1_0 = 0 are Md-derivable, but 1_c for other constants is model-
  // dependent (1_2 = 6 in Z/10Z), so those stay as real guards.
  int known(const Term& g, const Term& key) {
    if (auto c = canon_poly_is_const(key)) {
      if (*c == 0) return 0;
      if (*c == 1 || *c == -1) return 1;
    }
    auto it = ctx.find(key);
    if (it != ctx.end()) return it->second ? 1 : 0;
    return -1;
  }

  static std::optional<long long> canon_poly_is_const(const Term& key) {
    // keys come from Polynomial::to_term, so constants are literal
    if (key.is(Kind::Zero)) return 0;
    if (key.is(Kind::One)) return 1;
    if (key.is(Kind::Numeral)) return key.numeral_value();
    if (key.is(Kind::Neg) && key.child(0).is(Kind::Numeral))
      return -key.child(0).numeral_value();
    return std::nullopt;
  }

  template <class FZ, class FO>
  Smf with_guard(const Term& g, FZ fz, FO fo) {
    Term key = guard_key(g, with_sign);
    int k = known(g, key);
    if (k == 0) return fz();
    if (k == 1) return fo();
    ctx[key] = false;
    Smf zb = fz();
    ctx[key] = true;
    Smf ob = fo();
    ctx.erase(key);
    if (zb == ob) return zb;
    return Smf::guard(g, std::move(zb), std::move(ob));
  }

  Smf map_leaves(const Smf& f, const std::function<Smf(const Fraction&)>& fn) {
    if (f.is_leaf()) return fn(f.fraction());
    return with_guard(
        f.guard_term(), [&] { return map_leaves(f.zero_branch(), fn); },
        [&] { return map_leaves(f.one_branch(), fn); });
  }

  bool den_is_one(const Term& d) { return d.is(Kind::One); }

  Smf add_leaf(const Fraction& f1, const Fraction& f2) {
    const Term &a = f1.num, &b = f1.den, &c = f2.num, &d = f2.den;
    auto full = [&] {
      return leafS(Term::add(Term::mul(a, d), Term::mul(c, b)), Term::mul(b, d));
    };
    if (den_is_one(b) && den_is_one(d)) return Smf::leaf(Term::add(a, c), b);
    if (den_is_one(b)) {
      // a/1 + c/d: guard only on d
      return with_guard(
          d, [&] { return Smf::leaf(a, b); },
          [&] { return leafS(Term::add(Term::mul(a, d), c), d); });
    }
    if (den_is_one(d)) {
      return with_guard(
          b, [&] { return Smf::leaf(c, d); },
          [&] { return leafS(Term::add(a, Term::mul(c, b)), b); });
    }
    return with_guard(
        b, [&] { return Smf::leaf(c, d); },
        [&] {
          return with_guard(
              d, [&] { return Smf::leaf(a, b); }, full);
        });
  }

  // leaf constructor that drops fractions with a provably-zero denominator
  // (a * 0^-1 = 0; any lost variables are restored at the top)
  Smf leafS(Term n, Term d) {
    Term key = guard_key(d, with_sign);
    if (auto c = canon_poly_is_const(key); c && *c == 0)
      return leaf0(Term::zero());
    return Smf::leaf(std::move(n), std::move(d));
  }

  Smf add(const Smf& x, const Smf& y) {
    if (!x.is_leaf())
      return with_guard(
          x.guard_term(), [&] { return add(x.zero_branch(), y); },
          [&] { return add(x.one_branch(), y); });
    if (!y.is_leaf())
      return with_guard(
          y.guard_term(), [&] { return add(x, y.zero_branch()); },
          [&] { return add(x, y.one_branch()); });
    return add_leaf(x.fraction(), y.fraction());
  }

  Smf mul(const Smf& x, const Smf& y) {
    if (!x.is_leaf())
      return with_guard(
          x.guard_term(), [&] { return mul(x.zero_branch(), y); },
          [&] { return mul(x.one_branch(), y); });
    if (!y.is_leaf())
      return with_guard(
          y.guard_term(), [&] { return mul(x, y.zero_branch()); },
          [&] { return mul(x, y.one_branch()); });
    const Fraction &f1 = x.fraction(), &f2 = y.fraction();
    Term num = Term::mul(f1.num, f2.num);
    Term den = den_is_one(f1.den)   ? f2.den
               : den_is_one(f2.den) ? f1.den
                                    : Term::mul(f1.den, f2.den);
    return Smf::leaf(std::move(num), std::move(den));
  }

  Smf negate(const Smf& f) {
    return map_leaves(
        f, [&](const Fraction& fr) { return Smf::leaf(Term::neg(fr.num), fr.den); });
  }

  Smf invert(const Smf& f) {
    return map_leaves(f, [&](const Fraction& fr) {
      if (den_is_one(fr.den)) return Smf::leaf(Term::one(), fr.num);
      // (a*b^-1)^-1 = (b*b) * (a*b)^-1 in every meadow
      return Smf::leaf(Term::mul(fr.den, fr.den), Term::mul(fr.num, fr.den));
    });
  }

  Smf signum(const Smf& f) {
    return map_leaves(f, [&](const Fraction& fr) {
      Term body = den_is_one(fr.den) ? fr.num : Term::mul(fr.num, fr.den);
      return leaf0(Term::sign(body));
    });
  }

  Smf build(const Term& t) {
    switch (t.kind()) {
      case Kind::Zero:
      case Kind::One:
      case Kind::Var:
        return leaf0(t);
      case Kind::Neg: return negate(build(t.child(0)));
      case Kind::Add: {
        Smf x = build(t.child(0));
        Smf y = build(t.child(1));
        return add(x, y);
      }
      case Kind::Mul: {
        Smf x = build(t.child(0));
        Smf y = build(t.child(1));
        return mul(x, y);
      }
      case Kind::Inv: return invert(build(t.child(0)));
      case Kind::Sign:
        if (!with_sign) throw SignatureError("sign under plain meadow signature");
        return signum(build(t.child(0)));
      default:
        throw SignatureError("node outside the meadow signature: " + print(t));
    }
  }
};

Smf pad_to(const Smf& f, int target) {
  Smf out = f;
  while (out.level() < target) out = Smf::guard(Term::one(), out, out);
  return out;
}

Smf pad(const Smf& f) {
  if (f.is_leaf()) return f;
  Smf zb = pad(f.zero_branch());
  Smf ob = pad(f.one_branch());
  int m = std::max(zb.level(), ob.level());
  return Smf::guard(f.guard_term(), pad_to(zb, m), pad_to(ob, m));
}

// Guard pruning may drop a variable entirely (x - x collapses, canon-zero
// denominators drop numerators). 0_v*P + 1_v*P = P, so a guard on the
// missing variable with equal branches restores it without changing the
// denotation.
Smf restore_vars(const Term& input, Smf s) {
  VarSet have = smf_free_vars(s);
  for (const std::string& v : free_vars(input))
    if (!have.count(v)) s = Smf::guard(Term::var(v), s, s);
  return s;
}

}  // namespace

Smf to_smf(const Term& t) {
  Term core = expand_derived(t, Signature::meadow());
  Builder b{false, {}};
  return pad(restore_vars(t, b.build(core)));
}

Smf to_ssmf(const Term& t) {
  Term core = expand_derived(t, Signature::signed_meadow());
  Builder b{true, {}};
  return pad(restore_vars(t, b.build(core)));
}

// ---------------------------------------------------------------------------
// canonicalization

namespace {

Term canon_component(const Term& t, bool with_sign) {
  if (!with_sign) return canon_poly(t).to_term();
  std::map<Term, std::string> atoms;
  Subst names;
  Polynomial p = canon_poly_atoms(t, &atoms, &names);
  Term out = p.to_term();
  return names.empty() ? out : substitute(out, names);
}

Smf canon_rec(const Smf& f, bool with_sign, std::map<Term, bool>& ctx) {
  if (f.is_leaf()) {
    return Smf::leaf(canon_component(f.fraction().num, with_sign),
                     canon_component(f.fraction().den, with_sign));
  }
  Term key = guard_key(f.guard_term(), with_sign);
  if (auto c = Builder::canon_poly_is_const(key)) {
    if (*c == 0) return canon_rec(f.zero_branch(), with_sign, ctx);
    if (*c == 1 || *c == -1) return canon_rec(f.one_branch(), with_sign, ctx);
  }
  auto it = ctx.find(key);
  if (it != ctx.end())
    return canon_rec(it->second ? f.one_branch() : f.zero_branch(), with_sign, ctx);
  ctx[key] = false;
  Smf zb = canon_rec(f.zero_branch(), with_sign, ctx);
  ctx[key] = true;
  Smf ob = canon_rec(f.one_branch(), with_sign, ctx);
  ctx.erase(key);
  if (zb == ob) return zb;
  return Smf::guard(key, std::move(zb), std::move(ob));
}

bool smf_has_sign(const Smf& f) {
  auto has_sign = [](const Term& t) {
    std::function<bool(const Term&)> rec = [&](const Term& u) {
      if (u.is(Kind::Sign)) return true;
      for (const Term& k : u.children())
        if (rec(k)) return true;
      return false;
    };
    return rec(t);
  };
  if (f.is_leaf()) return has_sign(f.fraction().num) || has_sign(f.fraction().den);
  return has_sign(f.guard_term()) || smf_has_sign(f.zero_branch()) ||
         smf_has_sign(f.one_branch());
}

}  // namespace

Smf canon_smf(const Smf& f) {
  bool with_sign = smf_has_sign(f);
  std::map<Term, bool> ctx;
  return pad(canon_rec(f, with_sign, ctx));
}

// ---------------------------------------------------------------------------

namespace {

bool component_ok(const Term& t, bool allow_sign) {
  if (t.is(Kind::Inv) || t.is(Kind::ImagUnit) || t.is(Kind::Conj) || t.is(Kind::Re) ||
      t.is(Kind::Im) || t.is(Kind::PseudoOne) || t.is(Kind::PseudoZero))
    return false;
  if (t.is(Kind::Power) && t.exponent() < 0) return false;
  if (t.is(Kind::Sign) && !allow_sign) return false;
  for (const Term& k : t.children())
    if (!component_ok(k, allow_sign)) return false;
  return true;
}

}  // namespace

bool smf_is_wellformed(const Smf& f, bool allow_sign) {
  if (f.is_leaf())
    return component_ok(f.fraction().num, allow_sign) &&
           component_ok(f.fraction().den, allow_sign);
  return component_ok(f.guard_term(), allow_sign) &&
         f.zero_branch().level() == f.one_branch().level() &&
         smf_is_wellformed(f.zero_branch(), allow_sign) &&
         smf_is_wellformed(f.one_branch(), allow_sign);
}

VarSet smf_free_vars(const Smf& f) {
  VarSet out;
  std::function<void(const Smf&)> rec = [&](const Smf& s) {
    if (s.is_leaf()) {
      for (auto& v : free_vars(s.fraction().num)) out.insert(v);
      for (auto& v : free_vars(s.fraction().den)) out.insert(v);
      return;
    }
    for (auto& v : free_vars(s.guard_term())) out.insert(v);
    rec(s.zero_branch());
    rec(s.one_branch());
  };
  rec(f);
  return out;
}

Term smf_to_term(const Smf& f) {
  if (f.is_leaf()) return Term::mul(f.fraction().num, Term::inv(f.fraction().den));
  return Term::add(
      Term::mul(Term::pseudo_zero(f.guard_term()), smf_to_term(f.zero_branch())),
      Term::mul(Term::pseudo_one(f.guard_term()), smf_to_term(f.one_branch())));
}

namespace {

template <class V, class Ops>
V eval_smf_rec(const Smf& f, const Ops& ops,
               std::unordered_map<const SmfNode*, V>& memo) {
  auto it = memo.find(f.raw());
  if (it != memo.end()) return it->second;
  V out;
  if (f.is_leaf()) {
    out = ops.mul(ops.term(f.fraction().num), ops.inverse(ops.term(f.fraction().den)));
  } else {
    V g = ops.term(f.guard_term());
    V og = ops.mul(g, ops.inverse(g));               // 1_g
    V zg = ops.sub(ops.one(), og);                   // 0_g
    out = ops.add(ops.mul(zg, eval_smf_rec(f.zero_branch(), ops, memo)),
                  ops.mul(og, eval_smf_rec(f.one_branch(), ops, memo)));
  }
  memo.emplace(f.raw(), out);
  return out;
}

}  // namespace

MeadowValue eval_smf(const Model& m, const Smf& f, const Assignment& a) {
  switch (m.kind) {
    case Model::Q0: {
      struct {
        const Assignment& a;
        Rat term(const Term& t) const { return eval_q0(t, a); }
        Rat mul(const Rat& x, const Rat& y) const { return x * y; }
        Rat add(const Rat& x, const Rat& y) const { return x + y; }
        Rat sub(const Rat& x, const Rat& y) const { return x - y; }
        Rat inverse(const Rat& x) const { return x == 0 ? Rat(0) : Rat(1 / x); }
        Rat one() const { return 1; }
      } ops{a};
      std::unordered_map<const SmfNode*, Rat> memo;
      return eval_smf_rec(f, ops, memo);
    }
    case Model::C0: {
      struct {
        const Assignment& a;
        bool s;
        GaussRat term(const Term& t) const { return eval_c0(t, a, s); }
        GaussRat mul(const GaussRat& x, const GaussRat& y) const { return x * y; }
        GaussRat add(const GaussRat& x, const GaussRat& y) const { return x + y; }
        GaussRat sub(const GaussRat& x, const GaussRat& y) const { return x - y; }
        GaussRat inverse(const GaussRat& x) const { return x.inverse(); }
        GaussRat one() const { return GaussRat(Rat(1)); }
      } ops{a, m.complex_sign};
      std::unordered_map<const SmfNode*, GaussRat> memo;
      return eval_smf_rec(f, ops, memo);
    }
    case Model::Zmod: {
      struct {
        const Assignment& a;
        long long n;
        long long norm(long long v) const {
          v %= n;
          return v < 0 ? v + n : v;
        }
        ZmodVal term(const Term& t) const { return eval_zmod(n, t, a); }
        ZmodVal mul(const ZmodVal& x, const ZmodVal& y) const {
          return {n, norm(x.residue * y.residue)};
        }
        ZmodVal add(const ZmodVal& x, const ZmodVal& y) const {
          return {n, norm(x.residue + y.residue)};
        }
        ZmodVal sub(const ZmodVal& x, const ZmodVal& y) const {
          return {n, norm(x.residue - y.residue)};
        }
        ZmodVal inverse(const ZmodVal& x) const { return zmod_inverse(n, x); }
        ZmodVal one() const { return {n, 1 % n}; }
      } ops{a, m.n};
      std::unordered_map<const SmfNode*, ZmodVal> memo;
      return eval_smf_rec(f, ops, memo);
    }
  }
  throw EvalError("unknown model");
}

namespace {

void render_rec(const Smf& f, std::ostringstream& os, int indent) {
  std::string pad(indent, ' ');
  if (f.is_leaf()) {
    os << pad << "frac(" << print(f.fraction().num) << ", " << print(f.fraction().den)
       << ")";
    return;
  }
  os << pad << "guard(" << print(f.guard_term()) << "){  # level " << f.level() << "\n";
  render_rec(f.zero_branch(), os, indent + 2);
  os << "\n" << pad << "|\n";
  render_rec(f.one_branch(), os, indent + 2);
  os << "\n" << pad << "}";
}

}  // namespace

std::string render_smf(const Smf& f) {
  std::ostringstream os;
  render_rec(f, os, 0);
  return os.str();
}

}  // namespace meadows
