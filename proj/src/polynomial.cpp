#include "meadows/polynomial.hpp"

#include <sstream>

namespace meadows {

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  long long da = 0, db = 0;
  for (auto& [v, e] : a) da += e;
  for (auto& [v, e] : b) db += e;
  if (da != db) return da < db;
  // lexicographic on the ordered (var, exponent) sequence; earlier
  // variables with higher exponents rank higher
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first > ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.end() && ib != b.end();
}

Polynomial::Polynomial(long long c) {
  if (c != 0) terms_[{}] = c;
}

Polynomial::Polynomial(const mpz_class& c) {
  if (c != 0) terms_[{}] = c;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.terms_[{{name, 1}}] = 1;
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

const mpz_class* Polynomial::constant_value() const {
  static const mpz_class zero(0);
  if (terms_.empty()) return &zero;
  if (terms_.size() == 1 && terms_.begin()->first.empty())
    return &terms_.begin()->second;
  return nullptr;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (auto& [m, c] : o.terms_) {
    auto it = out.terms_.find(m);
    if (it == out.terms_.end()) {
      out.terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) {
      Monomial m = ma;
      for (auto& [v, e] : mb) m[v] += e;
      mpz_class c = ca * cb;
      auto it = out.terms_.find(m);
      if (it == out.terms_.end()) {
        out.terms_[std::move(m)] = c;
      } else {
        it->second += c;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  return out;
}

long long Polynomial::total_degree() const {
  long long d = 0;
  for (auto& [m, c] : terms_) {
    long long t = 0;
    for (auto& [v, e] : m) t += e;
    if (t > d) d = t;
  }
  return d;
}

VarSet Polynomial::variables() const {
  VarSet out;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m) out.insert(v);
  return out;
}

Polynomial Polynomial::content_normalized() const {
  if (terms_.empty()) return *this;
  mpz_class g = 0;
  for (auto& [m, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (terms_.rbegin()->second < 0) g = -g;
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c /= g;
  return out;
}

Term Polynomial::to_term() const {
  if (terms_.empty()) return Term::zero();
  auto mono_term = [](const Monomial& m, const mpz_class& coeff) {
    mpz_class c = abs(coeff);
    Term t;
    bool have = false;
    if (c != 1 || m.empty()) {
      if (!c.fits_slong_p())
        throw std::overflow_error("coefficient too large for a numeral");
      t = Term::numeral(c.get_si());
      have = true;
    }
    for (auto& [v, e] : m) {
      Term f = e == 1 ? Term::var(v) : Term::power(Term::var(v), e);
      t = have ? Term::mul(t, f) : f;
      have = true;
    }
    return t;
  };
  Term out;
  bool have = false;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Term m = mono_term(it->first, it->second);
    bool negative = it->second < 0;
    if (!have) {
      out = negative ? Term::neg(m) : m;
      have = true;
    } else {
      out = negative ? Term::sub(out, m) : Term::add(out, m);
    }
  }
  return out;
}

std::string Polynomial::to_string() const { return print(to_term()); }

Polynomial canon_poly(const Term& t) {
  switch (t.kind()) {
    case Kind::Zero: return Polynomial();
    case Kind::One: return Polynomial(1);
    case Kind::Var: return Polynomial::variable(t.var_name());
    case Kind::Neg: return -canon_poly(t.child(0));
    case Kind::Add: return canon_poly(t.child(0)) + canon_poly(t.child(1));
    case Kind::Sub: return canon_poly(t.child(0)) - canon_poly(t.child(1));
    case Kind::Mul: return canon_poly(t.child(0)) * canon_poly(t.child(1));
    case Kind::Numeral: return Polynomial(t.numeral_value());
    case Kind::Power: {
      if (t.exponent() < 0)
        throw SignatureError("negative power in polynomial fragment: " + print(t));
      Polynomial b = canon_poly(t.child(0));
      Polynomial out(1);
      for (long long j = 0; j < t.exponent(); j++) out = out * b;
      return out;
    }
    default:
      throw SignatureError("node outside polynomial fragment: " + print(t));
  }
}

Polynomial canon_poly_atoms(const Term& t, std::map<Term, std::string>* atoms,
                            std::map<std::string, Term>* names) {
  switch (t.kind()) {
    case Kind::Zero: return Polynomial();
    case Kind::One: return Polynomial(1);
    case Kind::Var: return Polynomial::variable(t.var_name());
    case Kind::Neg: return -canon_poly_atoms(t.child(0), atoms, names);
    case Kind::Sub:
      return canon_poly_atoms(t.child(0), atoms, names) -
             canon_poly_atoms(t.child(1), atoms, names);
    case Kind::Add:
      return canon_poly_atoms(t.child(0), atoms, names) +
             canon_poly_atoms(t.child(1), atoms, names);
    case Kind::Mul:
      return canon_poly_atoms(t.child(0), atoms, names) *
             canon_poly_atoms(t.child(1), atoms, names);
    case Kind::Numeral: return Polynomial(t.numeral_value());
    case Kind::Power: {
      if (t.exponent() < 0)
        throw SignatureError("negative power in polynomial fragment: " + print(t));
      Polynomial b = canon_poly_atoms(t.child(0), atoms, names);
      Polynomial out(1);
      for (long long j = 0; j < t.exponent(); j++) out = out * b;
      return out;
    }
    case Kind::Sign: {
      // canonicalize below the sign, then treat the whole node as an atom
      Polynomial inner = canon_poly_atoms(t.child(0), atoms, names);
      Term key = Term::sign(substitute(inner.to_term(), *names));
      auto it = atoms->find(key);
      std::string name;
      if (it == atoms->end()) {
        name = "#" + std::to_string(atoms->size());
        atoms->emplace(key, name);
        names->emplace(name, key);
      } else {
        name = it->second;
      }
      return Polynomial::variable(name);
    }
    default:
      throw SignatureError("node outside signed polynomial fragment: " + print(t));
  }
}

}  // namespace meadows
