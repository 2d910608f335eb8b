#include "meadows/eval.hpp"

#include <sstream>

namespace meadows {

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Rat rat_parse(const std::string& text) {
  Rat q;
  if (q.set_str(text, 10) != 0) throw EvalError("bad rational literal: " + text);
  q.canonicalize();
  return q;
}

int rat_sign(const Rat& q) { return sgn(q); }

std::string gauss_to_string(const GaussRat& z) {
  if (z.im == 0) return rat_to_string(z.re);
  std::ostringstream os;
  std::string im;
  if (z.im == 1)
    im = "i";
  else if (z.im == -1)
    im = "-i";
  else
    im = rat_to_string(z.im) + "i";
  if (z.re == 0) return im;
  os << rat_to_string(z.re);
  if (im[0] != '-') os << '+';
  os << im;
  return os.str();
}

GaussRat gauss_parse(const std::string& text) {
  // <rat>, <rat>(+|-)<rat>?i, (+|-)?<rat>?i
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw EvalError("empty Gaussian literal");
  auto parse_imag = [](std::string body, bool negative) {
    if (body.empty()) body = "1";
    Rat q = rat_parse(body);
    return negative ? Rat(-q) : q;
  };
  if (s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    // split at the last top-level + or - that is not the leading sign
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        Rat re = rat_parse(body.substr(0, k));
        return {re, parse_imag(body.substr(k + 1), body[k] == '-')};
      }
    }
    bool neg = !body.empty() && body[0] == '-';
    if (neg || (!body.empty() && body[0] == '+')) body = body.substr(1);
    return {Rat(0), parse_imag(body, neg)};
  }
  return {rat_parse(s), Rat(0)};
}

std::string value_to_string(const MeadowValue& v) {
  if (auto q = std::get_if<Rat>(&v)) return rat_to_string(*q);
  if (auto z = std::get_if<GaussRat>(&v)) return gauss_to_string(*z);
  return std::to_string(std::get<ZmodVal>(v).residue);
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long p = 2; p * p <= n; p++)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_squarefree(long long n) {
  if (n < 1) return false;
  auto f = prime_factors(n);
  for (std::size_t i = 1; i < f.size(); i++)
    if (f[i] == f[i - 1]) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

const Rat& lookup_q(const Assignment& a, const std::string& v) {
  auto it = a.find(v);
  if (it == a.end()) throw EvalError("missing assignment for " + v);
  const Rat* q = std::get_if<Rat>(&it->second);
  if (!q) throw EvalError("assignment for " + v + " is not rational");
  return *q;
}

GaussRat lookup_c(const Assignment& a, const std::string& v) {
  auto it = a.find(v);
  if (it == a.end()) throw EvalError("missing assignment for " + v);
  if (const GaussRat* z = std::get_if<GaussRat>(&it->second)) return *z;
  if (const Rat* q = std::get_if<Rat>(&it->second)) return GaussRat(*q);
  throw EvalError("assignment for " + v + " is not Gaussian rational");
}

long long lookup_z(const Assignment& a, const std::string& v, long long n) {
  auto it = a.find(v);
  if (it == a.end()) throw EvalError("missing assignment for " + v);
  if (const ZmodVal* z = std::get_if<ZmodVal>(&it->second)) {
    if (z->modulus != n) throw EvalError("assignment modulus mismatch for " + v);
    return z->residue;
  }
  if (const Rat* q = std::get_if<Rat>(&it->second)) {
    if (q->get_den() != 1) throw EvalError("assignment for " + v + " is not a residue");
    mpz_class r = q->get_num() % n;
    if (r < 0) r += n;
    return r.get_si();
  }
  throw EvalError("assignment for " + v + " is not a residue");
}

Rat rat_pow(const Rat& base, long long k) {
  if (k < 0) {
    Rat b = base == 0 ? Rat(0) : Rat(1 / base);
    return rat_pow(b, -k);
  }
  Rat out(1);
  for (long long j = 0; j < k; j++) out *= base;
  return out;
}

long long modpow(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

Rat eval_q0(const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Kind::Zero: return 0;
    case Kind::One: return 1;
    case Kind::Var: return lookup_q(a, t.var_name());
    case Kind::Neg: return -eval_q0(t.child(0), a);
    case Kind::Add: return eval_q0(t.child(0), a) + eval_q0(t.child(1), a);
    case Kind::Sub: return eval_q0(t.child(0), a) - eval_q0(t.child(1), a);
    case Kind::Mul: return eval_q0(t.child(0), a) * eval_q0(t.child(1), a);
    case Kind::Inv: {
      Rat v = eval_q0(t.child(0), a);
      return v == 0 ? Rat(0) : Rat(1 / v);
    }
    case Kind::Sign: return rat_sign(eval_q0(t.child(0), a));
    case Kind::PseudoOne: {
      Rat v = eval_q0(t.child(0), a);
      return v == 0 ? Rat(0) : Rat(1);
    }
    case Kind::PseudoZero: {
      Rat v = eval_q0(t.child(0), a);
      return v == 0 ? Rat(1) : Rat(0);
    }
    case Kind::Numeral: return Rat(t.numeral_value());
    case Kind::Power: return rat_pow(eval_q0(t.child(0), a), t.exponent());
    case Kind::ImagUnit:
    case Kind::Conj:
    case Kind::Re:
    case Kind::Im:
      throw EvalError("complex operator in Q0 evaluation: " + print(t));
  }
  throw EvalError("unknown node");
}

GaussRat eval_c0(const Term& t, const Assignment& a, bool allow_sign) {
  switch (t.kind()) {
    case Kind::Zero: return {};
    case Kind::One: return {Rat(1)};
    case Kind::ImagUnit: return GaussRat::i();
    case Kind::Var: return lookup_c(a, t.var_name());
    case Kind::Neg: return -eval_c0(t.child(0), a, allow_sign);
    case Kind::Add:
      return eval_c0(t.child(0), a, allow_sign) + eval_c0(t.child(1), a, allow_sign);
    case Kind::Sub:
      return eval_c0(t.child(0), a, allow_sign) - eval_c0(t.child(1), a, allow_sign);
    case Kind::Mul:
      return eval_c0(t.child(0), a, allow_sign) * eval_c0(t.child(1), a, allow_sign);
    case Kind::Inv: return eval_c0(t.child(0), a, allow_sign).inverse();
    case Kind::Conj: return eval_c0(t.child(0), a, allow_sign).conj();
    case Kind::Sign: {
      if (!allow_sign)
        throw EvalError("sign in C0 evaluation without the Signs* extension");
      GaussRat z = eval_c0(t.child(0), a, allow_sign);
      return {Rat(rat_sign(z.re))};
    }
    case Kind::PseudoOne: {
      GaussRat z = eval_c0(t.child(0), a, allow_sign);
      return z.is_zero() ? GaussRat() : GaussRat(Rat(1));
    }
    case Kind::PseudoZero: {
      GaussRat z = eval_c0(t.child(0), a, allow_sign);
      return z.is_zero() ? GaussRat(Rat(1)) : GaussRat();
    }
    case Kind::Numeral: return {Rat(t.numeral_value())};
    case Kind::Power: {
      GaussRat b = eval_c0(t.child(0), a, allow_sign);
      long long k = t.exponent();
      if (k < 0) {
        b = b.inverse();
        k = -k;
      }
      GaussRat out{Rat(1)};
      for (long long j = 0; j < k; j++) out = out * b;
      return out;
    }
    case Kind::Re: {
      GaussRat z = eval_c0(t.child(0), a, allow_sign);
      return {z.re};
    }
    case Kind::Im: {
      GaussRat z = eval_c0(t.child(0), a, allow_sign);
      return {z.im};
    }
  }
  throw EvalError("unknown node");
}

namespace {

ZmodVal zmod_inverse_unchecked(long long n, const ZmodVal& x) {
  if (x.modulus != n) throw EvalError("modulus mismatch");
  // residue 0 -> 0 in each prime component, otherwise the field inverse;
  // recombine by CRT.
  long long result = 0;
  for (long long p : prime_factors(n)) {
    long long q = n / p;
    long long xp = x.residue % p;
    long long ip = xp == 0 ? 0 : modpow(xp, p - 2, p);
    // component contribution: value ip at prime p, 0 elsewhere
    long long e = modpow(q % p, p - 2, p);  // q^{-1} mod p, q coprime to p
    result = (result + ip * e % n * q) % n;
  }
  return {n, result};
}

}  // namespace

ZmodVal zmod_inverse(long long n, const ZmodVal& x) {
  if (!is_squarefree(n)) throw EvalError("modulus is not squarefree");
  return zmod_inverse_unchecked(n, x);
}

namespace {

ZmodVal zmod_inverse_unchecked(long long n, const ZmodVal& x);

ZmodVal eval_zmod_impl(long long n, const Term& t, const Assignment& a) {
  auto norm = [n](long long v) {
    v %= n;
    if (v < 0) v += n;
    return v;
  };
  switch (t.kind()) {
    case Kind::Zero: return {n, 0};
    case Kind::One: return {n, 1 % n};
    case Kind::Var: return {n, lookup_z(a, t.var_name(), n)};
    case Kind::Neg: return {n, norm(-eval_zmod_impl(n, t.child(0), a).residue)};
    case Kind::Add:
      return {n, norm(eval_zmod_impl(n, t.child(0), a).residue +
                      eval_zmod_impl(n, t.child(1), a).residue)};
    case Kind::Sub:
      return {n, norm(eval_zmod_impl(n, t.child(0), a).residue -
                      eval_zmod_impl(n, t.child(1), a).residue)};
    case Kind::Mul:
      return {n, norm(eval_zmod_impl(n, t.child(0), a).residue *
                      eval_zmod_impl(n, t.child(1), a).residue)};
    case Kind::Inv:
      return zmod_inverse_unchecked(n, eval_zmod_impl(n, t.child(0), a));
    case Kind::PseudoOne: {
      ZmodVal v = eval_zmod_impl(n, t.child(0), a);
      long long i = zmod_inverse_unchecked(n, v).residue;
      return {n, norm(v.residue * i)};
    }
    case Kind::PseudoZero: {
      ZmodVal v = eval_zmod_impl(n, t.child(0), a);
      long long i = zmod_inverse_unchecked(n, v).residue;
      return {n, norm(1 - v.residue * i % n)};
    }
    case Kind::Numeral: return {n, norm(t.numeral_value())};
    case Kind::Power: {
      ZmodVal b = eval_zmod_impl(n, t.child(0), a);
      long long k = t.exponent();
      if (k < 0) {
        b = zmod_inverse_unchecked(n, b);
        k = -k;
      }
      long long out = 1 % n;
      for (long long j = 0; j < k; j++) out = norm(out * b.residue);
      return {n, out};
    }
    case Kind::Sign:
      throw EvalError("sign operator in Z/nZ evaluation");
    case Kind::ImagUnit:
    case Kind::Conj:
    case Kind::Re:
    case Kind::Im:
      throw EvalError("complex operator in Z/nZ evaluation");
  }
  throw EvalError("unknown node");
}

}  // namespace

ZmodVal eval_zmod(long long n, const Term& t, const Assignment& a) {
  if (!is_squarefree(n)) throw EvalError("modulus is not squarefree");
  return eval_zmod_impl(n, t, a);
}

std::string Model::to_string() const {
  switch (kind) {
    case Q0: return "q0";
    case C0: return "c0";
    case Zmod: return "zmod:" + std::to_string(n);
  }
  return "?";
}

Model Model::parse(const std::string& text) {
  if (text == "q0") return {Q0, 0, false};
  if (text == "c0") return {C0, 0, false};
  if (text == "c0s") return {C0, 0, true};
  if (text.rfind("zmod:", 0) == 0) {
    long long n = std::stoll(text.substr(5));
    if (n < 1) throw EvalError("modulus must be positive");
    return {Zmod, n, false};
  }
  throw EvalError("unknown model: " + text);
}

MeadowValue eval_in(const Model& m, const Term& t, const Assignment& a) {
  switch (m.kind) {
    case Model::Q0: return eval_q0(t, a);
    case Model::C0: return eval_c0(t, a, m.complex_sign);
    case Model::Zmod: return eval_zmod(m.n, t, a);
  }
  throw EvalError("unknown model");
}

}  // namespace meadows
