#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace meadows {

// Exact rational; mpq_class keeps gcd(|num|,den)=1 and den>0 canonical.
using Rat = mpq_class;

std::string rat_to_string(const Rat& q);
Rat rat_parse(const std::string& text);  // "3/4", "-2"
int rat_sign(const Rat& q);

// Gaussian rational a + b*i with componentwise canonical parts.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(Rat r) : re(std::move(r)), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }
  bool is_zero() const { return re == 0 && im == 0; }

  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat conj() const { return {re, -im}; }
  // Totalized: 0^-1 = 0, otherwise conj over the norm.
  GaussRat inverse() const {
    if (is_zero()) return {};
    Rat n = re * re + im * im;
    return {re / n, -im / n};
  }
  static GaussRat i() { return {Rat(0), Rat(1)}; }
};

std::string gauss_to_string(const GaussRat& z);
GaussRat gauss_parse(const std::string& text);  // "1+2i", "-i", "3/4-1/2i"

// Residue class modulo n, reduced to [0, n).
struct ZmodVal {
  long long modulus = 1;
  long long residue = 0;

  bool operator==(const ZmodVal& o) const {
    return modulus == o.modulus && residue == o.residue;
  }
  bool operator!=(const ZmodVal& o) const { return !(*this == o); }
};

using MeadowValue = std::variant<Rat, GaussRat, ZmodVal>;

std::string value_to_string(const MeadowValue& v);

// Total on the free variables of whatever term is being evaluated;
// all values must come from one model.
using Assignment = std::map<std::string, MeadowValue>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<long long> prime_factors(long long n);  // with multiplicity
bool is_squarefree(long long n);

}  // namespace meadows
