#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "meadows/term.hpp"

namespace meadows {

// Monomial: variable -> exponent, no zero exponents.
using Monomial = std::map<std::string, unsigned>;

// Graded lexicographic: total degree first, then lexicographic on the
// variable/exponent sequence. Total and fixed, so polynomials print and
// compare deterministically.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial with integer coefficients. Two
// polynomials are equal iff structurally identical, and the arithmetic
// is exact, so the zero test decides ring equality of inverse-free terms
// over characteristic 0.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(long long c);
  explicit Polynomial(const mpz_class& c);
  static Polynomial variable(const std::string& name);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const mpz_class* constant_value() const;  // null unless constant

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  bool operator<(const Polynomial& o) const { return terms_ < o.terms_; }

  long long total_degree() const;
  VarSet variables() const;
  std::size_t term_count() const { return terms_.size(); }

  // Divides all coefficients by their content and makes the leading
  // (grlex-largest) coefficient positive. Zero stays zero. This changes
  // the value by a nonzero integer factor; see guard_key uses.
  Polynomial content_normalized() const;

  // Rebuilds a term: monomials in descending grlex order, negative
  // coefficients through negation, exponents >= 2 through powers.
  Term to_term() const;

  std::string to_string() const;

  const std::map<Monomial, mpz_class, GrlexLess>& terms() const { return terms_; }

 private:
  std::map<Monomial, mpz_class, GrlexLess> terms_;
};

// Canonical polynomial of an inverse-free, sign-free, complex-free term.
// Throws SignatureError on a disallowed node.
Polynomial canon_poly(const Term& t);

// As canon_poly, but sign/conj/i/re/im nodes are admitted as opaque
// atoms (fresh variables per distinct subterm). Used for guard and
// fraction canonicalization of SSMF components.
Polynomial canon_poly_atoms(const Term& t, std::map<Term, std::string>* atoms,
                            std::map<std::string, Term>* names);

}  // namespace meadows
