#pragma once

#include "meadows/term.hpp"
#include "meadows/value.hpp"

namespace meadows {

// Evaluation in Q0: field arithmetic with 0^-1 = 0; s(_) by rational order.
// Complex nodes are rejected.
Rat eval_q0(const Term& t, const Assignment& a);

// Evaluation in C0 (Gaussian rationals). s(_) is rejected unless
// allow_sign is set, in which case s(z) = s(re(z)) (the Signs* reading).
GaussRat eval_c0(const Term& t, const Assignment& a, bool allow_sign = false);

// Totalized inverse in Z/nZ for squarefree n, componentwise under CRT.
ZmodVal zmod_inverse(long long n, const ZmodVal& x);

// Ring arithmetic mod squarefree n; sign and complex nodes rejected.
ZmodVal eval_zmod(long long n, const Term& t, const Assignment& a);

// Model selector for evaluation and deciding: q0, c0, or zmod:n.
struct Model {
  enum Kind { Q0, C0, Zmod } kind = Q0;
  long long n = 0;           // Zmod modulus
  bool complex_sign = false; // C0 with the Signs* sign

  Signature signature() const {
    switch (kind) {
      case Q0: return Signature::signed_meadow();
      case C0: return Signature::complex_meadow(complex_sign);
      case Zmod: return Signature::meadow();
    }
    return Signature::meadow();
  }
  bool ordered() const { return kind == Q0; }
  std::string to_string() const;
  static Model parse(const std::string& text);  // "q0" | "c0" | "zmod:<n>"
};

MeadowValue eval_in(const Model& m, const Term& t, const Assignment& a);

}  // namespace meadows
