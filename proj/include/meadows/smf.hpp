#pragma once

#include <memory>
#include <string>

#include "meadows/eval.hpp"
#include "meadows/polynomial.hpp"
#include "meadows/term.hpp"

namespace meadows {

// Level-0 building block of a standard meadow form: num * den^-1 with
// both components inverse-free.
struct Fraction {
  Term num;
  Term den;
};

struct SmfNode;

// Standard meadow form: a leaf fraction, or a guard 0_g * Z + 1_g * O.
// Nodes are immutable and shared, so equal subtrees cost one node.
class Smf {
 public:
  Smf() = default;

  static Smf leaf(Term num, Term den);
  static Smf guard(Term g, Smf zero_branch, Smf one_branch);

  bool is_leaf() const;
  const Fraction& fraction() const;
  const Term& guard_term() const;
  const Smf& zero_branch() const;
  const Smf& one_branch() const;
  bool valid() const { return node_ != nullptr; }

  int level() const;
  bool operator==(const Smf& o) const;
  bool operator!=(const Smf& o) const { return !(*this == o); }

  const SmfNode* raw() const { return node_.get(); }

 private:
  explicit Smf(std::shared_ptr<const SmfNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const SmfNode> node_;
};

// Applies the pseudo-constant rewrite rules to fixpoint:
//   0_t*0_t -> 0_t      0_{t^2} -> 0_t     0_t*t -> 0
//   0_s*0_{s+t} -> 0_s*0_t
//   1_t*1_t -> 1_t      1_{t^2} -> 1_t     1_t*t -> t
//   1_s*1_t -> 1_{s*t}
//   0_0 -> 1, 1_1 -> 1, 0_1 -> 0, 1_0 -> 0
// Terminating (size + pseudo-node count decreases) and value-preserving
// in every meadow.
Term pseudo_simplify(const Term& t);

// Standard meadow form of a plain meadow term; free variables are
// preserved and the denotation agrees with t in every meadow.
Smf to_smf(const Term& t);

// Signed variant over the signed meadow signature; sign pushes through
// guards and lands on level-0 leaves as s(num*den) * 1^-1.
Smf to_ssmf(const Term& t);

// Canonical form: fraction components and guards replaced by their
// canonical polynomial images, repeated guards pruned, guards with equal
// branches collapsed, levels re-padded. Deterministic.
Smf canon_smf(const Smf& f);

bool smf_is_wellformed(const Smf& f, bool allow_sign = false);
VarSet smf_free_vars(const Smf& f);

// Denotation as a term (may be exponentially larger than the shared form).
Term smf_to_term(const Smf& f);

// Evaluates the denotation directly on the shared structure.
MeadowValue eval_smf(const Model& m, const Smf& f, const Assignment& a);

// guard(t){Z | O} nesting, leaves frac(num, den), guards annotated with
// their level as a # comment.
std::string render_smf(const Smf& f);

}  // namespace meadows
