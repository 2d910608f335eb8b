#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meadows/term.hpp"

namespace meadows {

struct Statement {
  Term lhs, rhs;
};

struct AxiomInstance {
  std::string name;  // scheme name for indexed families
  int index = -1;    // -1 for plain axioms
  Term lhs, rhs;

  std::string display() const {
    return index < 0 ? name : name + "_" + std::to_string(index);
  }
};

class TheoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A named selection of axiom sets. Plain axioms: CR (commutative rings),
// Md (meadows), Signs (S1-S6), CC (CC0-CC9), Signs* (S1-S3, S*4-S*8).
// Indexed schemes, materialized up to the scheme bound: C0 (n >= 1),
// EFR, AEFR, SSAV (n >= 0).
class Theory {
 public:
  // "Md", "Md+Signs", "Md+EFR", "Md+CC+SSAV", "Md+CC+Signs*", ...
  static Theory parse(const std::string& spec, int scheme_bound = 8);

  const std::string& name() const { return name_; }
  int scheme_bound() const { return bound_; }
  Signature signature() const { return sig_; }
  bool has_part(const std::string& part) const;

  // The axiom equation with the substitution applied to both sides.
  // Throws TheoryError for unknown names or indices out of bound.
  Statement instantiate(const std::string& axiom, std::optional<int> index,
                        const Subst& sub) const;

  // Statement of an axiom without substitution.
  const AxiomInstance& lookup(const std::string& axiom, std::optional<int> index) const;

  // Every axiom, schemes expanded up to the bound.
  const std::vector<AxiomInstance>& instances() const { return instances_; }

 private:
  std::string name_;
  std::vector<std::string> parts_;
  int bound_ = 8;
  Signature sig_;
  std::vector<AxiomInstance> instances_;
};

// The scheme statements are exposed for tests and the decision engine.
AxiomInstance efr_axiom(int n);
AxiomInstance aefr_axiom(int n);
AxiomInstance ssav_axiom(int n);
AxiomInstance c0_axiom(int n);

}  // namespace meadows
