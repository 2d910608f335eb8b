#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace meadows {

// Node kinds of the term language. The first block is the core meadow
// signature (0, 1, -, +, *, ^-1) with the sign / complex extensions;
// the second block holds derived operators that expand_derived removes.
enum class Kind : std::uint8_t {
  Zero,
  One,
  ImagUnit,
  Var,
  Neg,
  Add,
  Mul,
  Inv,
  Sign,
  Conj,
  // derived
  Sub,
  PseudoOne,   // one(t) = t * t^-1
  PseudoZero,  // zero(t) = 1 - one(t)
  Re,
  Im,
  Numeral,  // n(k)
  Power,    // t^k, constant integer exponent
};

class Term;
using VarSet = std::set<std::string>;
using Subst = std::map<std::string, Term>;

struct TermNode {
  Kind kind;
  std::string name;          // Var
  long long value = 0;       // Numeral (>= 0) or Power exponent
  std::vector<Term> kids;
  mutable std::size_t hash_cache = 0;
};

// Immutable term over the meadow signatures; cheap to copy and share.
class Term {
 public:
  Term() = default;

  Kind kind() const { return node_->kind; }
  const std::string& var_name() const { return node_->name; }
  long long numeral_value() const { return node_->value; }
  long long exponent() const { return node_->value; }
  std::size_t arity() const { return node_->kids.size(); }
  const Term& child(std::size_t i) const { return node_->kids[i]; }
  const std::vector<Term>& children() const { return node_->kids; }
  bool is(Kind k) const { return node_->kind == k; }
  bool valid() const { return node_ != nullptr; }

  std::size_t hash() const;
  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

  // Total structural order; used for deterministic printing and sorting.
  static int compare(const Term& a, const Term& b);
  bool operator<(const Term& o) const { return compare(*this, o) < 0; }

  const TermNode* raw() const { return node_.get(); }

  static Term zero();
  static Term one();
  static Term imag();
  static Term var(std::string name);
  static Term neg(Term t);
  static Term add(Term a, Term b);
  static Term mul(Term a, Term b);
  static Term inv(Term t);
  static Term sign(Term t);
  static Term conj(Term t);
  static Term sub(Term a, Term b);
  static Term pseudo_one(Term t);
  static Term pseudo_zero(Term t);
  static Term re(Term t);
  static Term im(Term t);
  static Term numeral(long long n);
  static Term power(Term base, long long exp);  // exp == -1 collapses to inv

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  static Term make(TermNode n);
  std::shared_ptr<const TermNode> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Which operators a term may use. The plain meadow signature admits
// 0, 1, -, +, *, ^-1 and variables; signed meadows add s(_); the complex
// signature adds i and conjugation, with s(_) only when the sign
// extension is switched on (Signs*-style theories).
struct Signature {
  enum Base { Meadow, SignedMeadow, ComplexMeadow };
  Base base = Meadow;
  bool complex_sign = false;  // admit s(_) on top of ComplexMeadow

  bool admits(Kind k) const;
  std::string name() const;

  static Signature meadow() { return {Meadow, false}; }
  static Signature signed_meadow() { return {SignedMeadow, false}; }
  static Signature complex_meadow(bool with_sign = false) {
    return {ComplexMeadow, with_sign};
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
  std::size_t position;
};

class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the term grammar:
//   term := sum ; sum := prod (("+"|"-") prod)* ; prod := unary ("*" unary)* ;
//   unary := "-" unary | atom postfix* ; postfix := "^-1" | "^" integer ;
//   atom := "0" | "1" | "i" | var | "s(" term ")" | "conj(" term ")"
//         | "one(" term ")" | "zero(" term ")" | "re(" term ")"
//         | "im(" term ")" | "n(" natural ")" | "(" term ")"
// Reserved heads (never variables): s, conj, one, zero, re, im, n, i.
Term parse(const std::string& text, const Signature& sig = Signature::complex_meadow(true));

std::string print(const Term& t);

// Rewrites derived operators into the core signature:
//   a - b        -> a + (-b)
//   one(t)       -> t * t^-1
//   zero(t)      -> 1 + (-(t * t^-1))
//   n(k)         -> ((1 + 1) + ...) left-nested
//   t^k          -> repeated product; negative k inverts the base first
//   re(t)        -> n(2)^-1 * (t + conj(t))
//   im(t)        -> -(i * n(2)^-1) * (t - conj(t))
// Complex-only operators are rejected under non-complex signatures.
Term expand_derived(const Term& t,
                    const Signature& sig = Signature::complex_meadow(true));

// Simultaneous substitution; variables not in the map stay fixed.
Term substitute(const Term& t, const Subst& m);

VarSet free_vars(const Term& t);

// Throws SignatureError if some node (after derived-operator expansion)
// is not admitted by sig.
void check_signature(const Term& t, const Signature& sig);

std::size_t term_size(const Term& t);

}  // namespace meadows
