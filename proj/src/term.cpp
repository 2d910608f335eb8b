#include "meadows/term.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace meadows {

Term Term::make(TermNode n) {
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::zero() { return make({Kind::Zero}); }
Term Term::one() { return make({Kind::One}); }
Term Term::imag() { return make({Kind::ImagUnit}); }

Term Term::var(std::string name) {
  TermNode n{Kind::Var};
  n.name = std::move(name);
  return make(std::move(n));
}

Term Term::neg(Term t) {
  TermNode n{Kind::Neg};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::add(Term a, Term b) {
  TermNode n{Kind::Add};
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}
Term Term::mul(Term a, Term b) {
  TermNode n{Kind::Mul};
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}
Term Term::inv(Term t) {
  TermNode n{Kind::Inv};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::sign(Term t) {
  TermNode n{Kind::Sign};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::conj(Term t) {
  TermNode n{Kind::Conj};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::sub(Term a, Term b) {
  TermNode n{Kind::Sub};
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}
Term Term::pseudo_one(Term t) {
  TermNode n{Kind::PseudoOne};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::pseudo_zero(Term t) {
  TermNode n{Kind::PseudoZero};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::re(Term t) {
  TermNode n{Kind::Re};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::im(Term t) {
  TermNode n{Kind::Im};
  n.kids = {std::move(t)};
  return make(std::move(n));
}
Term Term::numeral(long long k) {
  if (k < 0) throw std::invalid_argument("numeral must be a natural number");
  TermNode n{Kind::Numeral};
  n.value = k;
  return make(std::move(n));
}
Term Term::power(Term base, long long exp) {
  if (exp == -1) return inv(std::move(base));  // the grammar spells x^-1 as inverse
  TermNode n{Kind::Power};
  n.value = exp;
  n.kids = {std::move(base)};
  return make(std::move(n));
}

std::size_t Term::hash() const {
  const TermNode* n = node_.get();
  if (n->hash_cache != 0) return n->hash_cache;
  std::size_t h = static_cast<std::size_t>(n->kind) * 0x9e3779b97f4a7c15ull + 1;
  h ^= std::hash<std::string>{}(n->name) + (h << 6);
  h ^= std::hash<long long>{}(n->value) + (h << 6) + (h >> 2);
  for (const Term& k : n->kids) h ^= k.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  if (h == 0) h = 1;
  n->hash_cache = h;
  return h;
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (hash() != o.hash()) return false;
  const TermNode* a = node_.get();
  const TermNode* b = o.node_.get();
  if (a->kind != b->kind || a->name != b->name || a->value != b->value ||
      a->kids.size() != b->kids.size())
    return false;
  for (std::size_t i = 0; i < a->kids.size(); i++)
    if (!(a->kids[i] == b->kids[i])) return false;
  return true;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.var_name().compare(b.var_name())) return c;
  if (a.node_->value != b.node_->value) return a.node_->value < b.node_->value ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); i++)
    if (int c = compare(a.child(i), b.child(i))) return c;
  return 0;
}

bool Signature::admits(Kind k) const {
  switch (k) {
    case Kind::Zero:
    case Kind::One:
    case Kind::Var:
    case Kind::Neg:
    case Kind::Add:
    case Kind::Mul:
    case Kind::Inv:
    case Kind::Sub:
    case Kind::PseudoOne:
    case Kind::PseudoZero:
    case Kind::Numeral:
    case Kind::Power:
      return true;
    case Kind::Sign:
      return base == SignedMeadow || (base == ComplexMeadow && complex_sign);
    case Kind::ImagUnit:
    case Kind::Conj:
    case Kind::Re:
    case Kind::Im:
      return base == ComplexMeadow;
  }
  return false;
}

std::string Signature::name() const {
  switch (base) {
    case Meadow: return "meadow";
    case SignedMeadow: return "signed-meadow";
    case ComplexMeadow: return complex_sign ? "complex-meadow+sign" : "complex-meadow";
  }
  return "?";
}

void check_signature(const Term& t, const Signature& sig) {
  if (!sig.admits(t.kind()))
    throw SignatureError("operator not in signature " + sig.name() + ": " + print(t));
  for (const Term& k : t.children()) check_signature(k, sig);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: 0 sum, 1 product, 2 unary minus, 3 postfix, 4 atom.
int level(const Term& t) {
  switch (t.kind()) {
    case Kind::Add:
    case Kind::Sub:
      return 0;
    case Kind::Mul:
      return 1;
    case Kind::Neg:
      return 2;
    case Kind::Inv:
    case Kind::Power:
      return 3;
    default:
      return 4;
  }
}

void emit(std::ostream& os, const Term& t, int min_level) {
  bool paren = level(t) < min_level;
  if (paren) os << '(';
  switch (t.kind()) {
    case Kind::Zero: os << '0'; break;
    case Kind::One: os << '1'; break;
    case Kind::ImagUnit: os << 'i'; break;
    case Kind::Var: os << t.var_name(); break;
    case Kind::Add:
      emit(os, t.child(0), 0);
      os << " + ";
      emit(os, t.child(1), 1);
      break;
    case Kind::Sub:
      emit(os, t.child(0), 0);
      os << " - ";
      emit(os, t.child(1), 1);
      break;
    case Kind::Mul:
      emit(os, t.child(0), 1);
      os << " * ";
      emit(os, t.child(1), 2);
      break;
    case Kind::Neg:
      os << '-';
      emit(os, t.child(0), 2);
      break;
    case Kind::Inv:
      emit(os, t.child(0), 4);
      os << "^-1";
      break;
    case Kind::Power:
      emit(os, t.child(0), 4);
      os << '^' << t.exponent();
      break;
    case Kind::Sign:
      os << "s(";
      emit(os, t.child(0), 0);
      os << ')';
      break;
    case Kind::Conj:
      os << "conj(";
      emit(os, t.child(0), 0);
      os << ')';
      break;
    case Kind::PseudoOne:
      os << "one(";
      emit(os, t.child(0), 0);
      os << ')';
      break;
    case Kind::PseudoZero:
      os << "zero(";
      emit(os, t.child(0), 0);
      os << ')';
      break;
    case Kind::Re:
      os << "re(";
      emit(os, t.child(0), 0);
      os << ')';
      break;
    case Kind::Im:
      os << "im(";
      emit(os, t.child(0), 0);
      os << ')';
      break;
    case Kind::Numeral:
      os << "n(" << t.numeral_value() << ')';
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string print(const Term& t) {
  std::ostringstream os;
  emit(os, t, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
  const std::string& s;
  const Signature& sig;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      pos++;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }

  Term head(Kind k, const char* name) {
    if (!sig.admits(k))
      throw ParseError(std::string(name) + " not admitted by signature " + sig.name(), pos);
    expect('(');
    Term t = sum();
    expect(')');
    switch (k) {
      case Kind::Sign: return Term::sign(t);
      case Kind::Conj: return Term::conj(t);
      case Kind::PseudoOne: return Term::pseudo_one(t);
      case Kind::PseudoZero: return Term::pseudo_zero(t);
      case Kind::Re: return Term::re(t);
      case Kind::Im: return Term::im(t);
      default: throw ParseError("internal head", pos);
    }
  }

  Term atom() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      pos++;
      Term t = sum();
      expect(')');
      return t;
    }
    if (c == '0') {
      pos++;
      return Term::zero();
    }
    if (c == '1') {
      pos++;
      return Term::one();
    }
    if (!std::islower(static_cast<unsigned char>(c)))
      throw ParseError("unexpected character", pos);
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::islower(static_cast<unsigned char>(s[pos])) ||
            std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      pos++;
    std::string word = s.substr(start, pos - start);
    if (word == "i") {
      if (!sig.admits(Kind::ImagUnit))
        throw ParseError("i not admitted by signature " + sig.name(), start);
      return Term::imag();
    }
    if (word == "s") return head(Kind::Sign, "s");
    if (word == "conj") return head(Kind::Conj, "conj");
    if (word == "one") return head(Kind::PseudoOne, "one");
    if (word == "zero") return head(Kind::PseudoZero, "zero");
    if (word == "re") return head(Kind::Re, "re");
    if (word == "im") return head(Kind::Im, "im");
    if (word == "n") {
      expect('(');
      skip();
      std::size_t d = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
      if (d == pos) throw ParseError("expected natural number", pos);
      long long v = std::stoll(s.substr(d, pos - d));
      expect(')');
      return Term::numeral(v);
    }
    return Term::var(word);
  }

  Term postfixes(Term t) {
    for (;;) {
      skip();
      if (pos < s.size() && s[pos] == '^') {
        pos++;
        skip();
        bool negexp = false;
        if (pos < s.size() && s[pos] == '-') {
          negexp = true;
          pos++;
        }
        std::size_t d = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
        if (d == pos) throw ParseError("expected integer exponent", pos);
        long long v = std::stoll(s.substr(d, pos - d));
        if (negexp) v = -v;
        t = Term::power(t, v);  // ^-1 lands on Term::inv
      } else {
        return t;
      }
    }
  }

  Term unary() {
    skip();
    if (pos < s.size() && s[pos] == '-') {
      pos++;
      return Term::neg(unary());
    }
    return postfixes(atom());
  }

  Term prod() {
    Term t = unary();
    while (eat('*')) t = Term::mul(t, unary());
    return t;
  }

  Term sum() {
    Term t = prod();
    for (;;) {
      skip();
      if (pos < s.size() && s[pos] == '+') {
        pos++;
        t = Term::add(t, prod());
      } else if (pos < s.size() && s[pos] == '-') {
        pos++;
        t = Term::sub(t, prod());
      } else {
        return t;
      }
    }
  }
};

}  // namespace

Term parse(const std::string& text, const Signature& sig) {
  Parser p{text, sig};
  Term t = p.sum();
  p.skip();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return t;
}

// ---------------------------------------------------------------------------
// Derived-operator expansion

namespace {

Term numeral_sum(long long k) {
  if (k == 0) return Term::zero();
  Term t = Term::one();
  for (long long j = 1; j < k; j++) t = Term::add(t, Term::one());
  return t;
}

Term repeated_product(const Term& base, long long k) {
  if (k == 0) return Term::one();
  Term t = base;
  for (long long j = 1; j < k; j++) t = Term::mul(t, base);
  return t;
}

Term expand(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Kind::Zero:
    case Kind::One:
    case Kind::Var:
      return t;
    case Kind::ImagUnit:
      if (!sig.admits(Kind::ImagUnit))
        throw SignatureError("i not admitted by signature " + sig.name());
      return t;
    case Kind::Neg:
      return Term::neg(expand(t.child(0), sig));
    case Kind::Add:
      return Term::add(expand(t.child(0), sig), expand(t.child(1), sig));
    case Kind::Mul:
      return Term::mul(expand(t.child(0), sig), expand(t.child(1), sig));
    case Kind::Inv:
      return Term::inv(expand(t.child(0), sig));
    case Kind::Sign:
      if (!sig.admits(Kind::Sign))
        throw SignatureError("s not admitted by signature " + sig.name());
      return Term::sign(expand(t.child(0), sig));
    case Kind::Conj:
      if (!sig.admits(Kind::Conj))
        throw SignatureError("conj not admitted by signature " + sig.name());
      return Term::conj(expand(t.child(0), sig));
    case Kind::Sub:
      return Term::add(expand(t.child(0), sig), Term::neg(expand(t.child(1), sig)));
    case Kind::PseudoOne: {
      Term a = expand(t.child(0), sig);
      return Term::mul(a, Term::inv(a));
    }
    case Kind::PseudoZero: {
      Term a = expand(t.child(0), sig);
      return Term::add(Term::one(), Term::neg(Term::mul(a, Term::inv(a))));
    }
    case Kind::Numeral:
      return numeral_sum(t.numeral_value());
    case Kind::Power: {
      Term base = expand(t.child(0), sig);
      long long k = t.exponent();
      if (k < 0) return repeated_product(Term::inv(base), -k);
      return repeated_product(base, k);
    }
    case Kind::Re: {
      if (sig.base != Signature::ComplexMeadow)
        throw SignatureError("re not admitted by signature " + sig.name());
      Term a = expand(t.child(0), sig);
      return Term::mul(Term::inv(numeral_sum(2)), Term::add(a, Term::conj(a)));
    }
    case Kind::Im: {
      if (sig.base != Signature::ComplexMeadow)
        throw SignatureError("im not admitted by signature " + sig.name());
      Term a = expand(t.child(0), sig);
      return Term::mul(
          Term::neg(Term::mul(Term::imag(), Term::inv(numeral_sum(2)))),
          Term::add(a, Term::neg(Term::conj(a))));
    }
  }
  throw SignatureError("unknown node");
}

}  // namespace

Term expand_derived(const Term& t, const Signature& sig) { return expand(t, sig); }

Term substitute(const Term& t, const Subst& m) {
  switch (t.kind()) {
    case Kind::Var: {
      auto it = m.find(t.var_name());
      return it == m.end() ? t : it->second;
    }
    case Kind::Zero:
    case Kind::One:
    case Kind::ImagUnit:
    case Kind::Numeral:
      return t;
    default: {
      std::vector<Term> kids;
      kids.reserve(t.arity());
      bool changed = false;
      for (const Term& k : t.children()) {
        Term nk = substitute(k, m);
        if (!(nk == k)) changed = true;
        kids.push_back(std::move(nk));
      }
      if (!changed) return t;
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
        default: throw std::logic_error("substitute: unexpected node");
      }
    }
  }
}

static void collect_vars(const Term& t, VarSet& out) {
  if (t.kind() == Kind::Var) {
    out.insert(t.var_name());
    return;
  }
  for (const Term& k : t.children()) collect_vars(k, out);
}

VarSet free_vars(const Term& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& k : t.children()) n += term_size(k);
  return n;
}

}  // namespace meadows
