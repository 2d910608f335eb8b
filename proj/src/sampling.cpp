#include "meadows/sampling.hpp"

#include <functional>

namespace meadows {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  Rng g(seed ^ (stream * 0x9e3779b97f4a7c15ull) ^ (index * 0xd1b54a32d192ed03ull));
  g.next();
  return g.next();
}

Rat sample_rat(Rng& g, long long magnitude) {
  long long num = g.range(-magnitude, magnitude);
  long long den = g.range(1, magnitude);
  Rat q(num, den);
  q.canonicalize();
  return q;
}

GaussRat sample_gauss(Rng& g, long long magnitude) {
  Rat re = sample_rat(g, magnitude);
  Rat im = sample_rat(g, magnitude);
  return {re, im};
}

namespace {

const Rat kStructuredQ[] = {Rat(0), Rat(1), Rat(-1)};

GaussRat structured_c(std::size_t i) {
  switch (i) {
    case 0: return {};
    case 1: return {Rat(1)};
    case 2: return {Rat(-1)};
    case 3: return GaussRat::i();
    default: return -GaussRat::i();
  }
}

std::size_t structured_base(const Model& m) {
  switch (m.kind) {
    case Model::Q0: return 3;
    case Model::C0: return 5;
    case Model::Zmod: return static_cast<std::size_t>(m.n) < 5 ? m.n : 0;
  }
  return 0;
}

}  // namespace

std::size_t structured_count(const Model& m, std::size_t nvars) {
  std::size_t base = structured_base(m);
  if (base == 0 || nvars > 3) return 0;
  std::size_t total = 1;
  for (std::size_t i = 0; i < nvars; i++) total *= base;
  return total;
}

Assignment sample_assignment(const Model& m, const std::vector<std::string>& vars,
                             const SampleConfig& cfg, std::uint64_t index) {
  Assignment a;
  std::size_t structured = structured_count(m, vars.size());
  if (index < structured) {
    std::size_t base = structured_base(m);
    std::size_t code = index;
    for (const std::string& v : vars) {
      std::size_t digit = code % base;
      code /= base;
      switch (m.kind) {
        case Model::Q0: a[v] = kStructuredQ[digit]; break;
        case Model::C0: a[v] = structured_c(digit); break;
        case Model::Zmod: a[v] = ZmodVal{m.n, static_cast<long long>(digit)}; break;
      }
    }
    return a;
  }
  Rng g(derive_seed(cfg.seed, 0x5a5a, index));
  for (const std::string& v : vars) {
    switch (m.kind) {
      case Model::Q0: a[v] = sample_rat(g, cfg.magnitude); break;
      case Model::C0: a[v] = sample_gauss(g, cfg.magnitude); break;
      case Model::Zmod: a[v] = ZmodVal{m.n, g.range(0, m.n - 1)}; break;
    }
  }
  return a;
}

Term sample_term(Rng& g, const TermGenConfig& cfg) {
  // budgeted recursive generation; leaves when the budget runs out
  std::size_t budget = 2 + g.below(cfg.max_nodes > 2 ? cfg.max_nodes - 2 : 1);

  std::function<Term(std::size_t&)> gen = [&](std::size_t& left) -> Term {
    if (left <= 1) {
      switch (g.below(4)) {
        case 0: return Term::zero();
        case 1: return Term::one();
        default:
          if (cfg.sig.base == Signature::ComplexMeadow && g.chance(0.15))
            return Term::imag();
          return Term::var(cfg.vars[g.below(cfg.vars.size())]);
      }
    }
    left--;
    // weighted pick over available node kinds
    for (;;) {
      switch (g.below(10)) {
        case 0:
        case 1: {
          Term a = gen(left);
          Term b = gen(left);
          return Term::add(a, b);
        }
        case 2:
        case 3:
        case 4: {
          Term a = gen(left);
          Term b = gen(left);
          return Term::mul(a, b);
        }
        case 5:
          return Term::neg(gen(left));
        case 6:
        case 7:
          return Term::inv(gen(left));
        case 8:
          if (cfg.sig.admits(Kind::Sign)) return Term::sign(gen(left));
          if (cfg.sig.admits(Kind::Conj)) return Term::conj(gen(left));
          break;
        case 9:
          if (cfg.allow_derived) {
            switch (g.below(4)) {
              case 0: return Term::pseudo_one(gen(left));
              case 1: return Term::pseudo_zero(gen(left));
              case 2: return Term::sub(gen(left), gen(left));
              default: return Term::power(gen(left), g.range(2, 3));
            }
          }
          if (cfg.sig.admits(Kind::Conj)) return Term::conj(gen(left));
          break;
      }
    }
  };
  return gen(budget);
}

}  // namespace meadows
