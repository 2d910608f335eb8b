#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meadows/eval.hpp"
#include "meadows/term.hpp"
#include "meadows/value.hpp"

namespace meadows {

// splitmix64; fixed algorithm so seeded runs are byte-identical across
// platforms and standard libraries.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound), bound >= 1
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(double p) { return next() < static_cast<std::uint64_t>(p * 18446744073709551615.0); }
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct SampleConfig {
  std::uint64_t seed = 0;
  long long magnitude = 1000000;  // bound on |numerator| and denominator
};

// The sample schedule runs a structured phase before random sampling:
// totalized-inverse edge cases live at 0 and sign changes at +-1, so for
// up to 3 variables every tuple over {0,1,-1} (or {0,1,-1,i,-i} for C0)
// is tried first. Indices continue deterministically into the random phase.
Assignment sample_assignment(const Model& m, const std::vector<std::string>& vars,
                             const SampleConfig& cfg, std::uint64_t index);

Rat sample_rat(Rng& g, long long magnitude);
GaussRat sample_gauss(Rng& g, long long magnitude);

// Number of structured samples for a variable count (0 when vars > 3).
std::size_t structured_count(const Model& m, std::size_t nvars);

// Random terms for oracle testing. The generator weights inverses up,
// since totalization is where meadow terms differ from field terms.
struct TermGenConfig {
  Signature sig = Signature::meadow();
  std::size_t max_nodes = 40;
  std::vector<std::string> vars = {"x", "y", "z", "w"};
  bool allow_derived = false;
};

Term sample_term(Rng& g, const TermGenConfig& cfg);

}  // namespace meadows
