#ifndef RIKIT_RNG_HPP
#define RIKIT_RNG_HPP

#include <cstdint>
#include <random>

#include "rikit/step_function.hpp"

namespace rikit {

// Deterministic generator: identical seeds reproduce every sampled report
// bit-for-bit. Doubles are derived from raw 64-bit draws, not from
// distribution objects.
class Rng {
  std::mt19937_64 eng_;

public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) {
    return lo * std::pow(hi / lo, uniform());
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + int(eng_() % std::uint64_t(hi - lo + 1));
  }
  // derive an independent stream for a named sub-task
  Rng fork(std::uint64_t salt) const {
    std::mt19937_64 copy = eng_;
    return Rng(copy() ^ (salt * 0x9e3779b97f4a7c15ull));
  }
};

struct StepSamplerOptions {
  int max_pieces = 12;
  double break_lo = 1e-4, break_hi = 1e4;  // log-uniform breakpoints
  double value_lo = 1e-3, value_hi = 1e3;  // log-uniform values
  double domain_cap = kInf;                // support restricted below this
};

// Random nonincreasing nonnegative step function on [0, inf).
StepFunction random_nonincreasing_step(Rng& rng, const StepSamplerOptions& opt = {});

// Random signed step function (for rearrangement and lattice tests).
StepFunction random_signed_step(Rng& rng, int max_pieces = 20);

}  // namespace rikit

#endif  // RIKIT_RNG_HPP
