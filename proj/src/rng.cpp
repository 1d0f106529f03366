#include "rikit/rng.hpp"

#include <algorithm>
#include <cmath>

namespace rikit {

StepFunction random_nonincreasing_step(Rng& rng, const StepSamplerOptions& opt) {
  const int n = rng.uniform_int(1, opt.max_pieces);
  std::vector<double> bs;
  const double hi = std::min(opt.break_hi, opt.domain_cap);
  for (int i = 0; i < n; ++i) bs.push_back(rng.log_uniform(opt.break_lo, hi));
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  std::vector<double> vs;
  for (std::size_t i = 0; i < bs.size(); ++i)
    vs.push_back(rng.log_uniform(opt.value_lo, opt.value_hi));
  std::sort(vs.begin(), vs.end(), std::greater<double>());
  std::vector<double> breaks{0.0};
  breaks.insert(breaks.end(), bs.begin(), bs.end());
  breaks.push_back(kInf);
  vs.push_back(0.0);
  return StepFunction(IntervalDomain::half_line(), std::move(breaks), std::move(vs));
}

StepFunction random_signed_step(Rng& rng, int max_pieces) {
  const int n = rng.uniform_int(1, max_pieces);
  std::vector<double> breaks{0.0};
  std::vector<double> vs;
  for (int i = 0; i < n; ++i) {
    breaks.push_back(breaks.back() + rng.log_uniform(1e-2, 1e2));
    const double sign = rng.uniform() < 0.4 ? -1.0 : 1.0;
    const double mag = rng.uniform() < 0.1 ? 0.0 : rng.log_uniform(1e-3, 1e3);
    vs.push_back(sign * mag);
  }
  breaks.push_back(kInf);
  vs.push_back(0.0);
  return StepFunction(IntervalDomain::half_line(), std::move(breaks), std::move(vs));
}

}  // namespace rikit
