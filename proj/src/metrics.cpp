#include "liqsim/metrics.hpp"

#include "liqsim/errors.hpp"

namespace liqsim {

std::optional<double> avg_response_time(std::span<const Episode> episodes) {
  if (episodes.empty()) return std::nullopt;
  std::int64_t total = 0;
  for (const auto& e : episodes) total += e.length();
  return static_cast<double>(total) / static_cast<double>(episodes.size());
}

double cost_effectiveness(const MetricPoint& base, const MetricPoint& variant) {
  if (!(base.response_time > 0)) throw Error(Errc::DegenerateBaseline, "baseline response time must be positive");
  const double extra = variant.incentive - base.incentive;
  if (extra == 0) throw Error(Errc::DegenerateBaseline, "variant pays the same incentive as the baseline");
  return 100.0 * (base.response_time - variant.response_time) / base.response_time / extra;
}

}  // namespace liqsim
