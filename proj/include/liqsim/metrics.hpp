#pragma once

#include "liqsim/clipper.hpp"

#include <optional>
#include <span>

namespace liqsim {

/// Mean episode length in timesteps; nullopt when nothing was liquidated.
std::optional<double> avg_response_time(std::span<const Episode> episodes);

struct MetricPoint {
  double response_time = 0;
  double incentive = 0;
};

/// Percent decrease in average response time per additional DAI of
/// incentive, relative to `base`:
///   100 * (base.rt - variant.rt) / base.rt / (variant.inc - base.inc)
/// Throws DegenerateBaseline when the incentives are equal or base.rt <= 0.
double cost_effectiveness(const MetricPoint& base, const MetricPoint& variant);

}  // namespace liqsim
