#include "bdharq/qoe.hpp"

#include <algorithm>
#include <cmath>

namespace bdharq {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void validate(const QoeParams& p) {
  const double weight_sum = p.weight_delay + p.weight_redundancy + p.weight_recovery;
  if (p.weight_delay < 0.0 || p.weight_redundancy < 0.0 || p.weight_recovery < 0.0) {
    throw ConfigError("qoe weights must be nonnegative");
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw ConfigError(
        "qoe.weight_delay + qoe.weight_redundancy + qoe.weight_recovery must equal 1");
  }
  const bool slopes_ok = p.delay_slope1 > 0.0 && p.delay_slope2 > 0.0 && p.delay_slope3 > 0.0 &&
                         p.redundancy_slope > 0.0 && p.recovery_slope1 > 0.0 &&
                         p.recovery_slope2 > 0.0 && p.recovery_slope3 > 0.0;
  if (!slopes_ok) {
    throw ConfigError("qoe slopes must all be positive");
  }
  if (!(0.0 < p.delay_break1 && p.delay_break1 < p.delay_break2 &&
        p.delay_break2 < p.delay_break3)) {
    throw ConfigError("qoe delay breakpoints must satisfy 0 < break1 < break2 < break3");
  }
  if (!(p.redundancy_break > 0.0)) {
    throw ConfigError("qoe.redundancy_break must be positive");
  }
  if (!(0.0 < p.recovery_break1 && p.recovery_break1 < p.recovery_break2 &&
        p.recovery_break2 < 1.0)) {
    throw ConfigError("qoe recovery breakpoints must satisfy 0 < break1 < break2 < 1");
  }
}

double eval_delay_score(double delay, const QoeParams& p) {
  if (!(delay >= 0.0)) {
    throw DomainError("delay must be nonnegative");
  }
  if (delay > p.delay_break3) {
    return 0.0;
  }
  const double at_break1 = 1.0 - p.delay_slope1 * p.delay_break1;
  const double at_break2 = at_break1 - p.delay_slope2 * (p.delay_break2 - p.delay_break1);
  double raw = 0.0;
  if (delay < p.delay_break1) {
    raw = 1.0 - p.delay_slope1 * delay;
  } else if (delay < p.delay_break2) {
    raw = at_break1 - p.delay_slope2 * (delay - p.delay_break1);
  } else {
    raw = at_break2 - p.delay_slope3 * (delay - p.delay_break2);
  }
  return clamp01(raw);
}

double eval_redundancy_score(double redundancy, const QoeParams& p) {
  if (!(redundancy >= 0.0)) {
    throw DomainError("redundancy must be nonnegative");
  }
  if (redundancy > p.redundancy_break) {
    return 0.0;
  }
  return clamp01(1.0 - p.redundancy_slope * redundancy);
}

double eval_recovery_score(double recovery_rate, const QoeParams& p) {
  if (!(recovery_rate >= 0.0 && recovery_rate <= 1.0)) {
    throw DomainError("recovery_rate must lie in [0, 1]");
  }
  const double at_break1 = p.recovery_slope1 * p.recovery_break1;
  const double at_break2 = at_break1 + p.recovery_slope2 * (p.recovery_break2 - p.recovery_break1);
  double raw = 0.0;
  if (recovery_rate < p.recovery_break1) {
    raw = p.recovery_slope1 * recovery_rate;
  } else if (recovery_rate < p.recovery_break2) {
    raw = at_break1 + p.recovery_slope2 * (recovery_rate - p.recovery_break1);
  } else {
    raw = at_break2 + p.recovery_slope3 * (recovery_rate - p.recovery_break2);
  }
  return clamp01(raw);
}

QoeBreakdown eval_qoe(double delay, double redundancy, double recovery_rate,
                      const QoeParams& p) {
  QoeBreakdown out;
  out.delay_score = eval_delay_score(delay, p);
  out.redundancy_score = eval_redundancy_score(redundancy, p);
  out.recovery_score = eval_recovery_score(recovery_rate, p);
  out.total = p.weight_delay * out.delay_score + p.weight_redundancy * out.redundancy_score +
              p.weight_recovery * out.recovery_score;
  return out;
}

}  // namespace bdharq
