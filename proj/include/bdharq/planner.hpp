#pragma once

#include <vector>

#include "bdharq/qoe.hpp"
#include "bdharq/types.hpp"

namespace bdharq {

// Which recovery-rate model drives the quality objective.
enum class XiModel {
  kGaussian,  // closed form, the production setting
  kExact,     // convolution oracle, for studies and cross-checks
};

struct PlanOutcome {
  TransmissionPlan plan;
  double xi = 0.0;
  QoeBreakdown qoe;
};

struct OptimResult {
  PlanOutcome best;
  std::vector<PlanOutcome> grid;  // every evaluated plan, enumeration order
};

// Cartesian candidate grid: redundancy 0, step, ..., max_redundancy crossed
// with delay 0, step, ..., max_delay (endpoints included within kGridEps).
// Rows are ordered redundancy-major, delay-minor.
std::vector<TransmissionPlan> enumerate_grid(const SystemParams& sys);

// Exhaustive search for the plan maximizing total quality. Ties break toward
// smaller delay, then smaller redundancy.
OptimResult optimize(const NetworkState& net, const SystemParams& sys, const QoeParams& qoe,
                     XiModel model = XiModel::kGaussian);

// Redundancy-only baseline: delay pinned at fixed_delay, search over the
// redundancy grid. fixed_delay must lie in [0, max_delay].
OptimResult plan_dr(const NetworkState& net, const SystemParams& sys, const QoeParams& qoe,
                    double fixed_delay, XiModel model = XiModel::kGaussian);

// Delay-only baseline: redundancy pinned at fixed_redundancy (which must be
// on the redundancy grid in [0, max_redundancy]), search over the delay grid.
OptimResult plan_dd(const NetworkState& net, const SystemParams& sys, const QoeParams& qoe,
                    double fixed_redundancy, XiModel model = XiModel::kGaussian);

}  // namespace bdharq
