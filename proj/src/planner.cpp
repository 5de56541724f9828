#include "bdharq/planner.hpp"

#include <cmath>

#include "bdharq/loss_analytics.hpp"

namespace bdharq {

namespace {

std::vector<double> axis_values(double max_value, double step) {
  std::vector<double> values;
  const int count = static_cast<int>(max_value / step + kGridEps);
  values.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) {
    values.push_back(i * step);
  }
  return values;
}

double eval_xi(const NetworkState& net, const SystemParams& sys, const TransmissionPlan& plan,
               XiModel model) {
  return model == XiModel::kGaussian ? recovery_rate_gaussian(net, sys, plan)
                                     : recovery_rate_exact(net, sys, plan);
}

// Deterministic preference order: higher quality, then smaller delay, then
// smaller redundancy. Grid values are exact doubles, so equality compares
// reliably.
bool better(const PlanOutcome& a, const PlanOutcome& b) {
  if (a.qoe.total != b.qoe.total) return a.qoe.total > b.qoe.total;
  if (a.plan.delay != b.plan.delay) return a.plan.delay < b.plan.delay;
  return a.plan.redundancy < b.plan.redundancy;
}

OptimResult search(const NetworkState& net, const SystemParams& sys, const QoeParams& qoe,
                   const std::vector<TransmissionPlan>& candidates, XiModel model) {
  validate(qoe);
  OptimResult result;
  result.grid.reserve(candidates.size());
  for (const TransmissionPlan& plan : candidates) {
    PlanOutcome outcome;
    outcome.plan = plan;
    outcome.xi = eval_xi(net, sys, plan, model);
    outcome.qoe = eval_qoe(plan.delay * net.rtt, plan.redundancy, outcome.xi, qoe);
    if (result.grid.empty() || better(outcome, result.best)) {
      result.best = outcome;
    }
    result.grid.push_back(outcome);
  }
  if (result.grid.empty()) {
    throw DomainError("candidate grid is empty");
  }
  return result;
}

}  // namespace

std::vector<TransmissionPlan> enumerate_grid(const SystemParams& sys) {
  validate(sys);
  std::vector<TransmissionPlan> grid;
  const std::vector<double> redundancies = axis_values(sys.max_redundancy, sys.redundancy_step);
  const std::vector<double> delays = axis_values(sys.max_delay, sys.delay_step);
  grid.reserve(redundancies.size() * delays.size());
  for (const double r : redundancies) {
    for (const double d : delays) {
      grid.push_back(TransmissionPlan{r, d});
    }
  }
  return grid;
}

OptimResult optimize(const NetworkState& net, const SystemParams& sys, const QoeParams& qoe,
                     XiModel model) {
  return search(net, sys, qoe, enumerate_grid(sys), model);
}

OptimResult plan_dr(const NetworkState& net, const SystemParams& sys, const QoeParams& qoe,
                    double fixed_delay, XiModel model) {
  validate(sys);
  if (!(fixed_delay >= 0.0 && fixed_delay <= sys.max_delay + kGridEps)) {
    throw DomainError("fixed_delay must lie in [0, max_delay]");
  }
  std::vector<TransmissionPlan> candidates;
  for (const double r : axis_values(sys.max_redundancy, sys.redundancy_step)) {
    candidates.push_back(TransmissionPlan{r, fixed_delay});
  }
  return search(net, sys, qoe, candidates, model);
}

OptimResult plan_dd(const NetworkState& net, const SystemParams& sys, const QoeParams& qoe,
                    double fixed_redundancy, XiModel model) {
  validate(sys);
  if (!(fixed_redundancy >= 0.0 && fixed_redundancy <= sys.max_redundancy + kGridEps)) {
    throw DomainError("fixed_redundancy must lie in [0, max_redundancy]");
  }
  // The pinned ratio must still encode a whole FEC packet count.
  fec_packet_count(sys, TransmissionPlan{fixed_redundancy, 0.0});
  std::vector<TransmissionPlan> candidates;
  for (const double d : axis_values(sys.max_delay, sys.delay_step)) {
    candidates.push_back(TransmissionPlan{fixed_redundancy, d});
  }
  return search(net, sys, qoe, candidates, model);
}

}  // namespace bdharq
