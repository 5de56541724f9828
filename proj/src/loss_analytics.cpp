#include "bdharq/loss_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bdharq {

namespace {

// Binomial(n, q) PMF by the stable ratio recurrence; handles q in {0, 1}.
std::vector<double> binomial_pmf(int n, double q) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  if (q <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (q >= 1.0) {
    pmf[static_cast<std::size_t>(n)] = 1.0;
    return pmf;
  }
  pmf[0] = std::pow(1.0 - q, n);
  const double ratio = q / (1.0 - q);
  for (int k = 0; k < n; ++k) {
    pmf[static_cast<std::size_t>(k) + 1] =
        pmf[static_cast<std::size_t>(k)] * ratio * (n - k) / (k + 1);
  }
  return pmf;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t k = 0; k < b.size(); ++k) {
      out[i + k] += a[i] * b[k];
    }
  }
  return out;
}

double kahan_sum(const double* values, std::size_t count) {
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double y = values[i] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

SlotLayout slot_decomposition(const NetworkState& net, const SystemParams& sys,
                              const TransmissionPlan& plan) {
  validate(net);
  validate(sys);
  validate_plan(sys, plan);

  SlotLayout layout;
  layout.packet_interval = data_packet_interval(sys);
  if (layout.packet_interval > net.rtt) {
    throw ConfigError("a slot must hold at least one packet: packet interval exceeds rtt");
  }
  layout.packets_per_slot = static_cast<int>(net.rtt / layout.packet_interval + kGridEps);

  const double group_span = sys.packets_per_group * layout.packet_interval;
  const double window = group_span + plan.delay * net.rtt;
  layout.slot_count = std::max(1, static_cast<int>(window / net.rtt + kGridEps));

  layout.slot_failure_prob.resize(static_cast<std::size_t>(layout.slot_count));
  for (int j = 1; j <= layout.slot_count; ++j) {
    layout.slot_failure_prob[static_cast<std::size_t>(j) - 1] =
        std::pow(net.loss_rate, static_cast<double>(j) + plan.delay);
  }
  return layout;
}

LossMoments loss_moments(const NetworkState& net, const SystemParams& sys,
                         const TransmissionPlan& plan) {
  const SlotLayout layout = slot_decomposition(net, sys, plan);
  const int fec = fec_packet_count(sys, plan);

  LossMoments m;
  for (const double q : layout.slot_failure_prob) {
    m.data_loss_mean += layout.packets_per_slot * q;
    m.data_loss_var += layout.packets_per_slot * q * (1.0 - q);
  }
  m.fec_loss_mean = fec * net.loss_rate;
  m.fec_loss_var = fec * net.loss_rate * (1.0 - net.loss_rate);
  m.total_loss_mean = m.data_loss_mean + m.fec_loss_mean;
  m.total_loss_var = m.data_loss_var + m.fec_loss_var;
  return m;
}

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double recovery_rate_gaussian(const NetworkState& net, const SystemParams& sys,
                              const TransmissionPlan& plan) {
  const LossMoments m = loss_moments(net, sys, plan);
  const double budget = fec_packet_count(sys, plan);
  const double sigma = std::sqrt(m.total_loss_var);
  if (sigma == 0.0) {
    return budget >= m.total_loss_mean ? 1.0 : 0.0;
  }
  return std_normal_cdf((budget - m.total_loss_mean) / sigma);
}

std::vector<double> exact_loss_pmf(const NetworkState& net, const SystemParams& sys,
                                   const TransmissionPlan& plan) {
  const SlotLayout layout = slot_decomposition(net, sys, plan);
  const int fec = fec_packet_count(sys, plan);

  const std::size_t support =
      static_cast<std::size_t>(layout.slot_count) *
          static_cast<std::size_t>(layout.packets_per_slot) +
      static_cast<std::size_t>(fec);
  if (support > kExactOracleMaxSupport) {
    throw CapacityError("exact oracle support " + std::to_string(support) +
                        " exceeds limit " + std::to_string(kExactOracleMaxSupport));
  }

  std::vector<double> pmf{1.0};
  for (const double q : layout.slot_failure_prob) {
    pmf = convolve(pmf, binomial_pmf(layout.packets_per_slot, q));
  }
  pmf = convolve(pmf, binomial_pmf(fec, net.loss_rate));
  return pmf;
}

double recovery_rate_exact(const NetworkState& net, const SystemParams& sys,
                           const TransmissionPlan& plan) {
  const std::vector<double> pmf = exact_loss_pmf(net, sys, plan);
  const int fec = fec_packet_count(sys, plan);
  const std::size_t cutoff = std::min(pmf.size(), static_cast<std::size_t>(fec) + 1);
  return std::clamp(kahan_sum(pmf.data(), cutoff), 0.0, 1.0);
}

GaussianErrorReport gaussian_error_report(const NetworkState& net, const SystemParams& sys,
                                          std::span<const TransmissionPlan> grid) {
  GaussianErrorReport report;
  report.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    GaussianErrorRow row;
    row.plan = grid[i];
    row.xi_exact = recovery_rate_exact(net, sys, grid[i]);
    row.xi_gauss = recovery_rate_gaussian(net, sys, grid[i]);
    row.abs_diff = std::abs(row.xi_exact - row.xi_gauss);
    if (row.abs_diff > report.max_abs_diff) {
      report.max_abs_diff = row.abs_diff;
      report.worst_index = i;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace bdharq
