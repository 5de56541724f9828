#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bdharq/types.hpp"

namespace bdharq {

// Analytic loss model for one FEC group under NACK-based retransmission.
//
// The receive window is divided into slots of one rtt, counted backwards
// from the group deadline. A data packet whose slot index is j (j = 1 for
// the slot closest to the deadline) can be transmitted j + delay times
// before the deadline, so it is still missing afterwards with probability
//   loss_rate^(j + delay).
// Fractional delay values give real-valued exponents. FEC packets are sent
// once, immediately after the group, and are not retransmitted.

struct SlotLayout {
  double packet_interval = 0.0;  // send spacing of data packets, 100 ms units
  int packets_per_slot = 0;      // data packets that fit into one rtt
  int slot_count = 0;            // number of slots covering the group
  // Residual failure probability per packet in slot j, index j - 1.
  std::vector<double> slot_failure_prob;
};

struct LossMoments {
  double data_loss_mean = 0.0;
  double data_loss_var = 0.0;
  double fec_loss_mean = 0.0;
  double fec_loss_var = 0.0;
  double total_loss_mean = 0.0;
  double total_loss_var = 0.0;
};

// Largest distribution support the exact oracle accepts:
// slot_count * packets_per_slot + fec_packet_count.
inline constexpr std::size_t kExactOracleMaxSupport = 10000;

// Slot decomposition of the receive window. Throws ConfigError when a slot
// cannot hold a full packet (packet_interval > rtt). The slot count is
// floor((group span + delay budget) / rtt), forced to at least 1 so a group
// always occupies one slot.
SlotLayout slot_decomposition(const NetworkState& net, const SystemParams& sys,
                              const TransmissionPlan& plan);

// Mean and variance of lost data packets (summed over slots), lost FEC
// packets (single-shot binomial), and their total.
LossMoments loss_moments(const NetworkState& net, const SystemParams& sys,
                         const TransmissionPlan& plan);

// Standard normal CDF via erfc; absolute error well below 1e-7.
double std_normal_cdf(double z);

// Closed-form recovery rate: the group is recoverable when total losses do
// not exceed the FEC packet count, and total losses are approximated as
// Gaussian with the moments above. When the variance degenerates to zero
// the rate is exactly 0 or 1 depending on whether the mean fits the budget.
double recovery_rate_gaussian(const NetworkState& net, const SystemParams& sys,
                              const TransmissionPlan& plan);

// Exact PMF of the total loss count: the convolution of one binomial per
// slot (packets_per_slot trials at that slot's failure probability) with the
// FEC loss binomial. Index k holds P(total losses = k). Throws CapacityError
// when the support exceeds kExactOracleMaxSupport.
std::vector<double> exact_loss_pmf(const NetworkState& net, const SystemParams& sys,
                                   const TransmissionPlan& plan);

// Exact recovery rate: P(total losses <= fec_packet_count), summed with
// compensation and clamped to [0, 1].
double recovery_rate_exact(const NetworkState& net, const SystemParams& sys,
                           const TransmissionPlan& plan);

struct GaussianErrorRow {
  TransmissionPlan plan;
  double xi_exact = 0.0;
  double xi_gauss = 0.0;
  double abs_diff = 0.0;
};

struct GaussianErrorReport {
  std::vector<GaussianErrorRow> rows;  // one per grid plan, input order
  double max_abs_diff = 0.0;
  std::size_t worst_index = 0;  // meaningful only when rows is nonempty
};

// Exact-vs-Gaussian recovery rate comparison over a plan grid.
GaussianErrorReport gaussian_error_report(const NetworkState& net, const SystemParams& sys,
                                          std::span<const TransmissionPlan> grid);

}  // namespace bdharq
