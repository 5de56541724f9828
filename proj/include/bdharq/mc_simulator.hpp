#pragma once

#include <cstdint>

#include "bdharq/rng.hpp"
#include "bdharq/types.hpp"

namespace bdharq {

enum class SimMode {
  // Draws losses straight from the analytic slot decomposition: one
  // Bernoulli per modeled packet per slot, plus one per FEC packet.
  kSlot,
  // Event-level replay: data packets are sent on their schedule, NACK
  // retransmissions fire once per rtt, and an attempt counts only when it
  // lands strictly before the group deadline
  //   (packets_per_group - 1) * packet_interval + (1 + delay) * rtt,
  // measured from the first send. FEC packets get a single attempt.
  kTimeline,
};

const char* to_string(SimMode mode);

// Loss bookkeeping for one simulated group. The slot model draws
// slot_count * packets_per_slot data Bernoullis, which can exceed the real
// group size, so data_received is defined through the identity
// packets_per_group - data_lost and can go negative in extreme draws.
// total counts are always the sums of their parts, and the group is
// recovered exactly when total_lost fits the FEC packet budget.
struct GroupOutcome {
  int data_received = 0;
  int fec_received = 0;
  int total_received = 0;
  int data_lost = 0;
  int fec_lost = 0;
  int total_lost = 0;
  bool recovered = false;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
  double halfwidth = 0.0;
};

struct SimReport {
  SimMode mode = SimMode::kSlot;
  long long trials = 0;
  long long recoveries = 0;
  double xi_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
};

GroupOutcome simulate_group_slot_model(const NetworkState& net, const SystemParams& sys,
                                       const TransmissionPlan& plan, SplitMix64& rng);

GroupOutcome simulate_group_timeline(const NetworkState& net, const SystemParams& sys,
                                     const TransmissionPlan& plan, SplitMix64& rng);

// 95% Wilson score interval for successes out of trials (trials >= 1).
WilsonInterval wilson_interval(long long successes, long long trials);

// Runs `trials` independent groups (trial t uses the stream derived from
// (seed, t)) and reports the recovery fraction with its Wilson interval.
// threads = 0 picks the hardware concurrency; the result is identical for
// every thread count.
SimReport estimate_recovery_rate(SimMode mode, const NetworkState& net, const SystemParams& sys,
                                 const TransmissionPlan& plan, long long trials,
                                 std::uint64_t seed, unsigned threads = 0);

}  // namespace bdharq
