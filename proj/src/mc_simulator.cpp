#include "bdharq/mc_simulator.hpp"

#include <cmath>
#include <vector>

#include "bdharq/loss_analytics.hpp"
#include "bdharq/parallel.hpp"

namespace bdharq {

namespace {

constexpr double kZ95 = 1.959963984540054;

GroupOutcome finish_outcome(const SystemParams& sys, int fec, int data_lost, int fec_lost) {
  GroupOutcome out;
  out.data_lost = data_lost;
  out.fec_lost = fec_lost;
  out.total_lost = data_lost + fec_lost;
  out.data_received = sys.packets_per_group - data_lost;
  out.fec_received = fec - fec_lost;
  out.total_received = out.data_received + out.fec_received;
  out.recovered = out.total_lost <= fec;
  return out;
}

}  // namespace

const char* to_string(SimMode mode) {
  return mode == SimMode::kSlot ? "slot" : "timeline";
}

GroupOutcome simulate_group_slot_model(const NetworkState& net, const SystemParams& sys,
                                       const TransmissionPlan& plan, SplitMix64& rng) {
  const SlotLayout layout = slot_decomposition(net, sys, plan);
  const int fec = fec_packet_count(sys, plan);

  int data_lost = 0;
  for (const double q : layout.slot_failure_prob) {
    for (int k = 0; k < layout.packets_per_slot; ++k) {
      data_lost += rng.bernoulli(q) ? 1 : 0;
    }
  }
  int fec_lost = 0;
  for (int k = 0; k < fec; ++k) {
    fec_lost += rng.bernoulli(net.loss_rate) ? 1 : 0;
  }
  return finish_outcome(sys, fec, data_lost, fec_lost);
}

GroupOutcome simulate_group_timeline(const NetworkState& net, const SystemParams& sys,
                                     const TransmissionPlan& plan, SplitMix64& rng) {
  validate(net);
  validate(sys);
  validate_plan(sys, plan);
  const int fec = fec_packet_count(sys, plan);
  const double interval = data_packet_interval(sys);
  const double deadline =
      (sys.packets_per_group - 1) * interval + (1.0 + plan.delay) * net.rtt;

  int data_lost = 0;
  for (int i = 0; i < sys.packets_per_group; ++i) {
    const double first_send = i * interval;
    bool received = false;
    // Attempt n is sent at first_send + n * rtt: the NACK for a lost attempt
    // arrives one rtt later and triggers the next copy. Only attempts sent
    // strictly before the deadline can be delivered in time.
    for (int n = 0; first_send + n * net.rtt < deadline; ++n) {
      if (!rng.bernoulli(net.loss_rate)) {
        received = true;
        break;
      }
    }
    data_lost += received ? 0 : 1;
  }
  int fec_lost = 0;
  for (int k = 0; k < fec; ++k) {
    fec_lost += rng.bernoulli(net.loss_rate) ? 1 : 0;
  }
  return finish_outcome(sys, fec, data_lost, fec_lost);
}

WilsonInterval wilson_interval(long long successes, long long trials) {
  if (trials < 1) {
    throw DomainError("wilson_interval requires at least one trial");
  }
  if (successes < 0 || successes > trials) {
    throw DomainError("wilson_interval successes must lie in [0, trials]");
  }
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double spread =
      kZ95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;

  WilsonInterval ci;
  ci.low = center - spread;
  ci.high = center + spread;
  ci.halfwidth = spread;
  return ci;
}

SimReport estimate_recovery_rate(SimMode mode, const NetworkState& net, const SystemParams& sys,
                                 const TransmissionPlan& plan, long long trials,
                                 std::uint64_t seed, unsigned threads) {
  if (trials < 1) {
    throw DomainError("trials must be at least 1");
  }
  // Validate eagerly and hoist the derived quantities out of the trial loop;
  // the per-trial draw order below matches the simulate_group_* functions
  // exactly, so both paths produce the same outcome per (seed, trial).
  validate(net);
  validate(sys);
  validate_plan(sys, plan);
  const int fec = fec_packet_count(sys, plan);
  SlotLayout layout;
  double deadline = 0.0;
  double interval = 0.0;
  if (mode == SimMode::kSlot) {
    layout = slot_decomposition(net, sys, plan);
  } else {
    interval = data_packet_interval(sys);
    deadline = (sys.packets_per_group - 1) * interval + (1.0 + plan.delay) * net.rtt;
  }

  const unsigned workers = resolve_thread_count(threads);
  std::vector<long long> recovered_per_block(workers, 0);
  parallel_blocks(
      static_cast<std::size_t>(trials), workers,
      [&](unsigned block, std::size_t begin, std::size_t end) {
        long long recovered = 0;
        for (std::size_t t = begin; t < end; ++t) {
          SplitMix64 rng(derive_stream_seed(seed, static_cast<std::uint64_t>(t)));
          int lost = 0;
          if (mode == SimMode::kSlot) {
            for (const double q : layout.slot_failure_prob) {
              for (int k = 0; k < layout.packets_per_slot; ++k) {
                lost += rng.bernoulli(q) ? 1 : 0;
              }
            }
          } else {
            for (int i = 0; i < sys.packets_per_group; ++i) {
              const double first_send = i * interval;
              bool received = false;
              for (int n = 0; first_send + n * net.rtt < deadline; ++n) {
                if (!rng.bernoulli(net.loss_rate)) {
                  received = true;
                  break;
                }
              }
              lost += received ? 0 : 1;
            }
          }
          for (int k = 0; k < fec; ++k) {
            lost += rng.bernoulli(net.loss_rate) ? 1 : 0;
          }
          recovered += lost <= fec ? 1 : 0;
        }
        recovered_per_block[block] = recovered;
      });

  long long recoveries = 0;
  for (const long long r : recovered_per_block) {
    recoveries += r;
  }

  SimReport report;
  report.mode = mode;
  report.trials = trials;
  report.recoveries = recoveries;
  report.xi_hat = static_cast<double>(recoveries) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(recoveries, trials);
  report.ci_low = ci.low;
  report.ci_high = ci.high;
  report.seed = seed;
  return report;
}

}  // namespace bdharq
