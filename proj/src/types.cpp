#include "bdharq/types.hpp"

#include <cmath>
#include <sstream>

namespace bdharq {

namespace {

[[noreturn]] void fail_domain(const std::string& what) { throw DomainError(what); }

std::string num(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

void validate(const NetworkState& net) {
  if (!(net.loss_rate >= 0.0 && net.loss_rate <= 1.0)) {
    fail_domain("network.loss_rate must lie in [0, 1], got " + num(net.loss_rate));
  }
  if (!(net.rtt > 0.0)) {
    fail_domain("network.rtt must be positive, got " + num(net.rtt));
  }
}

void validate(const SystemParams& sys) {
  if (sys.packets_per_group < 1) {
    fail_domain("system.packets_per_group must be at least 1, got " +
                std::to_string(sys.packets_per_group));
  }
  if (!(sys.packet_bytes > 0.0)) {
    fail_domain("system.packet_bytes must be positive, got " + num(sys.packet_bytes));
  }
  if (!(sys.bitrate_kbps > 0.0)) {
    fail_domain("system.bitrate_kbps must be positive, got " + num(sys.bitrate_kbps));
  }
  if (!(sys.max_redundancy >= 0.0)) {
    fail_domain("system.max_redundancy must be nonnegative, got " + num(sys.max_redundancy));
  }
  if (!(sys.max_delay >= 0.0)) {
    fail_domain("system.max_delay must be nonnegative, got " + num(sys.max_delay));
  }
  if (!(sys.redundancy_step > 0.0)) {
    fail_domain("system.redundancy_step must be positive, got " + num(sys.redundancy_step));
  }
  if (!(sys.delay_step > 0.0)) {
    fail_domain("system.delay_step must be positive, got " + num(sys.delay_step));
  }
  // Every grid point must map to a whole number of FEC packets.
  const double step_count = sys.packets_per_group * sys.redundancy_step;
  if (std::abs(step_count - std::llround(step_count)) > kGridEps) {
    fail_domain("system.redundancy_step times packets_per_group must be integral, got " +
                num(step_count));
  }
}

void validate_plan(const SystemParams& sys, const TransmissionPlan& plan) {
  if (!(plan.redundancy >= 0.0 && plan.redundancy <= sys.max_redundancy + kGridEps)) {
    fail_domain("plan.redundancy must lie in [0, max_redundancy], got " + num(plan.redundancy));
  }
  if (!(plan.delay >= 0.0 && plan.delay <= sys.max_delay + kGridEps)) {
    fail_domain("plan.delay must lie in [0, max_delay], got " + num(plan.delay));
  }
  fec_packet_count(sys, plan);
}

int fec_packet_count(const SystemParams& sys, const TransmissionPlan& plan) {
  const double count = sys.packets_per_group * plan.redundancy;
  const long long rounded = std::llround(count);
  if (std::abs(count - static_cast<double>(rounded)) > kGridEps) {
    fail_domain("plan.redundancy must encode a whole FEC packet count, got " + num(count) +
                " packets");
  }
  return static_cast<int>(rounded);
}

double data_packet_interval(const SystemParams& sys) {
  return 0.08 * sys.packet_bytes / sys.bitrate_kbps;
}

}  // namespace bdharq
