#pragma once

#include <stdexcept>
#include <string>

namespace bdharq {

// Error taxonomy, mapped to CLI exit codes: ConfigError -> 1,
// DomainError / CapacityError -> 2. Validation-bound failures are reported
// through ValidationSummary, not exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// All times are expressed in units of 100 ms.

// Observed channel condition.
struct NetworkState {
  double loss_rate = 0.35;  // i.i.d. packet loss probability, in [0, 1]
  double rtt = 1.0;         // link round trip time, > 0
};

// Preset transmission constants.
struct SystemParams {
  int packets_per_group = 16;       // data packets per FEC group
  double packet_bytes = 1000.0;     // size of one packet
  double bitrate_kbps = 1000.0;     // source bitrate
  double max_redundancy = 0.5;      // upper bound on the FEC ratio
  double max_delay = 10.0;          // upper bound on buffer delay, multiples of rtt
  double redundancy_step = 1.0 / 16.0;  // search grid step for the FEC ratio
  double delay_step = 0.5;              // search grid step for buffer delay
};

// A candidate operating point under optimization.
struct TransmissionPlan {
  double redundancy = 0.0;  // FEC packets = packets_per_group * redundancy
  double delay = 0.0;       // receive-deadline extension, multiples of rtt
};

// Tolerance for grid endpoint inclusion and integrality checks.
inline constexpr double kGridEps = 1e-9;

void validate(const NetworkState& net);
void validate(const SystemParams& sys);

// Checks plan bounds against sys and that the FEC packet count is integral.
void validate_plan(const SystemParams& sys, const TransmissionPlan& plan);

// FEC packet count packets_per_group * redundancy, required to be integral
// within kGridEps.
int fec_packet_count(const SystemParams& sys, const TransmissionPlan& plan);

// Send interval between consecutive data packets:
// 8 * packet_bytes / (1000 * bitrate_kbps) seconds, expressed in 100 ms units.
double data_packet_interval(const SystemParams& sys);

}  // namespace bdharq
