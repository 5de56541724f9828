#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bdharq/qoe.hpp"
#include "bdharq/types.hpp"

namespace bdharq {

// Sweep and simulation settings. List defaults mirror the project's standard
// experiment set; fig2/fig3 pin the axis that the respective sweep holds
// fixed. The delay list and the validate MC loss rates are reconstruction
// choices, not measured values.
struct SweepSpec {
  std::vector<double> loss_rates{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
  std::vector<double> redundancies{0.0,    0.0625, 0.125,  0.1875, 0.25,
                                   0.3125, 0.375,  0.4375, 0.5};
  std::vector<double> delays{1.0, 2.0, 3.0};
  long long trials = 100000;
  std::uint64_t seed = 42;
  double fig2_loss_rate = 0.35;
  double fig3_delay = 2.0;
  std::vector<double> validate_mc_loss_rates{0.15, 0.35};
  double gauss_gap_bound = 0.08;
};

// Comparison-method settings. The defaults are reconstruction choices rather
// than measured values, so the sweep-qoe writer calls them out in metadata.
struct BaselineSpec {
  double fixed_delay = 2.0;
  double fixed_redundancy = 0.25;
};

struct ExperimentConfig {
  QoeParams qoe;
  SystemParams sys;
  NetworkState net;
  SweepSpec sweep;
  BaselineSpec baselines;
};

// Cross-field validation of a fully assembled config; throws ConfigError.
void validate(const ExperimentConfig& cfg);

// Parses the sectioned key-value format:
//   [section]
//   key = value        # comment
// Sections: [qoe], [system], [network], [sweep], [baselines]. Lists are
// comma- or space-separated. Unknown sections or keys are errors; a repeated
// key keeps its last value. Missing keys fall back to the built-in defaults;
// each fallback is reported on `log` when it is non-null. `origin` names the
// source in error messages.
ExperimentConfig parse_config(std::string_view text, std::string_view origin,
                              std::ostream* log);

// Loads and validates a config file; ConfigError when unreadable.
ExperimentConfig load_config(const std::string& path, std::ostream* log);

// Deterministic full serialization (every key, fixed order, round-trip
// numeric formatting). parse_config(canonical_config(c)) reproduces c.
std::string canonical_config(const ExperimentConfig& cfg);

// FNV-1a over the canonical serialization; identifies the resolved settings
// (after any command-line overrides) in output metadata.
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace bdharq
