#pragma once

#include "bdharq/types.hpp"

namespace bdharq {

// Piecewise-linear quality scoring. Each factor (buffer delay, FEC
// redundancy, recovery rate) maps onto a [0, 1] score through a
// three-segment (or one-segment) descent with configurable slopes and
// breakpoints; the overall quality is the weighted sum of the three scores.
//
// Defaults follow the subjective-study calibration used across the project.
struct QoeParams {
  double weight_delay = 0.3;
  double weight_redundancy = 0.3;
  double weight_recovery = 0.4;

  // Delay score: slope k applies on [0, break1], [break1, break2],
  // [break2, break3]; beyond break3 the raw score is pinned to 0.
  // Delay is measured in 100 ms units.
  double delay_slope1 = 0.04;
  double delay_slope2 = 0.32;
  double delay_slope3 = 0.07;
  double delay_break1 = 2.5;
  double delay_break2 = 8.0;
  double delay_break3 = 31.0;

  // Redundancy score: single descent from 1 at ratio 0; 0 beyond the break.
  double redundancy_slope = 2.0;
  double redundancy_break = 0.5;

  // Recovery score: ascent from 0 at rate 0, three segments up to rate 1.
  double recovery_slope1 = 0.40;
  double recovery_slope2 = 1.67;
  double recovery_slope3 = 1.00;
  double recovery_break1 = 0.5;
  double recovery_break2 = 0.95;
};

struct QoeBreakdown {
  double delay_score = 0.0;
  double redundancy_score = 0.0;
  double recovery_score = 0.0;
  double total = 0.0;
};

// Throws ConfigError when weights do not sum to 1 (tolerance 1e-9), any
// slope is nonpositive, or breakpoints are not strictly ordered.
void validate(const QoeParams& params);

// Scores are clamped to [0, 1] only after evaluating the raw piecewise
// chain: each segment anchors at the raw (unclamped) value reached at the
// previous breakpoint, so a later segment can start below zero or run above
// one before the final clamp.
double eval_delay_score(double delay, const QoeParams& params);
double eval_redundancy_score(double redundancy, const QoeParams& params);
double eval_recovery_score(double recovery_rate, const QoeParams& params);

QoeBreakdown eval_qoe(double delay, double redundancy, double recovery_rate,
                      const QoeParams& params);

}  // namespace bdharq
