#pragma once

#include <iosfwd>

#include "bdharq/config.hpp"
#include "bdharq/mc_simulator.hpp"
#include "bdharq/planner.hpp"

namespace bdharq {

// CSV writers for the experiment harness. Shared conventions:
//   - two `#` metadata lines first (config hash of the resolved settings,
//     root seed), then one header line, then data rows;
//   - numbers are written in round-trip precision, so identical settings
//     reproduce identical bytes;
//   - rows appear in configured list order, independent of thread count;
//   - sweeps with Monte Carlo columns give row i the RNG stream derived
//     from (seed, i).

void write_csv_metadata(std::ostream& out, const ExperimentConfig& cfg);

// One analytic row for a single operating point:
// p,t_l,r,d,xi_gauss,xi_exact,q_d,q_r,q_xi,q (quality scored on xi_gauss).
void write_analyze_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const TransmissionPlan& plan);

// Grid-search result row: method,p,r_chosen,d_chosen,xi,q_d,q_r,q_xi,q.
void write_optimize_csv(std::ostream& out, const ExperimentConfig& cfg, XiModel model);

// One Monte Carlo run:
// mode,p,t_l,r,d,trials,seed,recoveries,xi_hat,ci_low,ci_high.
void write_simulate_csv(std::ostream& out, const ExperimentConfig& cfg, SimMode mode,
                        const TransmissionPlan& plan, unsigned threads);

// Recovery rate vs redundancy at the fig2 loss rate, one curve per
// configured delay: d,r,xi_gauss,xi_exact,xi_mc,ci_low,ci_high.
void write_sweep_fig2_csv(std::ostream& out, const ExperimentConfig& cfg, SimMode mode,
                          unsigned threads);

// Recovery rate vs loss rate at the fig3 delay, one curve per configured
// redundancy: r,p,xi_gauss,xi_exact,xi_mc,ci_low,ci_high.
void write_sweep_fig3_csv(std::ostream& out, const ExperimentConfig& cfg, SimMode mode,
                          unsigned threads);

// Planner comparison at every swept loss rate; three rows per p
// (BD-HARQ, DR, DD): method,p,r_chosen,d_chosen,xi,q_d,q_r,q_xi,q.
void write_sweep_qoe_csv(std::ostream& out, const ExperimentConfig& cfg);

struct ValidationSummary {
  double gauss_bound = 0.0;
  double max_gauss_gap = 0.0;
  double worst_loss_rate = 0.0;  // where the max gap occurs
  TransmissionPlan worst_plan;
  bool gauss_ok = false;

  long long mc_points = 0;
  long long mc_within = 0;
  double mc_fraction = 0.0;
  bool mc_ok = false;

  bool ok() const { return gauss_ok && mc_ok; }
};

// Model validation over the full plan grid: exact-vs-Gaussian gaps at every
// swept loss rate (bound: sweep.gauss_gap_bound), plus slot-mode Monte Carlo
// cross-checks at the validate_mc loss rates (bound: within 3 Wilson
// half-widths of the exact rate on at least 99% of points). CSV rows:
// p,r,d,xi_exact,xi_gauss,abs_diff,xi_mc,mc_halfwidth,mc_within
// with MC columns empty for rows that carry no Monte Carlo check.
//
// cdf_bias is a test hook (negative control): it shifts the Gaussian rate
// before comparison, so a corrupted closed form must trip the bound.
ValidationSummary run_validate(std::ostream& out, const ExperimentConfig& cfg,
                               unsigned threads, double cdf_bias = 0.0);

}  // namespace bdharq
