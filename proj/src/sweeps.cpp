#include "bdharq/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "bdharq/csv.hpp"
#include "bdharq/loss_analytics.hpp"
#include "bdharq/parallel.hpp"
#include "bdharq/rng.hpp"

namespace bdharq {

namespace {

std::string hex16(std::uint64_t v) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(v));
  return buffer;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void write_plan_quality_row(std::ostream& out, const std::string& method, double p,
                            const PlanOutcome& o) {
  out << method << ',' << format_double(p) << ',' << format_double(o.plan.redundancy) << ','
      << format_double(o.plan.delay) << ',' << format_double(o.xi) << ','
      << format_double(o.qoe.delay_score) << ',' << format_double(o.qoe.redundancy_score)
      << ',' << format_double(o.qoe.recovery_score) << ',' << format_double(o.qoe.total)
      << '\n';
}

constexpr char kPlanQualityHeader[] = "method,p,r_chosen,d_chosen,xi,q_d,q_r,q_xi,q";

void require_trials(const ExperimentConfig& cfg) {
  if (cfg.sweep.trials < 1) {
    throw DomainError("trials must be at least 1");
  }
}

}  // namespace

void write_csv_metadata(std::ostream& out, const ExperimentConfig& cfg) {
  out << "# config_hash=" << hex16(config_hash(cfg)) << '\n';
  out << "# seed=" << cfg.sweep.seed << '\n';
}

void write_analyze_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const TransmissionPlan& plan) {
  validate(cfg);
  const double xi_gauss = recovery_rate_gaussian(cfg.net, cfg.sys, plan);
  const double xi_exact = recovery_rate_exact(cfg.net, cfg.sys, plan);
  const QoeBreakdown q =
      eval_qoe(plan.delay * cfg.net.rtt, plan.redundancy, xi_gauss, cfg.qoe);

  write_csv_metadata(out, cfg);
  out << "p,t_l,r,d,xi_gauss,xi_exact,q_d,q_r,q_xi,q\n";
  out << format_double(cfg.net.loss_rate) << ',' << format_double(cfg.net.rtt) << ','
      << format_double(plan.redundancy) << ',' << format_double(plan.delay) << ','
      << format_double(xi_gauss) << ',' << format_double(xi_exact) << ','
      << format_double(q.delay_score) << ',' << format_double(q.redundancy_score) << ','
      << format_double(q.recovery_score) << ',' << format_double(q.total) << '\n';
}

void write_optimize_csv(std::ostream& out, const ExperimentConfig& cfg, XiModel model) {
  validate(cfg);
  const OptimResult result = optimize(cfg.net, cfg.sys, cfg.qoe, model);
  write_csv_metadata(out, cfg);
  out << kPlanQualityHeader << '\n';
  write_plan_quality_row(out, model == XiModel::kGaussian ? "BD-HARQ" : "BD-HARQ-exact",
                         cfg.net.loss_rate, result.best);
}

void write_simulate_csv(std::ostream& out, const ExperimentConfig& cfg, SimMode mode,
                        const TransmissionPlan& plan, unsigned threads) {
  validate(cfg);
  const SimReport report = estimate_recovery_rate(mode, cfg.net, cfg.sys, plan,
                                                  cfg.sweep.trials, cfg.sweep.seed, threads);
  write_csv_metadata(out, cfg);
  out << "mode,p,t_l,r,d,trials,seed,recoveries,xi_hat,ci_low,ci_high\n";
  out << to_string(report.mode) << ',' << format_double(cfg.net.loss_rate) << ','
      << format_double(cfg.net.rtt) << ',' << format_double(plan.redundancy) << ','
      << format_double(plan.delay) << ',' << report.trials << ',' << report.seed << ','
      << report.recoveries << ',' << format_double(report.xi_hat) << ','
      << format_double(report.ci_low) << ',' << format_double(report.ci_high) << '\n';
}

namespace {

struct CurveRow {
  double outer = 0.0;  // fig2: d, fig3: r
  double inner = 0.0;  // fig2: r, fig3: p
  TransmissionPlan plan;
  NetworkState net;
  double xi_gauss = 0.0;
  double xi_exact = 0.0;
  SimReport mc;
};

// Shared fig2/fig3 body: analytic columns first (serial, so domain and
// capacity errors surface cleanly), then Monte Carlo across rows in
// parallel, then deterministic emission.
void write_curve_csv(std::ostream& out, const ExperimentConfig& cfg, SimMode mode,
                     unsigned threads, const char* header, std::vector<CurveRow> rows) {
  for (CurveRow& row : rows) {
    row.xi_gauss = recovery_rate_gaussian(row.net, cfg.sys, row.plan);
    row.xi_exact = recovery_rate_exact(row.net, cfg.sys, row.plan);
  }
  parallel_blocks(rows.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      rows[i].mc = estimate_recovery_rate(mode, rows[i].net, cfg.sys, rows[i].plan,
                                          cfg.sweep.trials,
                                          derive_stream_seed(cfg.sweep.seed, i), 1);
    }
  });

  write_csv_metadata(out, cfg);
  out << header << '\n';
  for (const CurveRow& row : rows) {
    out << format_double(row.outer) << ',' << format_double(row.inner) << ','
        << format_double(row.xi_gauss) << ',' << format_double(row.xi_exact) << ','
        << format_double(row.mc.xi_hat) << ',' << format_double(row.mc.ci_low) << ','
        << format_double(row.mc.ci_high) << '\n';
  }
}

}  // namespace

void write_sweep_fig2_csv(std::ostream& out, const ExperimentConfig& cfg, SimMode mode,
                          unsigned threads) {
  validate(cfg);
  require_trials(cfg);
  NetworkState net = cfg.net;
  net.loss_rate = cfg.sweep.fig2_loss_rate;

  std::vector<CurveRow> rows;
  rows.reserve(cfg.sweep.delays.size() * cfg.sweep.redundancies.size());
  for (const double d : cfg.sweep.delays) {
    for (const double r : cfg.sweep.redundancies) {
      CurveRow row;
      row.outer = d;
      row.inner = r;
      row.plan = TransmissionPlan{r, d};
      row.net = net;
      rows.push_back(row);
    }
  }
  write_curve_csv(out, cfg, mode, threads, "d,r,xi_gauss,xi_exact,xi_mc,ci_low,ci_high",
                  std::move(rows));
}

void write_sweep_fig3_csv(std::ostream& out, const ExperimentConfig& cfg, SimMode mode,
                          unsigned threads) {
  validate(cfg);
  require_trials(cfg);

  std::vector<CurveRow> rows;
  rows.reserve(cfg.sweep.redundancies.size() * cfg.sweep.loss_rates.size());
  for (const double r : cfg.sweep.redundancies) {
    for (const double p : cfg.sweep.loss_rates) {
      CurveRow row;
      row.outer = r;
      row.inner = p;
      row.plan = TransmissionPlan{r, cfg.sweep.fig3_delay};
      row.net = cfg.net;
      row.net.loss_rate = p;
      rows.push_back(row);
    }
  }
  write_curve_csv(out, cfg, mode, threads, "r,p,xi_gauss,xi_exact,xi_mc,ci_low,ci_high",
                  std::move(rows));
}

void write_sweep_qoe_csv(std::ostream& out, const ExperimentConfig& cfg) {
  validate(cfg);
  write_csv_metadata(out, cfg);
  out << "# baseline_fixed_delay=" << format_double(cfg.baselines.fixed_delay)
      << " (reconstruction choice, not a measured value; set in [baselines])\n";
  out << "# baseline_fixed_redundancy=" << format_double(cfg.baselines.fixed_redundancy)
      << " (reconstruction choice, not a measured value; set in [baselines])\n";
  out << kPlanQualityHeader << '\n';
  for (const double p : cfg.sweep.loss_rates) {
    NetworkState net = cfg.net;
    net.loss_rate = p;
    write_plan_quality_row(out, "BD-HARQ", p, optimize(net, cfg.sys, cfg.qoe).best);
    write_plan_quality_row(out, "DR", p,
                           plan_dr(net, cfg.sys, cfg.qoe, cfg.baselines.fixed_delay).best);
    write_plan_quality_row(out, "DD", p,
                           plan_dd(net, cfg.sys, cfg.qoe, cfg.baselines.fixed_redundancy).best);
  }
}

ValidationSummary run_validate(std::ostream& out, const ExperimentConfig& cfg,
                               unsigned threads, double cdf_bias) {
  validate(cfg);
  require_trials(cfg);
  const std::vector<TransmissionPlan> grid = enumerate_grid(cfg.sys);

  auto has_mc = [&cfg](double p) {
    for (const double q : cfg.sweep.validate_mc_loss_rates) {
      if (q == p) return true;
    }
    return false;
  };
  std::vector<double> loss_rates = cfg.sweep.loss_rates;
  for (const double p : cfg.sweep.validate_mc_loss_rates) {
    if (std::find(loss_rates.begin(), loss_rates.end(), p) == loss_rates.end()) {
      loss_rates.push_back(p);
    }
  }

  struct ValidationRow {
    double p = 0.0;
    TransmissionPlan plan;
    double xi_exact = 0.0;
    double xi_gauss = 0.0;
    double abs_diff = 0.0;
    bool mc_checked = false;
    double xi_mc = 0.0;
    double mc_halfwidth = 0.0;
    bool mc_within = false;
  };

  ValidationSummary summary;
  summary.gauss_bound = cfg.sweep.gauss_gap_bound;

  std::vector<ValidationRow> rows;
  rows.reserve(loss_rates.size() * grid.size());
  for (const double p : loss_rates) {
    NetworkState net = cfg.net;
    net.loss_rate = p;
    for (const TransmissionPlan& plan : grid) {
      ValidationRow row;
      row.p = p;
      row.plan = plan;
      row.xi_exact = recovery_rate_exact(net, cfg.sys, plan);
      row.xi_gauss = clamp01(recovery_rate_gaussian(net, cfg.sys, plan) + cdf_bias);
      row.abs_diff = std::abs(row.xi_exact - row.xi_gauss);
      row.mc_checked = has_mc(p);
      if (row.abs_diff > summary.max_gauss_gap) {
        summary.max_gauss_gap = row.abs_diff;
        summary.worst_loss_rate = p;
        summary.worst_plan = plan;
      }
      rows.push_back(row);
    }
  }

  std::vector<std::size_t> mc_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].mc_checked) mc_rows.push_back(i);
  }
  parallel_blocks(mc_rows.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      ValidationRow& row = rows[mc_rows[k]];
      NetworkState net = cfg.net;
      net.loss_rate = row.p;
      const SimReport report =
          estimate_recovery_rate(SimMode::kSlot, net, cfg.sys, row.plan, cfg.sweep.trials,
                                 derive_stream_seed(cfg.sweep.seed, k), 1);
      row.xi_mc = report.xi_hat;
      row.mc_halfwidth = (report.ci_high - report.ci_low) / 2.0;
      row.mc_within = std::abs(report.xi_hat - row.xi_exact) <= 3.0 * row.mc_halfwidth;
    }
  });

  for (const std::size_t i : mc_rows) {
    summary.mc_points += 1;
    summary.mc_within += rows[i].mc_within ? 1 : 0;
  }
  summary.mc_fraction = summary.mc_points == 0
                            ? 1.0
                            : static_cast<double>(summary.mc_within) /
                                  static_cast<double>(summary.mc_points);
  summary.gauss_ok = summary.max_gauss_gap <= summary.gauss_bound;
  summary.mc_ok = summary.mc_fraction >= 0.99;

  write_csv_metadata(out, cfg);
  out << "p,r,d,xi_exact,xi_gauss,abs_diff,xi_mc,mc_halfwidth,mc_within\n";
  for (const ValidationRow& row : rows) {
    out << format_double(row.p) << ',' << format_double(row.plan.redundancy) << ','
        << format_double(row.plan.delay) << ',' << format_double(row.xi_exact) << ','
        << format_double(row.xi_gauss) << ',' << format_double(row.abs_diff) << ',';
    if (row.mc_checked) {
      out << format_double(row.xi_mc) << ',' << format_double(row.mc_halfwidth) << ','
          << (row.mc_within ? '1' : '0');
    } else {
      out << ",,";
    }
    out << '\n';
  }
  return summary;
}

}  // namespace bdharq
