#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "bdharq/sweeps.hpp"

namespace {

using namespace bdharq;

struct CliState {
  std::string config_path;
  std::string out_path;
  std::string mode = "slot";
  double p = 0.0;
  double r = 0.0;
  double d = 0.0;
  bool exact_xi = false;
  long long trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double corrupt_cdf = 0.0;
  bool validation_failed = false;
};

SimMode parse_mode(const std::string& mode) {
  return mode == "timeline" ? SimMode::kTimeline : SimMode::kSlot;
}

bool option_given(const CLI::App& cmd, const std::string& name) {
  const CLI::Option* opt = cmd.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

// Flags override file values; the file overrides built-in defaults.
ExperimentConfig resolve_config(const CliState& s, const CLI::App& cmd) {
  ExperimentConfig cfg;
  if (!s.config_path.empty()) {
    cfg = load_config(s.config_path, &std::clog);
  } else {
    std::clog << "config: no file given; using built-in defaults\n";
  }
  if (option_given(cmd, "--p")) cfg.net.loss_rate = s.p;
  if (option_given(cmd, "--seed")) cfg.sweep.seed = s.seed;
  if (option_given(cmd, "--trials")) cfg.sweep.trials = s.trials;
  validate(cfg);
  return cfg;
}

void with_output(const std::string& out_path, const std::function<void(std::ostream&)>& fn) {
  if (out_path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream file(out_path);
  if (!file) {
    throw ConfigError("cannot open output file: " + out_path);
  }
  fn(file);
}

void add_common_flags(CLI::App* cmd, CliState& s) {
  cmd->add_option("--config", s.config_path, "Config file (sectioned key=value)");
  cmd->add_option("--out", s.out_path, "Write CSV here instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint buffer-delay / FEC-redundancy planning laboratory"};
  app.require_subcommand(1);
  CliState s;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Analytic recovery rate and quality scores for one operating point");
  add_common_flags(analyze, s);
  analyze->add_option("--p", s.p, "Packet loss rate override");
  analyze->add_option("--r", s.r, "FEC redundancy ratio")->required();
  analyze->add_option("--d", s.d, "Buffer delay in RTT multiples")->required();

  CLI::App* optimize =
      app.add_subcommand("optimize", "Grid search for the best (r, d) plan");
  add_common_flags(optimize, s);
  optimize->add_option("--p", s.p, "Packet loss rate override");
  optimize->add_flag("--exact-xi", s.exact_xi,
                     "Score plans with the exact oracle instead of the closed form");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo recovery-rate estimate for one plan");
  add_common_flags(simulate, s);
  simulate->add_option("--p", s.p, "Packet loss rate override");
  simulate->add_option("--r", s.r, "FEC redundancy ratio")->required();
  simulate->add_option("--d", s.d, "Buffer delay in RTT multiples")->required();
  simulate->add_option("--mode", s.mode, "Simulation mode")
      ->check(CLI::IsMember({"slot", "timeline"}));
  simulate->add_option("--trials", s.trials, "Trial count override");
  simulate->add_option("--seed", s.seed, "Root RNG seed override");
  simulate->add_option("--threads", s.threads, "Worker threads (0 = auto)");

  CLI::App* fig2 = app.add_subcommand(
      "sweep-fig2", "Recovery rate vs redundancy, one curve per configured delay");
  add_common_flags(fig2, s);
  fig2->add_option("--mode", s.mode, "Simulation mode")
      ->check(CLI::IsMember({"slot", "timeline"}));
  fig2->add_option("--trials", s.trials, "Trial count override");
  fig2->add_option("--seed", s.seed, "Root RNG seed override");
  fig2->add_option("--threads", s.threads, "Worker threads (0 = auto)");

  CLI::App* fig3 = app.add_subcommand(
      "sweep-fig3", "Recovery rate vs loss rate, one curve per configured redundancy");
  add_common_flags(fig3, s);
  fig3->add_option("--mode", s.mode, "Simulation mode")
      ->check(CLI::IsMember({"slot", "timeline"}));
  fig3->add_option("--trials", s.trials, "Trial count override");
  fig3->add_option("--seed", s.seed, "Root RNG seed override");
  fig3->add_option("--threads", s.threads, "Worker threads (0 = auto)");

  CLI::App* qoe = app.add_subcommand(
      "sweep-qoe", "Planner comparison (BD-HARQ vs DR vs DD) across loss rates");
  add_common_flags(qoe, s);
  qoe->add_option("--seed", s.seed, "Root RNG seed override (metadata only)");

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Cross-check the closed form and the simulator against the exact oracle");
  add_common_flags(validate_cmd, s);
  validate_cmd->add_option("--trials", s.trials, "Trial count override");
  validate_cmd->add_option("--seed", s.seed, "Root RNG seed override");
  validate_cmd->add_option("--threads", s.threads, "Worker threads (0 = auto)");
  validate_cmd->add_option("--corrupt-cdf", s.corrupt_cdf,
                           "Test hook: bias added to the closed-form rate")
      ->group("");

  analyze->callback([&] {
    const ExperimentConfig cfg = resolve_config(s, *analyze);
    with_output(s.out_path,
                [&](std::ostream& out) { write_analyze_csv(out, cfg, {s.r, s.d}); });
  });
  optimize->callback([&] {
    const ExperimentConfig cfg = resolve_config(s, *optimize);
    with_output(s.out_path, [&](std::ostream& out) {
      write_optimize_csv(out, cfg, s.exact_xi ? XiModel::kExact : XiModel::kGaussian);
    });
  });
  simulate->callback([&] {
    const ExperimentConfig cfg = resolve_config(s, *simulate);
    with_output(s.out_path, [&](std::ostream& out) {
      write_simulate_csv(out, cfg, parse_mode(s.mode), {s.r, s.d}, s.threads);
    });
  });
  fig2->callback([&] {
    const ExperimentConfig cfg = resolve_config(s, *fig2);
    with_output(s.out_path, [&](std::ostream& out) {
      write_sweep_fig2_csv(out, cfg, parse_mode(s.mode), s.threads);
    });
  });
  fig3->callback([&] {
    const ExperimentConfig cfg = resolve_config(s, *fig3);
    with_output(s.out_path, [&](std::ostream& out) {
      write_sweep_fig3_csv(out, cfg, parse_mode(s.mode), s.threads);
    });
  });
  qoe->callback([&] {
    const ExperimentConfig cfg = resolve_config(s, *qoe);
    with_output(s.out_path, [&](std::ostream& out) { write_sweep_qoe_csv(out, cfg); });
  });
  validate_cmd->callback([&] {
    const ExperimentConfig cfg = resolve_config(s, *validate_cmd);
    ValidationSummary summary;
    with_output(s.out_path, [&](std::ostream& out) {
      summary = run_validate(out, cfg, s.threads, s.corrupt_cdf);
    });
    std::cerr << "validate: max |xi_exact - xi_gauss| = " << summary.max_gauss_gap << " at p="
              << summary.worst_loss_rate << " r=" << summary.worst_plan.redundancy
              << " d=" << summary.worst_plan.delay << " (bound " << summary.gauss_bound
              << ") -> " << (summary.gauss_ok ? "ok" : "VIOLATION") << '\n';
    std::cerr << "validate: MC within 3 half-widths on " << summary.mc_within << "/"
              << summary.mc_points << " points (need >= 99%) -> "
              << (summary.mc_ok ? "ok" : "VIOLATION") << '\n';
    s.validation_failed = !summary.ok();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return s.validation_failed ? 3 : 0;
}
