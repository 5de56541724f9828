#include "bdharq/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "bdharq/csv.hpp"

namespace bdharq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double_value(std::string_view raw, const std::string& path) {
  const std::string text(raw);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || !std::isfinite(value)) {
    throw ConfigError(path + ": expected a number, got '" + text + "'");
  }
  return value;
}

template <typename Int>
Int parse_int_value(std::string_view raw, const std::string& path) {
  Int value{};
  const auto* begin = raw.data();
  const auto* end = raw.data() + raw.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || raw.empty()) {
    throw ConfigError(path + ": expected an integer, got '" + std::string(raw) + "'");
  }
  return value;
}

std::vector<double> parse_list_value(std::string_view raw, const std::string& path) {
  std::vector<double> values;
  std::string token;
  std::istringstream in{std::string(raw)};
  while (std::getline(in, token, ',')) {
    std::istringstream fields(token);
    std::string field;
    while (fields >> field) {
      values.push_back(parse_double_value(field, path));
    }
  }
  if (values.empty()) {
    throw ConfigError(path + ": expected a non-empty list of numbers");
  }
  return values;
}

std::string show_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

struct Binding {
  const char* section;
  const char* key;
  std::function<std::string(const ExperimentConfig&)> show;
  std::function<void(ExperimentConfig&, std::string_view, const std::string&)> assign;
};

template <typename Access>
Binding double_field(const char* section, const char* key, Access access) {
  return Binding{
      section, key,
      [access](const ExperimentConfig& c) { return format_double(access(c)); },
      [access](ExperimentConfig& c, std::string_view raw, const std::string& path) {
        access(c) = parse_double_value(raw, path);
      }};
}

template <typename Access>
Binding int_field(const char* section, const char* key, Access access) {
  return Binding{
      section, key,
      [access](const ExperimentConfig& c) { return std::to_string(access(c)); },
      [access](ExperimentConfig& c, std::string_view raw, const std::string& path) {
        access(c) = parse_int_value<std::decay_t<decltype(access(c))>>(raw, path);
      }};
}

template <typename Access>
Binding list_field(const char* section, const char* key, Access access) {
  return Binding{
      section, key,
      [access](const ExperimentConfig& c) { return show_list(access(c)); },
      [access](ExperimentConfig& c, std::string_view raw, const std::string& path) {
        access(c) = parse_list_value(raw, path);
      }};
}

#define BDHARQ_FIELD(expr) [](auto& c) -> auto& { return expr; }

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> table = {
      double_field("qoe", "weight_delay", BDHARQ_FIELD(c.qoe.weight_delay)),
      double_field("qoe", "weight_redundancy", BDHARQ_FIELD(c.qoe.weight_redundancy)),
      double_field("qoe", "weight_recovery", BDHARQ_FIELD(c.qoe.weight_recovery)),
      double_field("qoe", "delay_slope1", BDHARQ_FIELD(c.qoe.delay_slope1)),
      double_field("qoe", "delay_slope2", BDHARQ_FIELD(c.qoe.delay_slope2)),
      double_field("qoe", "delay_slope3", BDHARQ_FIELD(c.qoe.delay_slope3)),
      double_field("qoe", "delay_break1", BDHARQ_FIELD(c.qoe.delay_break1)),
      double_field("qoe", "delay_break2", BDHARQ_FIELD(c.qoe.delay_break2)),
      double_field("qoe", "delay_break3", BDHARQ_FIELD(c.qoe.delay_break3)),
      double_field("qoe", "redundancy_slope", BDHARQ_FIELD(c.qoe.redundancy_slope)),
      double_field("qoe", "redundancy_break", BDHARQ_FIELD(c.qoe.redundancy_break)),
      double_field("qoe", "recovery_slope1", BDHARQ_FIELD(c.qoe.recovery_slope1)),
      double_field("qoe", "recovery_slope2", BDHARQ_FIELD(c.qoe.recovery_slope2)),
      double_field("qoe", "recovery_slope3", BDHARQ_FIELD(c.qoe.recovery_slope3)),
      double_field("qoe", "recovery_break1", BDHARQ_FIELD(c.qoe.recovery_break1)),
      double_field("qoe", "recovery_break2", BDHARQ_FIELD(c.qoe.recovery_break2)),
      int_field("system", "packets_per_group", BDHARQ_FIELD(c.sys.packets_per_group)),
      double_field("system", "packet_bytes", BDHARQ_FIELD(c.sys.packet_bytes)),
      double_field("system", "bitrate_kbps", BDHARQ_FIELD(c.sys.bitrate_kbps)),
      double_field("system", "max_redundancy", BDHARQ_FIELD(c.sys.max_redundancy)),
      double_field("system", "max_delay", BDHARQ_FIELD(c.sys.max_delay)),
      double_field("system", "redundancy_step", BDHARQ_FIELD(c.sys.redundancy_step)),
      double_field("system", "delay_step", BDHARQ_FIELD(c.sys.delay_step)),
      double_field("network", "loss_rate", BDHARQ_FIELD(c.net.loss_rate)),
      double_field("network", "rtt", BDHARQ_FIELD(c.net.rtt)),
      list_field("sweep", "loss_rates", BDHARQ_FIELD(c.sweep.loss_rates)),
      list_field("sweep", "redundancies", BDHARQ_FIELD(c.sweep.redundancies)),
      list_field("sweep", "delays", BDHARQ_FIELD(c.sweep.delays)),
      int_field("sweep", "trials", BDHARQ_FIELD(c.sweep.trials)),
      int_field("sweep", "seed", BDHARQ_FIELD(c.sweep.seed)),
      double_field("sweep", "fig2_loss_rate", BDHARQ_FIELD(c.sweep.fig2_loss_rate)),
      double_field("sweep", "fig3_delay", BDHARQ_FIELD(c.sweep.fig3_delay)),
      list_field("sweep", "validate_mc_loss_rates", BDHARQ_FIELD(c.sweep.validate_mc_loss_rates)),
      double_field("sweep", "gauss_gap_bound", BDHARQ_FIELD(c.sweep.gauss_gap_bound)),
      double_field("baselines", "fixed_delay", BDHARQ_FIELD(c.baselines.fixed_delay)),
      double_field("baselines", "fixed_redundancy", BDHARQ_FIELD(c.baselines.fixed_redundancy)),
  };
  return table;
}

#undef BDHARQ_FIELD

std::string field_path(const Binding& b) {
  return std::string("[") + b.section + "] " + b.key;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  validate(cfg.qoe);
  try {
    validate(cfg.sys);
    validate(cfg.net);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  auto check_rates = [](const std::vector<double>& rates, const char* path) {
    for (const double p : rates) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(path) + ": loss rates must lie in [0, 1]");
      }
    }
  };
  check_rates(cfg.sweep.loss_rates, "[sweep] loss_rates");
  check_rates(cfg.sweep.validate_mc_loss_rates, "[sweep] validate_mc_loss_rates");
  if (!(cfg.sweep.fig2_loss_rate >= 0.0 && cfg.sweep.fig2_loss_rate <= 1.0)) {
    throw ConfigError("[sweep] fig2_loss_rate: loss rates must lie in [0, 1]");
  }
  for (const double r : cfg.sweep.redundancies) {
    if (!(r >= 0.0)) {
      throw ConfigError("[sweep] redundancies: entries must be nonnegative");
    }
  }
  for (const double d : cfg.sweep.delays) {
    if (!(d >= 0.0)) {
      throw ConfigError("[sweep] delays: entries must be nonnegative");
    }
  }
  if (!(cfg.sweep.fig3_delay >= 0.0)) {
    throw ConfigError("[sweep] fig3_delay: must be nonnegative");
  }
  if (!(cfg.sweep.gauss_gap_bound > 0.0)) {
    throw ConfigError("[sweep] gauss_gap_bound: must be positive");
  }
  try {
    if (!(cfg.baselines.fixed_delay >= 0.0 &&
          cfg.baselines.fixed_delay <= cfg.sys.max_delay + kGridEps)) {
      throw ConfigError("[baselines] fixed_delay: must lie in [0, max_delay]");
    }
    if (!(cfg.baselines.fixed_redundancy >= 0.0 &&
          cfg.baselines.fixed_redundancy <= cfg.sys.max_redundancy + kGridEps)) {
      throw ConfigError("[baselines] fixed_redundancy: must lie in [0, max_redundancy]");
    }
    fec_packet_count(cfg.sys, TransmissionPlan{cfg.baselines.fixed_redundancy, 0.0});
  } catch (const DomainError& e) {
    throw ConfigError(std::string("[baselines] fixed_redundancy: ") + e.what());
  }
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin,
                              std::ostream* log) {
  std::map<std::string, std::string> values;
  std::string section;
  std::size_t line_number = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (const auto cut = view.find_first_of("#;"); cut != std::string_view::npos) {
      view = view.substr(0, cut);
    }
    view = trim(view);
    if (view.empty()) continue;

    const std::string where = std::string(origin) + ":" + std::to_string(line_number);
    if (view.front() == '[') {
      if (view.back() != ']') {
        throw ConfigError(where + ": malformed section header '" + std::string(view) + "'");
      }
      section = std::string(trim(view.substr(1, view.size() - 2)));
      bool known = false;
      for (const Binding& b : bindings()) {
        known = known || section == b.section;
      }
      if (!known) {
        throw ConfigError(where + ": unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigError(where + ": key outside any [section]");
    }
    const std::string key{trim(view.substr(0, eq))};
    const std::string value{trim(view.substr(eq + 1))};
    bool known = false;
    for (const Binding& b : bindings()) {
      known = known || (section == b.section && key == b.key);
    }
    if (!known) {
      throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
    }
    values[section + "\n" + key] = value;  // repeated keys: last one wins
  }

  ExperimentConfig cfg;
  for (const Binding& b : bindings()) {
    const auto found = values.find(std::string(b.section) + "\n" + b.key);
    if (found != values.end()) {
      b.assign(cfg, found->second, field_path(b));
    } else if (log != nullptr) {
      *log << "config: " << field_path(b) << " not set; using default " << b.show(cfg)
           << "\n";
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path, std::ostream* log) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path, log);
}

std::string canonical_config(const ExperimentConfig& cfg) {
  std::string out;
  std::string_view section;
  for (const Binding& b : bindings()) {
    if (section != b.section) {
      section = b.section;
      out += "[";
      out += b.section;
      out += "]\n";
    }
    out += b.key;
    out += "=";
    out += b.show(cfg);
    out += "\n";
  }
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char byte : canonical_config(cfg)) {
    hash ^= static_cast<unsigned char>(byte);
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace bdharq
