#include <clubgood/cli.hpp>

#include <clubgood/io.hpp>

#include <CLI11.hpp>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace clubgood::cli {

namespace {

constexpr int kUsageError = 2;

const std::map<std::string, OutputFormat> kFormats{
    {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}, {"svg", OutputFormat::Svg}};

OutputFormat default_format(Command c) {
  switch (c) {
    case Command::Curve:
    case Command::Sweep:
    case Command::Index:
      return OutputFormat::Csv;
    default:
      return OutputFormat::Json;
  }
}

std::optional<OutputFormat> format_from_extension(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  const auto it = kFormats.find(path.substr(dot + 1));
  if (it == kFormats.end()) return std::nullopt;
  return it->second;
}

std::vector<CapacityGroup> parse_groups(const std::vector<std::string>& specs) {
  std::vector<CapacityGroup> groups;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw CliExit(kUsageError, "--groups expects label=K entries, got \"" + spec + "\"");
    }
    double k = 0;
    try {
      std::size_t used = 0;
      k = std::stod(spec.substr(eq + 1), &used);
      if (used != spec.size() - eq - 1) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw CliExit(kUsageError, "--groups: capacity is not a number in \"" + spec + "\"");
    }
    groups.push_back({spec.substr(0, eq), k});
  }
  return groups;
}

void add_scenario_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--preset", cfg.preset, "Built-in scenario")
      ->check(CLI::IsMember([] {
        std::vector<std::string> names;
        for (const auto& p : builtin_presets()) names.push_back(p.name);
        return names;
      }()));
  sub->add_option("--alpha", cfg.overrides.alpha, "Baseline technology level");
  sub->add_option("--delta", cfg.overrides.delta, "Catch-up parameter");
  sub->add_option("--theta", cfg.overrides.theta, "Benefit elasticity");
  sub->add_option("--gamma", cfg.overrides.gamma, "Sensitivity to disorder");
  sub->add_option("--phi", cfg.overrides.phi, "Congestion elasticity");
  sub->add_option("--capacity", cfg.overrides.capacity, "Institutional capacity K");
}

void add_output_options(CLI::App* sub, RunConfig& cfg, std::string& format,
                        std::vector<std::string> allowed) {
  sub->add_option("--out", cfg.output_path, "Output file ('-' for stdout)");
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember(allowed));
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
}

}  // namespace

RunConfig parse_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::string format;
  std::vector<std::string> group_specs;
  std::string sweep_param;
  std::string count_mode = "documents";

  CLI::App app{"Optimal globalization under congestible institutional capacity", "clubgood"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  auto* solve = app.add_subcommand("solve", "Optimal intensity M* for one economy");
  add_scenario_options(solve, cfg);
  solve->add_option("--at", cfg.m_at, "Actual intensity to diagnose");
  add_output_options(solve, cfg, format, {"csv", "json", "svg"});

  auto* curve = app.add_subcommand("curve", "Benefit, cost and welfare on a grid");
  add_scenario_options(curve, cfg);
  curve->add_option("--m-max", cfg.m_max, "Upper end of the grid")->check(CLI::PositiveNumber);
  curve->add_option("--points", cfg.points, "Grid points (>= 2)")->check(CLI::Range(2, 1000000));
  add_output_options(curve, cfg, format, {"csv", "json", "svg"});

  auto* sweep = app.add_subcommand("sweep", "Equilibria across values of one parameter");
  add_scenario_options(sweep, cfg);
  sweep->add_option("--param", sweep_param, "Parameter to vary")
      ->required()
      ->check(CLI::IsMember({"phi", "capacity", "delta", "alpha", "gamma", "theta"}));
  sweep->add_option("--values", cfg.sweep_values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--at", cfg.m_at, "Reference actual intensity");
  add_output_options(sweep, cfg, format, {"csv", "json", "svg"});

  auto* fracture = app.add_subcommand("fracture", "Per-group optima under heterogeneous capacity");
  add_scenario_options(fracture, cfg);
  fracture->add_option("--groups", group_specs, "label=K,label=K,...")
      ->required()
      ->delimiter(',');
  fracture->add_option("--at", cfg.m_at, "Actual intensity");
  add_output_options(fracture, cfg, format, {"csv", "json", "svg"});

  auto* index = app.add_subcommand("index", "Yearly proximity-hit counts over a corpus");
  index->add_option("--corpus", cfg.corpus_path, "Newline-delimited JSON corpus")->required();
  index->add_option("--query", cfg.query_path, "Query JSON file")->required();
  index->add_option("--source", cfg.source, "Only scan documents with this source_tag");
  index->add_option("--count", count_mode, "documents (default) or occurrences")
      ->check(CLI::IsMember({"documents", "occurrences"}));
  add_output_options(index, cfg, format, {"csv", "json", "svg"});

  auto* placebo = app.add_subcommand("placebo", "Compare growth of a treatment and a control index");
  placebo->add_option("--treatment", cfg.treatment_path, "Treatment index CSV")->required();
  placebo->add_option("--control", cfg.control_path, "Control index CSV")->required();
  placebo->add_option("--from", cfg.year_from, "Base year")->required();
  placebo->add_option("--to", cfg.year_to, "Comparison year")->required();
  add_output_options(placebo, cfg, format, {"csv", "json", "svg"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    throw CliExit(code, out.str() + err.str());
  }

  if (solve->parsed()) cfg.command = Command::Solve;
  if (curve->parsed()) cfg.command = Command::Curve;
  if (sweep->parsed()) cfg.command = Command::Sweep;
  if (fracture->parsed()) cfg.command = Command::Fracture;
  if (index->parsed()) cfg.command = Command::Index;
  if (placebo->parsed()) cfg.command = Command::Placebo;

  if (!format.empty()) {
    cfg.output_format = kFormats.at(format);
  } else if (const auto inferred = format_from_extension(cfg.output_path)) {
    cfg.output_format = *inferred;
  } else {
    cfg.output_format = default_format(cfg.command);
  }
  if (cfg.output_format == OutputFormat::Svg && cfg.command != Command::Curve &&
      cfg.command != Command::Index) {
    throw CliExit(kUsageError, "svg output is only available for curve and index");
  }

  const bool needs_scenario = cfg.command == Command::Solve || cfg.command == Command::Curve ||
                              cfg.command == Command::Sweep || cfg.command == Command::Fracture;
  if (needs_scenario && !cfg.preset && !cfg.overrides.complete()) {
    throw CliExit(kUsageError,
                  "missing required flag: --preset, or all of --alpha --delta --theta "
                  "--gamma --phi --capacity");
  }
  if (cfg.command == Command::Sweep) cfg.sweep_param = *parse_sweep_parameter(sweep_param);
  if (cfg.command == Command::Fracture) cfg.groups = parse_groups(group_specs);
  if (cfg.command == Command::Index) {
    cfg.count_mode = count_mode == "occurrences" ? CountMode::Occurrences : CountMode::Documents;
  }
  return cfg;
}

ResolvedScenario resolve_scenario(const RunConfig& config) {
  const auto& o = config.overrides;
  if (!config.preset) {
    if (!o.complete()) throw std::invalid_argument("incomplete parameter set");
    return {"custom",
            ModelParams::make(*o.alpha, *o.delta, *o.theta, *o.gamma, *o.phi, *o.capacity),
            std::nullopt};
  }
  const auto& preset = find_preset(*config.preset);
  const auto& b = preset.params;
  return {o.any() ? preset.name + "+overrides" : preset.name,
          ModelParams::make(o.alpha.value_or(b.alpha()), o.delta.value_or(b.delta()),
                            o.theta.value_or(b.theta()), o.gamma.value_or(b.gamma()),
                            o.phi.value_or(b.phi()), o.capacity.value_or(b.capacity())),
          preset.m_actual};
}

namespace {

double reference_intensity(const RunConfig& config, const ResolvedScenario& s) {
  if (config.m_at) return *config.m_at;
  if (s.m_actual) return *s.m_actual;
  throw std::invalid_argument("--at is required when no preset supplies an actual intensity");
}

template <typename T>
std::string render(const T& value, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    std::ostringstream out;
    write_csv(out, value);
    return out.str();
  }
  if constexpr (requires { render_svg(value); }) {
    if (format == OutputFormat::Svg) return render_svg(value);
  }
  return nlohmann::json(value).dump(2) + "\n";
}

std::string execute(const RunConfig& config) {
  switch (config.command) {
    case Command::Solve: {
      const auto s = resolve_scenario(config);
      SolveReport report{s.name, s.params, optimal_m_closed_form(s.params), std::nullopt};
      if (config.m_at) report.diagnosis = diagnose_zone(*config.m_at, report.equilibrium.m_star);
      return render(report, config.output_format);
    }
    case Command::Curve: {
      const auto s = resolve_scenario(config);
      return render(welfare_curve(s.params, config.m_max, config.points), config.output_format);
    }
    case Command::Sweep: {
      const auto s = resolve_scenario(config);
      return render(sensitivity_sweep(s.params, config.sweep_param, config.sweep_values,
                                      reference_intensity(config, s), config.threads),
                    config.output_format);
    }
    case Command::Fracture: {
      const auto s = resolve_scenario(config);
      const auto economy =
          FracturedEconomy::make(s.params, config.groups, reference_intensity(config, s));
      return render(analyze_fracture(economy, config.threads), config.output_format);
    }
    case Command::Index: {
      const auto corpus = load_corpus(config.corpus_path);
      const auto query = load_query(config.query_path);
      return render(build_index(corpus, query, config.source, config.count_mode,
                                config.threads, config.query_path),
                    config.output_format);
    }
    case Command::Placebo: {
      const auto treatment = load_index_csv(config.treatment_path);
      const auto control = load_index_csv(config.control_path);
      const auto cmp = placebo_compare(treatment, control, config.year_from, config.year_to);
      if (config.output_format == OutputFormat::Csv) {
        std::ostringstream out;
        write_csv(out, cmp, config.year_from, config.year_to);
        return out.str();
      }
      nlohmann::json j = cmp;
      j["year_from"] = config.year_from;
      j["year_to"] = config.year_to;
      return j.dump(2) + "\n";
    }
  }
  throw std::logic_error("unhandled command");
}

bool use_color() {
  return std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO) != 0;
}

void report_error(std::ostream& diag, const std::string& message, bool color) {
  if (color) {
    diag << "\033[31merror:\033[0m " << message << '\n';
  } else {
    diag << "error: " << message << '\n';
  }
}

int run_impl(const RunConfig& config, std::ostream& diag, bool color) {
  std::string text;
  try {
    text = execute(config);
  } catch (const std::exception& e) {
    report_error(diag, e.what(), color);
    return 1;
  }

  if (config.output_path == kStdout) {
    std::cout << text << std::flush;
    return std::cout ? 0 : 1;
  }
  std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) {
    report_error(diag, "cannot write output file: " + config.output_path, color);
    return 1;
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& diag) {
  return run_impl(config, diag, false);
}

int main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  const bool color = use_color();
  RunConfig config;
  try {
    config = parse_cli(args);
  } catch (const CliExit& e) {
    if (e.exit_code() == 0) {
      std::cout << e.what();
    } else {
      std::string msg = e.what();
      while (!msg.empty() && msg.back() == '\n') msg.pop_back();
      report_error(std::cerr, msg, color);
    }
    return e.exit_code();
  }
  return run_impl(config, std::cerr, color);
}

}  // namespace clubgood::cli
