#ifndef CLUBGOOD_CLI_HPP
#define CLUBGOOD_CLI_HPP

#include <clubgood/congestion_index.hpp>
#include <clubgood/scenario.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clubgood::cli {

enum class Command { Solve, Curve, Sweep, Fracture, Index, Placebo };
enum class OutputFormat { Csv, Json, Svg };

inline constexpr const char* kStdout = "-";

/// Per-parameter overrides layered over a preset.
struct ParamOverrides {
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<double> theta;
  std::optional<double> gamma;
  std::optional<double> phi;
  std::optional<double> capacity;

  bool complete() const {
    return alpha && delta && theta && gamma && phi && capacity;
  }
  bool any() const {
    return alpha || delta || theta || gamma || phi || capacity;
  }
};

struct RunConfig {
  Command command = Command::Solve;
  std::optional<std::string> preset;
  ParamOverrides overrides;
  std::string output_path = kStdout;
  OutputFormat output_format = OutputFormat::Json;
  unsigned threads = 0;

  std::optional<double> m_at;  // --at

  // curve
  double m_max = 12.0;
  int points = 121;

  // sweep
  SweepParameter sweep_param = SweepParameter::Phi;
  std::vector<double> sweep_values;

  // fracture
  std::vector<CapacityGroup> groups;

  // index
  std::string corpus_path;
  std::string query_path;
  std::optional<std::string> source;
  CountMode count_mode = CountMode::Documents;

  // placebo
  std::string treatment_path;
  std::string control_path;
  int year_from = 0;
  int year_to = 0;
};

/// Raised by parse_cli for help requests and usage errors. `exit_code` is 0
/// for --help, nonzero otherwise; `message` is the text to print.
class CliExit : public std::runtime_error {
 public:
  CliExit(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// argv without the program name.
RunConfig parse_cli(const std::vector<std::string>& args);

/// Resolves preset and overrides into a validated parameter vector, plus the
/// preset's actual intensity when one was named.
struct ResolvedScenario {
  std::string name;
  ModelParams params;
  std::optional<double> m_actual;
};
ResolvedScenario resolve_scenario(const RunConfig& config);

/// Executes the command and writes its result. Diagnostics go to `diag`.
/// Returns the process exit status.
int run(const RunConfig& config, std::ostream& diag);

/// Full entry point: parse, run, report. Returns the exit status.
int main(int argc, const char* const* argv);

}  // namespace clubgood::cli

#endif  // CLUBGOOD_CLI_HPP
