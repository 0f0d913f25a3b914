#ifndef PASSENT_CLI_HPP
#define PASSENT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "passent/entanglement.hpp"

namespace passent::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_not_entanglable = 1,
  exit_invalid_input = 2,
  exit_oracle_disagreement = 3,
};

struct ValiditySummary {
  std::string status;
  double min_eigenvalue = 0.0;
  double asymmetry = 0.0;
};

struct SqueezingSummary {
  std::vector<double> eigenvalues;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool is_squeezed = false;
};

struct VerdictSummary {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double product = 0.0;
  bool can_entangle = false;
  double lower_bound_bits = 0.0;
  double attainable_two_mode_bits = 0.0;
  bool separability_decided = true;
};

struct PlanSummary {
  double phase_angle = 0.0;
  double mixing_angle = 0.0;
  std::string two_mode_case;
  bool used_special_case = false;
  bool nothing_to_gain = false;
  double predicted_negativity_bits = 0.0;
  std::vector<std::vector<double>> real_form;  ///< 4x4 two-mode entangler
  std::string transform_path;
};

struct AchievedSummary {
  std::vector<double> symplectic_spectrum;
  double log_negativity_bits = 0.0;
  bool is_nppt = false;
  std::string label;
};

struct OracleSummary {
  std::uint64_t samples = 0;
  std::uint64_t refine_iters = 0;
  std::uint64_t seed = 0;
  double best_negativity_bits = 0.0;
  double closed_form_bits = 0.0;
  double discrepancy = 0.0;
  bool criterion_passed = false;
  bool subsystem_checked = false;
  double subsystem_best_bits = 0.0;
  bool agreement = false;
  std::string message;
};

/// Everything a subcommand found. Sections are present iff the subcommand
/// computed them.
struct Report {
  std::string command;
  std::string input_path;
  std::string input_digest;  ///< SHA-256 of the input file
  int modes = 0;
  std::string partition;
  std::optional<ValiditySummary> validity;
  std::optional<SqueezingSummary> squeezing;
  std::optional<VerdictSummary> verdict;
  std::optional<PlanSummary> plan;
  std::optional<AchievedSummary> achieved;
  std::optional<OracleSummary> oracle;
  std::vector<std::string> warnings;
  std::string error;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// Indented human-readable rendering, 6 significant digits.
std::string render_human(const Report& r);

/// "1,3:2,4" lists party A then party B (1-based). "a:b" with a + b == n is
/// also accepted as a contiguous split into a and b modes. Empty text gives
/// the first-half/second-half split.
ModePartition parse_partition(const std::string& text, int modes);

struct CommandResult {
  Report report;
  int exit_code = exit_ok;
  /// Payload for standard output instead of the report (apply/make without --out).
  std::optional<std::string> payload;
};

CommandResult cmd_check(const std::string& file, const std::string& partition);
CommandResult cmd_entangle(const std::string& file, const std::string& partition, const std::string& transform_out);
CommandResult cmd_apply(const std::string& state_file, const std::string& transform_file, const std::string& out);
CommandResult cmd_report(const std::string& file, const std::string& partition);
CommandResult cmd_oracle(const std::string& file, const std::string& partition, std::uint64_t samples,
                         std::uint64_t seed, std::uint64_t refine_iters = 2000, unsigned threads = 1);

struct MakeParams {
  std::optional<int> n;
  std::vector<double> r;
  std::vector<double> phase;
  std::vector<double> b;
  std::optional<double> a;
  std::optional<double> c;
  std::optional<double> d;
};

CommandResult cmd_make(const std::string& kind, const MakeParams& params, const std::string& out);

/// Full command line (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace passent::cli

#endif  // PASSENT_CLI_HPP
