#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "banditnash/config.hpp"
#include "banditnash/game.hpp"
#include "banditnash/schedule.hpp"
#include "banditnash/trace_io.hpp"

namespace banditnash {

struct ExperimentOutputs {
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path summary_file;
  std::filesystem::path resolved_config_file;
};

// Builds the game from the config (catalog name or inline affine spec).
Game game_from_config(const ExperimentConfig& config);

// Schedule from the config; throws with the violated condition name and its
// margin when the exponents fail the validator appropriate to the algo
// (full validation for bandit runs, deterministic-mode otherwise).
Schedule schedule_from_config(const ExperimentConfig& config, const Game& game);

// Resolves the "target" key: explicit point, "known" equilibrium, or the
// "least-norm" solution (exact for affine games over free sets, otherwise
// the regularized solution at eps = 1e-8).
std::optional<Vector> resolve_target(const ExperimentConfig& config, const Game& game);

// Runs every seed (in parallel for stochastic algos), writes per-seed trace
// CSVs, a summary CSV, and a resolved-config echo. The BANDITNASH_OUTPUT_DIR
// environment variable overrides config.output_dir.
ExperimentOutputs run_experiment(const ExperimentConfig& config);

// Cross-seed summary for already-written traces.
SummaryStats summarize_files(const std::vector<std::filesystem::path>& traces,
                             const std::filesystem::path& output);

struct DiagnosticLine {
  std::string name;
  double measured = 0;
  double threshold = 0;
  bool pass = false;
};

struct DiagnosticReport {
  std::string suite;
  std::vector<DiagnosticLine> lines;
  bool all_passed() const;
};

// Fixed-fixture diagnostic suites: lemma2, decomposition, concentration,
// lemma3, schedules.
DiagnosticReport run_diagnostic_suite(const std::string& suite, std::uint64_t seed);

void write_diagnostic_report(const std::filesystem::path& path,
                             const DiagnosticReport& report);

}  // namespace banditnash
