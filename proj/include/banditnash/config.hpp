#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "banditnash/joint.hpp"

namespace banditnash {

// Flat key = value configuration with dotted sections, e.g.
//
//   game.name   = cournot
//   algo        = bandit
//   schedule.a1 = 5/9
//   seeds       = 1,2,3
//   T           = 200000
//   log_every   = 100
//   target      = known
//   output_dir  = out/cournot
//
// Exponents accept decimals or fraction strings.
struct ExperimentConfig {
  std::string game_name;
  // Inline custom affine game over free sets (alternative to game.name).
  std::optional<Matrix> game_B;
  std::optional<Vector> game_b;

  std::string algo = "bandit";  // bandit | bandit-no-eps | one-timescale | tikhonov-path
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
  long t_offset = 1;
  std::optional<double> r_cap;

  std::vector<std::uint64_t> seeds;
  long T = 0;
  long log_every = 1;

  // "known", "least-norm", or an explicit comma-separated point; empty for none.
  std::string target;
  std::optional<Vector> mu0;  // also used as z0 for deterministic algos
  std::filesystem::path output_dir;
};

double parse_fraction(const std::string& text);  // "5/9" or "0.5556"

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Canonical key = value echo; reparses to an equivalent config.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace banditnash
