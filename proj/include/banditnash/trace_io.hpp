#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "banditnash/learner.hpp"
#include "banditnash/vi.hpp"

namespace banditnash {

// All numeric I/O uses decimal text with 17 significant digits.
std::string format_g17(double v);

// Trace CSV schema (one row per logged step):
//   algo,game,seed,t,mu_0..mu_{Nd-1},a_0..a_{Nd-1},dist_to_target,gamma,sigma,eps,r
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);

// Deterministic iterates share the bandit schema; the iterate fills both the
// mu and a columns.
RunTrace to_run_trace(const IterateTrace& trace, const std::string& algo,
                      const std::string& game);

struct ParsedTrace {
  std::string algo;
  std::string game;
  std::uint64_t seed = 0;
  std::vector<long> t;
  std::vector<double> dist_to_target;
};

ParsedTrace read_trace_csv(const std::filesystem::path& path);

struct SummaryRow {
  long t = 0;
  double median = 0, p10 = 0, p90 = 0;  // across seeds at this t
};

struct SummaryStats {
  std::vector<SummaryRow> per_t;
  // Pooled over the first/last 10% of logged rows of every trace.
  double initial_window_mean = 0, final_window_mean = 0;
  double initial_window_median = 0, final_window_median = 0;
};

// Cross-seed percentiles at each logged t plus window statistics. Throws on
// inconsistent time grids.
SummaryStats summarize(const std::vector<ParsedTrace>& traces);

void write_summary_csv(const std::filesystem::path& path, const SummaryStats& stats);

// Linear-interpolation percentile (q in [0,1]); the two-point median is the
// midpoint under this convention.
double percentile(std::vector<double> values, double q);

}  // namespace banditnash
