#include "banditnash/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace banditnash {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const int nd = trace.rows.empty() ? 0 : static_cast<int>(trace.rows.front().mu.size());
  out << "algo,game,seed,t";
  for (int k = 0; k < nd; ++k) out << ",mu_" << k;
  for (int k = 0; k < nd; ++k) out << ",a_" << k;
  out << ",dist_to_target,gamma,sigma,eps,r\n";
  for (const auto& row : trace.rows) {
    out << trace.algo << ',' << trace.game << ',' << trace.seed << ',' << row.t;
    for (int k = 0; k < nd; ++k) out << ',' << format_g17(row.mu[k]);
    for (int k = 0; k < nd; ++k) out << ',' << format_g17(row.a[k]);
    out << ',' << format_g17(row.dist_to_target) << ','
        << format_g17(row.sched.gamma) << ',' << format_g17(row.sched.sigma)
        << ',' << format_g17(row.sched.eps) << ',' << format_g17(row.sched.r)
        << '\n';
  }
}

RunTrace to_run_trace(const IterateTrace& trace, const std::string& algo,
                      const std::string& game) {
  RunTrace out;
  out.algo = algo;
  out.game = game;
  out.aborted = trace.aborted;
  out.rows.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    out.rows.push_back({row.t, row.point, row.point, row.dist_to_target, row.sched});
  }
  return out;
}

ParsedTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty trace " + path.string());

  std::vector<std::string> cols;
  {
    std::stringstream ss(header);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  auto find_col = [&](const std::string& name) {
    auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end()) {
      throw std::runtime_error("trace schema mismatch: missing column " + name +
                               " in " + path.string());
    }
    return static_cast<int>(it - cols.begin());
  };
  const int c_algo = find_col("algo");
  const int c_game = find_col("game");
  const int c_seed = find_col("seed");
  const int c_t = find_col("t");
  const int c_dist = find_col("dist_to_target");

  ParsedTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != cols.size()) {
      throw std::runtime_error("trace schema mismatch in " + path.string());
    }
    trace.algo = fields[c_algo];
    trace.game = fields[c_game];
    trace.seed = std::stoull(fields[c_seed]);
    trace.t.push_back(std::stol(fields[c_t]));
    trace.dist_to_target.push_back(std::stod(fields[c_dist]));
  }
  return trace;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = static_cast<size_t>(std::ceil(pos));
  const double frac = pos - lo;
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

SummaryStats summarize(const std::vector<ParsedTrace>& traces) {
  if (traces.empty()) throw std::invalid_argument("no traces to summarize");
  const auto& grid = traces.front().t;
  for (const auto& tr : traces) {
    if (tr.t != grid) throw std::runtime_error("trace schema mismatch: t grids differ");
  }
  SummaryStats stats;
  stats.per_t.reserve(grid.size());
  for (size_t row = 0; row < grid.size(); ++row) {
    std::vector<double> d;
    d.reserve(traces.size());
    for (const auto& tr : traces) d.push_back(tr.dist_to_target[row]);
    stats.per_t.push_back({grid[row], percentile(d, 0.5), percentile(d, 0.1),
                           percentile(d, 0.9)});
  }
  const size_t n = grid.size();
  const size_t k = std::max<size_t>(1, n / 10);
  std::vector<double> head, tail;
  for (const auto& tr : traces) {
    head.insert(head.end(), tr.dist_to_target.begin(), tr.dist_to_target.begin() + k);
    tail.insert(tail.end(), tr.dist_to_target.end() - k, tr.dist_to_target.end());
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / v.size();
  };
  stats.initial_window_mean = mean(head);
  stats.final_window_mean = mean(tail);
  stats.initial_window_median = percentile(head, 0.5);
  stats.final_window_median = percentile(tail, 0.5);
  return stats;
}

void write_summary_csv(const std::filesystem::path& path, const SummaryStats& stats) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "kind,t,median,p10,p90,mean\n";
  for (const auto& row : stats.per_t) {
    out << "at_t," << row.t << ',' << format_g17(row.median) << ','
        << format_g17(row.p10) << ',' << format_g17(row.p90) << ",\n";
  }
  out << "initial_window,," << format_g17(stats.initial_window_median) << ",,,"
      << format_g17(stats.initial_window_mean) << '\n';
  out << "final_window,," << format_g17(stats.final_window_median) << ",,,"
      << format_g17(stats.final_window_mean) << '\n';
}

}  // namespace banditnash
