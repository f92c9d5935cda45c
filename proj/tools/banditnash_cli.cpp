#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "banditnash/experiment.hpp"

namespace fs = std::filesystem;
using namespace banditnash;

namespace {

int cmd_run(const std::string& config_path) {
  ExperimentConfig config = parse_config_file(config_path);
  ExperimentOutputs outputs = run_experiment(config);
  for (const auto& p : outputs.trace_files) std::cout << p.string() << '\n';
  std::cout << outputs.summary_file.string() << '\n';
  std::cout << outputs.resolved_config_file.string() << '\n';
  return 0;
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
  // Supports a single '*' wildcard in the filename component.
  fs::path pat(pattern);
  fs::path dir = pat.parent_path().empty() ? "." : pat.parent_path();
  const std::string name = pat.filename().string();
  const auto star = name.find('*');
  std::vector<fs::path> out;
  if (star == std::string::npos) {
    out.push_back(pat);
    return out;
  }
  const std::string prefix = name.substr(0, star);
  const std::string suffix = name.substr(star + 1);
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string f = entry.path().filename().string();
    if (f.size() >= prefix.size() + suffix.size() &&
        f.compare(0, prefix.size(), prefix) == 0 &&
        f.compare(f.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_summarize(const std::string& pattern, const std::string& output) {
  auto files = expand_glob(pattern);
  if (files.empty()) {
    std::cerr << "no traces match " << pattern << '\n';
    return 1;
  }
  summarize_files(files, output);
  std::cout << output << '\n';
  return 0;
}

int cmd_diagnose(const std::string& suite, std::uint64_t seed,
                 const std::string& output) {
  DiagnosticReport report = run_diagnostic_suite(suite, seed);
  for (const auto& line : report.lines) {
    std::cout << (line.pass ? "pass" : "FAIL") << "  " << line.name
              << "  measured=" << format_g17(line.measured)
              << "  threshold=" << format_g17(line.threshold) << '\n';
  }
  if (!output.empty()) write_diagnostic_report(output, report);
  return report.all_passed() ? 0 : 1;
}

int cmd_validate(const std::string& a1, const std::string& a2,
                 const std::string& a3, const std::string& a4) {
  ScheduleReport rep =
      validate_exponents(parse_fraction(a1), parse_fraction(a2),
                         parse_fraction(a3), parse_fraction(a4));
  auto show = [](const char* name, const ConditionResult& c) {
    std::cout << name << ": " << (c.satisfied ? "satisfied" : "violated")
              << " (margin " << format_g17(c.margin) << ")\n";
  };
  show("condition i", rep.i);
  show("condition ii", rep.ii);
  show("condition iii", rep.iii);
  show("condition iv", rep.iv);
  std::cout << (rep.valid() ? "valid" : "invalid") << '\n';
  return rep.valid() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payoff-based equilibrium learning experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "key = value config file")->required();

  std::string glob_pattern, summary_out;
  auto* summ = app.add_subcommand("summarize", "Summarize trace CSVs across seeds");
  summ->add_option("glob", glob_pattern, "trace file pattern, e.g. out/trace_*.csv")
      ->required();
  summ->add_option("-o,--output", summary_out, "summary CSV path")->required();

  std::string suite, diag_out;
  std::uint64_t seed = 12345;
  auto* diag = app.add_subcommand("diagnose", "Run a numerical diagnostic suite");
  diag->add_option("suite", suite,
                   "lemma2 | decomposition | concentration | lemma3 | schedules")
      ->required();
  diag->add_option("--seed", seed, "Monte-Carlo seed");
  diag->add_option("-o,--output", diag_out, "optional report CSV path");

  std::string a1, a2, a3, a4;
  auto* val = app.add_subcommand("validate-schedule",
                                 "Check the four exponent conditions");
  val->add_option("--a1", a1)->required();
  val->add_option("--a2", a2)->required();
  val->add_option("--a3", a3)->required();
  val->add_option("--a4", a4)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (summ->parsed()) return cmd_summarize(glob_pattern, summary_out);
    if (diag->parsed()) return cmd_diagnose(suite, seed, diag_out);
    if (val->parsed()) return cmd_validate(a1, a2, a3, a4);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
