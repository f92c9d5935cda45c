#include "banditnash/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "banditnash/trace_io.hpp"

namespace banditnash {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

Vector parse_vector(const std::string& text) {
  auto parts = split(text, ',');
  Vector v(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) v[i] = std::stod(parts[i]);
  return v;
}

Matrix parse_matrix(const std::string& text) {
  auto rows = split(text, ';');
  std::vector<Vector> parsed;
  for (const auto& row : rows) {
    std::stringstream ss(row);
    std::vector<double> vals;
    double v;
    while (ss >> v) vals.push_back(v);
    Vector r(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) r[i] = vals[i];
    parsed.push_back(r);
  }
  if (parsed.empty()) throw std::invalid_argument("empty matrix literal");
  Matrix m(parsed.size(), parsed.front().size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i].size() != m.cols()) {
      throw std::invalid_argument("ragged matrix literal");
    }
    m.row(i) = parsed[i].transpose();
  }
  return m;
}

std::string vector_literal(const Vector& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_g17(v[i]);
  }
  return out;
}

std::string matrix_literal(const Matrix& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += " ";
      out += format_g17(m(i, j));
    }
  }
  return out;
}

}  // namespace

double parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  const double num = std::stod(trim(text.substr(0, slash)));
  const double den = std::stod(trim(text.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator in " + text);
  return num / den;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line without '=': " + line);
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  ExperimentConfig c;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("game.name")) c.game_name = *v;
  if (auto v = take("game.B")) c.game_B = parse_matrix(*v);
  if (auto v = take("game.b")) c.game_b = parse_vector(*v);
  if (auto v = take("algo")) c.algo = *v;
  auto need = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw std::invalid_argument("config is missing key " + key);
    return *v;
  };
  c.a1 = parse_fraction(need("schedule.a1"));
  c.a2 = parse_fraction(need("schedule.a2"));
  c.a3 = parse_fraction(need("schedule.a3"));
  c.a4 = parse_fraction(need("schedule.a4"));
  if (auto v = take("schedule.t_offset")) c.t_offset = std::stol(*v);
  if (auto v = take("schedule.r_cap")) c.r_cap = std::stod(*v);
  if (auto v = take("seeds")) {
    for (const auto& s : split(*v, ',')) c.seeds.push_back(std::stoull(s));
  }
  c.T = std::stol(need("T"));
  if (auto v = take("log_every")) c.log_every = std::stol(*v);
  if (auto v = take("target")) c.target = *v;
  if (auto v = take("mu0")) c.mu0 = parse_vector(*v);
  c.output_dir = need("output_dir");

  if (!kv.empty()) {
    throw std::invalid_argument("unknown config key: " + kv.begin()->first);
  }
  if (c.game_name.empty() && !(c.game_B && c.game_b)) {
    throw std::invalid_argument("config needs game.name or inline game.B/game.b");
  }
  if (c.T < 1) throw std::invalid_argument("T must be >= 1");
  if (c.log_every < 1) throw std::invalid_argument("log_every must be >= 1");
  const bool stochastic = c.algo == "bandit" || c.algo == "bandit-no-eps";
  if (stochastic && c.seeds.empty()) {
    throw std::invalid_argument("stochastic algorithms need a nonempty seed list");
  }
  return c;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  if (!c.game_name.empty()) out << "game.name = " << c.game_name << '\n';
  if (c.game_B) out << "game.B = " << matrix_literal(*c.game_B) << '\n';
  if (c.game_b) out << "game.b = " << vector_literal(*c.game_b) << '\n';
  out << "algo = " << c.algo << '\n';
  out << "schedule.a1 = " << format_g17(c.a1) << '\n';
  out << "schedule.a2 = " << format_g17(c.a2) << '\n';
  out << "schedule.a3 = " << format_g17(c.a3) << '\n';
  out << "schedule.a4 = " << format_g17(c.a4) << '\n';
  out << "schedule.t_offset = " << c.t_offset << '\n';
  if (c.r_cap) out << "schedule.r_cap = " << format_g17(*c.r_cap) << '\n';
  if (!c.seeds.empty()) {
    out << "seeds = ";
    for (size_t i = 0; i < c.seeds.size(); ++i) {
      if (i) out << ',';
      out << c.seeds[i];
    }
    out << '\n';
  }
  out << "T = " << c.T << '\n';
  out << "log_every = " << c.log_every << '\n';
  if (!c.target.empty()) out << "target = " << c.target << '\n';
  if (c.mu0) out << "mu0 = " << vector_literal(*c.mu0) << '\n';
  out << "output_dir = " << c.output_dir.string() << '\n';
  return out.str();
}

}  // namespace banditnash
