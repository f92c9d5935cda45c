#include "banditnash/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "banditnash/rng.hpp"

namespace banditnash {

namespace {

void check_mc_args(double sigma, long n) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (n < 1) throw std::invalid_argument("need at least one sample");
}

}  // namespace

MonteCarloEstimate estimate_smoothed_gradient(const Game& game, int player,
                                              const Vector& mu, double sigma,
                                              long n, std::uint64_t seed) {
  check_mc_args(sigma, n);
  const int d = game.layout.dim_per_player;
  const int nd = game.layout.total_dim();
  GaussianStream rng(seed, /*stream=*/0x736d);
  Vector sum = Vector::Zero(d);
  Vector sum_sq = Vector::Zero(d);
  Vector x(nd);
  for (long s = 0; s < n; ++s) {
    x = mu + sigma * rng.normal_vector(nd);
    const double J = game.cost(player, x);
    Vector f = J * (x.segment(player * d, d) - mu.segment(player * d, d)) /
               (sigma * sigma);
    sum += f;
    sum_sq += f.cwiseProduct(f);
  }
  MonteCarloEstimate out;
  out.estimate = sum / static_cast<double>(n);
  Vector var = sum_sq / static_cast<double>(n) -
               out.estimate.cwiseProduct(out.estimate);
  out.std_error = (var.cwiseMax(0.0) / static_cast<double>(n)).cwiseSqrt();
  return out;
}

double estimate_smoothed_cost(const Game& game, int player, const Vector& mu,
                              double sigma, long n, std::uint64_t seed) {
  check_mc_args(sigma, n);
  GaussianStream rng(seed, /*stream=*/0x736a);
  const int nd = game.layout.total_dim();
  double sum = 0.0;
  for (long s = 0; s < n; ++s) {
    sum += game.cost(player, mu + sigma * rng.normal_vector(nd));
  }
  return sum / static_cast<double>(n);
}

DecompositionEstimate estimate_decomposition(const Game& game, const Vector& mu,
                                             double sigma, double shrink_r,
                                             long n, std::uint64_t seed) {
  check_mc_args(sigma, n);
  if (!game.mapping) {
    throw std::invalid_argument("decomposition estimate needs an analytic mapping");
  }
  const int d = game.layout.dim_per_player;
  const int nd = game.layout.total_dim();
  // shrink_r locates the probe mean: the recursion keeps mu inside the
  // shrunk set while actions are always projected onto the unshrunk A.
  if (shrink_r > 0 && !game.action_sets.shrink(shrink_r).contains(mu)) {
    throw std::invalid_argument("mu must lie in shrink(A, r)");
  }
  const ProductSet& sets = game.action_sets;

  GaussianStream rng(seed, /*stream=*/0xdec0);
  Vector sum_f = Vector::Zero(nd);
  Vector sum_f_sq = Vector::Zero(nd);
  double sum_p_norm = 0.0;
  Vector x(nd), f(nd), p(nd);
  for (long s = 0; s < n; ++s) {
    x = mu + sigma * rng.normal_vector(nd);
    Vector a = sets.project(x);
    for (int i = 0; i < game.layout.players; ++i) {
      const double Jx = game.cost(i, x);
      const double Ja = game.cost(i, a);
      Vector dx = (x.segment(i * d, d) - mu.segment(i * d, d)) / (sigma * sigma);
      f.segment(i * d, d) = Jx * dx;
      p.segment(i * d, d) = dx * (Ja - Jx);
    }
    sum_f += f;
    sum_f_sq += f.cwiseProduct(f);
    sum_p_norm += p.norm();
  }
  DecompositionEstimate out;
  out.n_samples = n;
  out.m_true = game.mapping(mu);
  out.m_smoothed = sum_f / static_cast<double>(n);
  Vector var = (sum_f_sq / static_cast<double>(n) -
                out.m_smoothed.cwiseProduct(out.m_smoothed))
                   .cwiseMax(0.0);
  out.std_errors = (var / static_cast<double>(n)).cwiseSqrt();
  out.q_norm = (out.m_smoothed - out.m_true).norm();
  out.r_std = var.cwiseSqrt().mean();
  out.p_mean_norm = sum_p_norm / static_cast<double>(n);
  return out;
}

double out_of_set_frequency(const ConvexSet& set, const Vector& mu, double sigma,
                            long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  if (!set.contains(mu)) {
    throw std::invalid_argument("mu must lie in the set");
  }
  GaussianStream rng(seed, /*stream=*/0x0f2e);
  long outside = 0;
  for (long s = 0; s < n; ++s) {
    Vector x = mu + sigma * rng.normal_vector(set.dim());
    if (!set.contains(x, 0.0)) ++outside;
  }
  return static_cast<double>(outside) / static_cast<double>(n);
}

RatioScanReport lemma3_ratio_scan(const ConvexSet& set, int n_points,
                                  const std::vector<std::pair<double, double>>& r_pairs,
                                  std::uint64_t seed) {
  if (n_points < 1 || r_pairs.empty()) {
    throw std::invalid_argument("need sample points and r pairs");
  }
  const double inr = set.inradius();
  for (const auto& [r1, r2] : r_pairs) {
    if (r1 >= inr / 2 || r2 >= inr / 2 || r1 == r2) {
      throw std::invalid_argument("r values must be distinct and below inradius/2");
    }
  }
  GaussianStream rng(seed, /*stream=*/0x4c33);
  // Points scattered around (and mostly outside) the set.
  std::vector<Vector> points;
  points.reserve(n_points);
  const Vector c = set.center();
  const double scale = std::isfinite(inr) ? 4.0 * inr : 4.0;
  for (int p = 0; p < n_points; ++p) {
    points.push_back(c + scale * rng.normal_vector(set.dim()));
  }
  RatioScanReport rep;
  for (const auto& [r1, r2] : r_pairs) {
    ConvexSet s1 = set.shrink(r1);
    ConvexSet s2 = set.shrink(r2);
    double worst = 0.0;
    for (const auto& x : points) {
      const double moved = (s1.project(x) - s2.project(x)).norm();
      worst = std::max(worst, moved / std::abs(r1 - r2));
    }
    rep.entries.push_back({r1, r2, worst});
    rep.overall_max = std::max(rep.overall_max, worst);
  }
  // Stable when tightening |r1 - r2| stops inflating the max ratio (modulo a
  // modest slack factor). The coarsest secant can span several breakpoints of
  // the piecewise-linear projection path and undershoot the local slope, so
  // with three or more decades the limit is read from the finer ones.
  rep.stable = true;
  for (size_t i = rep.entries.size() >= 3 ? 2 : 1; i < rep.entries.size(); ++i) {
    const auto& prev = rep.entries[i - 1];
    const auto& cur = rep.entries[i];
    if (std::abs(cur.r1 - cur.r2) < std::abs(prev.r1 - prev.r2) &&
        cur.max_ratio > prev.max_ratio * 1.05 + 1e-9) {
      rep.stable = false;
    }
  }
  return rep;
}

}  // namespace banditnash
