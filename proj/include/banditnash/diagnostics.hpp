#pragma once

#include <cstdint>
#include <vector>

#include "banditnash/convex_set.hpp"
#include "banditnash/game.hpp"

namespace banditnash {

struct MonteCarloEstimate {
  Vector estimate;
  Vector std_error;  // per coordinate
};

// Monte-Carlo average of J_i(x) (x^i - mu^i) / sigma^2 over n joint Gaussian
// draws: the one-point sample of the smoothed-cost gradient.
MonteCarloEstimate estimate_smoothed_gradient(const Game& game, int player,
                                              const Vector& mu, double sigma,
                                              long n, std::uint64_t seed);

// Monte-Carlo estimate of the smoothed (mixed-strategy) cost itself.
double estimate_smoothed_cost(const Game& game, int player, const Vector& mu,
                              double sigma, long n, std::uint64_t seed);

// Empirical magnitudes of the terms in the stochastic-approximation
// decomposition of the update: smoothing bias Q, estimator fluctuation R,
// and the state-vs-played-action discrepancy P.
struct DecompositionEstimate {
  Vector m_true;       // analytic game mapping at mu
  Vector m_smoothed;   // Monte-Carlo estimate of the smoothed mapping
  double q_norm;       // || m_smoothed - m_true ||
  double r_std;        // mean per-coordinate std of the one-point estimator
  double p_mean_norm;  // MC mean of || (x-mu)/sigma^2 (J(a) - J(x)) ||
  long n_samples;
  Vector std_errors;   // per coordinate, for m_smoothed
};

DecompositionEstimate estimate_decomposition(const Game& game, const Vector& mu,
                                             double sigma, double shrink_r,
                                             long n, std::uint64_t seed);

// Fraction of n Gaussian draws around mu landing outside the set.
double out_of_set_frequency(const ConvexSet& set, const Vector& mu, double sigma,
                            long n, std::uint64_t seed);

// Max over sampled points of ||Proj_{shrink(S,r1)} x - Proj_{shrink(S,r2)} x|| / |r1-r2|.
struct RatioScanEntry {
  double r1, r2;
  double max_ratio;
};

struct RatioScanReport {
  std::vector<RatioScanEntry> entries;
  double overall_max = 0.0;
  bool stable = false;  // max ratio does not grow as |r1-r2| shrinks
};

RatioScanReport lemma3_ratio_scan(const ConvexSet& set, int n_points,
                                  const std::vector<std::pair<double, double>>& r_pairs,
                                  std::uint64_t seed);

}  // namespace banditnash
