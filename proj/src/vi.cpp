#include "banditnash/vi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "banditnash/rng.hpp"

namespace banditnash {

Schedule apply_default_r_cap(const Schedule& s, const ProductSet& sets) {
  if (std::isfinite(s.r_cap())) return s;
  const double inr = sets.inradius();
  if (!std::isfinite(inr)) return s;
  return s.with_r_cap(0.5 * inr);
}

double vi_residual(const std::function<Vector(const Vector&)>& mapping,
                   const ProductSet& set, const Vector& x) {
  return (x - set.project(x - mapping(x))).norm();
}

VISolution solve_strongly_monotone_vi(
    const std::function<Vector(const Vector&)>& mapping, const ProductSet& set,
    double modulus, double lipschitz, double tol, const Vector& start,
    long max_iterations) {
  if (!(modulus > 0) || !(lipschitz > 0)) {
    throw std::invalid_argument("modulus and Lipschitz constant must be positive");
  }
  const double theta = modulus / (lipschitz * lipschitz);
  VISolution sol;
  sol.point = set.project(start);
  for (long it = 0; it < max_iterations; ++it) {
    Vector f = mapping(sol.point);
    sol.residual = (sol.point - set.project(sol.point - f)).norm();
    sol.iterations = it;
    if (sol.residual <= tol) {
      sol.converged = true;
      return sol;
    }
    sol.point = set.project(sol.point - theta * f);
  }
  sol.residual = vi_residual(mapping, set, sol.point);
  sol.converged = sol.residual <= tol;
  return sol;
}

namespace {

bool all_free(const ProductSet& sets) {
  for (const auto& f : sets.factors()) {
    if (!f.is_free()) return false;
  }
  return true;
}

double game_lipschitz(const Game& game) {
  if (game.lipschitz) return *game.lipschitz;
  return estimate_lipschitz(game);
}

}  // namespace

VISolution regularized_solution(const Game& game, double eps, double r, double tol) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  ProductSet shrunk = game.action_sets.shrink(r);
  auto reg = [&game, eps](const Vector& x) -> Vector {
    return game.evaluate_mapping(x) + eps * x;
  };
  if (game.affine && all_free(game.action_sets)) {
    const auto& aff = *game.affine;
    Matrix A = aff.B + eps * Matrix::Identity(aff.B.rows(), aff.B.cols());
    VISolution sol;
    sol.point = A.partialPivLu().solve(-aff.b);
    sol.residual = vi_residual(reg, shrunk, sol.point);
    sol.iterations = 0;
    sol.converged = sol.residual <= std::max(tol, 1e-12);
    return sol;
  }
  const double m = std::max(0.0, game.strong_modulus) + eps;
  const double L = game_lipschitz(game) + eps;
  return solve_strongly_monotone_vi(reg, shrunk, m, L, tol, shrunk.center());
}

std::vector<TikhonovPathPoint> tikhonov_path(const Game& game, const Schedule& schedule,
                                             const std::vector<long>& t_values,
                                             double tol) {
  std::vector<TikhonovPathPoint> path;
  path.reserve(t_values.size());
  for (long t : t_values) {
    const ScheduleValues v = schedule.evaluate(t);
    const double step_tol = std::min(tol, std::max(1e-12, v.eps * 1e-4));
    VISolution sol = regularized_solution(game, v.eps, v.r, step_tol);
    path.push_back({t, sol.point, v.eps, v.r});
  }
  return path;
}

IterateTrace one_timescale_run(const Game& game, const Schedule& schedule,
                               const Vector& z0, long T, long log_every,
                               const Vector* target) {
  if (log_every < 1) throw std::invalid_argument("log_every must be >= 1");
  if (!z0.allFinite()) throw std::invalid_argument("z0 must be finite");
  const Schedule sched = apply_default_r_cap(schedule, game.action_sets);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  IterateTrace trace;
  Vector z = z0;
  auto log_row = [&](long t, const ScheduleValues& v) {
    trace.rows.push_back(
        {t, z, target ? (z - *target).norm() : nan, v});
  };
  log_row(0, sched.evaluate(1));
  for (long t = 1; t <= T; ++t) {
    const ScheduleValues v = sched.evaluate(t);
    Vector step = z - v.beta * (game.evaluate_mapping(z) + v.eps * z);
    if (!step.allFinite()) {
      trace.aborted = true;
      log_row(t, v);
      return trace;
    }
    z = game.action_sets.shrink(v.r).project(step);
    if (t % log_every == 0 || t == T) log_row(t, v);
  }
  return trace;
}

Vector least_norm_affine(const Matrix& B, const Vector& b) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(B);
  Vector x = cod.solve(-b);
  if ((B * x + b).norm() > 1e-8 * (1.0 + b.norm())) {
    throw std::domain_error("B x = -b has no solution");
  }
  return x;
}

double estimate_lipschitz(const Game& game, int n_pairs, std::uint64_t seed) {
  GaussianStream rng(seed, /*stream=*/0x4c697073);
  double worst = 0.0;
  for (int p = 0; p < n_pairs; ++p) {
    Vector x = sample_point(game.action_sets, rng);
    Vector y = sample_point(game.action_sets, rng);
    const double dxy = (x - y).norm();
    if (dxy < 1e-12) continue;
    worst = std::max(
        worst, (game.evaluate_mapping(x) - game.evaluate_mapping(y)).norm() / dxy);
  }
  return 1.5 * worst;
}

}  // namespace banditnash
