#pragma once

#include <functional>
#include <vector>

#include "banditnash/game.hpp"
#include "banditnash/schedule.hpp"

namespace banditnash {

struct VISolution {
  Vector point;
  double residual = 0.0;  // || x - Proj(A, x - M(x)) || at unit step
  long iterations = 0;
  bool converged = false;
};

struct TikhonovPathPoint {
  long t = 0;
  Vector y;
  double eps = 0.0;
  double r = 0.0;
};

// Schedule with r capped at half the joint inradius when no explicit cap
// was configured, so (1-r)A is never empty along a run.
Schedule apply_default_r_cap(const Schedule& s, const ProductSet& sets);

// Natural-residual of the VI at unit step, || x - Proj(A, x - F(x)) ||.
double vi_residual(const std::function<Vector(const Vector&)>& mapping,
                   const ProductSet& set, const Vector& x);

// Projected fixed-point iteration x <- Proj(x - theta F(x)) with
// theta = m / L^2 (< 2m/L^2), linearly convergent for strongly monotone
// Lipschitz maps. Stops when the unit-step residual drops below tol.
VISolution solve_strongly_monotone_vi(
    const std::function<Vector(const Vector&)>& mapping, const ProductSet& set,
    double modulus, double lipschitz, double tol, const Vector& start,
    long max_iterations = 1000000);

// Unique solution of VI(shrink(A, r), M + eps I). Affine games over free
// sets are solved directly as (B + eps I) y = -b; everything else goes
// through the projected fixed-point solver with modulus m + eps.
VISolution regularized_solution(const Game& game, double eps, double r, double tol);

// The doubly regularized solution path y(t) at the requested iterations.
std::vector<TikhonovPathPoint> tikhonov_path(const Game& game, const Schedule& schedule,
                                             const std::vector<long>& t_values,
                                             double tol = 1e-10);

struct IterateTraceRow {
  long t;
  Vector point;
  double dist_to_target;  // NaN when no target given
  ScheduleValues sched;
};

struct IterateTrace {
  std::vector<IterateTraceRow> rows;
  bool aborted = false;
};

// One-timescale iterate z(t+1) = Proj_{shrink(A, r_t)}[z - beta_t (M(z) + eps_t z)].
IterateTrace one_timescale_run(const Game& game, const Schedule& schedule,
                               const Vector& z0, long T, long log_every,
                               const Vector* target = nullptr);

// Minimum-norm solution of B x + b = 0 via rank-revealing factorization.
// Throws when the system is inconsistent.
Vector least_norm_affine(const Matrix& B, const Vector& b);

// Sampled Lipschitz estimate of the game mapping (max difference quotient
// over random pairs, times a 1.5 safety factor).
double estimate_lipschitz(const Game& game, int n_pairs = 1000,
                          std::uint64_t seed = 7);

}  // namespace banditnash
