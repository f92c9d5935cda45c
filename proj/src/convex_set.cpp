#include "banditnash/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace banditnash {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(int expected, const Vector& x) {
  if (x.size() != expected) {
    throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                " does not match set dimension " +
                                std::to_string(expected));
  }
}

// In-hull facet-distance factor: within {sum x = 1} the gradient of x_k has
// norm sqrt(1 - 1/n), so dist(x, {x_k = m}) = (x_k - m) / sqrt(1 - 1/n).
double simplex_facet_factor(int n) { return std::sqrt(1.0 - 1.0 / n); }

Vector project_standard_simplex(const Vector& x) {
  // Sort-and-threshold projection onto {y >= 0, sum y = 1}.
  const int n = static_cast<int>(x.size());
  std::vector<double> u(x.data(), x.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cssv = 0.0;
  double theta = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    cssv += u[i];
    const double th = (cssv - 1.0) / (i + 1);
    if (u[i] - th > 0) {
      rho = i + 1;
      theta = th;
    }
  }
  (void)rho;
  Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = std::max(x[i] - theta, 0.0);
  return y;
}

Vector project_simplex(const SimplexSet& s, const Vector& x) {
  // {y >= m, sum y = 1} is an isotropic scaling of the standard simplex:
  // y = m*1 + (1 - n*m) * z with z in the standard simplex.
  const int n = s.dim;
  const double scale = 1.0 - n * s.lower;
  if (scale <= 0) throw std::domain_error("simplex floor leaves an empty set");
  Vector shifted = (x.array() - s.lower).matrix() / scale;
  Vector z = project_standard_simplex(shifted);
  return (scale * z.array() + s.lower).matrix();
}

Vector project_halfspace(const Vector& x, const Vector& n, double o) {
  const double viol = n.dot(x) - o;
  if (viol <= 0) return x;
  return x - viol * n;
}

Vector project_polyhedron(const PolyhedronSet& p, const Vector& x) {
  // Dykstra alternating projections onto the halfspaces.
  const int m = static_cast<int>(p.normals.rows());
  if (m == 1) return project_halfspace(x, p.normals.row(0), p.offsets[0]);
  Vector z = x;
  Matrix corrections = Matrix::Zero(m, x.size());
  constexpr int kMaxSweeps = 10000;
  // Tight enough that reprojecting an already-projected point moves it by
  // less than the 1e-12 idempotence tolerance.
  constexpr double kResidual = 1e-13;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double moved = 0.0;
    for (int k = 0; k < m; ++k) {
      Vector w = z + corrections.row(k).transpose();
      Vector zn = project_halfspace(w, p.normals.row(k), p.offsets[k]);
      corrections.row(k) = (w - zn).transpose();
      moved = std::max(moved, (zn - z).norm());
      z = zn;
    }
    double worst = (p.normals * z - p.offsets).maxCoeff();
    if (worst <= kResidual && moved <= kResidual) break;
  }
  return z;
}

// Chebyshev LP for {x : N x <= o}: maximize R s.t. N x + R <= o.
// Solved exactly by enumerating active-constraint subsets of size dim+1.
struct Chebyshev {
  bool feasible = false;
  bool bounded = false;
  double radius = -kInf;
  Vector center;
};

Chebyshev chebyshev_enumerate(const PolyhedronSet& p) {
  const int m = static_cast<int>(p.normals.rows());
  const int d = static_cast<int>(p.normals.cols());
  const int k = d + 1;
  Chebyshev best;
  best.center = Vector::Zero(d);
  if (m < k) {
    // Too few facets to pin down a vertex of the LP: the inscribed radius
    // is unbounded whenever the region is nonempty.
    best.feasible = true;
    best.bounded = false;
    return best;
  }
  std::vector<int> idx(k);
  std::vector<int> comb(k);
  std::iota(comb.begin(), comb.end(), 0);
  auto next_comb = [&]() {
    int i = k - 1;
    while (i >= 0 && comb[i] == m - k + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  do {
    Matrix A(k, k);
    Vector rhs(k);
    for (int r = 0; r < k; ++r) {
      A.row(r).head(d) = p.normals.row(comb[r]);
      A(r, d) = 1.0;
      rhs[r] = p.offsets[comb[r]];
    }
    Eigen::FullPivLU<Matrix> lu(A);
    if (!lu.isInvertible()) continue;
    Vector sol = lu.solve(rhs);
    Vector x = sol.head(d);
    double R = sol[d];
    if (((p.normals * x).array() + R <= p.offsets.array() + 1e-9).all()) {
      best.feasible = true;
      best.bounded = true;
      if (R > best.radius) {
        best.radius = R;
        best.center = x;
      }
    }
  } while (next_comb());
  if (!best.feasible) {
    // No LP vertex: either empty or unbounded; probe feasibility directly.
    Vector probe = project_polyhedron(p, Vector::Zero(d));
    if (((p.normals * probe).array() <= p.offsets.array() + 1e-7).all()) {
      best.feasible = true;
      best.bounded = false;
    }
  }
  return best;
}

}  // namespace

ConvexSet::ConvexSet(Variant v) : variant_(std::move(v)) {
  dim_ = std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeSet>) return s.dim;
        if constexpr (std::is_same_v<T, BoxSet>) return static_cast<int>(s.lower.size());
        if constexpr (std::is_same_v<T, BallSet>) return static_cast<int>(s.center.size());
        if constexpr (std::is_same_v<T, SimplexSet>) return s.dim;
        if constexpr (std::is_same_v<T, PolyhedronSet>) return static_cast<int>(s.normals.cols());
      },
      variant_);
}

ConvexSet ConvexSet::free(int dim) {
  if (dim <= 0) throw std::invalid_argument("dimension must be positive");
  return ConvexSet(FreeSet{dim});
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw std::invalid_argument("box bounds must have equal positive length");
  }
  if (!((lower.array() < upper.array()).all())) {
    throw std::invalid_argument("box requires lower < upper componentwise");
  }
  return ConvexSet(BoxSet{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("ball radius must be positive");
  return ConvexSet(BallSet{std::move(center), radius});
}

ConvexSet ConvexSet::simplex(int dim) {
  if (dim <= 0) throw std::invalid_argument("dimension must be positive");
  return ConvexSet(SimplexSet{dim, 0.0});
}

ConvexSet ConvexSet::polyhedron(Matrix normals, Vector offsets) {
  if (normals.rows() != offsets.size() || normals.rows() == 0) {
    throw std::invalid_argument("polyhedron needs one offset per normal");
  }
  for (int r = 0; r < normals.rows(); ++r) {
    const double norm = normals.row(r).norm();
    if (norm < 1e-12) throw std::invalid_argument("zero polyhedron normal");
    if (std::abs(norm - 1.0) > 1e-12) {
      offsets[r] /= norm;
      normals.row(r) /= norm;
    }
  }
  PolyhedronSet p{std::move(normals), std::move(offsets)};
  Chebyshev c = chebyshev_enumerate(p);
  if (!c.feasible || (c.bounded && c.radius < -1e-12)) {
    throw std::domain_error("polyhedron is empty");
  }
  return ConvexSet(std::move(p));
}

Vector ConvexSet::project(const Vector& x) const {
  check_dim(dim_, x);
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeSet>) {
          return x;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return x.cwiseMax(s.lower).cwiseMin(s.upper);
        } else if constexpr (std::is_same_v<T, BallSet>) {
          Vector diff = x - s.center;
          const double n = diff.norm();
          if (n <= s.radius) return x;
          return s.center + (s.radius / n) * diff;
        } else if constexpr (std::is_same_v<T, SimplexSet>) {
          return project_simplex(s, x);
        } else {
          return project_polyhedron(s, x);
        }
      },
      variant_);
}

bool ConvexSet::contains(const Vector& x, double tol) const {
  check_dim(dim_, x);
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeSet>) {
          return true;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return (x.array() >= s.lower.array() - tol).all() &&
                 (x.array() <= s.upper.array() + tol).all();
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return (x - s.center).norm() <= s.radius + tol;
        } else if constexpr (std::is_same_v<T, SimplexSet>) {
          return (x.array() >= s.lower - tol).all() &&
                 std::abs(x.sum() - 1.0) <= tol;
        } else {
          return ((s.normals * x).array() <= s.offsets.array() + tol).all();
        }
      },
      variant_);
}

ConvexSet ConvexSet::shrink(double r) const {
  if (r < 0) throw std::invalid_argument("shrink radius must be nonnegative");
  if (is_free() || r == 0.0) return *this;
  const double inr = inradius();
  if (r >= inr) {
    throw std::domain_error("shrink radius " + std::to_string(r) +
                            " >= inradius " + std::to_string(inr) +
                            ": shrunk set is empty");
  }
  return std::visit(
      [&](const auto& s) -> ConvexSet {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxSet>) {
          return ConvexSet(BoxSet{(s.lower.array() + r).matrix(),
                                  (s.upper.array() - r).matrix()});
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return ConvexSet(BallSet{s.center, s.radius - r});
        } else if constexpr (std::is_same_v<T, SimplexSet>) {
          return ConvexSet(SimplexSet{s.dim, s.lower + r * simplex_facet_factor(s.dim)});
        } else if constexpr (std::is_same_v<T, PolyhedronSet>) {
          return ConvexSet(PolyhedronSet{s.normals, (s.offsets.array() - r).matrix()});
        } else {
          return *this;  // FreeSet, unreachable
        }
      },
      variant_);
}

double ConvexSet::distance_to_boundary(const Vector& x, double tol) const {
  check_dim(dim_, x);
  if (!contains(x, tol)) {
    throw std::domain_error("point is outside the set");
  }
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeSet>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          const double a = (x - s.lower).minCoeff();
          const double b = (s.upper - x).minCoeff();
          return std::max(0.0, std::min(a, b));
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return std::max(0.0, s.radius - (x - s.center).norm());
        } else if constexpr (std::is_same_v<T, SimplexSet>) {
          const double slack = x.minCoeff() - s.lower;
          return std::max(0.0, slack / simplex_facet_factor(s.dim));
        } else {
          return std::max(0.0, (s.offsets - s.normals * x).minCoeff());
        }
      },
      variant_);
}

double ConvexSet::inradius() const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeSet>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return 0.5 * (s.upper - s.lower).minCoeff();
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return s.radius;
        } else if constexpr (std::is_same_v<T, SimplexSet>) {
          return (1.0 / s.dim - s.lower) / simplex_facet_factor(s.dim);
        } else {
          Chebyshev c = chebyshev_enumerate(s);
          if (!c.bounded) return kInf;
          return std::max(0.0, c.radius);
        }
      },
      variant_);
}

Vector ConvexSet::center() const {
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeSet>) {
          return Vector::Zero(s.dim);
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return 0.5 * (s.lower + s.upper);
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return s.center;
        } else if constexpr (std::is_same_v<T, SimplexSet>) {
          return Vector::Constant(s.dim, 1.0 / s.dim);
        } else {
          Chebyshev c = chebyshev_enumerate(s);
          if (c.bounded) return c.center;
          return project_polyhedron(s, Vector::Zero(s.normals.cols()));
        }
      },
      variant_);
}

ProductSet::ProductSet(std::vector<ConvexSet> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) total_dim_ += f.dim();
}

Vector ProductSet::project(const Vector& x) const {
  check_dim(total_dim_, x);
  Vector out(total_dim_);
  int off = 0;
  for (const auto& f : factors_) {
    out.segment(off, f.dim()) = f.project(x.segment(off, f.dim()));
    off += f.dim();
  }
  return out;
}

bool ProductSet::contains(const Vector& x, double tol) const {
  check_dim(total_dim_, x);
  int off = 0;
  for (const auto& f : factors_) {
    if (!f.contains(x.segment(off, f.dim()), tol)) return false;
    off += f.dim();
  }
  return true;
}

ProductSet ProductSet::shrink(double r) const {
  std::vector<ConvexSet> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.shrink(r));
  return ProductSet(std::move(out));
}

double ProductSet::inradius() const {
  double r = kInf;
  for (const auto& f : factors_) r = std::min(r, f.inradius());
  return r;
}

Vector ProductSet::center() const {
  Vector out(total_dim_);
  int off = 0;
  for (const auto& f : factors_) {
    out.segment(off, f.dim()) = f.center();
    off += f.dim();
  }
  return out;
}

}  // namespace banditnash
