#include "banditnash/game.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "banditnash/rng.hpp"

namespace banditnash {

double Game::evaluate_cost(int player, const Vector& a) const {
  if (player < 0 || player >= layout.players) {
    throw std::out_of_range("player index out of range");
  }
  if (a.size() != layout.total_dim()) {
    throw std::invalid_argument("joint point has wrong dimension");
  }
  return cost(player, a);
}

Vector Game::evaluate_mapping(const Vector& a) const {
  if (mapping) return mapping(a);
  return finite_difference_mapping(*this, a);
}

Vector finite_difference_mapping(const Game& game, const Vector& a, double step) {
  const int d = game.layout.dim_per_player;
  Vector m(game.layout.total_dim());
  Vector probe = a;
  for (int i = 0; i < game.layout.players; ++i) {
    for (int k = 0; k < d; ++k) {
      const int idx = i * d + k;
      const double saved = probe[idx];
      probe[idx] = saved + step;
      const double up = game.cost(i, probe);
      probe[idx] = saved - step;
      const double down = game.cost(i, probe);
      probe[idx] = saved;
      m[idx] = (up - down) / (2.0 * step);
    }
  }
  return m;
}

Vector sample_point(const ConvexSet& set, GaussianStream& rng) {
  const int d = set.dim();
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FreeSet>) {
          return 2.0 * rng.normal_vector(d);
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          Vector x(d);
          for (int k = 0; k < d; ++k) {
            x[k] = s.lower[k] + rng.uniform() * (s.upper[k] - s.lower[k]);
          }
          return x;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          Vector dir = rng.normal_vector(d);
          const double n = dir.norm();
          const double rad = s.radius * std::pow(rng.uniform(), 1.0 / d);
          return s.center + (rad / n) * dir;
        } else if constexpr (std::is_same_v<T, SimplexSet>) {
          Vector w(d);
          for (int k = 0; k < d; ++k) w[k] = -std::log(rng.uniform());
          w /= w.sum();  // Dirichlet(1,...,1)
          const double scale = 1.0 - d * s.lower;
          return (scale * w.array() + s.lower).matrix();
        } else {
          Vector x = set.center() + rng.normal_vector(d);
          return set.project(x);
        }
      },
      set.variant());
}

Vector sample_point(const ProductSet& set, GaussianStream& rng) {
  Vector x(set.total_dim());
  int off = 0;
  for (const auto& f : set.factors()) {
    x.segment(off, f.dim()) = sample_point(f, rng);
    off += f.dim();
  }
  return x;
}

MonotonicityReport check_monotone_sampled(const Game& game, int n_pairs,
                                          std::uint64_t seed) {
  if (n_pairs < 1) throw std::invalid_argument("need at least one pair");
  GaussianStream rng(seed, /*stream=*/0x6d6f6e6f);
  MonotonicityReport rep;
  rep.min_inner_product = std::numeric_limits<double>::infinity();
  for (int p = 0; p < n_pairs; ++p) {
    Vector x = sample_point(game.action_sets, rng);
    Vector y = sample_point(game.action_sets, rng);
    const double ip = (game.evaluate_mapping(x) - game.evaluate_mapping(y)).dot(x - y);
    rep.min_inner_product = std::min(rep.min_inner_product, ip);
  }
  rep.violated = rep.min_inner_product < -1e-8;
  return rep;
}

namespace {

ProductSet replicate(const ConvexSet& s, int n) {
  return ProductSet(std::vector<ConvexSet>(n, s));
}

}  // namespace

Game bilinear_zero_sum(const Matrix& C) {
  if (C.rows() != C.cols() || C.rows() == 0) {
    throw std::invalid_argument("bilinear coupling matrix must be square");
  }
  const int d = static_cast<int>(C.rows());
  Game g;
  g.name = "bilinear-zero-sum";
  g.layout = {2, d};
  g.action_sets = replicate(ConvexSet::box(Vector::Constant(d, -1.0),
                                           Vector::Constant(d, 1.0)),
                            2);
  Matrix Cc = C;
  g.cost = [Cc, d](int i, const Vector& a) {
    const double v = a.head(d).dot(Cc * a.tail(d));
    return i == 0 ? v : -v;
  };
  g.mapping = [Cc, d](const Vector& a) {
    Vector m(2 * d);
    m.head(d) = Cc * a.tail(d);
    m.tail(d) = -Cc.transpose() * a.head(d);
    return m;
  };
  Matrix B = Matrix::Zero(2 * d, 2 * d);
  B.topRightCorner(d, d) = Cc;
  B.bottomLeftCorner(d, d) = -Cc.transpose();
  g.affine = AffineMapping{B, Vector::Zero(2 * d)};
  g.tag = Monotonicity::Monotone;  // skew-symmetric Jacobian
  g.lipschitz = B.jacobiSvd().singularValues()(0);
  if (Eigen::FullPivLU<Matrix>(Cc).isInvertible()) {
    g.known.unique_point = Vector::Zero(2 * d);
  }
  return g;
}

Game matching_pennies_mixed() {
  Matrix U(2, 2);
  U << 1, -1, -1, 1;
  Game g;
  g.name = "matching-pennies";
  g.layout = {2, 2};
  g.action_sets = replicate(ConvexSet::simplex(2), 2);
  g.cost = [U](int i, const Vector& a) {
    const double v = a.head(2).dot(U * a.tail(2));
    return i == 0 ? v : -v;
  };
  g.mapping = [U](const Vector& a) {
    Vector m(4);
    m.head(2) = U * a.tail(2);
    m.tail(2) = -U.transpose() * a.head(2);
    return m;
  };
  Matrix B = Matrix::Zero(4, 4);
  B.topRightCorner(2, 2) = U;
  B.bottomLeftCorner(2, 2) = -U.transpose();
  g.affine = AffineMapping{B, Vector::Zero(4)};
  g.tag = Monotonicity::Monotone;
  g.lipschitz = 2.0;
  Vector ne(4);
  ne << 0.5, 0.5, 0.5, 0.5;
  g.known.unique_point = ne;
  return g;
}

Game cournot_oligopoly(int players) {
  if (players < 2) throw std::invalid_argument("need at least two firms");
  const int n = players;
  Game g;
  g.name = n == 2 ? "cournot" : ("cournot-" + std::to_string(n));
  g.layout = {n, 1};
  g.action_sets = replicate(ConvexSet::box(Vector::Zero(1), Vector::Ones(1)), n);
  g.cost = [](int i, const Vector& a) {
    return -a[i] * (1.0 - a.sum());
  };
  Matrix B = Matrix::Ones(n, n) + Matrix::Identity(n, n);
  Vector b = Vector::Constant(n, -1.0);
  g.mapping = [B, b](const Vector& a) { return B * a + b; };
  g.affine = AffineMapping{B, b};
  g.tag = Monotonicity::StronglyMonotone;
  g.strong_modulus = 1.0;          // smallest eigenvalue of sym(B)
  g.lipschitz = static_cast<double>(n + 1);
  g.known.unique_point = Vector::Constant(n, 1.0 / (n + 1));
  return g;
}

Game cournot_duopoly() { return cournot_oligopoly(2); }

Game affine_monotone(const Matrix& B, const Vector& b, ProductSet sets) {
  if (B.rows() != B.cols() || B.rows() != b.size() ||
      B.rows() != sets.total_dim()) {
    throw std::invalid_argument("affine game dimensions are inconsistent");
  }
  const int n = static_cast<int>(sets.factors().size());
  if (n == 0 || sets.total_dim() % n != 0) {
    throw std::invalid_argument("player factors must have equal dimension");
  }
  const int d = sets.total_dim() / n;

  Matrix sym = 0.5 * (B + B.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-10) {
    throw std::invalid_argument("B + B' is not positive semidefinite");
  }

  // The per-player cost induced by the mapping; own-diagonal blocks are
  // symmetrized so the cost gradient reproduces M exactly.
  Matrix Bm = B;
  for (int i = 0; i < n; ++i) {
    Matrix blk = Bm.block(i * d, i * d, d, d);
    Bm.block(i * d, i * d, d, d) = 0.5 * (blk + blk.transpose());
  }

  Game g;
  g.name = "affine-monotone";
  g.layout = {n, d};
  g.action_sets = std::move(sets);
  Vector bc = b;
  g.cost = [Bm, bc, d](int i, const Vector& a) {
    Vector own = a.segment(i * d, d);
    Vector cross = Bm.middleRows(i * d, d) * a -
                   Bm.block(i * d, i * d, d, d) * own;
    return 0.5 * own.dot(Bm.block(i * d, i * d, d, d) * own) +
           own.dot(cross + bc.segment(i * d, d));
  };
  g.mapping = [Bm, bc](const Vector& a) { return Bm * a + bc; };
  g.affine = AffineMapping{Bm, bc};
  g.strong_modulus = std::max(0.0, min_eig);
  g.tag = g.strong_modulus > 1e-12 ? Monotonicity::StronglyMonotone
                                   : Monotonicity::Monotone;
  g.lipschitz = Bm.jacobiSvd().singularValues()(0);

  bool all_free = true;
  for (const auto& f : g.action_sets.factors()) all_free &= f.is_free();
  if (all_free) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(Bm);
    Vector least_norm = cod.solve(-bc);
    if ((Bm * least_norm + bc).norm() <= 1e-8 * (1.0 + bc.norm())) {
      Eigen::FullPivLU<Matrix> lu(Bm);
      Matrix kernel = lu.kernel();
      if (lu.rank() == Bm.rows()) {
        g.known.unique_point = least_norm;
      } else {
        g.known.affine_offset = least_norm;
        g.known.affine_basis = kernel;
      }
    }
  }
  return g;
}

Game custom_game(std::string name, JointLayout layout, ProductSet sets,
                 std::function<double(int, const Vector&)> cost,
                 std::function<Vector(const Vector&)> mapping, Monotonicity tag) {
  if (sets.total_dim() != layout.total_dim()) {
    throw std::invalid_argument("set dimensions do not match the layout");
  }
  Game g;
  g.name = std::move(name);
  g.layout = layout;
  g.action_sets = std::move(sets);
  g.cost = std::move(cost);
  g.mapping = std::move(mapping);
  g.tag = tag;
  return g;
}

Game catalog_game(const std::string& name) {
  if (name == "bilinear-zero-sum") {
    return bilinear_zero_sum(Matrix::Identity(1, 1));
  }
  if (name == "matching-pennies") return matching_pennies_mixed();
  if (name == "cournot") return cournot_duopoly();
  if (name.rfind("cournot-", 0) == 0) {
    return cournot_oligopoly(std::stoi(name.substr(8)));
  }
  if (name == "affine-continuum") {
    // Rank-one monotone game over free sets; solution set {a1 - a2 = 1}.
    Matrix B(2, 2);
    B << 1, -1, -1, 1;
    Vector b(2);
    b << -1, 1;
    Game g = affine_monotone(B, b, ProductSet({ConvexSet::free(1), ConvexSet::free(1)}));
    g.name = "affine-continuum";
    return g;
  }
  throw std::invalid_argument("unknown game name: " + name);
}

std::vector<std::string> catalog_names() {
  return {"bilinear-zero-sum", "matching-pennies", "cournot", "affine-continuum"};
}

}  // namespace banditnash
