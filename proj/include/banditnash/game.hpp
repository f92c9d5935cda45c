#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "banditnash/convex_set.hpp"
#include "banditnash/joint.hpp"

namespace banditnash {

enum class Monotonicity { StronglyMonotone, StrictlyMonotone, Monotone, Unknown };

// Known equilibria of a catalog game: either a unique point or an affine
// solution set (offset + null-space basis), when analytic.
struct KnownSolutions {
  std::optional<Vector> unique_point;
  std::optional<Vector> affine_offset;   // a particular (least-norm) solution
  std::optional<Matrix> affine_basis;    // columns span the solution directions
};

// Affine structure of the game mapping, M(a) = B a + b, when available.
struct AffineMapping {
  Matrix B;
  Vector b;
};

// A convex game: N players, d coordinates each, cost oracles defined on all
// of R^(Nd), and (optionally) the analytic game mapping M with
// M_{i,k} = dJ_i/da^i_k.
struct Game {
  std::string name;
  JointLayout layout;
  ProductSet action_sets;
  std::function<double(int, const Vector&)> cost;
  std::function<Vector(const Vector&)> mapping;  // null -> finite differences
  std::optional<AffineMapping> affine;
  Monotonicity tag = Monotonicity::Unknown;
  double strong_modulus = 0.0;  // lower bound on the monotonicity modulus
  std::optional<double> lipschitz;  // declared Lipschitz constant of M
  KnownSolutions known;

  double evaluate_cost(int player, const Vector& a) const;
  // Analytic mapping when present, else central differences (step 1e-6).
  Vector evaluate_mapping(const Vector& a) const;
};

// Central finite differences of the stacked own-gradients.
Vector finite_difference_mapping(const Game& game, const Vector& a, double step = 1e-6);

struct MonotonicityReport {
  double min_inner_product = 0.0;
  bool violated = false;
};

// Samples random pairs in the joint action set and reports the minimum of
// (M(x) - M(y), x - y); violated when it drops below -1e-8.
MonotonicityReport check_monotone_sampled(const Game& game, int n_pairs,
                                          std::uint64_t seed);

// Deterministic sample point in a set (used by sampled checks and tests).
Vector sample_point(const ConvexSet& set, class GaussianStream& rng);
Vector sample_point(const ProductSet& set, class GaussianStream& rng);

// ---- Catalog -------------------------------------------------------------

// Two players on boxes [-1,1]^d containing the origin, J1 = a1' C a2 = -J2.
// Unique interior equilibrium at the origin when C is invertible.
Game bilinear_zero_sum(const Matrix& C);

// Mixed extension of matching pennies on the 2-simplex per player.
Game matching_pennies_mixed();

// Inverse demand 1 - a1 - a2, zero production cost, A_i = [0, 1].
Game cournot_duopoly();

// N-player generalization of the Cournot game above.
Game cournot_oligopoly(int players);

// M(a) = B a + b with B + B' PSD (validated via eigenvalues).
Game affine_monotone(const Matrix& B, const Vector& b, ProductSet sets);

// Cost closures supplied by the caller; monotonicity declared, not verified.
Game custom_game(std::string name, JointLayout layout, ProductSet sets,
                 std::function<double(int, const Vector&)> cost,
                 std::function<Vector(const Vector&)> mapping = nullptr,
                 Monotonicity tag = Monotonicity::Unknown);

// Catalog lookup by config name ("bilinear-zero-sum", "matching-pennies",
// "cournot", ...). Throws on unknown names.
Game catalog_game(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace banditnash
