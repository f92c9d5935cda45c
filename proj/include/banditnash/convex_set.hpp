#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "banditnash/joint.hpp"

namespace banditnash {

// Projectable convex action sets with exact shrink-by-r support.
//
// Shrinking a set by r means keeping the points whose distance to the
// boundary is at least r. For every variant here the shrunk set has the
// same variant with adjusted parameters, so shrinkage is exact.

struct FreeSet {
  int dim;
};

struct BoxSet {
  Vector lower;
  Vector upper;
};

struct BallSet {
  Vector center;
  double radius;
};

// The probability simplex {x >= lower, sum x = 1} inside its affine hull.
// lower = 0 is the standard simplex; shrinking raises the coordinatewise
// floor so that the in-hull distance to every facet is at least r.
struct SimplexSet {
  int dim;
  double lower = 0.0;
};

// {x : normals * x <= offsets} with unit row normals, so that reducing the
// offsets by r is exactly the shrink-by-r operation.
struct PolyhedronSet {
  Matrix normals;  // one unit normal per row
  Vector offsets;
};

class ConvexSet {
 public:
  using Variant = std::variant<FreeSet, BoxSet, BallSet, SimplexSet, PolyhedronSet>;

  static ConvexSet free(int dim);
  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet simplex(int dim);
  // Normals are normalized on construction; throws if the set is empty.
  static ConvexSet polyhedron(Matrix normals, Vector offsets);

  int dim() const { return dim_; }
  const Variant& variant() const { return variant_; }
  bool is_free() const { return std::holds_alternative<FreeSet>(variant_); }

  // Euclidean nearest point of the set.
  Vector project(const Vector& x) const;

  // Exact membership test (with tolerance on the boundary).
  bool contains(const Vector& x, double tol = 1e-9) const;

  // {x in A : dist(x, boundary A) >= r}. Throws if r >= inradius.
  ConvexSet shrink(double r) const;

  // dist(x, boundary), relative to the affine hull for Simplex; +inf for
  // Free. Throws if x is outside the set.
  double distance_to_boundary(const Vector& x, double tol = 1e-9) const;

  // Radius of the largest inscribed ball (in-hull for Simplex); +inf for Free.
  double inradius() const;

  // Chebyshev-style interior point (center of the largest inscribed ball,
  // barycenter for Simplex, anything for Free). Used as a canonical start.
  Vector center() const;

 private:
  explicit ConvexSet(Variant v);

  Variant variant_;
  int dim_ = 0;
};

// Per-player product set acting on stacked joint points.
class ProductSet {
 public:
  ProductSet() = default;
  ProductSet(std::vector<ConvexSet> factors);

  const std::vector<ConvexSet>& factors() const { return factors_; }
  int total_dim() const { return total_dim_; }

  Vector project(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-9) const;
  ProductSet shrink(double r) const;
  double inradius() const;  // min over factors
  Vector center() const;

 private:
  std::vector<ConvexSet> factors_;
  int total_dim_ = 0;
};

}  // namespace banditnash
