#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "banditnash/convex_set.hpp"
#include "banditnash/rng.hpp"

using namespace banditnash;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

// Exhaustive minimization of ||p - x|| over a fine grid on the standard
// simplex, as an independent oracle for the sort-based projection.
Vector simplex_grid_project(const Vector& x, int steps) {
  const int n = static_cast<int>(x.size());
  REQUIRE(n == 3);
  Vector best = Vector::Zero(n);
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps - i; ++j) {
      Vector p = vec3(double(i) / steps, double(j) / steps,
                      double(steps - i - j) / steps);
      const double d = (p - x).norm();
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
  }
  return best;
}

ConvexSet triangle() {
  Matrix n(3, 2);
  n << 0, -1, std::sqrt(0.5), std::sqrt(0.5), -std::sqrt(0.5), std::sqrt(0.5);
  Vector o(3);
  o << 0, 1, 1;
  return ConvexSet::polyhedron(n, o);
}

}  // namespace

TEST_CASE("box projection clamps componentwise") {
  ConvexSet box = ConvexSet::box(vec2(0, 0), vec2(1, 1));
  CHECK((box.project(vec2(2, -1)) - vec2(1, 0)).norm() == doctest::Approx(0));
  CHECK(box.contains(vec2(0.5, 0.5)));
  CHECK(!box.contains(vec2(1.1, 0.5)));
}

TEST_CASE("simplex projection is identity on members") {
  ConvexSet s = ConvexSet::simplex(2);
  CHECK((s.project(vec2(0.5, 0.5)) - vec2(0.5, 0.5)).norm() == doctest::Approx(0));
}

TEST_CASE("simplex projection matches brute-force grid minimization") {
  ConvexSet s = ConvexSet::simplex(3);
  CHECK((s.project(vec3(1, 1, 1)) - vec3(1.0 / 3, 1.0 / 3, 1.0 / 3)).norm() ==
        doctest::Approx(0).epsilon(1e-12));
  GaussianStream rng(5);
  for (int k = 0; k < 20; ++k) {
    Vector x = rng.normal_vector(3) * 1.5;
    Vector fast = s.project(x);
    Vector grid = simplex_grid_project(x, 1000);
    CHECK((fast - grid).norm() <= 2e-3);  // grid resolution limit
  }
}

TEST_CASE("ball projection is radial") {
  ConvexSet ball = ConvexSet::ball(Vector::Zero(2), 1.0);
  Vector p = ball.project(vec2(3, 4));
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));
}

TEST_CASE("shrink adjusts each variant exactly") {
  ConvexSet box = ConvexSet::box(vec2(0, 0), vec2(1, 1)).shrink(0.25);
  CHECK(box.contains(vec2(0.25, 0.25)));
  CHECK(!box.contains(vec2(0.2, 0.5)));
  CHECK(box.inradius() == doctest::Approx(0.25));

  ConvexSet ball = ConvexSet::ball(Vector::Zero(2), 1.0).shrink(0.3);
  CHECK(ball.inradius() == doctest::Approx(0.7));

  ConvexSet f = ConvexSet::free(3).shrink(0.5);
  CHECK(f.is_free());
  CHECK(f.dim() == 3);
}

TEST_CASE("shrink by the inradius or more is an error carrying the inradius") {
  ConvexSet box = ConvexSet::box(vec2(0, 0), vec2(1, 1));
  CHECK_THROWS_AS(box.shrink(0.5), std::domain_error);
  try {
    box.shrink(0.6);
    FAIL("expected throw");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
}

TEST_CASE("distance to boundary on boxes and balls") {
  ConvexSet box = ConvexSet::box(vec2(0, 0), vec2(1, 1));
  CHECK(box.distance_to_boundary(vec2(0.5, 0.2)) == doctest::Approx(0.2));
  ConvexSet ball = ConvexSet::ball(Vector::Zero(2), 1.0);
  CHECK(ball.distance_to_boundary(Vector::Zero(2)) == doctest::Approx(1.0));
  CHECK(std::isinf(ConvexSet::free(2).distance_to_boundary(vec2(9, 9))));
  CHECK_THROWS_AS(box.distance_to_boundary(vec2(2, 2)), std::domain_error);
}

TEST_CASE("polyhedron boundary distance matches dense boundary sampling") {
  ConvexSet tri = triangle();
  GaussianStream rng(9);
  for (int k = 0; k < 10; ++k) {
    Vector x = tri.project(vec2(rng.normal() * 0.3, 0.4 + rng.normal() * 0.2));
    if (!tri.contains(x) || tri.distance_to_boundary(x) < 1e-6) continue;
    // Walk the three edges at 1e-3 resolution and take the nearest point.
    double best = std::numeric_limits<double>::infinity();
    auto edge = [&](Vector a, Vector b) {
      for (int s = 0; s <= 1000; ++s) {
        Vector p = a + (b - a) * (s / 1000.0);
        best = std::min(best, (p - x).norm());
      }
    };
    Vector left = vec2(-std::sqrt(2.0), 0), right = vec2(std::sqrt(2.0), 0);
    Vector apex = vec2(0, std::sqrt(2.0));
    edge(left, right);
    edge(left, apex);
    edge(right, apex);
    CHECK(tri.distance_to_boundary(x) == doctest::Approx(best).epsilon(1e-2));
  }
}

TEST_CASE("inradius values") {
  CHECK(ConvexSet::box(vec2(0, 0), vec2(1, 1)).inradius() == doctest::Approx(0.5));
  CHECK(ConvexSet::ball(vec2(1, 2), 3.0).inradius() == doctest::Approx(3.0));
  // In-hull inradius of the 1-simplex in R^2: distance from the barycenter
  // (0.5, 0.5) to the nearest vertex, sqrt(2)/2. Cross-checked by maximizing
  // the distance-to-boundary over a fine grid on the segment.
  double grid_best = 0;
  ConvexSet s = ConvexSet::simplex(2);
  for (int i = 1; i < 1000; ++i) {
    const double a = i / 1000.0;
    grid_best = std::max(grid_best, s.distance_to_boundary(vec2(a, 1 - a)));
  }
  CHECK(s.inradius() == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(s.inradius() == doctest::Approx(grid_best).epsilon(1e-5));
  // Isoceles right triangle with area 2 and semiperimeter 2 + sqrt(2):
  // inradius = 2 / (2 + sqrt(2)) = 2 - sqrt(2).
  CHECK(triangle().inradius() == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("projection is non-expansive and idempotent on every variant") {
  const std::vector<ConvexSet> sets = {
      ConvexSet::free(2), ConvexSet::box(vec2(-1, -1), vec2(1, 1)),
      ConvexSet::ball(vec2(1, 1), 2.0), ConvexSet::simplex(3), triangle()};
  for (const auto& s : sets) {
    GaussianStream rng(11);
    for (int k = 0; k < 1000; ++k) {
      Vector x = 3.0 * rng.normal_vector(s.dim());
      Vector y = 3.0 * rng.normal_vector(s.dim());
      Vector px = s.project(x);
      CHECK((px - s.project(y)).norm() <= (x - y).norm() + 1e-12);
      CHECK((s.project(px) - px).norm() <= 1e-12);
      CHECK(s.contains(px));
    }
  }
}

TEST_CASE("shrink consistency: members of the shrunk set sit r-deep") {
  const std::vector<ConvexSet> sets = {
      ConvexSet::box(vec2(-1, -1), vec2(1, 1)), ConvexSet::ball(vec2(0, 0), 1.5),
      ConvexSet::simplex(3), triangle()};
  for (const auto& s : sets) {
    const double r = 0.2 * s.inradius();
    ConvexSet shrunk = s.shrink(r);
    GaussianStream rng(13);
    for (int k = 0; k < 200; ++k) {
      Vector x = shrunk.project(2.0 * rng.normal_vector(s.dim()));
      CHECK(s.distance_to_boundary(x, 1e-7) >= r - 1e-9);
    }
  }
}

TEST_CASE("projection shift between shrink levels obeys the per-family bound") {
  GaussianStream rng(17);
  ConvexSet box = ConvexSet::box(vec2(-1, -1), vec2(1, 1));
  ConvexSet ball = ConvexSet::ball(vec2(0, 0), 1.0);
  for (int k = 0; k < 1000; ++k) {
    Vector x = 3.0 * rng.normal_vector(2);
    const double r1 = 0.05 + 0.2 * rng.uniform();
    const double r2 = 0.05 + 0.2 * rng.uniform();
    if (r1 == r2) continue;
    const double dr = std::abs(r1 - r2);
    CHECK((box.shrink(r1).project(x) - box.shrink(r2).project(x)).norm() <=
          std::sqrt(2.0) * dr + 1e-9);
    CHECK((ball.shrink(r1).project(x) - ball.shrink(r2).project(x)).norm() <=
          dr + 1e-9);
  }
}

TEST_CASE("variational characterization of the projection") {
  const std::vector<ConvexSet> sets = {
      ConvexSet::box(vec2(-1, -1), vec2(1, 1)), ConvexSet::ball(vec2(0, 0), 1.0),
      ConvexSet::simplex(3), triangle()};
  for (const auto& s : sets) {
    GaussianStream rng(19);
    for (int k = 0; k < 100; ++k) {
      Vector x = 3.0 * rng.normal_vector(s.dim());
      Vector px = s.project(x);
      for (int j = 0; j < 10; ++j) {
        Vector y = s.project(2.0 * rng.normal_vector(s.dim()));
        CHECK((x - px).dot(y - px) <= 1e-9);
      }
    }
  }
}

TEST_CASE("polyhedron constructor normalizes normals and rejects empty sets") {
  Matrix n(2, 1);
  n << 2, -2;  // scaled normals, same halfspaces as x <= 0.5, -x <= 0.5
  Vector o(2);
  o << 1, 1;
  ConvexSet p = ConvexSet::polyhedron(n, o);
  CHECK(p.contains(Vector::Constant(1, 0.5)));
  CHECK(!p.contains(Vector::Constant(1, 0.51)));

  Matrix bad(2, 1);
  bad << 1, -1;
  Vector bado(2);
  bado << -1, -1;  // x <= -1 and x >= 1
  CHECK_THROWS_AS(ConvexSet::polyhedron(bad, bado), std::domain_error);
}

TEST_CASE("product set applies per-factor operations") {
  ProductSet p({ConvexSet::box(vec2(0, 0), vec2(1, 1)),
                ConvexSet::ball(Vector::Zero(2), 2.0)});
  CHECK(p.total_dim() == 4);
  Vector x(4);
  x << 2, -1, 3, 4;
  Vector proj = p.project(x);
  CHECK((proj.head(2) - vec2(1, 0)).norm() == doctest::Approx(0));
  CHECK((proj.tail(2) - vec2(1.2, 1.6)).norm() == doctest::Approx(0));
  CHECK(p.inradius() == doctest::Approx(0.5));
  ProductSet shrunk = p.shrink(0.25);
  CHECK(shrunk.factors()[0].inradius() == doctest::Approx(0.25));
  CHECK(shrunk.factors()[1].inradius() == doctest::Approx(1.75));
}
