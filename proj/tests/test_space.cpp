#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fucik/space.hpp"

#include <cmath>

using namespace fucik;

TEST_CASE("default radius clears the classical turning point") {
  CHECK(default_radius<double>(31) == doctest::Approx(24.0));
  CHECK(default_radius<double>(7) == doctest::Approx(16.0));
  // the retained tail mass at the boundary is negligible
  const double R = default_radius<double>(31);
  CHECK(std::exp(-R * R / 8.0) < 1e-7);
}

TEST_CASE("spectral grid covers [-R, R] with snapped spacing") {
  const Grid<double> g = build_grid<double>(1, Backend::spectral, 32);
  CHECK(g.axis.size() == 385);
  CHECK(g.axis[0] == doctest::Approx(-24.0));
  CHECK(g.axis[g.axis.size() - 1] == doctest::Approx(24.0));
  CHECK(g.h == doctest::Approx(0.125));
  CHECK(g.weights.minCoeff() > 0.0);
  // trapezoid weights integrate constants exactly
  CHECK(g.weights.sum() == doctest::Approx(48.0).epsilon(1e-12));
  for (Eigen::Index i = 0; i < g.samples(); ++i)
    CHECK(g.sqrtw[i] * g.sqrtw[i] == doctest::Approx(g.weights[i]).epsilon(1e-14));
}

TEST_CASE("finite-difference grid is uniform with endpoint nodes") {
  const Grid<double> g = build_grid<double>(1, Backend::finite_difference, 801);
  CHECK(g.axis.size() == 801);
  CHECK(g.h == doctest::Approx(24.0 / 800.0).epsilon(1e-15));
  CHECK(g.axis[0] == doctest::Approx(-12.0));
  CHECK(g.axis[800] == doctest::Approx(12.0));
  CHECK(g.weights.maxCoeff() == doctest::Approx(g.h));
  CHECK(g.weights.minCoeff() == doctest::Approx(g.h));
}

TEST_CASE("two-dimensional grid flattens row-major with product weights") {
  const Grid<double> g = build_grid<double>(2, Backend::spectral, 8);
  const Eigen::Index n = g.axis.size();
  CHECK(g.samples() == n * n);
  const Eigen::Index i = 3, j = 5;
  CHECK(g.xsq[i * n + j] ==
        doctest::Approx(g.axis[i] * g.axis[i] + g.axis[j] * g.axis[j]).epsilon(1e-14));
  // interior weights are h^2
  CHECK(g.weights[(n / 2) * n + n / 2] == doctest::Approx(g.h * g.h).epsilon(1e-14));
  CHECK(g.weights[0] == doctest::Approx(0.25 * g.h * g.h).epsilon(1e-14));
}

TEST_CASE("grid construction rejects bad shapes") {
  CHECK_THROWS_AS(build_grid<double>(3, Backend::spectral, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_grid<double>(2, Backend::finite_difference, 101), std::invalid_argument);
  CHECK_THROWS_AS(build_grid<double>(1, Backend::spectral, 1), std::invalid_argument);
}

TEST_CASE("ground state samples reproduce the weighted norm") {
  // (u, u)_K = int exp(-x^2/4) dx = 2 sqrt(pi) for u = exp(-x^2/4)
  const Grid<double> g = build_grid<double>(1, Backend::spectral, 32);
  const VecX<double> v = ground_state_samples(g);
  CHECK(v.squaredNorm() == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(norm_K(v) * norm_K(v) == doctest::Approx(v.squaredNorm()));
}

TEST_CASE("positive and negative parts split every vector") {
  VecX<double> u(5);
  u << 1.5, -2.0, 0.0, 3.0, -0.25;
  const VecX<double> up = positive_part(u);
  const VecX<double> um = negative_part(u);
  CHECK((u - (up - um)).norm() == 0.0);
  CHECK(up.minCoeff() >= 0.0);
  CHECK(um.minCoeff() >= 0.0);
  CHECK(up.dot(um) == 0.0);
}

TEST_CASE("sphere projection normalizes and rejects zero") {
  VecX<double> u(3);
  u << 3.0, 0.0, 4.0;
  CHECK(sphere_project(u).norm() == doctest::Approx(1.0).epsilon(1e-15));
  VecX<double> z = VecX<double>::Zero(3);
  CHECK_THROWS_AS(sphere_project(z), std::invalid_argument);
}

TEST_CASE("inner product requires matching lengths") {
  VecX<double> a = VecX<double>::Ones(4), b = VecX<double>::Ones(5);
  CHECK_THROWS_AS(inner_product(a, b), std::invalid_argument);
  CHECK(inner_product(a, a) == doctest::Approx(4.0));
}
