#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fucik/functional.hpp"
#include "fucik/operators.hpp"
#include "fucik/rng.hpp"

#include <cmath>

using namespace fucik;

namespace {

SpectralOperator<double> make_op() {
  return SpectralOperator<double>(build_grid<double>(1, Backend::spectral, 8));
}

}  // namespace

TEST_CASE("the functional takes eigenvalues on eigenmodes at p = 0") {
  const auto op = make_op();
  CHECK(tilde_I_p(op, op.mode(0), 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tilde_I_p(op, op.mode(1), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tilde_I_p(op, op.mode(3), 0.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("constrained gradient on a mixed mode has the known norm") {
  // u = (phi1 + phi2)/sqrt(2): r = Au - <u,Au> u has norm |lam2 - lam1|/2
  const auto op = make_op();
  const VecX<double> u = sphere_project(VecX<double>(op.mode(0) + op.mode(1)));
  const ConstrainedGrad<double> cg = constrained_grad(op, u, 0.0);
  CHECK(cg.multiplier == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(cg.r.norm() == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("constrained gradient is orthogonal to the base point") {
  const auto op = make_op();
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const VecX<double> u = sphere_project(rng.gaussian_vec(op.size()));
    for (const double p : {0.0, 0.7, 3.0}) {
      const ConstrainedGrad<double> cg = constrained_grad(op, u, p);
      CHECK(std::abs(cg.r.dot(u)) < 1e-10);
    }
  }
}

TEST_CASE("reflection identity on the unit sphere") {
  const auto op = make_op();
  Rng rng(23);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const VecX<double> u = sphere_project(rng.gaussian_vec(op.size()));
    for (const double p : {0.5, 1.0, 5.0}) {
      const double lhs = tilde_I_p(op, VecX<double>(-u), -p);
      const double rhs = tilde_I_p(op, u, p) + p;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("coercivity floor lam1 - p holds for every sample vector") {
  const auto op = make_op();
  Rng rng(29);
  for (int i = 0; i < 1000; ++i) {
    const VecX<double> u = sphere_project(rng.gaussian_vec(op.size()));
    for (const double p : {0.0, 1.0, 5.0})
      CHECK(tilde_I_p(op, u, p) >= op.lam1() - p - 1e-9);
  }
}

TEST_CASE("directional derivatives are twice the constrained gradient") {
  const auto op = make_op();
  Rng rng(31);
  const double eps = 3e-5;
  for (int i = 0; i < 20; ++i) {
    const VecX<double> u = sphere_project(rng.gaussian_vec(op.size()));
    VecX<double> w = rng.gaussian_vec(op.size());
    w -= w.dot(u) * u;
    const VecX<double> v = w / w.norm();  // unit tangent at u
    for (const double p : {0.0, 1.3}) {
      const double ep = tilde_I_p(op, sphere_project(VecX<double>(u + eps * v)), p);
      const double em = tilde_I_p(op, sphere_project(VecX<double>(u - eps * v)), p);
      const double fd = (ep - em) / (2.0 * eps);
      const double an = 2.0 * constrained_grad(op, u, p).r.dot(v);
      CHECK(std::abs(fd - an) < 1e-6 * std::max(1.0, std::abs(an)));
    }
  }
}

TEST_CASE("the ground mode sits on the trivial lines of the spectrum") {
  const auto op = make_op();
  const VecX<double> phi1 = op.phi1();
  for (const double p : {0.0, 1.0, 5.0}) {
    CHECK(fucik_residual(op, phi1, 0.5, 0.5 - p) < 1e-10);
    CHECK(fucik_residual(op, VecX<double>(-phi1), 0.5 + p, 0.5) < 1e-10);
  }
  // away from the lines the residual is genuinely nonzero
  CHECK(fucik_residual(op, phi1, 0.6, 0.5) > 1e-3);
}
