#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fucik/operators.hpp"
#include "fucik/rng.hpp"

#include <cmath>

using namespace fucik;

TEST_CASE("spectral levels in one dimension are (k+1)/2") {
  SpectralOperator<double> op(build_grid<double>(1, Backend::spectral, 5));
  REQUIRE(op.levels().size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(op.levels()[k] == doctest::Approx(0.5 * (k + 1)).epsilon(1e-15));
  CHECK(op.lam1() == doctest::Approx(0.5));
  CHECK(op.mu() == doctest::Approx(3.0));

  // the dense realization must reproduce the levels; this fails if the
  // discrete basis loses orthonormality
  Eigen::SelfAdjointEigenSolver<MatX<double>> es(op.dense());
  for (int k = 0; k < 5; ++k)
    CHECK(es.eigenvalues()[k] == doctest::Approx(0.5 * (k + 1)).epsilon(1e-10));
  CHECK(es.eigenvalues()[5] == doctest::Approx(op.mu()).epsilon(1e-10));
}

TEST_CASE("spectral basis is orthonormal under the quadrature") {
  SpectralOperator<double> op(build_grid<double>(1, Backend::spectral, 32));
  const MatX<double> G = op.basis().transpose() * op.basis();
  CHECK((G - MatX<double>::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("tensor modes come out ordered by level") {
  SpectralOperator<double> op(build_grid<double>(2, Backend::spectral, 3));
  const VecX<double>& lv = op.levels();
  REQUIRE(lv.size() == 9);
  const double expected[9] = {1.0, 1.5, 1.5, 2.0, 2.0, 2.0, 2.5, 2.5, 3.0};
  for (int i = 0; i < 9; ++i) CHECK(lv[i] == doctest::Approx(expected[i]).epsilon(1e-15));

  SpectralOperator<double> big(build_grid<double>(2, Backend::spectral, 8));
  const SpectrumReport<double> rep = verify_spectrum(eigensystem(big, 21).values, 2, 1e-12);
  CHECK(rep.pass);
  REQUIRE(rep.computed_multiplicities.size() == 6);
  for (int k = 0; k < 6; ++k) CHECK(rep.computed_multiplicities[k] == k + 1);
}

TEST_CASE("closed form spectrum levels and multiplicities") {
  const auto s1 = closed_form_spectrum<double>(1, 3);
  REQUIRE(s1.size() == 3);
  CHECK(s1[0] == std::pair<double, int>(0.5, 1));
  CHECK(s1[2] == std::pair<double, int>(1.5, 1));
  const auto s2 = closed_form_spectrum<double>(2, 3);
  CHECK(s2[0] == std::pair<double, int>(1.0, 1));
  CHECK(s2[1] == std::pair<double, int>(1.5, 2));
  CHECK(s2[2] == std::pair<double, int>(2.0, 3));
  const auto s5 = closed_form_spectrum<double>(5, 1);
  CHECK(s5[0] == std::pair<double, int>(2.5, 1));
  CHECK_THROWS_AS(closed_form_spectrum<double>(0, 3), std::invalid_argument);
}

TEST_CASE("finite-difference operator matches its dense form") {
  FdOperator<double> op(build_grid<double>(1, Backend::finite_difference, 201));
  Rng rng(11);
  const VecX<double> z = rng.gaussian_vec(op.size());
  CHECK((op.apply(z) - op.dense() * z).norm() < 1e-12 * z.norm());
  CHECK((op.dense() - op.dense().transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("finite-difference eigenvalues track the closed form") {
  FdOperator<double> op(build_grid<double>(1, Backend::finite_difference, 801));
  // second-order accuracy at h = 0.03; the ground level is reproduced to 4e-6
  CHECK(op.lam1() == doctest::Approx(0.49999648432584315).epsilon(1e-10));
  const SpectrumReport<double> rep = verify_spectrum(eigensystem(op, 6).values, 1, 2e-3);
  CHECK(rep.pass);
  CHECK(rep.max_error < 5e-4);
}

TEST_CASE("exact ground state samples nearly annihilate both operators") {
  {
    SpectralOperator<double> op(build_grid<double>(1, Backend::spectral, 32));
    const VecX<double> g = sphere_project(ground_state_samples(op.grid()));
    CHECK((op.apply(g) - 0.5 * g).norm() < 1e-12);
  }
  {
    FdOperator<double> op(build_grid<double>(1, Backend::finite_difference, 801));
    const VecX<double> g = sphere_project(ground_state_samples(op.grid()));
    CHECK((op.apply(g) - 0.5 * g).norm() < 1e-4);
  }
}

TEST_CASE("eigenvector sign convention and positivity of the ground mode") {
  FdOperator<double> fd(build_grid<double>(1, Backend::finite_difference, 201));
  CHECK(fd.phi1().minCoeff() > 0.0);  // interior positivity of the first mode
  SpectralOperator<double> sp(build_grid<double>(1, Backend::spectral, 8));
  CHECK(sp.phi1().maxCoeff() > 0.0);
  VecX<double> v(3);
  v << 0.1, -0.9, 0.3;
  sign_fix(v);
  CHECK(v[1] == doctest::Approx(0.9));
}

TEST_CASE("dense operator validates its matrix") {
  MatX<double> bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(DenseOperator<double>{bad}, std::invalid_argument);
  MatX<double> asym(2, 2);
  asym << 1, 2, 3, 4;
  CHECK_THROWS_AS(DenseOperator<double>{asym}, std::invalid_argument);
  MatX<double> good(2, 2);
  good << 2, -1, -1, 2;
  DenseOperator<double> op(good);
  CHECK(op.lam1() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eigensystem(op, 2).values[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(eigensystem(op, 3), std::invalid_argument);
  CHECK_THROWS_AS(eigensystem(op, 0), std::invalid_argument);
}

TEST_CASE("spectrum verification flags wrong values and multiplicities") {
  VecX<double> good(3);
  good << 0.5, 1.0, 1.5;
  CHECK(verify_spectrum(good, 1, 1e-12).pass);
  VecX<double> off(3);
  off << 0.5, 1.01, 1.5;
  CHECK_FALSE(verify_spectrum(off, 1, 1e-12).pass);
  // a level split past the clustering width breaks the multiplicity count
  VecX<double> split(3);
  split << 1.0, 1.5, 1.5 + 1e-6;
  const SpectrumReport<double> rep = verify_spectrum(split, 2, 1e-12);
  CHECK_FALSE(rep.multiplicities_ok);
}

TEST_CASE("pivoted tridiagonal solve agrees with dense elimination") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 40;
    VecX<double> dl = rng.gaussian_vec(n - 1), d = rng.gaussian_vec(n), du = rng.gaussian_vec(n - 1);
    VecX<double> b = rng.gaussian_vec(n);
    MatX<double> A = MatX<double>::Zero(n, n);
    A.diagonal() = d;
    A.diagonal(-1) = dl;
    A.diagonal(1) = du;
    const VecX<double> x = tridiag_solve(dl, d, du, b);
    const VecX<double> xd = A.partialPivLu().solve(b);
    CHECK((x - xd).norm() < 1e-8 * (1.0 + xd.norm()));
  }
}

TEST_CASE("tridiagonal solve survives an indefinite interior shift") {
  FdOperator<double> op(build_grid<double>(1, Backend::finite_difference, 201));
  // shift between the first two eigenvalues makes the system indefinite
  VecX<double> d = op.diagonal().array() - 0.75;
  Rng rng(5);
  VecX<double> b = rng.gaussian_vec(op.size());
  const VecX<double> x = tridiag_solve<double>(op.off_diagonal(), d, op.off_diagonal(), b);
  VecX<double> r = d.cwiseProduct(x);
  const Eigen::Index n = x.size();
  r.head(n - 1) += op.off_diagonal().cwiseProduct(x.tail(n - 1));
  r.tail(n - 1) += op.off_diagonal().cwiseProduct(x.head(n - 1));
  CHECK((r - b).norm() < 1e-9 * b.norm());
}
