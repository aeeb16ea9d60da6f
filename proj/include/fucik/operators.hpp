// Discrete realizations of the quadratic form a(u,v) = \int grad u . grad v K dx
// in the transformed variable: a diagonal spectral operator on an oversampled
// Hermite basis, a tridiagonal finite-difference operator, and a dense wrapper
// for small explicit matrices.
#ifndef FUCIK_OPERATORS_HPP
#define FUCIK_OPERATORS_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "space.hpp"

namespace fucik {

template <class S>
void sign_fix(VecX<S>& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < S(0)) v = -v;
}

template <class S>
struct EigenSystem {
  VecX<S> values;   // ascending
  MatX<S> vectors;  // orthonormal columns, pre-scaled sample convention
};

// Spectral operator: exact levels on the retained modes. On the orthogonal
// complement of the basis span it acts as mu times the identity, with mu the
// first excluded level; this keeps the operator bounded below by lam1 on every
// sample vector, not just on basis coefficients, so nothing can leak through
// an undetermined kernel during path descent.
template <class S>
class SpectralOperator {
 public:
  using Scalar = S;

  explicit SpectralOperator(Grid<S> grid) : grid_(std::move(grid)) {
    if (grid_.backend != Backend::spectral)
      throw std::invalid_argument("spectral operator needs a spectral grid");
    const int m1 = grid_.cutoff;
    const Eigen::Index n1 = grid_.axis.size();
    MatX<S> b1 = scaled_hermite_basis<S>(m1 - 1, grid_.axis);

    if (grid_.dim == 1) {
      B_.resize(n1, m1);
      levels_.resize(m1);
      for (int k = 0; k < m1; ++k) {
        B_.col(k) = b1.col(k).cwiseProduct(grid_.sqrtw);
        levels_[k] = oscillator_level<S>(k);
      }
    } else {
      struct Mode { int k1, k2; };
      std::vector<Mode> modes;
      for (int k1 = 0; k1 < m1; ++k1)
        for (int k2 = 0; k2 < m1; ++k2) modes.push_back({k1, k2});
      std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
        if (a.k1 + a.k2 != b.k1 + b.k2) return a.k1 + a.k2 < b.k1 + b.k2;
        return a.k1 < b.k1;
      });
      // the flattened weight is a product of 1D trapezoid weights, so the
      // column of a tensor mode is the Kronecker product of weighted columns
      VecX<S> w1 = VecX<S>::Constant(n1, grid_.h);
      w1[0] *= S(0.5);
      w1[n1 - 1] *= S(0.5);
      VecX<S> sqw1 = w1.array().sqrt();
      B_.resize(n1 * n1, static_cast<Eigen::Index>(modes.size()));
      levels_.resize(static_cast<Eigen::Index>(modes.size()));
      for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(modes.size()); ++c) {
        const auto [k1, k2] = modes[c];
        VecX<S> a = b1.col(k1).cwiseProduct(sqw1);
        VecX<S> b = b1.col(k2).cwiseProduct(sqw1);
        for (Eigen::Index i = 0; i < n1; ++i)
          B_.col(c).segment(i * n1, n1) = a[i] * b;
        levels_[c] = S(k1 + k2 + grid_.dim) / S(2);
      }
    }
    for (Eigen::Index c = 0; c < B_.cols(); ++c) {
      VecX<S> col = B_.col(c);
      sign_fix(col);
      col /= col.norm();
      B_.col(c) = col;
    }
    mu_ = S(grid_.cutoff + grid_.dim) / S(2);
  }

  Eigen::Index size() const { return B_.rows(); }
  const Grid<S>& grid() const { return grid_; }
  const MatX<S>& basis() const { return B_; }
  const VecX<S>& levels() const { return levels_; }
  S mu() const { return mu_; }
  S lam1() const { return levels_[0]; }

  VecX<S> apply(const VecX<S>& z) const {
    VecX<S> c = B_.transpose() * z;
    return mu_ * z + B_ * ((levels_.array() - mu_).matrix().asDiagonal() * c);
  }

  MatX<S> dense() const {
    MatX<S> A = B_ * ((levels_.array() - mu_).matrix().asDiagonal() * B_.transpose());
    A.diagonal().array() += mu_;
    return A;
  }

  VecX<S> mode(Eigen::Index k) const { return B_.col(k); }
  VecX<S> phi1() const { return B_.col(0); }

 private:
  Grid<S> grid_;
  MatX<S> B_;
  VecX<S> levels_;
  S mu_ = S(0);
};

// Finite differences on [-R+shift, R+shift]: ghost-point homogeneous Dirichlet,
// second-order central stencil for -v'' + (x^2/16 + 1/4) v. The optional rigid
// shift lets a caller place a grid node exactly on a sign interface.
template <class S>
class FdOperator {
 public:
  using Scalar = S;

  explicit FdOperator(Grid<S> grid, S shift = S(0)) : grid_(std::move(grid)) {
    if (grid_.backend != Backend::finite_difference)
      throw std::invalid_argument("fd operator needs a finite-difference grid");
    grid_.shift = shift;
    if (shift != S(0)) {
      grid_.axis.array() += shift;
      grid_.xsq = grid_.axis.array().square();
    }
    const Eigen::Index n = grid_.axis.size();
    const S ih2 = S(1) / (grid_.h * grid_.h);
    diag_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
      diag_[i] = S(2) * ih2 + grid_.xsq[i] / S(16) + S(0.25);
    off_ = VecX<S>::Constant(n - 1, -ih2);

    Eigen::SelfAdjointEigenSolver<MatX<S>> es;
    es.computeFromTridiagonal(diag_, off_, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolve failed");
    eig_.values = es.eigenvalues();
    eig_.vectors = es.eigenvectors();
    for (Eigen::Index c = 0; c < eig_.vectors.cols(); ++c) {
      VecX<S> col = eig_.vectors.col(c);
      sign_fix(col);
      eig_.vectors.col(c) = col;
    }
  }

  Eigen::Index size() const { return diag_.size(); }
  const Grid<S>& grid() const { return grid_; }
  const VecX<S>& diagonal() const { return diag_; }
  const VecX<S>& off_diagonal() const { return off_; }
  S lam1() const { return eig_.values[0]; }
  const EigenSystem<S>& eigensystem_full() const { return eig_; }

  VecX<S> apply(const VecX<S>& z) const {
    const Eigen::Index n = diag_.size();
    VecX<S> r = diag_.cwiseProduct(z);
    r.head(n - 1) += off_.cwiseProduct(z.tail(n - 1));
    r.tail(n - 1) += off_.cwiseProduct(z.head(n - 1));
    return r;
  }

  MatX<S> dense() const {
    const Eigen::Index n = diag_.size();
    MatX<S> A = MatX<S>::Zero(n, n);
    A.diagonal() = diag_;
    A.diagonal(1) = off_;
    A.diagonal(-1) = off_;
    return A;
  }

  VecX<S> mode(Eigen::Index k) const { return eig_.vectors.col(k); }
  VecX<S> phi1() const { return eig_.vectors.col(0); }

 private:
  Grid<S> grid_;
  VecX<S> diag_, off_;
  EigenSystem<S> eig_;
};

// Dense symmetric operator for explicit small matrices.
template <class S>
class DenseOperator {
 public:
  using Scalar = S;

  explicit DenseOperator(MatX<S> A) : A_(std::move(A)) {
    if (A_.rows() != A_.cols()) throw std::invalid_argument("matrix not square");
    if ((A_ - A_.transpose()).cwiseAbs().maxCoeff() > S(1e-12))
      throw std::invalid_argument("matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<MatX<S>> es(A_);
    eig_.values = es.eigenvalues();
    eig_.vectors = es.eigenvectors();
    for (Eigen::Index c = 0; c < eig_.vectors.cols(); ++c) {
      VecX<S> col = eig_.vectors.col(c);
      sign_fix(col);
      eig_.vectors.col(c) = col;
    }
  }

  Eigen::Index size() const { return A_.rows(); }
  S lam1() const { return eig_.values[0]; }
  VecX<S> apply(const VecX<S>& z) const { return A_ * z; }
  const MatX<S>& dense() const { return A_; }
  VecX<S> mode(Eigen::Index k) const { return eig_.vectors.col(k); }
  VecX<S> phi1() const { return eig_.vectors.col(0); }
  const EigenSystem<S>& eigensystem_full() const { return eig_; }

 private:
  MatX<S> A_;
  EigenSystem<S> eig_;
};

template <class S>
EigenSystem<S> eigensystem(const SpectralOperator<S>& op, Eigen::Index count) {
  if (count < 1 || count > op.levels().size()) throw std::invalid_argument("bad eigenpair count");
  EigenSystem<S> es;
  es.values = op.levels().head(count);
  es.vectors = op.basis().leftCols(count);
  return es;
}

template <class S>
EigenSystem<S> eigensystem(const FdOperator<S>& op, Eigen::Index count) {
  if (count < 1 || count > op.size()) throw std::invalid_argument("bad eigenpair count");
  EigenSystem<S> es;
  es.values = op.eigensystem_full().values.head(count);
  es.vectors = op.eigensystem_full().vectors.leftCols(count);
  return es;
}

template <class S>
EigenSystem<S> eigensystem(const DenseOperator<S>& op, Eigen::Index count) {
  if (count < 1 || count > op.size()) throw std::invalid_argument("bad eigenpair count");
  EigenSystem<S> es;
  es.values = op.eigensystem_full().values.head(count);
  es.vectors = op.eigensystem_full().vectors.leftCols(count);
  return es;
}

// (level, multiplicity) pairs of the continuum operator: level (N+k-1)/2 with
// multiplicity binom(N+k-2, N-1), k = 1..kmax.
template <class S = double>
std::vector<std::pair<S, int>> closed_form_spectrum(int N, int kmax) {
  if (N < 1 || kmax < 1) throw std::invalid_argument("bad spectrum request");
  std::vector<std::pair<S, int>> out;
  out.reserve(kmax);
  for (int k = 1; k <= kmax; ++k) {
    long long mult = 1;
    for (int j = 1; j <= N - 1; ++j) mult = mult * (k - 1 + j) / j;
    out.emplace_back(S(N + k - 1) / S(2), static_cast<int>(mult));
  }
  return out;
}

template <class S>
struct SpectrumReport {
  bool pass = false;
  S max_error = S(0);
  bool multiplicities_ok = false;
  std::vector<int> computed_multiplicities;
  std::string detail;
};

// Compares ascending computed eigenvalues against the closed form. Eigenvalues
// are clustered within 10*tol before multiplicities are counted, so degenerate
// levels perturbed by round-off are not split.
template <class S>
SpectrumReport<S> verify_spectrum(const VecX<S>& computed, int N, S tol) {
  SpectrumReport<S> rep;
  const auto closed = closed_form_spectrum<S>(N, 64);

  std::vector<std::pair<S, int>> clusters;  // (mean, count)
  for (Eigen::Index i = 0; i < computed.size(); ++i) {
    if (!clusters.empty() && std::abs(computed[i] - clusters.back().first) <= S(10) * tol) {
      auto& [mean, cnt] = clusters.back();
      mean = (mean * S(cnt) + computed[i]) / S(cnt + 1);
      ++cnt;
    } else {
      clusters.emplace_back(computed[i], 1);
    }
  }

  rep.multiplicities_ok = true;
  Eigen::Index ic = 0;
  for (std::size_t lvl = 0; lvl < clusters.size(); ++lvl) {
    if (lvl >= closed.size()) break;
    const auto [value, mult] = closed[lvl];
    const bool last = (lvl + 1 == clusters.size());
    rep.computed_multiplicities.push_back(clusters[lvl].second);
    // the final cluster may be truncated by the requested count
    if (clusters[lvl].second != mult && !(last && clusters[lvl].second < mult))
      rep.multiplicities_ok = false;
    for (int j = 0; j < clusters[lvl].second; ++j, ++ic)
      rep.max_error = std::max(rep.max_error, std::abs(computed[ic] - value));
  }
  rep.pass = rep.multiplicities_ok && rep.max_error <= tol;
  if (!rep.pass)
    rep.detail = "max level error " + std::to_string(static_cast<double>(rep.max_error));
  return rep;
}

// Tridiagonal solve with partial pivoting (one fill-in superdiagonal).
// Handles the indefinite shifted systems of the spectrum probe, where an
// unpivoted Thomas sweep can break down.
template <class S>
VecX<S> tridiag_solve(VecX<S> dl, VecX<S> d, VecX<S> du, VecX<S> b) {
  const Eigen::Index n = d.size();
  if (dl.size() != n - 1 || du.size() != n - 1 || b.size() != n)
    throw std::invalid_argument("tridiagonal shape mismatch");
  VecX<S> du2 = VecX<S>::Zero(n >= 2 ? n - 2 : 0);
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    if (std::abs(dl[i]) > std::abs(d[i])) {
      std::swap(d[i], dl[i]);
      std::swap(du[i], d[i + 1]);
      if (i < n - 2) {
        du2[i] = du[i + 1];
        du[i + 1] = S(0);
      }
      std::swap(b[i], b[i + 1]);
    }
    if (d[i] == S(0)) throw std::runtime_error("singular tridiagonal system");
    const S m = dl[i] / d[i];
    d[i + 1] -= m * du[i];
    if (i < n - 2) du[i + 1] -= m * du2[i];
    b[i + 1] -= m * b[i];
    dl[i] = m;
  }
  if (d[n - 1] == S(0)) throw std::runtime_error("singular tridiagonal system");
  VecX<S> x(n);
  x[n - 1] = b[n - 1] / d[n - 1];
  if (n >= 2) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (Eigen::Index i = n - 3; i >= 0; --i)
    x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  return x;
}

}  // namespace fucik

#endif  // FUCIK_OPERATORS_HPP
