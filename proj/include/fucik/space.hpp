// Discretization of the Gaussian-weighted space in the transformed variable
// v = e^{|x|^2/8} u. Samples are pre-scaled by sqrt(quadrature weight), so the
// weighted L^2 inner product is a plain dot product and positive parts are
// pointwise maxima.
#ifndef FUCIK_SPACE_HPP
#define FUCIK_SPACE_HPP

#include <cmath>
#include <stdexcept>

#include "hermite.hpp"

namespace fucik {

enum class Backend { spectral, finite_difference };

template <class S>
struct Grid {
  int dim = 1;
  Backend backend = Backend::spectral;
  int cutoff = 32;     // spectral: modes per axis; FD: nodes per axis
  S radius = S(0);
  S h = S(0);
  S shift = S(0);      // rigid grid offset, used to align a node with a sign interface
  VecX<S> axis;        // nodes along one axis (includes both endpoints)
  VecX<S> weights;     // flattened quadrature weights for dx
  VecX<S> sqrtw;
  VecX<S> xsq;         // |x|^2 at each flattened node

  Eigen::Index samples() const { return weights.size(); }
};

// Default truncation radius: the classical turning point of the highest mode,
// 2*sqrt(2*maxdeg+1), plus padding so the trapezoid tail error sits at machine
// precision. Too small an R destroys the discrete orthonormality of the basis.
template <class S>
S default_radius(int maxdeg) {
  return std::ceil(S(2) * std::sqrt(S(2 * maxdeg + 1)) + S(8));
}

template <class S = double>
Grid<S> build_grid(int dim, Backend backend, int cutoff, S radius = S(0), S h = S(0)) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  if (backend == Backend::finite_difference && dim != 1)
    throw std::invalid_argument("finite-difference backend is one-dimensional");
  if (cutoff < 2) throw std::invalid_argument("cutoff too small");

  Grid<S> g;
  g.dim = dim;
  g.backend = backend;
  g.cutoff = cutoff;

  if (backend == Backend::finite_difference) {
    g.radius = radius > S(0) ? radius : S(12);
    const Eigen::Index n = cutoff;
    g.h = S(2) * g.radius / S(n - 1);
    g.axis.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) g.axis[i] = -g.radius + S(i) * g.h;
    // Uniform weight h: under the Dirichlet condition the boundary samples
    // vanish, so trapezoid endpoint halving changes nothing and a uniform
    // weight keeps the discrete basis exactly orthonormal.
    g.weights = VecX<S>::Constant(n, g.h);
  } else {
    g.radius = radius > S(0) ? radius : default_radius<S>(cutoff - 1);
    g.h = h > S(0) ? h : (dim == 1 ? S(0.125) : S(0.25));
    const Eigen::Index n = static_cast<Eigen::Index>(std::llround(S(2) * g.radius / g.h)) + 1;
    g.h = S(2) * g.radius / S(n - 1);  // snap so the endpoints land exactly
    g.axis.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) g.axis[i] = -g.radius + S(i) * g.h;
    VecX<S> w1 = VecX<S>::Constant(n, g.h);
    w1[0] *= S(0.5);
    w1[n - 1] *= S(0.5);
    if (dim == 1) {
      g.weights = w1;
    } else {
      g.weights.resize(n * n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g.weights[i * n + j] = w1[i] * w1[j];
    }
  }

  g.sqrtw = g.weights.array().sqrt();
  const Eigen::Index n1 = g.axis.size();
  if (dim == 1) {
    g.xsq = g.axis.array().square();
  } else {
    g.xsq.resize(n1 * n1);
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n1; ++j)
        g.xsq[i * n1 + j] = g.axis[i] * g.axis[i] + g.axis[j] * g.axis[j];
  }
  return g;
}

// Weighted inner product of two pre-scaled sample vectors.
template <class D1, class D2>
typename D1::Scalar inner_product(const Eigen::MatrixBase<D1>& u, const Eigen::MatrixBase<D2>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("sample length mismatch");
  return u.dot(v);
}

template <class D>
typename D::Scalar norm_K(const Eigen::MatrixBase<D>& u) {
  return u.norm();
}

template <class D>
VecX<typename D::Scalar> positive_part(const Eigen::MatrixBase<D>& u) {
  return u.cwiseMax(typename D::Scalar(0));
}

template <class D>
VecX<typename D::Scalar> negative_part(const Eigen::MatrixBase<D>& u) {
  return (-u).cwiseMax(typename D::Scalar(0));
}

template <class D>
VecX<typename D::Scalar> sphere_project(const Eigen::MatrixBase<D>& u) {
  using S = typename D::Scalar;
  const S n = u.norm();
  if (!(n > S(0))) throw std::invalid_argument("cannot project the zero field");
  return u / n;
}

// Samples of v1 = e^{-|x|^2/8}, the transformed ground state, pre-scaled.
// Useful as an analytic cross-check of the first basis column.
template <class S>
VecX<S> ground_state_samples(const Grid<S>& g) {
  VecX<S> v = (g.xsq.array() * S(-0.125)).exp() * g.sqrtw.array();
  return v;
}

}  // namespace fucik

#endif  // FUCIK_SPACE_HPP
