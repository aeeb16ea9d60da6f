// Orthonormal Hermite functions and the scaled basis that diagonalizes the
// transformed operator -v'' + (x^2/16 + 1/4) v.
#ifndef FUCIK_HERMITE_HPP
#define FUCIK_HERMITE_HPP

#include <Eigen/Dense>
#include <cmath>

namespace fucik {

template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// Columns k = 0..maxdeg of psi_k(y), the L^2(R)-orthonormal Hermite functions,
// evaluated by the three-term recurrence. Stable for all k, y of interest
// because the recurrence is carried on the normalized functions directly.
template <class S>
MatX<S> hermite_basis(Eigen::Index maxdeg, const VecX<S>& y) {
  const Eigen::Index n = y.size();
  MatX<S> psi(n, maxdeg + 1);
  const S c0 = S(std::pow(M_PI, -0.25));
  psi.col(0) = (y.array().square() * S(-0.5)).exp() * c0;
  if (maxdeg >= 1) psi.col(1) = std::sqrt(S(2)) * y.array() * psi.col(0).array();
  for (Eigen::Index k = 2; k <= maxdeg; ++k) {
    const S a = std::sqrt(S(2) / S(k));
    const S b = std::sqrt(S(k - 1) / S(k));
    psi.col(k) = a * y.array() * psi.col(k - 1).array() - b * psi.col(k - 2).array();
  }
  return psi;
}

// b_k(x) = psi_k(x/2)/sqrt(2): orthonormal in dx, eigenfunctions of the
// transformed operator with level (k+1)/2 in one dimension.
template <class S>
MatX<S> scaled_hermite_basis(Eigen::Index maxdeg, const VecX<S>& x) {
  VecX<S> y = x / S(2);
  MatX<S> b = hermite_basis<S>(maxdeg, y);
  b *= S(1) / std::sqrt(S(2));
  return b;
}

// 1D oscillator level of mode k in the transformed variable.
template <class S>
S oscillator_level(Eigen::Index k) {
  return S(k + 1) / S(2);
}

}  // namespace fucik

#endif  // FUCIK_HERMITE_HPP
