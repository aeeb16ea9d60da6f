// The asymmetric Rayleigh-type functional I_p(u) = <Au,u> - p|u+|^2 restricted
// to the unit sphere, its constrained gradient, and the pointwise residual of
// Au = alpha u+ - beta u-.
#ifndef FUCIK_FUNCTIONAL_HPP
#define FUCIK_FUNCTIONAL_HPP

#include "space.hpp"

namespace fucik {

template <class Op, class S>
S tilde_I_p(const Op& op, const VecX<S>& u, S p) {
  return u.dot(op.apply(u)) - p * positive_part(u).squaredNorm();
}

template <class S>
struct ConstrainedGrad {
  VecX<S> r;     // residual, orthogonal to u on the sphere
  S multiplier;  // Lagrange multiplier; equals I_p(u) when |u| = 1
};

// Half the tangential gradient of I_p on the sphere: r = Au - p u+ - t u with
// t = <u, Au - p u+>. Directional derivatives of I_p along unit tangents v
// are 2 <r, v>.
template <class Op, class S>
ConstrainedGrad<S> constrained_grad(const Op& op, const VecX<S>& u, S p) {
  VecX<S> w = op.apply(u) - p * positive_part(u);
  const S t = u.dot(w);
  return {w - t * u, t};
}

// Euclidean norm of Au - alpha u+ + beta u-, with u- the absolute value of
// the negative part. Zero exactly at solutions of the piecewise-linear
// eigenvalue problem at (alpha, beta).
template <class Op, class S>
S fucik_residual(const Op& op, const VecX<S>& u, S alpha, S beta) {
  return (op.apply(u) - alpha * positive_part(u) + beta * negative_part(u)).norm();
}

}  // namespace fucik

#endif  // FUCIK_FUNCTIONAL_HPP
