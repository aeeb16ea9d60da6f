// The asymptotically linear problem Lu = f(u): energy, gradient, the
// two-solution search of the mountain-pass setup (ball minimizer plus
// path-deformation saddle candidate), and the empirical geometry scan.
// Sample vectors z live in the transformed pre-scaled convention; the
// pointwise solution values are z scaled back through the Gaussian factor.
#ifndef FUCIK_NONLINEAR_HPP
#define FUCIK_NONLINEAR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "minimax.hpp"

namespace fucik {

// f(t) = t (finf + (f0 - finf)/(1+t^2)) for t > 0, zero otherwise: slope f0
// at zero, slope finf at infinity, nonnegative between. q records the growth
// exponent bound of the subcritical condition; the family is linear, so the
// bound holds for any admissible q and the value is never used in formulas.
template <class S>
struct Nonlinearity {
  S f0 = S(2);
  S finf = S(1.6);
  S q = S(4);

  S f(S t) const {
    return t > S(0) ? t * (finf + (f0 - finf) / (S(1) + t * t)) : S(0);
  }
  S F(S t) const {
    return t > S(0) ? finf * t * t / S(2) + (f0 - finf) * std::log1p(t * t) / S(2) : S(0);
  }
  S slope(S t) const {  // f'(t); one-sided zero for t <= 0
    if (!(t > S(0))) return S(0);
    const S d = S(1) + t * t;
    return finf + (f0 - finf) * (S(1) - t * t) / (d * d);
  }

  // both limit slopes must clear the ground level for the two-solution geometry
  void validate(S lam1) const {
    if (!(f0 > lam1))
      throw std::invalid_argument("f0 <= lam1 (f0 = " + std::to_string(static_cast<double>(f0)) +
                                  ", lam1 = " + std::to_string(static_cast<double>(lam1)) + ")");
    if (!(finf > lam1))
      throw std::invalid_argument("finf <= lam1 (finf = " + std::to_string(static_cast<double>(finf)) +
                                  ", lam1 = " + std::to_string(static_cast<double>(lam1)) + ")");
  }
};

template <class S>
S f_eval(const Nonlinearity<S>& nl, S t) {
  return nl.f(t);
}
template <class S>
S F_eval(const Nonlinearity<S>& nl, S t) {
  return nl.F(t);
}

// Couples an operator with a nonlinearity. The weighted potential integral
// carries the Gaussian factor of the change of variables, so the nodewise
// nonlinearity acts on the field value u(x_i) = z_i * unscale_i and the
// gradient picks up the reciprocal factor; the Jacobian contribution
// collapses to f'(u_i) on the diagonal.
template <class Op, class S = typename Op::Scalar>
class NonlinearProblem {
 public:
  NonlinearProblem(const Op& op, Nonlinearity<S> nl, bool enforce_slopes = true)
      : op_(&op), nl_(nl) {
    if (enforce_slopes) nl_.validate(op.lam1());
    const Grid<S>& g = op.grid();
    down_ = ((g.xsq.array() * S(-0.125)).exp() / g.sqrtw.array()).matrix();
  }

  const Op& op() const { return *op_; }
  const Nonlinearity<S>& nonlinearity() const { return nl_; }
  S lam1() const { return op_->lam1(); }
  Eigen::Index size() const { return down_.size(); }

  VecX<S> to_profile(const VecX<S>& z) const { return z.cwiseProduct(down_); }

  S energy(const VecX<S>& z) const {
    S pot = S(0);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const S u = z[i] * down_[i];
      pot += nl_.F(u) / (down_[i] * down_[i]);
    }
    return S(0.5) * z.dot(op_->apply(z)) - pot;
  }

  VecX<S> gradient(const VecX<S>& z) const {
    VecX<S> r = op_->apply(z);
    for (Eigen::Index i = 0; i < z.size(); ++i) r[i] -= nl_.f(z[i] * down_[i]) / down_[i];
    return r;
  }

  VecX<S> slope_diagonal(const VecX<S>& z) const {
    VecX<S> s(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) s[i] = nl_.slope(z[i] * down_[i]);
    return s;
  }

 private:
  const Op* op_;
  Nonlinearity<S> nl_;
  VecX<S> down_;  // z -> pointwise field value
};

template <class S>
struct GeometryReport {
  bool detected = false;
  S rho = S(0);            // radius with the largest sampled minimum
  S min_on_sphere = -std::numeric_limits<S>::infinity();
  S t_tilde = std::numeric_limits<S>::quiet_NaN();
  S value_at_t_tilde = std::numeric_limits<S>::quiet_NaN();
  std::string note;
};

template <class S>
std::vector<S> default_radius_grid() {
  std::vector<S> r;
  for (int i = 1; i <= 20; ++i) r.push_back(S(i) * S(0.05));
  return r;
}

// Samples the energy over random directions on spheres of the given radii and
// looks past the best radius for a negative value along the ground state.
// Detection is empirical: a positive sampled minimum plus a negative value
// beyond the radius.
template <class Op, class S>
GeometryReport<S> mountain_pass_geometry_check(const NonlinearProblem<Op, S>& prob,
                                               const std::vector<S>& radius_grid,
                                               int directions, std::uint64_t seed) {
  if (radius_grid.empty()) throw std::invalid_argument("radius grid empty");
  GeometryReport<S> rep;
  Rng rng(seed);
  const Eigen::Index n = prob.size();
  std::vector<VecX<S>> dirs(static_cast<std::size_t>(directions));
  for (auto& d : dirs) {
    d = rng.gaussian_vec<S>(n);
    d /= d.norm();
  }
  for (const S rho : radius_grid) {
    S lo = std::numeric_limits<S>::infinity();
    for (const auto& d : dirs) lo = std::min(lo, prob.energy(VecX<S>(rho * d)));
    if (lo > rep.min_on_sphere) {
      rep.min_on_sphere = lo;
      rep.rho = rho;
    }
  }
  if (!(rep.min_on_sphere > S(0))) {
    rep.note = "no sampled radius kept the energy positive";
    return rep;
  }
  const VecX<S> phi1 = prob.op().phi1();
  for (S t = rep.rho * S(1.1); t <= S(1e4); t *= S(1.25)) {
    const S v = prob.energy(VecX<S>(t * phi1));
    if (v < S(0)) {
      rep.t_tilde = t;
      rep.value_at_t_tilde = v;
      rep.detected = true;
      return rep;
    }
  }
  rep.note = "no negative energy found along the ground state beyond the radius";
  return rep;
}

template <class S>
struct NonlinearOptions {
  int ball_iterations = 30000;
  S ball_step0 = S(1e-4);
  S stationarity_tol = S(1e-8);
  int path_nodes = 41;
  int mp_sweeps = 4000;
  S mp_gtol = S(1e-6);
  S mp_step_cap = S(0.05);
  S armijo = S(1e-4);
  int max_halvings = 45;
  int stall_window = 200;
  S stall_rtol = S(1e-12);
  S newton_tol = S(1e-11);
  int newton_cap = 120;
  int geometry_directions = 500;
  std::vector<S> radius_grid = default_radius_grid<S>();
};

template <class S>
struct SolutionPair {
  VecX<S> u1, u2;
  S energy1 = std::numeric_limits<S>::quiet_NaN();
  S energy2 = std::numeric_limits<S>::quiet_NaN();
  S residual1 = std::numeric_limits<S>::quiet_NaN();  // unconstrained |Az - f(z)|
  S residual2 = std::numeric_limits<S>::quiet_NaN();
  S stationarity1 = std::numeric_limits<S>::quiet_NaN();  // projected-gradient measure in the ball
  S multiplier1 = S(0);  // boundary multiplier; positive when the ball constraint binds a minimum
  S min_sample1 = std::numeric_limits<S>::quiet_NaN();
  S min_sample2 = std::numeric_limits<S>::quiet_NaN();
  S separation = std::numeric_limits<S>::quiet_NaN();  // |u1 - u2|
  bool on_ball_boundary = false;
  GeometryReport<S> geometry;
};

namespace detail {

template <class S>
VecX<S> ball_project(const VecX<S>& z, S rho) {
  const S n = z.norm();
  return n > rho ? VecX<S>(z * (rho / n)) : z;
}

// ambient arc-length re-spacing with pinned endpoints, no projection
template <class S>
void requalize_free(MatX<S>& P) {
  const int m = static_cast<int>(P.cols());
  VecX<S> cum(m);
  cum[0] = S(0);
  for (int j = 1; j < m; ++j) cum[j] = cum[j - 1] + (P.col(j) - P.col(j - 1)).norm();
  if (!(cum[m - 1] > S(0))) return;
  MatX<S> Q = P;
  int seg = 0;
  for (int k = 1; k < m - 1; ++k) {
    const S s = cum[m - 1] * S(k) / S(m - 1);
    while (seg < m - 2 && cum[seg + 1] < s) ++seg;
    const S len = cum[seg + 1] - cum[seg];
    const S t = len > S(0) ? (s - cum[seg]) / len : S(0);
    Q.col(k) = (S(1) - t) * P.col(seg) + t * P.col(seg + 1);
  }
  P = std::move(Q);
}

}  // namespace detail

// Two-phase search mirroring the existence argument: a constrained minimizer
// inside the ball the geometry scan certifies, then a free path deformation
// from zero past the ball followed by an unconstrained Newton solve. Both
// outcomes are reported as computed; no postcondition is patched up.
template <class Op, class S>
SolutionPair<S> solve_two_solutions(const NonlinearProblem<Op, S>& prob,
                                    const NonlinearOptions<S>& opts = {},
                                    std::uint64_t seed = 1u) {
  SolutionPair<S> pair;
  pair.geometry = mountain_pass_geometry_check(prob, opts.radius_grid, opts.geometry_directions, seed);
  if (!(pair.geometry.rho > S(0)))
    throw std::runtime_error("geometry scan produced no usable radius");
  const S rho = pair.geometry.rho;
  const VecX<S> phi1 = prob.op().phi1();
  const Eigen::Index n = prob.size();

  // phase one: projected gradient descent in the closed ball
  VecX<S> z = (rho / S(2)) * phi1;
  S step = opts.ball_step0;
  S ez = prob.energy(z);
  for (int it = 0; it < opts.ball_iterations; ++it) {
    const VecX<S> gr = prob.gradient(z);
    const VecX<S> zn = detail::ball_project(VecX<S>(z - step * gr), rho);
    const S en = prob.energy(zn);
    const S move2 = (zn - z).squaredNorm();
    if (en <= ez - opts.armijo * move2 / std::max(step, S(1e-18))) {
      z = zn;
      ez = en;
      step = std::min(step * S(1.5), S(1));
      if (move2 < S(1e-26)) break;
    } else {
      step *= S(0.5);
      if (step < S(1e-18)) break;
    }
  }

  // phase two: polish on the sphere |z| = rho when the constraint is active
  pair.on_ball_boundary = z.norm() > rho * (S(1) - S(1e-6));
  if (pair.on_ball_boundary) {
    const MatX<S> A = prob.op().dense();
    S sig = -z.dot(prob.gradient(z)) / (rho * rho);
    VecX<S> best_z = z;
    S best_sig = sig, best_res = std::numeric_limits<S>::infinity();
    MatX<S> J(n + 1, n + 1);
    VecX<S> rhs(n + 1);
    for (int it = 0;; ++it) {
      const VecX<S> F = prob.gradient(z) + sig * z;
      const S h = (z.squaredNorm() - rho * rho) / S(2);
      const S res = std::sqrt(F.squaredNorm() + h * h);
      if (std::isfinite(res) && res < best_res) {
        best_res = res;
        best_z = z;
        best_sig = sig;
      }
      if (!std::isfinite(res) || res < opts.newton_tol || it >= opts.newton_cap) break;
      J.setZero();
      J.topLeftCorner(n, n) = A;
      J.topLeftCorner(n, n).diagonal() += VecX<S>::Constant(n, sig) - prob.slope_diagonal(z);
      J.col(n).head(n) = z;
      J.row(n).head(n) = z.transpose();
      rhs.head(n) = -F;
      rhs[n] = -h;
      const VecX<S> d = J.partialPivLu().solve(rhs);
      z += d.head(n);
      sig += d[n];
    }
    z = best_z * (rho / best_z.norm());
    pair.multiplier1 = best_sig;
  }
  pair.u1 = z;
  pair.energy1 = prob.energy(z);
  {
    const VecX<S> gr = prob.gradient(z);
    pair.residual1 = gr.norm();
    const S s0 = opts.ball_step0;
    pair.stationarity1 = (z - detail::ball_project(VecX<S>(z - s0 * gr), rho)).norm() / s0;
    pair.min_sample1 = z.minCoeff();
  }

  // mountain-pass phase: free path from zero to the certified negative spot
  const VecX<S> e = pair.geometry.t_tilde > S(0) ? VecX<S>(pair.geometry.t_tilde * phi1)
                                                 : VecX<S>(S(2) * rho * phi1);
  const int m = opts.path_nodes;
  MatX<S> P(n, m);
  for (int j = 0; j < m; ++j) P.col(j) = (S(j) / S(m - 1)) * e;
  int sweep = 0;
  S best_max = std::numeric_limits<S>::infinity();
  int since = 0;
  for (; sweep < opts.mp_sweeps; ++sweep) {
    detail::requalize_free(P);
    VecX<S> E(m);
    for (int j = 0; j < m; ++j) E[j] = prob.energy(VecX<S>(P.col(j)));
    int imax = 0;
    for (int j = 1; j < m; ++j)
      if (E[j] > E[imax]) imax = j;
    if (imax == 0 || imax == m - 1) break;
    const VecX<S> zc = P.col(imax);
    const VecX<S> gr = prob.gradient(zc);
    const S gn = gr.norm();
    if (gn < opts.mp_gtol) break;
    S s = std::min(S(0.5), opts.mp_step_cap / gn);
    bool moved = false;
    for (int hh = 0; hh <= opts.max_halvings; ++hh, s *= S(0.5)) {
      const VecX<S> zn = zc - s * gr;
      const S en = prob.energy(zn);
      if (en <= E[imax] - opts.armijo * s * gn * gn) {
        P.col(imax) = zn;
        E[imax] = en;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    const S cur = E.maxCoeff();
    if (cur < best_max - opts.stall_rtol * std::abs(best_max)) {
      best_max = cur;
      since = 0;
    } else if (++since >= opts.stall_window) {
      break;
    }
  }
  {
    VecX<S> E(m);
    for (int j = 0; j < m; ++j) E[j] = prob.energy(VecX<S>(P.col(j)));
    int imax = 0;
    for (int j = 1; j < m; ++j)
      if (E[j] > E[imax]) imax = j;
    VecX<S> z2 = P.col(imax);

    // unconstrained semismooth Newton on Az = f(z)
    const MatX<S> A = prob.op().dense();
    VecX<S> best_z = z2;
    S best_res = std::numeric_limits<S>::infinity();
    for (int it = 0;; ++it) {
      const VecX<S> F = prob.gradient(z2);
      const S res = F.norm();
      if (std::isfinite(res) && res < best_res) {
        best_res = res;
        best_z = z2;
      }
      if (!std::isfinite(res) || res < opts.newton_tol || it >= opts.newton_cap) break;
      MatX<S> J = A;
      J.diagonal() -= prob.slope_diagonal(z2);
      z2 -= J.partialPivLu().solve(F).eval();
    }
    pair.u2 = best_z;
    pair.energy2 = prob.energy(best_z);
    pair.residual2 = best_res;
    pair.min_sample2 = best_z.size() > 0 ? best_z.minCoeff() : S(0);
  }
  pair.separation = (pair.u1 - pair.u2).norm();
  return pair;
}

}  // namespace fucik

#endif  // FUCIK_NONLINEAR_HPP
