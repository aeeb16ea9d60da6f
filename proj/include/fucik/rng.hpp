// Deterministic random draws. mt19937_64 plus an explicit Box-Muller keeps
// sequences bit-identical across standard libraries, which the determinism
// guarantees of the command-line tool rely on.
#ifndef FUCIK_RNG_HPP
#define FUCIK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "hermite.hpp"

namespace fucik {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  template <class S = double>
  VecX<S> gaussian_vec(Eigen::Index n) {
    VecX<S> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = static_cast<S>(gaussian());
    return v;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace fucik

#endif  // FUCIK_RNG_HPP
