#ifndef MDW_TYPES_HPP
#define MDW_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace mdw {

using Real = double;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Arr = Eigen::ArrayXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// splitmix64: cheap counter-based seed expansion for reproducible ensembles.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0,1) driven by splitmix64 state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  Real uniform() {
    state_ = splitmix64(state_);
    return static_cast<Real>(state_ >> 11) * 0x1.0p-53;
  }
  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  Real normal() {
    Real u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const Real u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  std::uint64_t raw() {
    state_ = splitmix64(state_);
    return state_;
  }

 private:
  std::uint64_t state_;
};

/// Static-partition parallel map over [0, n). Results must be written to
/// disjoint slots by the callee; reductions stay deterministic because the
/// caller folds them in index order afterwards.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned nt = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([=, &body] {
      for (std::size_t i = t; i < n; i += nt) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace mdw

#endif
