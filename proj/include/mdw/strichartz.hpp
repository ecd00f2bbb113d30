#ifndef MDW_STRICHARTZ_HPP
#define MDW_STRICHARTZ_HPP

#include <stdexcept>
#include <vector>

#include "mdw/quadrature.hpp"

namespace mdw {

/// (int ||u(s)||_{L^12}^4 ds)^{1/4} from uniformly sampled norms over one
/// window, composite Simpson in time.
inline Real strichartz_window(const std::vector<Real>& l12_samples, Real dt) {
  if (l12_samples.size() < 3)
    throw std::invalid_argument("strichartz_window: need at least 3 samples");
  std::vector<Real> y(l12_samples.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Real v = l12_samples[i];
    y[i] = v * v * v * v;
  }
  return std::pow(simpson_uniform(y, dt), 0.25);
}

/// The L^{2/q}(L^{6/(1-q)}) family: samples must carry ||u(s)||_{L^{6/(1-q)}}.
inline Real strichartz_window_q(const std::vector<Real>& lp_samples, Real dt, Real q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("strichartz_window_q: q in (0,1)");
  if (lp_samples.size() < 3)
    throw std::invalid_argument("strichartz_window_q: need at least 3 samples");
  const Real pt = 2.0 / q;
  std::vector<Real> y(lp_samples.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::pow(lp_samples[i], pt);
  return std::pow(simpson_uniform(y, dt), 1.0 / pt);
}

}  // namespace mdw

#endif
