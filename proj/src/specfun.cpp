#include "granda/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace granda {

double lambert_w0(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("lambert_w0: requires x >= 0");
  if (x == 0.0) return 0.0;
  double w = std::log1p(x);
  const double tol = 1e-14 * std::max(x, 1.0);
  for (int it = 0; it < 50; ++it) {
    const double e = std::exp(w);
    const double f = w * e - x;
    if (std::fabs(f) <= tol) break;
    // Halley step for f(w) = w e^w - x.
    const double denom = e * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    w -= f / denom;
  }
  return w;
}

double psi(double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("psi: requires eps >= 0");
  if (eps == 0.0) return 0.0;
  return std::exp(std::log(eps) / (1.0 + eps));
}

double psi_argmax() {
  static const double v = 1.0 / lambert_w0(std::exp(-1.0));
  return v;
}

double psi_max() {
  static const double v = std::exp(lambert_w0(std::exp(-1.0)));
  return v;
}

double conjugate_exponent(double r) {
  if (!(r > 1.0)) throw std::invalid_argument("conjugate_exponent: requires r > 1");
  return r / (r - 1.0);
}

double c_eps0(double eps0) {
  if (!(eps0 > 0.0)) throw std::invalid_argument("c_eps0: requires eps0 > 0");
  return psi_max() / psi(eps0);
}

double psi_max_on(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("psi_max_on: bad interval");
  const double star = psi_argmax();
  if (star <= lo) return psi(lo);
  if (star >= hi) return psi(hi);
  return psi_max();
}

double psi_pow_min_on(double lo, double hi, double s) {
  return std::pow(psi_max_on(lo, hi), -s);
}

}  // namespace granda
