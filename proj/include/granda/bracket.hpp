#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace granda {

// Certified enclosure of a nonnegative quantity. `upper` may be +inf when no
// finite bound is available (divergent sums, unbounded suprema).
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;

  static NormBracket point(double v) { return {v, v}; }
  static NormBracket unbounded(double lo = 0.0) {
    return {lo, std::numeric_limits<double>::infinity()};
  }

  bool divergent() const { return std::isinf(upper); }
  double width() const { return upper - lower; }
  double rel_width() const {
    if (divergent()) return std::numeric_limits<double>::infinity();
    return width() / std::max(lower, 1e-300);
  }
  double mid() const { return divergent() ? lower : 0.5 * (lower + upper); }
  bool contains(double v) const { return lower <= v && v <= upper; }

  NormBracket operator+(const NormBracket& o) const {
    return {lower + o.lower, upper + o.upper};
  }
  NormBracket& operator+=(const NormBracket& o) {
    lower += o.lower;
    upper += o.upper;
    return *this;
  }
  // Scale by a nonnegative constant.
  NormBracket scaled(double c) const {
    if (c < 0.0) throw std::invalid_argument("bracket scale must be nonnegative");
    return {lower * c, std::isinf(upper) ? upper : upper * c};
  }
  // Monotone power t > 0.
  NormBracket pow(double t) const {
    return {std::pow(lower, t), std::isinf(upper) ? upper : std::pow(upper, t)};
  }
  NormBracket hull(const NormBracket& o) const {
    return {std::min(lower, o.lower), std::max(upper, o.upper)};
  }
};

inline NormBracket mul(const NormBracket& a, const NormBracket& b) {
  double up = (std::isinf(a.upper) || std::isinf(b.upper))
                  ? std::numeric_limits<double>::infinity()
                  : a.upper * b.upper;
  return {a.lower * b.lower, up};
}

}  // namespace granda
