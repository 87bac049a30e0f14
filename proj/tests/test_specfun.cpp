// Checks the scalar special functions against values computed independently
// with 50-digit arithmetic, plus the structural properties (unimodality,
// segment bounds, conjugate pairing) the norm optimizers depend on.

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <stdexcept>
#include <limits>

#include "granda/specfun.hpp"

static int failures = 0;

#define CHECK(cond)                                            \
  do {                                                         \
    if (!(cond)) {                                             \
      std::printf("FAIL %s:%d  %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                              \
    }                                                          \
  } while (0)

#define CHECK_NEAR(a, b, tol)                                              \
  do {                                                                     \
    const double va = (a), vb = (b);                                       \
    if (!(std::fabs(va - vb) <= (tol))) {                                  \
      std::printf("FAIL %s:%d  %s = %.17g vs %s = %.17g (tol %g)\n",       \
                  __FILE__, __LINE__, #a, va, #b, vb, (double)(tol));      \
      ++failures;                                                          \
    }                                                                      \
  } while (0)

int main() {
  // Reference values, 50-digit computation rounded to double.
  const double kW1e = 0.2784645427610738;        // W(1/e)
  const double kArgmax = 3.5911214766686221;     // 1/W(1/e)
  const double kEW1e = 0.75694510645758366;      // e W(1/e)
  const double kPsiMax = 1.3210997620156175;     // 1/(e W(1/e))
  const double kPsi4 = 1.3195079107728943;       // psi(4)
  const double kPsiQuarter = 0.32987697769322356;  // psi(1/4)
  const double kC001 = 126.22158636531371;       // c(0.01)
  const double kC025 = 4.0048255906000314;       // c(0.25)
  const double kC4 = 1.0012063976500079;         // c(4)

  // Lambert W: defining identity and reference points.
  CHECK_NEAR(granda::lambert_w0(std::exp(-1.0)), kW1e, 1e-12);
  CHECK_NEAR(granda::lambert_w0(0.0), 0.0, 0.0);
  CHECK_NEAR(granda::lambert_w0(std::exp(1.0)), 1.0, 1e-14);
  for (double x : {1e-6, 0.1, 1.0, 10.0, 1e4, 1e8}) {
    const double w = granda::lambert_w0(x);
    CHECK_NEAR(w * std::exp(w), x, 1e-12 * std::max(1.0, x));
  }

  // psi and its extremes.
  CHECK_NEAR(granda::psi_argmax(), kArgmax, 1e-12);
  CHECK_NEAR(granda::psi_max(), kPsiMax, 1e-12);
  CHECK_NEAR(granda::psi(granda::psi_argmax()), kPsiMax, 1e-12);
  CHECK_NEAR(1.0 / granda::psi_max(), kEW1e, 1e-12);
  CHECK_NEAR(granda::psi(4.0), kPsi4, 1e-14);
  CHECK_NEAR(granda::psi(0.25), kPsiQuarter, 1e-14);
  CHECK(granda::psi(0.0) == 0.0);

  // Unimodal: increasing left of the peak, decreasing right of it, limits 0
  // and 1.
  double prev = 0.0;
  for (double e : {1e-8, 1e-4, 0.01, 0.1, 1.0, 2.0, 3.0, 3.59}) {
    const double v = granda::psi(e);
    CHECK(v > prev);
    prev = v;
  }
  prev = granda::psi_max();
  for (double e : {3.6, 4.0, 10.0, 100.0, 1e4, 1e8}) {
    const double v = granda::psi(e);
    CHECK(v < prev);
    CHECK(v > 1.0);
    prev = v;
  }
  CHECK(granda::psi(1e-300) < 1e-290);

  // Conjugate exponents pair up and are involutive.
  CHECK_NEAR(granda::conjugate_exponent(2.0), 2.0, 0.0);
  CHECK_NEAR(granda::conjugate_exponent(4.0), 4.0 / 3.0, 1e-15);
  bool threw = false;
  try {
    granda::conjugate_exponent(1.0);
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  CHECK(threw);  // r = 1 has no finite conjugate; callers special-case it
  for (double r : {1.5, 2.5, 3.0, 7.0}) {
    CHECK_NEAR(granda::conjugate_exponent(granda::conjugate_exponent(r)), r,
               1e-12);
    CHECK_NEAR(1.0 / r + 1.0 / granda::conjugate_exponent(r), 1.0, 1e-15);
  }

  // Truncation constant: reference points, monotone decay to 1.
  CHECK_NEAR(granda::c_eps0(0.01), kC001, 1e-10);
  CHECK_NEAR(granda::c_eps0(0.25), kC025, 1e-12);
  CHECK_NEAR(granda::c_eps0(4.0), kC4, 1e-12);
  CHECK_NEAR(granda::c_eps0(granda::psi_argmax()), 1.0, 1e-14);
  prev = std::numeric_limits<double>::infinity();
  for (double e : {0.001, 0.01, 0.1, 1.0, 3.0, 3.59}) {
    const double c = granda::c_eps0(e);
    CHECK(c >= 1.0);
    CHECK(c < prev);
    prev = c;
  }

  // Segment bounds: psi_max_on dominates interior samples and is exact when
  // the peak lies inside.
  for (double lo : {0.1, 1.0, 3.0}) {
    for (double hi : {3.5, 4.0, 20.0}) {
      if (hi <= lo) continue;
      const double m = granda::psi_max_on(lo, hi);
      for (int i = 0; i <= 8; ++i) {
        const double e = lo + (hi - lo) * i / 8.0;
        CHECK(granda::psi(e) <= m * (1.0 + 1e-15));
      }
      if (lo <= granda::psi_argmax() && granda::psi_argmax() <= hi)
        CHECK_NEAR(m, granda::psi_max(), 0.0);
    }
  }
  CHECK_NEAR(granda::psi_max_on(0.5, 1.0), granda::psi(1.0), 0.0);
  CHECK_NEAR(granda::psi_max_on(4.0, 9.0), granda::psi(4.0), 0.0);
  CHECK_NEAR(granda::psi_pow_min_on(0.5, 1.0, 2.0),
             std::pow(granda::psi(1.0), -2.0), 1e-15);

  if (failures == 0) std::printf("test_specfun: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
