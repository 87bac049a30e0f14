#pragma once

namespace granda {

// Principal branch of the Lambert W function for x >= 0: the w >= 0 with
// w e^w = x. Halley iteration started from ln(1+x); stops when the residual
// drops below 1e-14 * max(x, 1) or after 50 steps.
double lambert_w0(double x);

// psi(eps) = eps^(1/(1+eps)), evaluated as exp(ln(eps)/(1+eps)); psi(0) = 0.
// Strictly increasing on (0, 1/W(1/e)], strictly decreasing afterwards, with
// maximum value exp(W(1/e)) = 1/(e W(1/e)) and limit 1 at +infinity.
double psi(double eps);

// Location of the maximum of psi: 1/W(1/e) ~ 3.5911.
double psi_argmax();

// Maximum value of psi: 1/(e W(1/e)) ~ 1.3211.
double psi_max();

// r / (r - 1) for r > 1.
double conjugate_exponent(double r);

// c(eps0) = (1/(e W(1/e))) * eps0^(-1/(1+eps0)) = psi_max / psi(eps0) >= 1.
// Constant relating the full supremum over eps > 0 to the supremum truncated
// to (0, eps0].
double c_eps0(double eps0);

// Largest value of psi over [lo, hi] (0 < lo <= hi), exact via unimodality.
double psi_max_on(double lo, double hi);

// Smallest value of psi^(-s) over [lo, hi] for s > 0 (used by inf-type
// objectives): psi_max_on(lo, hi)^(-s).
double psi_pow_min_on(double lo, double hi, double s);

}  // namespace granda
