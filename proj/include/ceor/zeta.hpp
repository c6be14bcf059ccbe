#pragma once

#include <complex>

#include "ceor/errors.hpp"

namespace ceor {

using Complex = std::complex<double>;

struct ZetaEvalConfig {
  // Floor on the number of series terms; each route raises it to whatever its
  // own error bound needs for abs_tolerance, so more terms never hurt.
  int series_terms = 64;
  double abs_tolerance = 1e-12;
};

// series_terms >= 8, abs_tolerance >= 1e-14 (double-precision floor).
// Throws ConfigError.
void validate(const ZetaEvalConfig& cfg);

// Principal branch of ln Gamma(z). Lanczos (g = 7, 9 coefficients) for
// Re(z) >= 1/2, reflection through an overflow-safe ln sin(pi z) otherwise.
// Throws PoleError at z = 0, -1, -2, ... and DomainError on non-finite input.
Complex log_gamma(const Complex& z);

// Dirichlet eta(s) = sum (-1)^(n+1) n^(-s), Re(s) > 0. Borwein-accelerated
// for |Im s| <= 100, Euler-Maclaurin via the zeta relation above that.
// Absolute error <= cfg.abs_tolerance for Re(s) >= 0.1, |Im s| <= 200.
Complex dirichlet_eta(const Complex& s, const ZetaEvalConfig& cfg = {});

// zeta(s) everywhere except the pole at s = 1 (PoleError). Eta route for
// Re(s) > 0 (Euler-Maclaurin fallback near the eta singularities
// s = 1 + 2*pi*i*k/ln 2 and for |Im s| > 100); functional-equation route for
// Re(s) <= 0.
Complex zeta(const Complex& s, const ZetaEvalConfig& cfg = {});

// The functional equation 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s),
// computed in log space. Requires Re(s) < 1 (DomainError otherwise); agrees
// with zeta() within 1e-9 wherever both are defined.
Complex zeta_functional(const Complex& s, const ZetaEvalConfig& cfg = {});

}  // namespace ceor
