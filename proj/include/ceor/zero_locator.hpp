#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ceor/zeta.hpp"

namespace ceor {

struct ZeroRecord {
  double t = 0.0;             // critical-line ordinate
  double residual = 0.0;      // |Z(t)| at the refined point, < 1e-8
  double bracket_width = 0.0; // final bisection bracket, < 1e-9
};

struct RegionCount {
  double t_lo = 0.0;
  double t_hi = 0.0;
  long long n_online = 0;   // sign-change count on (t_lo, t_hi]
  long long n_formula = 0;  // rounded theta(T)/pi + 1 difference
  bool consistent = false;  // |n_online - n_formula| <= 1
};

// theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi. Continuous in t: the
// Gamma argument keeps Re = 1/4, off the principal-branch cut, so no phase
// unwrapping correction is ever needed.
double riemann_siegel_theta(double t);

// Hardy Z(t) = Re(e^(i theta(t)) zeta(1/2 + it)); real up to rounding noise.
// |t| <= 500 (desk-scale validity of the eta route), DomainError beyond.
// AccuracyError if the discarded imaginary part exceeds 1e-6.
double hardy_z(double t, const ZetaEvalConfig& cfg = {});

// Sign-change scan of Z on (t_lo, t_hi] at step 0.05 with bisection
// refinement of every change. Requires 0 <= t_lo <= t_hi <= 500.
std::vector<ZeroRecord> find_zeros_online(double t_lo, double t_hi,
                                          const ZetaEvalConfig& cfg = {});
long long count_zeros_online(double t_lo, double t_hi,
                             const ZetaEvalConfig& cfg = {});

// n_formula = round(theta(t_hi)/pi + 1) - round(theta(t_lo)/pi + 1), the
// t_lo term taken as 0 when t_lo = 0, clamped at >= 0; n_online from the
// scan; consistent iff they differ by at most 1.
RegionCount count_zeros_region(double t_lo, double t_hi,
                               const ZetaEvalConfig& cfg = {});

// Bisection on [t_guess - radius, t_guess + radius] down to bracket width
// < 1e-9. NoSignChangeError when no sign change is found in the bracket
// (the endpoints and a 32-point subdivision are examined).
ZeroRecord refine_zero(double t_guess, double radius,
                       const ZetaEvalConfig& cfg = {});

// CSV with header `t,residual,bracket_width`.
void write_zeros_csv(std::ostream& out, std::span<const ZeroRecord> zeros);

}  // namespace ceor
