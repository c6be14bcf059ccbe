#include "ceor/zero_locator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ceor/complex_text.hpp"
#include "ceor/parallel.hpp"

namespace ceor {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLnPi = 1.1447298858494001741434273513530587;
constexpr double kScanStep = 0.05;
constexpr double kHardyBound = 500.0;
constexpr double kBracketTarget = 1e-9;

void require_hardy_domain(double t) {
  if (!std::isfinite(t)) throw DomainError("hardy_z: non-finite t");
  if (std::abs(t) > kHardyBound)
    throw DomainError("hardy_z: |t| exceeds the desk-scale bound 500");
}

// Bisection on a bracket already known to straddle a sign change.
ZeroRecord bisect(double a, double b, double fa, const ZetaEvalConfig& cfg) {
  const bool left_negative = fa < 0.0;
  for (int i = 0; i < 200 && (b - a) >= kBracketTarget; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = hardy_z(mid, cfg);
    if ((fm < 0.0) == left_negative)
      a = mid;
    else
      b = mid;
  }
  const double t = 0.5 * (a + b);
  return ZeroRecord{t, std::abs(hardy_z(t, cfg)), b - a};
}

}  // namespace

double riemann_siegel_theta(double t) {
  if (!std::isfinite(t))
    throw DomainError("riemann_siegel_theta: non-finite t");
  const Complex lg = log_gamma(Complex(0.25, 0.5 * t));
  return lg.imag() - 0.5 * t * kLnPi;
}

double hardy_z(double t, const ZetaEvalConfig& cfg) {
  require_hardy_domain(t);
  const Complex rotated =
      std::polar(1.0, riemann_siegel_theta(t)) * zeta(Complex(0.5, t), cfg);
  if (std::abs(rotated.imag()) > 1e-6)
    throw AccuracyError("hardy_z: rotation left a non-negligible imaginary part");
  return rotated.real();
}

std::vector<ZeroRecord> find_zeros_online(double t_lo, double t_hi,
                                          const ZetaEvalConfig& cfg) {
  if (!std::isfinite(t_lo) || !std::isfinite(t_hi) || t_lo < 0.0 ||
      t_hi < t_lo || t_hi > kHardyBound)
    throw DomainError("find_zeros_online: requires 0 <= t_lo <= t_hi <= 500");
  if (t_lo == t_hi) return {};

  const auto cells =
      static_cast<std::size_t>(std::ceil((t_hi - t_lo) / kScanStep));
  std::vector<double> grid(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    grid[i] = std::min(t_lo + static_cast<double>(i) * kScanStep, t_hi);
  std::vector<double> z(cells + 1);
  parallel_for(cells + 1, [&](std::size_t i) {
    z[i] = hardy_z(grid[i], cfg);
    // An exact grid zero would make the sign test ambiguous; nudge it off
    // zero so the crossing is still caught by a neighbouring cell.
    if (z[i] == 0.0) z[i] = std::numeric_limits<double>::min();
  });

  std::vector<ZeroRecord> zeros;
  for (std::size_t i = 0; i < cells; ++i) {
    if (grid[i] == grid[i + 1]) continue;
    if ((z[i] < 0.0) != (z[i + 1] < 0.0)) {
      ZeroRecord rec = bisect(grid[i], grid[i + 1], z[i], cfg);
      if (rec.t > t_lo && rec.t <= t_hi) zeros.push_back(rec);
    }
  }
  return zeros;
}

long long count_zeros_online(double t_lo, double t_hi,
                             const ZetaEvalConfig& cfg) {
  return static_cast<long long>(find_zeros_online(t_lo, t_hi, cfg).size());
}

RegionCount count_zeros_region(double t_lo, double t_hi,
                               const ZetaEvalConfig& cfg) {
  if (!std::isfinite(t_lo) || !std::isfinite(t_hi) || t_lo < 0.0 ||
      t_hi < t_lo || t_hi > kHardyBound)
    throw DomainError("count_zeros_region: requires 0 <= t_lo <= t_hi <= 500");
  RegionCount rc;
  rc.t_lo = t_lo;
  rc.t_hi = t_hi;
  if (t_lo == t_hi) {
    rc.consistent = true;
    return rc;
  }
  rc.n_online = count_zeros_online(t_lo, t_hi, cfg);
  const auto smooth = [](double t) {
    return std::llround(riemann_siegel_theta(t) / kPi + 1.0);
  };
  const long long lo_term = t_lo == 0.0 ? 0 : smooth(t_lo);
  rc.n_formula = std::max(0LL, smooth(t_hi) - lo_term);
  rc.consistent = std::llabs(rc.n_online - rc.n_formula) <= 1;
  return rc;
}

ZeroRecord refine_zero(double t_guess, double radius,
                       const ZetaEvalConfig& cfg) {
  if (!std::isfinite(t_guess) || !std::isfinite(radius) || radius <= 0.0)
    throw DomainError("refine_zero: requires finite t_guess and radius > 0");
  require_hardy_domain(std::abs(t_guess) + radius);

  const double a = t_guess - radius;
  const double b = t_guess + radius;
  const double fa = hardy_z(a, cfg);
  if ((fa < 0.0) != (hardy_z(b, cfg) < 0.0)) return bisect(a, b, fa, cfg);

  // Endpoints agree; look for an interior crossing (two nearby zeros).
  constexpr int kSubdivisions = 32;
  double left = a;
  double f_left = fa;
  for (int i = 1; i <= kSubdivisions; ++i) {
    const double right = a + (b - a) * i / kSubdivisions;
    const double f_right = hardy_z(right, cfg);
    if ((f_left < 0.0) != (f_right < 0.0))
      return bisect(left, right, f_left, cfg);
    left = right;
    f_left = f_right;
  }
  throw NoSignChangeError("refine_zero: no sign change inside the bracket");
}

void write_zeros_csv(std::ostream& out, std::span<const ZeroRecord> zeros) {
  out << "t,residual,bracket_width\n";
  for (const ZeroRecord& z : zeros)
    out << format_double(z.t) << ',' << format_double(z.residual) << ','
        << format_double(z.bracket_width) << '\n';
}

}  // namespace ceor
