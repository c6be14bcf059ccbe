#include "ceor/rh_search.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ceor/complex_text.hpp"

namespace ceor {

namespace {

constexpr double kHardyBound = 500.0;

const char* score_text(SampleScore s) {
  switch (s) {
    case SampleScore::OffLineZero: return "-inf";
    case SampleScore::Neutral: return "0";
    case SampleScore::OnLineZero: return "1";
  }
  return "?";
}

void write_trace_row(std::ostream& out, int round, const ScoredSample& e) {
  out << round << ',' << format_double(e.s.real()) << ','
      << format_double(e.s.imag()) << ',' << format_double(e.zeta_value.real())
      << ',' << format_double(e.zeta_value.imag()) << ','
      << format_double(e.zeta_mag) << ',' << score_text(e.score) << '\n';
}

}  // namespace

void validate(const StripRegion& region) {
  if (!std::isfinite(region.sigma_lo) || !std::isfinite(region.sigma_hi) ||
      !std::isfinite(region.t_lo) || !std::isfinite(region.t_hi))
    throw ConfigError("StripRegion: non-finite bound");
  if (!(region.sigma_lo >= 0.0 && region.sigma_lo < region.sigma_hi &&
        region.sigma_hi <= 1.0))
    throw ConfigError("StripRegion: requires 0 <= sigma_lo < sigma_hi <= 1");
  if (!(region.t_lo < region.t_hi))
    throw ConfigError("StripRegion: requires t_lo < t_hi");
}

void validate(const Tolerances& tol) {
  if (!(tol.eps_zero >= 1e-12))
    throw ConfigError("Tolerances: eps_zero must be >= 1e-12");
  if (!(tol.eps_line > 0.0 && tol.eps_line < 0.5))
    throw ConfigError("Tolerances: eps_line must lie in (0, 0.5)");
  if (!(tol.refine_radius > 0.0))
    throw ConfigError("Tolerances: refine_radius must be > 0");
}

Score to_score(SampleScore s) {
  switch (s) {
    case SampleScore::OffLineZero: return Score::neg_inf();
    case SampleScore::Neutral: return Score(0.0);
    case SampleScore::OnLineZero: return Score(1.0);
  }
  return Score(0.0);
}

FrequencyEstimate empirical_frequency(const FrequencyTracker& tracker,
                                      double p_hat) {
  if (tracker.n == 0)
    throw ZeroTrialsError("empirical_frequency: no trials recorded");
  FrequencyEstimate est;
  est.freq =
      static_cast<double>(tracker.mu) / static_cast<double>(tracker.n);
  est.within_epsilon = std::abs(est.freq - p_hat) < tracker.epsilon;
  return est;
}

ScoredSample score_sample(const Complex& s, const Tolerances& tol,
                          const ZetaEvalConfig& cfg) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) ||
      !(s.real() > 0.0 && s.real() < 1.0))
    throw OutOfStripError("score_sample: s outside the open critical strip");
  validate(tol);

  ScoredSample out;
  out.s = s;
  out.zeta_value = zeta(s, cfg);
  out.zeta_mag = std::abs(out.zeta_value);

  if (std::abs(s.real() - 0.5) <= tol.eps_line) {
    try {
      out.refined = refine_zero(s.imag(), tol.refine_radius, cfg);
      out.score = SampleScore::OnLineZero;
    } catch (const NoSignChangeError&) {
      out.score = SampleScore::Neutral;
    }
  } else if (out.zeta_mag <= tol.eps_zero) {
    out.score = SampleScore::OffLineZero;
  }
  return out;
}

std::vector<Complex> sample_region(const StripRegion& region, std::size_t n,
                                   const RoundRng& rng,
                                   std::uint64_t base_draw) {
  validate(region);
  std::vector<Complex> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t draw = base_draw + i;
    const double sigma =
        region.sigma_lo +
        rng.uniform_open(draw, 0) * (region.sigma_hi - region.sigma_lo);
    const double t = rng.uniform(draw, 1, region.t_lo, region.t_hi);
    points[i] = Complex(sigma, t);
  }
  return points;
}

std::vector<Complex> resample_elites(std::span<const Candidate<Complex>> elites,
                                     std::size_t n_v, double jitter,
                                     const StripRegion& region,
                                     const RoundRng& rng,
                                     std::uint64_t base_draw) {
  if (n_v == 0) return {};
  if (elites.empty())
    throw EmptyEliteError("resample_elites: no elite candidates");
  if (!(jitter >= 0.0))
    throw ConfigError("resample_elites: jitter must be >= 0");

  // The strip is open in sigma; keep clipped points strictly inside.
  const double sigma_min =
      std::nextafter(region.sigma_lo, region.sigma_hi);
  const double sigma_max =
      std::nextafter(region.sigma_hi, region.sigma_lo);

  std::vector<Complex> points(n_v);
  for (std::size_t i = 0; i < n_v; ++i) {
    const std::uint64_t draw = base_draw + i;
    const double u = rng.uniform01(draw, 0);
    double cum = 0.0;
    const Candidate<Complex>* chosen = &elites.back();
    for (const auto& cand : elites) {
      cum += cand.q_n;
      if (u < cum) {
        chosen = &cand;
        break;
      }
    }
    double sigma = chosen->sample.real();
    double t = chosen->sample.imag();
    if (jitter > 0.0) {
      sigma += (2.0 * rng.uniform01(draw, 1) - 1.0) * jitter;
      t += (2.0 * rng.uniform01(draw, 2) - 1.0) * jitter;
      t = std::clamp(t, region.t_lo, region.t_hi);
    }
    sigma = std::clamp(sigma, sigma_min, sigma_max);
    points[i] = Complex(sigma, t);
  }
  return points;
}

RhProblem::RhProblem(const StripRegion& region_, const CeParams& params_,
                     const Tolerances& tol_, const RhSearchOptions& options_)
    : region(region_), params(params_), tolerances(tol_), options(options_) {
  validate(region);
  validate(params);
  validate(tolerances);
  if (!(options.jitter >= 0.0))
    throw ConfigError("RhSearchOptions: jitter must be >= 0");
  if (std::max(std::abs(region.t_lo), std::abs(region.t_hi)) +
          tolerances.refine_radius >
      kHardyBound)
    throw ConfigError(
        "run_ceor: region t-range plus refine_radius exceeds the Hardy Z "
        "bound of 500");

  if (options.inject_counterexample) {
    // A fixed off-band point; its evaluation is forced to OffLineZero.
    const double width = region.sigma_hi - region.sigma_lo;
    const double above = region.sigma_hi - 0.5;
    const double below = 0.5 - region.sigma_lo;
    const double sigma = above >= below ? region.sigma_hi - 0.02 * width
                                        : region.sigma_lo + 0.02 * width;
    if (std::abs(sigma - 0.5) <= tolerances.eps_line)
      throw ConfigError(
          "inject_counterexample: region lies entirely inside the eps_line "
          "band");
    injected = Complex(sigma, 0.5 * (region.t_lo + region.t_hi));
  }
}

std::vector<Complex> RhProblem::fresh(std::size_t count, int round,
                                      std::uint64_t base_draw) const {
  const RoundRng rng(params.seed, static_cast<std::uint64_t>(round));
  std::vector<Complex> points = sample_region(region, count, rng, base_draw);
  if (injected && round == 1 && base_draw == 0 && !points.empty())
    points[0] = *injected;
  return points;
}

ScoredSample RhProblem::evaluate(const Complex& s) const {
  if (injected && s == *injected) {
    ScoredSample forced;
    forced.s = s;
    forced.zeta_value = zeta(s, cfg);
    forced.zeta_mag = std::abs(forced.zeta_value);
    forced.score = SampleScore::OffLineZero;
    return forced;
  }
  return score_sample(s, tolerances, cfg);
}

std::vector<Complex> RhProblem::resample(
    std::span<const Candidate<Complex>> elites, std::size_t count, int round,
    std::uint64_t base_draw) const {
  const RoundRng rng(params.seed, static_cast<std::uint64_t>(round));
  return resample_elites(elites, count, options.jitter, region, rng,
                         base_draw);
}

CeorReport run_ceor(const StripRegion& region, const CeParams& params,
                    const Tolerances& tol, const RhSearchOptions& options,
                    std::ostream* trace) {
  const RhProblem problem(region, params, tol, options);

  CeorReport report;
  report.region = region;
  report.params = params;
  report.tolerances = tol;
  report.options = options;

  if (trace) *trace << "round,sigma,t,zeta_re,zeta_im,zeta_mag,score\n";

  std::vector<ZeroRecord> found;
  const auto observe = [&](const RoundState<RhProblem>& state) {
    for (const ScoredSample& eval : state.evals) {
      if (trace) write_trace_row(*trace, state.r, eval);
      ++report.tracker.n;
      if (eval.score == SampleScore::OffLineZero) {
        ++report.tracker.mu;
        report.counterexamples.push_back(eval);
      }
      if (eval.refined) found.push_back(*eval.refined);
    }
  };

  CeResult<RhProblem> result = run_ce(problem, params, observe);
  report.rounds = std::move(result.rounds);
  report.stop_reason = result.stop_reason;

  // Distinct zeros: bisection scatter is ~1e-9, zero gaps are >= 0.5 at
  // desk scale, so a 1e-6 merge radius is unambiguous.
  std::sort(found.begin(), found.end(),
            [](const ZeroRecord& a, const ZeroRecord& b) { return a.t < b.t; });
  for (const ZeroRecord& rec : found) {
    if (!report.zeros.empty() &&
        std::abs(rec.t - report.zeros.back().t) <= 1e-6) {
      if (rec.residual < report.zeros.back().residual)
        report.zeros.back() = rec;
    } else {
      report.zeros.push_back(rec);
    }
  }
  return report;
}

}  // namespace ceor
