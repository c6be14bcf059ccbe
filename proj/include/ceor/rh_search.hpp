#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ceor/ce_engine.hpp"
#include "ceor/rng.hpp"
#include "ceor/zero_locator.hpp"
#include "ceor/zeta.hpp"

namespace ceor {

struct StripRegion {
  double sigma_lo = 0.0;  // exclusive
  double sigma_hi = 1.0;  // exclusive
  double t_lo = 0.0;
  double t_hi = 0.0;
};

// 0 <= sigma_lo < sigma_hi <= 1 and t_lo < t_hi. Throws ConfigError.
void validate(const StripRegion& region);

struct Tolerances {
  double eps_zero = 1e-6;      // zero-magnitude threshold
  double eps_line = 0.02;      // critical-line band half-width
  double refine_radius = 0.1;  // bisection bracket radius around Im(s)
};

// eps_zero >= 1e-12, eps_line in (0, 0.5), refine_radius > 0.
// Throws ConfigError.
void validate(const Tolerances& tol);

// The Eq.-4-style score lattice: 1, 0, -inf.
enum class SampleScore { OffLineZero, Neutral, OnLineZero };

Score to_score(SampleScore s);

struct ScoredSample {
  Complex s;
  Complex zeta_value;
  double zeta_mag = 0.0;
  SampleScore score = SampleScore::Neutral;
  // Present iff score == OnLineZero: the certified zero nearest Im(s).
  std::optional<ZeroRecord> refined;

  std::optional<double> refined_t() const {
    if (refined) return refined->t;
    return std::nullopt;
  }
};

struct FrequencyTracker {
  std::uint64_t n = 0;      // trials (scored samples)
  std::uint64_t mu = 0;     // occurrences of the off-line-zero event
  double epsilon = 1e-3;    // deviation band
};

struct FrequencyEstimate {
  double freq = 0.0;
  bool within_epsilon = false;  // |mu/n - p_hat| < epsilon
};

// Throws ZeroTrialsError when n = 0. p_hat defaults to 0, the value
// consistent with the hypothesis.
FrequencyEstimate empirical_frequency(const FrequencyTracker& tracker,
                                      double p_hat = 0.0);

struct RhSearchOptions {
  // Half-width of the uniform square perturbation applied to elite
  // resamples (clipped to the region). 0 reproduces the literal rule of
  // copying elite points unchanged.
  double jitter = 0.0;
  // Testing hook: forces the first round-1 draw to a fixed off-line point
  // scored OffLineZero verbatim, exercising the negative-sum stop and the
  // counterexample report. Requires the region to reach outside the
  // eps_line band.
  bool inject_counterexample = false;
};

// Scores one strip point: OnLineZero when |Re(s)-1/2| <= eps_line and a
// Z sign change refines within refine_radius of Im(s); OffLineZero when
// |zeta(s)| <= eps_zero strictly off the band; Neutral otherwise.
// Throws OutOfStripError unless 0 < Re(s) < 1.
ScoredSample score_sample(const Complex& s, const Tolerances& tol,
                          const ZetaEvalConfig& cfg = {});

// n fresh points: sigma uniform on the open (sigma_lo, sigma_hi), t uniform
// on [t_lo, t_hi]. Pure in (rng, base_draw + i).
std::vector<Complex> sample_region(const StripRegion& region, std::size_t n,
                                   const RoundRng& rng,
                                   std::uint64_t base_draw = 0);

// n_v categorical draws by q_n from the elite candidates, each optionally
// jittered and clipped back into the region. Throws EmptyEliteError when
// n_v > 0 and no candidates.
std::vector<Complex> resample_elites(std::span<const Candidate<Complex>> elites,
                                     std::size_t n_v, double jitter,
                                     const StripRegion& region,
                                     const RoundRng& rng,
                                     std::uint64_t base_draw = 0);

// The CeProblem binding used by run_ceor; exposed so tests can drive
// run_ce with an observer.
struct RhProblem {
  using Sample = Complex;
  using Eval = ScoredSample;

  RhProblem(const StripRegion& region, const CeParams& params,
            const Tolerances& tol, const RhSearchOptions& options = {});

  std::vector<Complex> fresh(std::size_t count, int round,
                             std::uint64_t base_draw) const;
  ScoredSample evaluate(const Complex& s) const;
  Score score_of(const ScoredSample& eval) const {
    return to_score(eval.score);
  }
  std::vector<Complex> resample(std::span<const Candidate<Complex>> elites,
                                std::size_t count, int round,
                                std::uint64_t base_draw) const;

  StripRegion region;
  CeParams params;
  Tolerances tolerances;
  RhSearchOptions options;
  ZetaEvalConfig cfg;
  std::optional<Complex> injected;  // the forced counterexample point
};

struct CeorReport {
  StripRegion region;
  CeParams params;
  Tolerances tolerances;
  RhSearchOptions options;
  std::vector<RoundSummary> rounds;
  std::vector<ZeroRecord> zeros;  // distinct refined zeros, ascending t
  std::vector<ScoredSample> counterexamples;  // OffLineZero samples verbatim
  FrequencyTracker tracker;
  StopReason stop_reason = StopReason::MaxRounds;
};

// Figure-2 driver: scorer = score_sample, fresh sampler = sample_region,
// elite resampler = resample_elites. When trace is non-null every scored
// sample streams there as CSV (round,sigma,t,zeta_re,zeta_im,zeta_mag,score).
CeorReport run_ceor(const StripRegion& region, const CeParams& params,
                    const Tolerances& tol, const RhSearchOptions& options = {},
                    std::ostream* trace = nullptr);

}  // namespace ceor
