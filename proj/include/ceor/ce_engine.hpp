#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ceor/errors.hpp"
#include "ceor/parallel.hpp"

namespace ceor {

// Extended-real performance metric. The -inf state is explicit (not IEEE
// -Inf) so score sums, equality, and the stability stop are exact.
class Score {
 public:
  Score() = default;  // finite 0
  explicit Score(double value);
  static Score neg_inf() {
    Score s;
    s.ninf_ = true;
    return s;
  }

  bool is_neg_inf() const { return ninf_; }
  // Finite value; meaningless for the -inf state (guard with is_neg_inf).
  double value() const { return v_; }

  friend bool operator==(const Score& a, const Score& b) {
    return a.ninf_ == b.ninf_ && (a.ninf_ || a.v_ == b.v_);
  }
  friend bool operator!=(const Score& a, const Score& b) { return !(a == b); }
  friend bool operator<(const Score& a, const Score& b) {
    if (a.ninf_) return !b.ninf_;
    return !b.ninf_ && a.v_ < b.v_;
  }
  friend bool operator>(const Score& a, const Score& b) { return b < a; }
  friend bool operator<=(const Score& a, const Score& b) { return !(b < a); }
  friend bool operator>=(const Score& a, const Score& b) { return !(a < b); }

 private:
  double v_ = 0.0;
  bool ninf_ = false;
};

// Negative per the termination rule: any -inf present, or finite sum < 0.
bool sum_is_negative(std::span<const Score> scores);

struct CeParams {
  std::size_t M = 2000;     // samples per round
  double rho = 0.01;        // elite quantile
  double v = 10.0;          // favorability factor
  double c = 0.7;           // smoothing constant
  int l = 5;                // stability window
  int max_rounds = 50;
  std::uint64_t seed = 0;
};

// M >= 1, rho in (0,1), v >= 1, c in [0,1], l >= 1, max_rounds >= 1, and
// v*M*rho in [1, M] so the elite draw count is a valid sample count.
// Throws ConfigError. Note c = 0 passes validation but leaves round 1 with
// zero elite mass, so normalization raises ZeroMassError; the normalized
// update is genuinely undefined there.
void validate(const CeParams& params);

enum class StopReason { Continue, GammaStable, NegativeSum, MaxRounds };

// ceil(rho * n): number of elite seats.
std::size_t elite_quota(double rho, std::size_t n);

// The k-th largest score, k = ceil(rho * n): the largest value f such that
// at least k scores are >= f. Throws EmptyInputError.
Score quantile_benchmark(std::span<const Score> scores, double rho);

// Exactly the indices with score >= gamma within the top-k ranking
// (score descending, index ascending); ties at gamma fill the quota in
// ascending index order. Returned sorted ascending. |B| = k always.
std::vector<std::size_t> elite_set(std::span<const Score> scores,
                                   const Score& gamma, double rho);

// Indicator weights: 1/|B| for elite indices, 0 elsewhere.
// Throws EmptyEliteError.
std::vector<double> update_probabilities(std::span<const std::size_t> elite,
                                         std::size_t n_samples);

// q_m = c*q_e + (1-c)*q_prev elementwise; unequal lengths are aligned by
// treating missing entries as 0.
std::vector<double> smooth_probabilities(std::span<const double> q_e,
                                         std::span<const double> q_prev,
                                         double c);

// q_n = q_m / sum(q_m). Throws ZeroMassError when the mass is 0.
std::vector<double> normalize_probabilities(std::span<const double> q_m);

// N_v = round(v*M*rho), half away from zero, clamped to [0, M].
std::size_t elite_sample_count(const CeParams& params);

// NegativeSum if the round's scores sum negative (any -inf forces this);
// else GammaStable when the last l+1 benchmarks exist and are equal; else
// MaxRounds when |gamma_history| >= max_rounds; else Continue.
StopReason check_termination(std::span<const Score> gamma_history,
                             std::span<const Score> scores_this_round,
                             const CeParams& params);

template <class S>
struct Candidate {
  S sample;
  double q_e = 0.0;
  double q_m = 0.0;
  double q_n = 0.0;
};

// A problem binds the engine to a sample space: fresh draws, a pure scorer,
// and categorical resampling from the elite candidates. Draw indices
// [base_draw, base_draw + count) partition a round's RNG stream between the
// elite and fresh draws.
template <class P>
concept CeProblem = requires(const P p, const typename P::Sample& s,
                             const typename P::Eval& e,
                             std::span<const Candidate<typename P::Sample>> c) {
  { p.fresh(std::size_t{}, int{}, std::uint64_t{}) }
      -> std::same_as<std::vector<typename P::Sample>>;
  { p.evaluate(s) } -> std::same_as<typename P::Eval>;
  { p.score_of(e) } -> std::same_as<Score>;
  { p.resample(c, std::size_t{}, int{}, std::uint64_t{}) }
      -> std::same_as<std::vector<typename P::Sample>>;
};

template <CeProblem P>
struct RoundState {
  int r = 0;
  Score gamma;
  std::vector<typename P::Sample> samples;
  std::vector<typename P::Eval> evals;
  std::size_t n_elite_draws = 0;   // first n_elite_draws samples are resamples
  std::vector<std::size_t> elites; // the set B, ascending
  // Distinct elite candidates with their Eq. 8/9/11 weights, in order of
  // first appearance among the elite indices.
  std::vector<Candidate<typename P::Sample>> candidates;
};

struct ScoreBucket {
  Score score;
  std::size_t count = 0;
};

struct RoundSummary {
  int r = 0;
  Score gamma;
  std::size_t elite_count = 0;
  std::size_t n_v = 0;
  std::vector<ScoreBucket> score_histogram;  // ascending by score
};

template <CeProblem P>
struct CeResult {
  std::vector<RoundSummary> rounds;
  StopReason stop_reason = StopReason::MaxRounds;
  std::vector<typename P::Sample> best_samples;  // final elite set
  std::vector<typename P::Eval> best_evals;
};

namespace detail {

inline std::vector<ScoreBucket> score_histogram(std::vector<Score> scores) {
  std::sort(scores.begin(), scores.end());
  std::vector<ScoreBucket> buckets;
  for (const Score& s : scores) {
    if (buckets.empty() || buckets.back().score != s)
      buckets.push_back({s, 1});
    else
      ++buckets.back().count;
  }
  return buckets;
}

}  // namespace detail

// The round loop: draw N_v elite resamples (rounds >= 2) plus fresh samples
// up to M, score them (concurrently; the scorer must be pure), take the
// rho-quantile benchmark and elite set, update/smooth/normalize candidate
// weights, then apply the termination rules. The observer sees every
// RoundState after its weights are final, including the stopping round.
template <CeProblem P, class Observer>
CeResult<P> run_ce(const P& problem, const CeParams& params,
                   Observer&& observe) {
  using Sample = typename P::Sample;
  validate(params);
  const std::size_t n_v = elite_sample_count(params);

  CeResult<P> result;
  std::vector<Score> gamma_history;
  std::vector<Candidate<Sample>> prev_candidates;
  // Persistent candidate pool keyed by sample identity; non-reselected
  // entries decay by (1-c) per round and are pruned below 1e-6.
  std::vector<std::pair<Sample, double>> pool;

  for (int r = 1;; ++r) {
    RoundState<P> state;
    state.r = r;
    state.n_elite_draws = r == 1 ? 0 : n_v;
    if (state.n_elite_draws > 0)
      state.samples =
          problem.resample(prev_candidates, state.n_elite_draws, r, 0);
    {
      auto fresh = problem.fresh(params.M - state.n_elite_draws, r,
                                 state.n_elite_draws);
      state.samples.insert(state.samples.end(), fresh.begin(), fresh.end());
    }

    state.evals.resize(params.M);
    parallel_for(params.M, [&](std::size_t i) {
      state.evals[i] = problem.evaluate(state.samples[i]);
    });
    std::vector<Score> scores(params.M);
    for (std::size_t i = 0; i < params.M; ++i)
      scores[i] = problem.score_of(state.evals[i]);

    state.gamma = quantile_benchmark(scores, params.rho);
    gamma_history.push_back(state.gamma);
    state.elites = elite_set(scores, state.gamma, params.rho);
    const std::vector<double> q_e =
        update_probabilities(state.elites, params.M);

    // Aggregate per distinct elite sample value.
    for (std::size_t idx : state.elites) {
      bool merged = false;
      for (auto& cand : state.candidates) {
        if (cand.sample == state.samples[idx]) {
          cand.q_e += q_e[idx];
          merged = true;
          break;
        }
      }
      if (!merged) state.candidates.push_back({state.samples[idx], q_e[idx], 0.0, 0.0});
    }

    for (auto& entry : pool) entry.second *= 1.0 - params.c;
    double mass = 0.0;
    for (auto& cand : state.candidates) {
      double* slot = nullptr;
      for (auto& entry : pool)
        if (entry.first == cand.sample) {
          slot = &entry.second;
          break;
        }
      if (slot == nullptr) {
        pool.emplace_back(cand.sample, 0.0);
        slot = &pool.back().second;
      }
      *slot += params.c * cand.q_e;
      cand.q_m = *slot;
      mass += cand.q_m;
    }
    std::erase_if(pool, [](const auto& e) { return e.second < 1e-6; });
    if (!(mass > 0.0))
      throw ZeroMassError("run_ce: elite candidate mass is zero");
    for (auto& cand : state.candidates) cand.q_n = cand.q_m / mass;

    result.rounds.push_back({r, state.gamma, state.elites.size(),
                             state.n_elite_draws,
                             detail::score_histogram(scores)});
    observe(static_cast<const RoundState<P>&>(state));

    const StopReason decision =
        check_termination(gamma_history, scores, params);
    if (decision != StopReason::Continue) {
      result.stop_reason = decision;
      result.best_samples.reserve(state.elites.size());
      result.best_evals.reserve(state.elites.size());
      for (std::size_t idx : state.elites) {
        result.best_samples.push_back(state.samples[idx]);
        result.best_evals.push_back(state.evals[idx]);
      }
      return result;
    }
    prev_candidates = std::move(state.candidates);
  }
}

template <CeProblem P>
CeResult<P> run_ce(const P& problem, const CeParams& params) {
  return run_ce(problem, params, [](const RoundState<P>&) {});
}

}  // namespace ceor
