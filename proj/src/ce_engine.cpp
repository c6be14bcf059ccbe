#include "ceor/ce_engine.hpp"

#include <algorithm>
#include <cmath>

namespace ceor {

Score::Score(double value) : v_(value) {
  if (!std::isfinite(value))
    throw DomainError("Score: finite value required (use Score::neg_inf)");
}

bool sum_is_negative(std::span<const Score> scores) {
  double total = 0.0;
  for (const Score& s : scores) {
    if (s.is_neg_inf()) return true;
    total += s.value();
  }
  return total < 0.0;
}

void validate(const CeParams& params) {
  if (params.M < 1) throw ConfigError("CeParams: M must be >= 1");
  if (!(params.rho > 0.0 && params.rho < 1.0))
    throw ConfigError("CeParams: rho must lie in (0, 1)");
  if (!(params.v >= 1.0)) throw ConfigError("CeParams: v must be >= 1");
  if (!(params.c >= 0.0 && params.c <= 1.0))
    throw ConfigError("CeParams: c must lie in [0, 1]");
  if (params.l < 1) throw ConfigError("CeParams: l must be >= 1");
  if (params.max_rounds < 1)
    throw ConfigError("CeParams: max_rounds must be >= 1");
  const double n_v = params.v * static_cast<double>(params.M) * params.rho;
  if (n_v < 1.0 - 1e-9 || n_v > static_cast<double>(params.M) + 1e-9)
    throw ConfigError("CeParams: v*M*rho must lie in [1, M]");
}

std::size_t elite_quota(double rho, std::size_t n) {
  const auto k =
      static_cast<std::size_t>(std::ceil(rho * static_cast<double>(n)));
  return k < 1 ? 1 : (k > n ? n : k);
}

Score quantile_benchmark(std::span<const Score> scores, double rho) {
  if (scores.empty())
    throw EmptyInputError("quantile_benchmark: empty score list");
  if (!(rho > 0.0 && rho < 1.0))
    throw ConfigError("quantile_benchmark: rho must lie in (0, 1)");
  const std::size_t k = elite_quota(rho, scores.size());
  std::vector<Score> sorted(scores.begin(), scores.end());
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end(),
                   [](const Score& a, const Score& b) { return a > b; });
  return sorted[k - 1];
}

std::vector<std::size_t> elite_set(std::span<const Score> scores,
                                   const Score& gamma, double rho) {
  const std::size_t k = elite_quota(rho, scores.size());
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  order.resize(k);
  // All k survivors have score >= gamma when gamma came from
  // quantile_benchmark on the same scores.
  for (std::size_t idx : order)
    if (scores[idx] < gamma) throw ConfigError("elite_set: gamma mismatch");
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<double> update_probabilities(std::span<const std::size_t> elite,
                                         std::size_t n_samples) {
  if (elite.empty()) throw EmptyEliteError("update_probabilities: empty B");
  std::vector<double> q_e(n_samples, 0.0);
  const double w = 1.0 / static_cast<double>(elite.size());
  for (std::size_t idx : elite) q_e.at(idx) = w;
  return q_e;
}

std::vector<double> smooth_probabilities(std::span<const double> q_e,
                                         std::span<const double> q_prev,
                                         double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw ConfigError("smooth_probabilities: c must lie in [0, 1]");
  std::vector<double> q_m(std::max(q_e.size(), q_prev.size()), 0.0);
  for (std::size_t i = 0; i < q_m.size(); ++i) {
    const double e = i < q_e.size() ? q_e[i] : 0.0;
    const double prev = i < q_prev.size() ? q_prev[i] : 0.0;
    q_m[i] = c * e + (1.0 - c) * prev;
  }
  return q_m;
}

std::vector<double> normalize_probabilities(std::span<const double> q_m) {
  double mass = 0.0;
  for (double w : q_m) {
    if (w < 0.0)
      throw DomainError("normalize_probabilities: negative weight");
    mass += w;
  }
  if (!(mass > 0.0))
    throw ZeroMassError("normalize_probabilities: zero total mass");
  std::vector<double> q_n(q_m.size());
  for (std::size_t i = 0; i < q_m.size(); ++i) q_n[i] = q_m[i] / mass;
  return q_n;
}

std::size_t elite_sample_count(const CeParams& params) {
  const double raw = params.v * static_cast<double>(params.M) * params.rho;
  long long n = std::llround(raw);  // half away from zero
  if (n < 0) n = 0;
  if (n > static_cast<long long>(params.M))
    n = static_cast<long long>(params.M);
  return static_cast<std::size_t>(n);
}

StopReason check_termination(std::span<const Score> gamma_history,
                             std::span<const Score> scores_this_round,
                             const CeParams& params) {
  if (!scores_this_round.empty() && sum_is_negative(scores_this_round))
    return StopReason::NegativeSum;
  const std::size_t window = static_cast<std::size_t>(params.l) + 1;
  if (gamma_history.size() >= window) {
    bool stable = true;
    const Score& last = gamma_history.back();
    for (std::size_t i = gamma_history.size() - window;
         i < gamma_history.size(); ++i)
      if (gamma_history[i] != last) {
        stable = false;
        break;
      }
    if (stable) return StopReason::GammaStable;
  }
  if (gamma_history.size() >= static_cast<std::size_t>(params.max_rounds))
    return StopReason::MaxRounds;
  return StopReason::Continue;
}

}  // namespace ceor
