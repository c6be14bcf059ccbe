#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ceor/errors.hpp"

namespace ceor {

struct TokenDistribution {
  std::vector<std::pair<int, double>> entries;  // (token_id, prob)
};

// Probs in [0,1] summing to 1 within 1e-9, distinct token ids.
// Throws DomainError.
void validate(const TokenDistribution& dist);

struct Path {
  // Full token sequence including any start prefix.
  std::vector<int> tokens;
  // Accumulated log of the step probabilities of the generated tokens
  // (the start prefix contributes probability 1).
  double log_path_prob = 0.0;
};

struct DecodeParams {
  double p = 1.0;   // nucleus mass
  int k = 1;        // beam width
  int max_len = 8;  // cap on total tokens per path
  std::optional<int> end_token;
};

void validate(const DecodeParams& params);

class NextTokenModel {
 public:
  virtual ~NextTokenModel() = default;
  virtual int vocab_size() const = 0;
  // Pure function of the prefix.
  virtual TokenDistribution next(std::span<const int> prefix) const = 0;
};

// First-order Markov toy model over a named vocabulary, loaded from JSON
// {vocab: [...], start: [...], transitions: {token: {token: prob}}}.
// Missing transition entries mean probability 0.
class MarkovModel final : public NextTokenModel {
 public:
  static MarkovModel from_json(const nlohmann::json& doc);
  static MarkovModel load(const std::string& path);

  int vocab_size() const override {
    return static_cast<int>(vocab_.size());
  }
  TokenDistribution next(std::span<const int> prefix) const override;

  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::string& token_name(int id) const;
  int token_id(std::string_view name) const;  // DomainError if unknown

 private:
  std::vector<std::string> vocab_;
  std::vector<double> start_;
  std::vector<std::vector<double>> rows_;
};

// Smallest prefix of the (prob desc, id asc) ordering with cumulative mass
// >= p, renormalized to sum 1.
TokenDistribution top_p_filter(const TokenDistribution& dist, double p);

// Product of the step probabilities via summed logs. Each step must lie in
// (0, 1]: ZeroStepError at 0, DomainError outside [0, 1].
double path_probability(std::span<const double> step_probs);

// One expansion: every unfinished beam (not ending in end_token, shorter
// than max_len) extends by each token surviving the top-p filter of the
// model's next distribution, scored by accumulated path probability over
// the renormalized filtered probs; finished or full-length beams pass
// through frozen. Keeps the global top k (ties by lexicographic tokens).
std::vector<Path> beam_step(const std::vector<Path>& beams,
                            const NextTokenModel& model,
                            const DecodeParams& params);

// Iterates beam_step from the start prefix until every beam is finished or
// at max_len; returns the surviving paths sorted by descending probability.
// Fully deterministic.
std::vector<Path> beam_decode(const NextTokenModel& model,
                              const std::vector<int>& start,
                              const DecodeParams& params);

}  // namespace ceor
