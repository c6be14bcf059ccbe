#include "ceor/decoding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace ceor {

namespace {

bool path_finished(const Path& path, const DecodeParams& params) {
  return params.end_token && !path.tokens.empty() &&
         path.tokens.back() == *params.end_token;
}

bool path_before(const Path& a, const Path& b) {
  if (a.log_path_prob != b.log_path_prob)
    return a.log_path_prob > b.log_path_prob;
  return a.tokens < b.tokens;
}

std::vector<double> distribution_row(const nlohmann::json& obj,
                                     const std::vector<std::string>& vocab,
                                     const char* what) {
  std::vector<double> row(vocab.size(), 0.0);
  for (const auto& [name, value] : obj.items()) {
    const auto it = std::find(vocab.begin(), vocab.end(), name);
    if (it == vocab.end())
      throw DomainError(std::string("MarkovModel: unknown token '") + name +
                        "' in " + what);
    row[static_cast<std::size_t>(it - vocab.begin())] = value.get<double>();
  }
  return row;
}

void validate_row(const std::vector<double>& row, const char* what) {
  TokenDistribution dist;
  for (std::size_t i = 0; i < row.size(); ++i)
    dist.entries.emplace_back(static_cast<int>(i), row[i]);
  try {
    validate(dist);
  } catch (const DomainError& e) {
    throw DomainError(std::string("MarkovModel: ") + what + ": " + e.what());
  }
}

}  // namespace

void validate(const TokenDistribution& dist) {
  double mass = 0.0;
  for (std::size_t i = 0; i < dist.entries.size(); ++i) {
    const auto& [id, prob] = dist.entries[i];
    if (!(prob >= 0.0 && prob <= 1.0))
      throw DomainError("TokenDistribution: prob outside [0, 1]");
    mass += prob;
    for (std::size_t j = i + 1; j < dist.entries.size(); ++j)
      if (dist.entries[j].first == id)
        throw DomainError("TokenDistribution: duplicate token id");
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw DomainError("TokenDistribution: probs must sum to 1");
}

void validate(const DecodeParams& params) {
  if (!(params.p > 0.0 && params.p <= 1.0))
    throw ConfigError("DecodeParams: p must lie in (0, 1]");
  if (params.k < 1) throw ConfigError("DecodeParams: k must be >= 1");
  if (params.max_len < 1)
    throw ConfigError("DecodeParams: max_len must be >= 1");
}

MarkovModel MarkovModel::from_json(const nlohmann::json& doc) {
  MarkovModel model;
  if (!doc.is_object() || !doc.contains("vocab") || !doc.contains("start") ||
      !doc.contains("transitions"))
    throw DomainError("MarkovModel: expected {vocab, start, transitions}");

  model.vocab_ = doc.at("vocab").get<std::vector<std::string>>();
  if (model.vocab_.empty()) throw DomainError("MarkovModel: empty vocab");
  for (std::size_t i = 0; i < model.vocab_.size(); ++i)
    for (std::size_t j = i + 1; j < model.vocab_.size(); ++j)
      if (model.vocab_[i] == model.vocab_[j])
        throw DomainError("MarkovModel: duplicate vocab entry");

  model.start_ = doc.at("start").get<std::vector<double>>();
  if (model.start_.size() != model.vocab_.size())
    throw DomainError("MarkovModel: start length must match vocab");
  validate_row(model.start_, "start");

  model.rows_.assign(model.vocab_.size(), {});
  const auto& transitions = doc.at("transitions");
  for (std::size_t i = 0; i < model.vocab_.size(); ++i) {
    if (!transitions.contains(model.vocab_[i]))
      throw DomainError("MarkovModel: missing transition row for '" +
                        model.vocab_[i] + "'");
    model.rows_[i] = distribution_row(transitions.at(model.vocab_[i]),
                                      model.vocab_, "transitions");
    validate_row(model.rows_[i], "transition row");
  }
  return model;
}

MarkovModel MarkovModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("MarkovModel: cannot open " + path);
  nlohmann::json doc;
  in >> doc;
  return from_json(doc);
}

const std::string& MarkovModel::token_name(int id) const {
  if (id < 0 || id >= vocab_size())
    throw DomainError("MarkovModel: token id out of range");
  return vocab_[static_cast<std::size_t>(id)];
}

int MarkovModel::token_id(std::string_view name) const {
  for (std::size_t i = 0; i < vocab_.size(); ++i)
    if (vocab_[i] == name) return static_cast<int>(i);
  throw DomainError("MarkovModel: unknown token '" + std::string(name) + "'");
}

TokenDistribution MarkovModel::next(std::span<const int> prefix) const {
  const std::vector<double>* row = &start_;
  if (!prefix.empty()) {
    const int last = prefix.back();
    if (last < 0 || last >= vocab_size())
      throw DomainError("MarkovModel: prefix token out of range");
    row = &rows_[static_cast<std::size_t>(last)];
  }
  TokenDistribution dist;
  dist.entries.reserve(row->size());
  for (std::size_t i = 0; i < row->size(); ++i)
    dist.entries.emplace_back(static_cast<int>(i), (*row)[i]);
  return dist;
}

TokenDistribution top_p_filter(const TokenDistribution& dist, double p) {
  validate(dist);
  if (!(p > 0.0 && p <= 1.0))
    throw ConfigError("top_p_filter: p must lie in (0, 1]");

  std::vector<std::pair<int, double>> sorted = dist.entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  TokenDistribution kept;
  double cum = 0.0;
  for (const auto& entry : sorted) {
    kept.entries.push_back(entry);
    cum += entry.second;
    if (cum >= p - 1e-9) break;  // fp slack so p = 1 keeps a full simplex
  }
  for (auto& [id, prob] : kept.entries) prob /= cum;
  return kept;
}

double path_probability(std::span<const double> step_probs) {
  double log_sum = 0.0;
  for (double prob : step_probs) {
    if (prob == 0.0)
      throw ZeroStepError("path_probability: zero step probability");
    if (!(prob > 0.0 && prob <= 1.0))
      throw DomainError("path_probability: step prob outside (0, 1]");
    log_sum += std::log(prob);
  }
  return std::exp(log_sum);
}

std::vector<Path> beam_step(const std::vector<Path>& beams,
                            const NextTokenModel& model,
                            const DecodeParams& params) {
  validate(params);
  if (beams.empty()) throw EmptyInputError("beam_step: no beams");

  std::vector<Path> candidates;
  for (const Path& beam : beams) {
    if (path_finished(beam, params) ||
        beam.tokens.size() >= static_cast<std::size_t>(params.max_len)) {
      candidates.push_back(beam);  // frozen, competes by its current prob
      continue;
    }
    const TokenDistribution filtered =
        top_p_filter(model.next(beam.tokens), params.p);
    for (const auto& [token, prob] : filtered.entries) {
      if (prob == 0.0) continue;  // unreachable continuation
      Path extended = beam;
      extended.tokens.push_back(token);
      extended.log_path_prob += std::log(prob);
      candidates.push_back(std::move(extended));
    }
  }

  std::sort(candidates.begin(), candidates.end(), path_before);
  if (candidates.size() > static_cast<std::size_t>(params.k))
    candidates.resize(static_cast<std::size_t>(params.k));
  return candidates;
}

std::vector<Path> beam_decode(const NextTokenModel& model,
                              const std::vector<int>& start,
                              const DecodeParams& params) {
  validate(params);
  std::vector<Path> beams{Path{start, 0.0}};
  const auto done = [&](const Path& path) {
    return path_finished(path, params) ||
           path.tokens.size() >= static_cast<std::size_t>(params.max_len);
  };
  while (!std::all_of(beams.begin(), beams.end(), done))
    beams = beam_step(beams, model, params);
  std::sort(beams.begin(), beams.end(), path_before);
  return beams;
}

}  // namespace ceor
