#include "ceor/reports.hpp"

#include "ceor/complex_text.hpp"

namespace ceor {

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::Continue: return "continue";
    case StopReason::GammaStable: return "gamma_stable";
    case StopReason::NegativeSum: return "negative_sum";
    case StopReason::MaxRounds: return "max_rounds";
  }
  return "?";
}

StopReason stop_reason_from_name(const std::string& name) {
  if (name == "gamma_stable") return StopReason::GammaStable;
  if (name == "negative_sum") return StopReason::NegativeSum;
  if (name == "max_rounds") return StopReason::MaxRounds;
  if (name == "continue") return StopReason::Continue;
  throw TextParseError("unknown stop_reason: " + name);
}

std::string score_text(const Score& score) {
  return score.is_neg_inf() ? "-inf" : format_double(score.value());
}

Json to_json(const Score& score) {
  if (score.is_neg_inf()) return Json("-inf");
  return Json(score.value());
}

Json to_json(const RoundSummary& summary) {
  Json histogram = Json::object();
  for (const ScoreBucket& bucket : summary.score_histogram)
    histogram[score_text(bucket.score)] = bucket.count;
  Json j;
  j["r"] = summary.r;
  j["gamma"] = to_json(summary.gamma);
  j["elite_count"] = summary.elite_count;
  j["n_v"] = summary.n_v;
  j["score_histogram"] = std::move(histogram);
  return j;
}

Json to_json(const CeParams& params) {
  Json j;
  j["M"] = params.M;
  j["rho"] = params.rho;
  j["v"] = params.v;
  j["c"] = params.c;
  j["l"] = params.l;
  j["max_rounds"] = params.max_rounds;
  j["seed"] = params.seed;
  return j;
}

Json to_json(const Tolerances& tol) {
  Json j;
  j["eps_zero"] = tol.eps_zero;
  j["eps_line"] = tol.eps_line;
  j["refine_radius"] = tol.refine_radius;
  return j;
}

Json to_json(const StripRegion& region) {
  Json j;
  j["sigma_lo"] = region.sigma_lo;
  j["sigma_hi"] = region.sigma_hi;
  j["t_lo"] = region.t_lo;
  j["t_hi"] = region.t_hi;
  return j;
}

namespace {

Json options_json(const RhSearchOptions& options) {
  Json j;
  j["jitter"] = options.jitter;
  j["inject_counterexample"] = options.inject_counterexample;
  return j;
}

Json rounds_json(std::span<const RoundSummary> rounds) {
  Json arr = Json::array();
  for (const RoundSummary& summary : rounds) arr.push_back(to_json(summary));
  return arr;
}

}  // namespace

Json to_json(const CeorReport& report) {
  Json j;
  j["region"] = to_json(report.region);
  j["params"] = to_json(report.params);
  j["tolerances"] = to_json(report.tolerances);
  j["options"] = options_json(report.options);
  j["rounds"] = rounds_json(report.rounds);
  Json zeros = Json::array();
  for (const ZeroRecord& z : report.zeros)
    zeros.push_back(Json{{"t", z.t}, {"residual", z.residual}});
  j["zeros"] = std::move(zeros);
  Json counterexamples = Json::array();
  for (const ScoredSample& e : report.counterexamples)
    counterexamples.push_back(Json{{"sigma", e.s.real()},
                                   {"t", e.s.imag()},
                                   {"zeta_re", e.zeta_value.real()},
                                   {"zeta_im", e.zeta_value.imag()},
                                   {"zeta_mag", e.zeta_mag}});
  j["counterexamples"] = std::move(counterexamples);
  j["tracker"] = Json{{"n", report.tracker.n}, {"mu", report.tracker.mu}};
  j["stop_reason"] = stop_reason_name(report.stop_reason);
  return j;
}

Json to_json(const SweepReport& report) {
  Json j;
  j["t_lo"] = report.t_lo;
  j["t_hi"] = report.t_hi;
  j["params"] = to_json(report.params);
  j["tolerances"] = to_json(report.tolerances);
  j["options"] = options_json(report.options);
  Json tiles = Json::array();
  for (const TileReport& tile : report.tiles) {
    Json t;
    t["tile"] = to_json(tile.tile);
    t["n_online"] = tile.region_count.n_online;
    t["n_formula"] = tile.region_count.n_formula;
    t["count_consistent"] = tile.region_count.consistent;
    t["ceor_zeros"] = tile.ceor_zeros;
    t["match"] = tile.match;
    tiles.push_back(std::move(t));
  }
  j["tiles"] = std::move(tiles);
  j["total_online"] = report.total_online;
  j["total_formula"] = report.total_formula;
  j["consistent"] = report.consistent;
  return j;
}

Json ce_result_json(const CeParams& params,
                    std::span<const RoundSummary> rounds, StopReason reason) {
  Json j;
  j["params"] = to_json(params);
  j["rounds"] = rounds_json(rounds);
  j["stop_reason"] = stop_reason_name(reason);
  return j;
}

SweepReport sweep_report_from_json(const nlohmann::json& doc) {
  SweepReport report;
  report.t_lo = doc.at("t_lo").get<double>();
  report.t_hi = doc.at("t_hi").get<double>();
  const auto& params = doc.at("params");
  report.params.M = params.at("M").get<std::size_t>();
  report.params.rho = params.at("rho").get<double>();
  report.params.v = params.at("v").get<double>();
  report.params.c = params.at("c").get<double>();
  report.params.l = params.at("l").get<int>();
  report.params.max_rounds = params.at("max_rounds").get<int>();
  report.params.seed = params.at("seed").get<std::uint64_t>();
  const auto& tol = doc.at("tolerances");
  report.tolerances.eps_zero = tol.at("eps_zero").get<double>();
  report.tolerances.eps_line = tol.at("eps_line").get<double>();
  report.tolerances.refine_radius = tol.at("refine_radius").get<double>();
  const auto& options = doc.at("options");
  report.options.jitter = options.at("jitter").get<double>();
  report.options.inject_counterexample =
      options.at("inject_counterexample").get<bool>();
  for (const auto& t : doc.at("tiles")) {
    TileReport tile;
    const auto& region = t.at("tile");
    tile.tile.sigma_lo = region.at("sigma_lo").get<double>();
    tile.tile.sigma_hi = region.at("sigma_hi").get<double>();
    tile.tile.t_lo = region.at("t_lo").get<double>();
    tile.tile.t_hi = region.at("t_hi").get<double>();
    tile.region_count.t_lo = tile.tile.t_lo;
    tile.region_count.t_hi = tile.tile.t_hi;
    tile.region_count.n_online = t.at("n_online").get<long long>();
    tile.region_count.n_formula = t.at("n_formula").get<long long>();
    tile.region_count.consistent = t.at("count_consistent").get<bool>();
    tile.ceor_zeros = t.at("ceor_zeros").get<std::vector<double>>();
    tile.match = t.at("match").get<bool>();
    report.tiles.push_back(std::move(tile));
  }
  report.total_online = doc.at("total_online").get<long long>();
  report.total_formula = doc.at("total_formula").get<long long>();
  report.consistent = doc.at("consistent").get<bool>();
  return report;
}

}  // namespace ceor
