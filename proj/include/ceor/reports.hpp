#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "ceor/ce_engine.hpp"
#include "ceor/rh_search.hpp"
#include "ceor/strip_sweep.hpp"

namespace ceor {

// Key order is pinned (ordered_json) so identical runs serialize to
// byte-identical documents.
using Json = nlohmann::ordered_json;

const char* stop_reason_name(StopReason reason);
StopReason stop_reason_from_name(const std::string& name);

// "-inf" or the numeric text of a finite score.
std::string score_text(const Score& score);

Json to_json(const Score& score);  // number, or the string "-inf"
Json to_json(const RoundSummary& summary);
Json to_json(const CeParams& params);
Json to_json(const Tolerances& tol);
Json to_json(const StripRegion& region);
Json to_json(const CeorReport& report);
Json to_json(const SweepReport& report);

// {params, rounds, stop_reason}: the engine-level result document.
Json ce_result_json(const CeParams& params,
                    std::span<const RoundSummary> rounds, StopReason reason);

// Inverse of to_json(SweepReport); used to extend a persisted sweep.
SweepReport sweep_report_from_json(const nlohmann::json& doc);

}  // namespace ceor
