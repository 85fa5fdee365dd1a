#pragma once

#include "scall/ahp.hpp"
#include "scall/evaluator.hpp"
#include "scall/model.hpp"
#include "scall/search.hpp"

namespace scall {

// Allocations are written as lists of unit ids in component order.
OrderedJson evaluation_to_json(const ArchitectureModel& model, const EvaluationResult& r);
OrderedJson candidate_to_json(const ArchitectureModel& model, const Candidate& c);

// `elapsedMs` is the only timing field; it is omitted when include_timing is false.
OrderedJson search_report_to_json(const ArchitectureModel& model, const SearchReport& report,
                                  bool include_timing = true);

// Inverse of search_report_to_json. Throws std::invalid_argument or
// nlohmann::json exceptions on malformed input.
SearchReport search_report_from_json(const ArchitectureModel& model, const Json& doc);

OrderedJson tradeoff_to_json(const TradeoffVector& F);

// Applies the camelCase overrides present in `doc` on top of `base`.
// Throws std::invalid_argument for unknown keys or wrong types.
GAConfig ga_config_from_json(const Json& doc, GAConfig base = {});

std::string_view method_name(SearchMethod method);

}  // namespace scall
