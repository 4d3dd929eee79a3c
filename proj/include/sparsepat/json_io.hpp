#pragma once

#include <nlohmann/json.hpp>

#include "sparsepat/bounds.hpp"
#include "sparsepat/decoder.hpp"
#include "sparsepat/montecarlo.hpp"

namespace sparsepat {

// Patterns cross the JSON boundary 1-based.
nlohmann::json pattern_to_json(const SparsityPattern& pattern);
SparsityPattern pattern_from_json(const nlohmann::json& j, int p);

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const DecodeResult& result);
nlohmann::json to_json(const TrialBatchResult& result);
nlohmann::json to_json(const ConditionReport& report);

// Non-finite doubles become null.
nlohmann::json number_or_null(double v);

}  // namespace sparsepat
