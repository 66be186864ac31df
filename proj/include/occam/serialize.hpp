#pragma once

// JSON encodings of concepts and samples.
//
//   DecisionList:  {"n": 2, "rules": [{"term": [[0, 1], [1, 0]], "label": 1}], "default": 0}
//                  each literal is [variable, polarity] with polarity 1 for x_v, 0 for not x_v
//   LabeledSample: {"n": 2, "pairs": [["01", 1], ["10", 0]]}

#include <json.hpp>

#include "occam/domain.hpp"

namespace occam {

nlohmann::json to_json(const DecisionList& c);
DecisionList decision_list_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LabeledSample& sample);
LabeledSample sample_from_json(const nlohmann::json& j);

}  // namespace occam
