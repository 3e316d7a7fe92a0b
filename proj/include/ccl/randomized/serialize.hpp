#pragma once

#include <string_view>

#include "json.hpp"

#include "ccl/randomized/randomized.hpp"

// {"support": [{"probability": "1/3", "protocol": <guess protocol JSON>}, ...]}
namespace ccl::serial {

nlohmann::json to_json(const RandomizedPPProtocol& rp, const Int& limit = kMaterializeLimit);
RandomizedPPProtocol randomized_from_json(const nlohmann::json& j);
RandomizedPPProtocol parse_randomized(std::string_view text);

}  // namespace ccl::serial
