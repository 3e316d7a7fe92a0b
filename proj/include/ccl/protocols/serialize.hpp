#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "ccl/protocols/guess.hpp"

// JSON tree format (see docs/formats.md):
//
//   leaf:      {"leaf": 0|1}
//   internal:  {"speaker": "alice"|"bob", "table": "0110", "children": [on0, on1]}
//   guess:     {"domain": [X, Y], "guesses": [tree, ...]}
namespace ccl::serial {

nlohmann::json to_json(const DeterministicProtocol& p);
DeterministicProtocol protocol_from_json(const nlohmann::json& j, Domain d);

nlohmann::json to_json(const GuessProtocol& g, const Int& limit = kMaterializeLimit);
GuessProtocol guess_from_json(const nlohmann::json& j);

std::string dump_guess(const GuessProtocol& g);
GuessProtocol parse_guess(std::string_view text);

}  // namespace ccl::serial
