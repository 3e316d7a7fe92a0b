#include "ccl/randomized/serialize.hpp"

#include "ccl/core/error.hpp"
#include "ccl/protocols/serialize.hpp"

namespace ccl::serial {

using nlohmann::json;

json to_json(const RandomizedPPProtocol& rp, const Int& limit) {
  json support = json::array();
  for (const auto& e : rp.support())
    support.push_back({{"probability", to_string(e.probability)}, {"protocol", to_json(e.protocol, limit)}});
  return {{"support", support}};
}

RandomizedPPProtocol randomized_from_json(const json& j) {
  if (!j.is_object() || !j.contains("support") || !j["support"].is_array())
    throw ParseError(0, "randomized protocol needs a 'support' array");
  std::vector<RandomizedPPProtocol::Entry> entries;
  for (const auto& e : j["support"]) {
    if (!e.is_object() || !e.contains("probability") || !e.contains("protocol"))
      throw ParseError(0, "support entries need 'probability' and 'protocol'");
    const json& p = e["probability"];
    Rational q = p.is_string() ? parse_rational(p.get<std::string>())
                 : p.is_number_integer() ? Rational(Int(std::to_string(p.get<long long>())))
                                          : throw ParseError(0, "probability must be an integer or \"p/q\"");
    entries.push_back({guess_from_json(e["protocol"]), q});
  }
  try {
    return RandomizedPPProtocol(std::move(entries));
  } catch (const DomainError& err) {
    throw ParseError(0, err.what());
  }
}

RandomizedPPProtocol parse_randomized(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  return randomized_from_json(j);
}

}  // namespace ccl::serial
