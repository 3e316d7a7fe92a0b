#include "ccl/protocols/serialize.hpp"

#include "ccl/core/error.hpp"

namespace ccl::serial {

using nlohmann::json;

namespace {

json node_to_json(const DeterministicProtocol::Node& n) {
  if (n.is_leaf) return json{{"leaf", n.output ? 1 : 0}};
  std::string table;
  for (auto b : n.table) table.push_back(b ? '1' : '0');
  return json{{"speaker", n.speaker == Speaker::Alice ? "alice" : "bob"},
              {"table", table},
              {"children", json::array({node_to_json(*n.on_zero), node_to_json(*n.on_one)})}};
}

}  // namespace

json to_json(const DeterministicProtocol& p) { return node_to_json(p.root()); }

DeterministicProtocol protocol_from_json(const json& j, Domain d) {
  if (!j.is_object()) throw ParseError(0, "protocol node must be an object");
  if (j.contains("leaf")) {
    const auto& v = j.at("leaf");
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
      throw ParseError(0, "leaf must be 0 or 1");
    return DeterministicProtocol::leaf(d, v.get<int>() == 1);
  }
  if (!j.contains("speaker") || !j.contains("table") || !j.contains("children"))
    throw ParseError(0, "internal node needs speaker, table and children");
  std::string who = j.at("speaker").get<std::string>();
  if (who != "alice" && who != "bob") throw ParseError(0, "speaker must be 'alice' or 'bob'");
  std::string table_text = j.at("table").get<std::string>();
  std::vector<std::uint8_t> table;
  for (char c : table_text) {
    if (c != '0' && c != '1') throw ParseError(0, "message table must be a bit string");
    table.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  const auto& ch = j.at("children");
  if (!ch.is_array() || ch.size() != 2) throw ParseError(0, "internal node needs exactly two children");
  try {
    return DeterministicProtocol::speak(d, who == "alice" ? Speaker::Alice : Speaker::Bob, std::move(table),
                                        protocol_from_json(ch[0], d), protocol_from_json(ch[1], d));
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

json to_json(const GuessProtocol& g, const Int& limit) {
  json guesses = json::array();
  for (const auto& p : g.members(limit)) guesses.push_back(to_json(p));
  return json{{"domain", {g.domain().x_size, g.domain().y_size}}, {"guesses", guesses}};
}

GuessProtocol guess_from_json(const json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("guesses"))
    throw ParseError(0, "guess protocol needs 'domain' and 'guesses'");
  const auto& dom = j.at("domain");
  if (!dom.is_array() || dom.size() != 2) throw ParseError(0, "domain must be [X, Y]");
  Domain d{dom[0].get<int>(), dom[1].get<int>()};
  try {
    check_domain(d);
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  std::vector<DeterministicProtocol> members;
  for (const auto& node : j.at("guesses")) members.push_back(protocol_from_json(node, d));
  if (members.empty()) throw ParseError(0, "a guess protocol needs at least one guess");
  return GuessProtocol(std::move(members));
}

std::string dump_guess(const GuessProtocol& g) { return to_json(g).dump(1) + "\n"; }

GuessProtocol parse_guess(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  try {
    return guess_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("bad protocol JSON: ") + e.what());
  }
}

}  // namespace ccl::serial
