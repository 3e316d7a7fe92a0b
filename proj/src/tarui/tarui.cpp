#include "ccl/tarui/tarui.hpp"

#include <algorithm>
#include <string>

#include "ccl/core/error.hpp"
#include "ccl/protocols/builders.hpp"

namespace ccl::tarui {
namespace {

using nlohmann::json;

std::size_t cell(Domain d, int x, int y) { return static_cast<std::size_t>(x) * d.y_size + y; }

std::vector<std::uint8_t> parse_bits(const json& j, int size, const std::string& what) {
  if (!j.is_string()) throw ParseError(0, what + " must be a bit string");
  std::string s = j.get<std::string>();
  if (static_cast<int>(s.size()) != size)
    throw ParseError(0, what + " has " + std::to_string(s.size()) + " bits, expected " + std::to_string(size));
  std::vector<std::uint8_t> bits(size);
  for (int i = 0; i < size; ++i) {
    if (s[i] != '0' && s[i] != '1') throw ParseError(0, what + " contains '" + std::string(1, s[i]) + "'");
    bits[i] = s[i] == '1' ? 1 : 0;
  }
  return bits;
}

std::string bits_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

Rational rational_field(const json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Int(std::to_string(j.get<long long>())));
  throw ParseError(0, what + " must be an integer or a \"p/q\" string");
}

Int integer_field(const json& j, const std::string& what) {
  Rational q = rational_field(j, what);
  if (q.get_den() != 1) throw ParseError(0, what + " must be an integer");
  return q.get_num();
}

}  // namespace

RectangleTermPolynomial::RectangleTermPolynomial(Domain d, std::vector<RectangleTerm> terms)
    : domain_(d), terms_(std::move(terms)) {
  check_domain(d);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (sgn(t.coefficient) == 0) throw DomainError("term " + std::to_string(i) + " has coefficient 0");
    if (static_cast<int>(t.f.size()) != d.x_size || static_cast<int>(t.g.size()) != d.y_size)
      throw DomainError("term " + std::to_string(i) + " truth tables do not match the domain");
  }
}

Int RectangleTermPolynomial::weight() const {
  Int w = 0;
  for (const auto& t : terms_) w += abs(t.coefficient);
  return w;
}

Int eval_phi(const RectangleTermPolynomial& phi, int x, int y) {
  Domain d = phi.domain();
  if (x < 0 || x >= d.x_size || y < 0 || y >= d.y_size)
    throw DomainError("input (" + std::to_string(x) + ", " + std::to_string(y) + ") outside the domain");
  Int v = 0;
  for (const auto& t : phi.terms())
    if (t.f[x] && t.g[y]) v += t.coefficient;
  return v;
}

std::vector<Int> eval_phi_grid(const RectangleTermPolynomial& phi) {
  Domain d = phi.domain();
  std::vector<Int> grid(d.inputs());
  for (int x = 0; x < d.x_size; ++x)
    for (int y = 0; y < d.y_size; ++y) grid[cell(d, x, y)] = eval_phi(phi, x, y);
  return grid;
}

std::vector<Int> eval_counting_grid(const CountingForm& psi) {
  Domain d = psi.domain;
  std::vector<Int> grid(d.inputs(), Int(0));
  for (const auto& t : psi.terms)
    for (int x = 0; x < d.x_size; ++x)
      for (int y = 0; y < d.y_size; ++y) {
        bool on = t.f[x] && t.g[y];
        if (on != t.complemented) grid[cell(d, x, y)] += t.copies;
      }
  return grid;
}

Shift shift_nonnegative(const RectangleTermPolynomial& phi) {
  Shift s{{phi.domain(), {}}, Int(0)};
  for (const auto& t : phi.terms()) {
    bool negative = sgn(t.coefficient) < 0;
    s.psi.terms.push_back({t.f, t.g, negative, abs(t.coefficient)});
    if (negative) s.g += abs(t.coefficient);
  }
  return s;
}

GuessProtocol counting_to_guess(const CountingForm& psi) {
  if (psi.terms.empty()) return GuessProtocol::constant(psi.domain, false);
  std::vector<GuessProtocol> parts;
  for (const auto& t : psi.terms) {
    if (sgn(t.copies) <= 0) throw DomainError("counting term with no copies");
    DeterministicProtocol p = rectangle_protocol(t.f, t.g);
    if (t.complemented) p = p.complement();
    parts.push_back(replicate(GuessProtocol({p}), t.copies));
  }
  return sum(parts);
}

RandomizedRectanglePolynomial parse_randomized_polynomial(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("domain") || !j.contains("support"))
    throw ParseError(0, "expected an object with \"domain\" and \"support\"");
  const json& dj = j["domain"];
  if (!dj.is_array() || dj.size() != 2 || !dj[0].is_number_integer() || !dj[1].is_number_integer())
    throw ParseError(0, "\"domain\" must be [rows, cols]");
  Domain d{dj[0].get<int>(), dj[1].get<int>()};
  check_domain(d);
  if (!j["support"].is_array() || j["support"].empty()) throw ParseError(0, "\"support\" must be a nonempty array");

  RandomizedRectanglePolynomial r;
  Rational total = 0;
  int m = 0;
  for (const json& mj : j["support"]) {
    std::string where = "support[" + std::to_string(m++) + "]";
    if (!mj.is_object() || !mj.contains("probability") || !mj.contains("terms"))
      throw ParseError(0, where + " needs \"probability\" and \"terms\"");
    Rational p = rational_field(mj["probability"], where + ".probability");
    if (sgn(p) < 0) throw ParseError(0, where + ".probability is negative");
    std::vector<RectangleTerm> terms;
    int i = 0;
    for (const json& tj : mj["terms"]) {
      std::string tw = where + ".terms[" + std::to_string(i++) + "]";
      if (!tj.is_object() || !tj.contains("coefficient") || !tj.contains("f") || !tj.contains("g"))
        throw ParseError(0, tw + " needs \"coefficient\", \"f\" and \"g\"");
      terms.push_back({integer_field(tj["coefficient"], tw + ".coefficient"), parse_bits(tj["f"], d.x_size, tw + ".f"),
                       parse_bits(tj["g"], d.y_size, tw + ".g")});
    }
    try {
      r.support.push_back({RectangleTermPolynomial(d, std::move(terms)), p});
    } catch (const DomainError& e) {
      throw ParseError(0, where + ": " + e.what());
    }
    total += p;
  }
  if (total != 1) throw ParseError(0, "probabilities sum to " + to_string(total) + ", not 1");
  return r;
}

json to_json(const RandomizedRectanglePolynomial& r) {
  json support = json::array();
  Domain d{0, 0};
  for (const auto& m : r.support) {
    d = m.phi.domain();
    json terms = json::array();
    for (const auto& t : m.phi.terms())
      terms.push_back({{"coefficient", to_string(t.coefficient)}, {"f", bits_string(t.f)}, {"g", bits_string(t.g)}});
    support.push_back({{"probability", to_string(m.probability)}, {"terms", terms}});
  }
  return {{"domain", {d.x_size, d.y_size}}, {"support", support}};
}

bool MemberReport::within_bounds() const { return guesses <= guess_bound && pp_cost <= cost_bound; }

bool PipelineReport::passed() const {
  if (!violations.empty()) return false;
  for (const auto& m : members)
    if (!m.counting_matches || !m.threshold_matches || !m.within_bounds() || !m.klauck.holds) return false;
  return true;
}

PipelineReport pipeline(const RandomizedRectanglePolynomial& rphi, const BooleanMatrix& L) {
  if (rphi.support.empty()) throw DomainError("pipeline needs at least one member");
  const Domain d = rphi.support.front().phi.domain();
  if (d.x_size != L.rows() || d.y_size != L.cols()) throw DomainError("target matrix shape does not match the domain");

  const long n = static_cast<long>(rphi.support.size());
  std::vector<GuessProtocol> protocols(n, GuessProtocol::constant(d, false));
  std::vector<MemberReport> members(n);
#pragma omp parallel for schedule(dynamic)
  for (long m = 0; m < n; ++m) {
    const auto& phi = rphi.support[m].phi;
    Shift s = shift_nonnegative(phi);
    GuessProtocol counting = counting_to_guess(s.psi);
    GuessProtocol pp = threshold_to_pp(counting, s.g);

    MemberReport r;
    r.probability = rphi.support[m].probability;
    r.threshold = s.g;
    r.weight = phi.weight();
    r.guesses = pp.guess_count();
    r.pp_cost = pp_cost(pp);
    r.guess_bound = std::max(Int(1), Int(2 * r.weight));
    r.cost_bound = ceil_log2(r.guess_bound) + 2;

    std::vector<Int> phi_grid = eval_phi_grid(phi);
    std::vector<Int> acc = counting.accept_grid();
    BooleanMatrix out = pp_eval_grid(pp);
    r.counting_matches = r.threshold_matches = true;
    for (int x = 0; x < d.x_size; ++x)
      for (int y = 0; y < d.y_size; ++y) {
        std::size_t i = cell(d, x, y);
        if (acc[i] != phi_grid[i] + s.g) r.counting_matches = false;
        if (out(x, y) != (sgn(phi_grid[i]) > 0)) r.threshold_matches = false;
      }
    r.klauck = measures::klauck_consistency(out, pp);
    members[m] = std::move(r);
    protocols[m] = pp;
  }

  std::vector<RandomizedPPProtocol::Entry> entries;
  for (long m = 0; m < n; ++m) entries.push_back({protocols[m], rphi.support[m].probability});
  PipelineReport rep{RandomizedPPProtocol(std::move(entries)), std::move(members), {}, Rational(0), {}};
  rep.error_grid = error_grid(rep.protocol, L);
  const Rational third = ratio(1, 3);
  for (int x = 0; x < d.x_size; ++x)
    for (int y = 0; y < d.y_size; ++y) {
      const Rational& e = rep.error_grid[cell(d, x, y)];
      if (e > rep.max_error) rep.max_error = e;
      if (e > third) rep.violations.push_back({x, y, e});
    }
  return rep;
}

json to_json(const PipelineReport& r) {
  json members = json::array();
  for (std::size_t m = 0; m < r.members.size(); ++m) {
    const auto& x = r.members[m];
    members.push_back({{"index", m},
                       {"probability", to_string(x.probability)},
                       {"threshold", to_string(x.threshold)},
                       {"weight", to_string(x.weight)},
                       {"guesses", to_string(x.guesses)},
                       {"pp_cost", x.pp_cost},
                       {"guess_bound", to_string(x.guess_bound)},
                       {"cost_bound", x.cost_bound},
                       {"counting_matches", x.counting_matches},
                       {"threshold_matches", x.threshold_matches},
                       {"klauck",
                        {{"disc_prime", to_string(x.klauck.disc_prime)},
                         {"log_inv_disc", x.klauck.log_inv_disc},
                         {"holds", x.klauck.holds}}}});
  }
  json grid = json::array();
  for (const auto& e : r.error_grid) grid.push_back(to_string(e));
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"x", v.x}, {"y", v.y}, {"error", to_string(v.probability)}});
  return {{"members", members},
          {"error_grid", grid},
          {"max_error", to_string(r.max_error)},
          {"bppp_cost", bppp_cost(r.protocol)},
          {"violations", violations},
          {"passed", r.passed()}};
}

}  // namespace ccl::tarui
