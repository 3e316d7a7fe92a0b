#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

// Seeded property suites. Case i of a suite draws from stream (seed, i),
// so a report depends only on the suite name and the seed.
namespace ccl::verify {

struct CaseResult {
  std::string id;
  bool passed = true;
  std::string invariant;  // set on failure
  std::string witness;    // set on failure: indices and values
  nlohmann::json detail = nlohmann::json::object();

  void fail(std::string inv, std::string wit);
  // Records the first failure only.
  void check(bool ok, const std::string& inv, const std::string& wit);
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;  // sorted by id

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
};

// Every runnable suite; "all" runs them in this order.
const std::vector<std::string>& suite_names();

// Throws DomainError for an unknown name.
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& opts);

// Size guards in force, for reports.
nlohmann::json guards_json();

// Embeds the tool version, seed and guards.
nlohmann::json report_json(const std::vector<SuiteReport>& reports, const SuiteOptions& opts);

}  // namespace ccl::verify
