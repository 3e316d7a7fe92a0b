// One line per acceptance criterion; exit status 1 if any fails.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "ccl/core/io.hpp"
#include "ccl/measures/measures.hpp"
#include "ccl/randomized/randomized.hpp"
#include "ccl/tarui/tarui.hpp"
#include "ccl/verify/suites.hpp"

using namespace ccl;

namespace {

constexpr std::uint64_t kSeed = 7;
const std::string data = CCL_TEST_DATA;

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      note = why;
    }
  }
};

std::map<std::string, std::string> first_dumps;
int failures = 0;

void criterion(int number, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && s > limit_s) {
    o.ok = false;
    o.note = "over the time limit";
  }
  if (!o.ok) ++failures;
  std::printf("[%s] %2d %-22s %8.2f s (limit %4.0f s)  %s\n", o.ok ? "PASS" : "FAIL", number, name.c_str(), s, limit_s,
              o.note.c_str());
  std::fflush(stdout);
}

// Runs a suite, remembers its report for the reproducibility check, and
// requires every case to pass.
verify::SuiteReport suite(const std::string& name, Outcome& o) {
  verify::SuiteOptions opts{kSeed};
  auto reports = verify::run_suite(name, opts);
  first_dumps[name] = verify::report_json(reports, opts).dump();
  const auto& r = reports.front();
  for (const auto& c : r.cases) o.require(c.passed, c.id + ": " + c.invariant + ": " + c.witness);
  return r;
}

std::size_t count_prefix(const verify::SuiteReport& r, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& c : r.cases) n += c.id.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

}  // namespace

int main() {
  criterion(1, "gap algebra", 10, [] {
    Outcome o;
    auto r = suite("gap-algebra", o);
    o.require(r.cases.size() == 1000, "expected 1000 pairs");
    o.note = o.ok ? std::to_string(r.cases.size()) + " pairs, identities exact" : o.note;
    return o;
  });

  criterion(2, "lemma 1 compiler", 60, [] {
    Outcome o;
    auto r = suite("lemma1", o);
    o.require(r.cases.size() == 200, "expected 200 instances");
    for (const auto& c : r.cases) {
      const auto& d = c.detail;
      o.require(d["k"].get<int>() <= 3 && d["d"].get<int>() <= 3, c.id + ": k or d out of range");
      o.require(Int(d["M"].get<std::string>()) <= 5 && Int(d["l"].get<std::string>()) <= 4,
                c.id + ": M or l out of range");
    }
    if (o.ok) o.note = "200 instances, gaps exact, guess and cost bounds hold";
    return o;
  });

  criterion(3, "coefficient bounds", 120, [] {
    Outcome o;
    auto r = suite("degm", o);
    o.require(r.cases.size() == 16, "expected (k, m) in [1,4]^2");
    for (const auto& c : r.cases) {
      int k = c.detail["k"], m = c.detail["m"];
      if (k <= 3 && m <= 3) o.require(!c.detail["grid_sampled"].get<bool>(), c.id + ": T sign grid was sampled");
    }
    if (o.ok) o.note = "k, m <= 4, zero violations";
    return o;
  });

  criterion(4, "majority, amplification", 120, [] {
    Outcome o;
    auto r = suite("majority", o);
    o.require(count_prefix(r, "k3-") == 50 && count_prefix(r, "k5-") == 50, "expected 50 member sets per k");
    o.require(count_prefix(r, "amplify-t3-") > 0 && count_prefix(r, "amplify-t5-") > 0, "missing amplify cases");
    for (const auto& c : r.cases) {
      if (c.id.rfind("amplify-t", 0) != 0) continue;
      int t = c.id[9] - '0';
      Rational e = parse_rational(c.detail["error"].get<std::string>());
      o.require(e.get_d() <= 1.0 - chernoff_bound(Rational(1, 6), t), c.id + ": error above 1 - chernoff_bound");
      if (t == 3) o.require(e <= Rational(4190, 10000), c.id + ": t = 3 error above 0.4190");
    }
    if (o.ok) o.note = "pointwise majority exact; t=3 error 7/27 <= 0.4190";
    return o;
  });

  criterion(5, "pp equivalence", 10, [] {
    Outcome o;
    auto r = suite("equivalence", o);
    o.require(r.cases.size() == 500, "expected 500 instances");
    if (o.ok) o.note = "500 round trips";
    return o;
  });

  criterion(6, "measures", 300, [] {
    Outcome o;
    auto r = suite("measures", o);
    o.require(count_prefix(r, "sandwich-") == 100, "expected 100 sandwich matrices");
    o.require(count_prefix(r, "disc-checker") == 1 && count_prefix(r, "mc-hadamard") == 1, "missing examples");
    // Klauck's bound for every member the pipeline constructs as well.
    for (const auto& name : {"or2_4x4", "and_4x4", "boundary_4x4"}) {
      auto rphi = tarui::parse_randomized_polynomial(io::read_file(data + "/" + name + ".json"));
      auto L = io::parse_boolean_matrix(io::read_file(data + "/" + name + ".bool"));
      for (const auto& m : tarui::pipeline(rphi, L).members) o.require(m.klauck.holds, std::string(name) + ": Klauck");
    }
    if (o.ok) o.note = "disc = 1/4, mc(H2) within 5% of sqrt 2, 100 sandwiches, Klauck";
    return o;
  });

  criterion(7, "bp operator", 300, [] {
    Outcome o;
    auto r = suite("bp", o);
    o.require(count_prefix(r, "entry-2x2-") == 16 && count_prefix(r, "entry-3x3-") == 512, "missing matrices");
    o.require(count_prefix(r, "identity-quarter") == 1, "missing worked example");
    if (o.ok) o.note = "all 2x2 and 3x3; grid sandwich at step 0.01; identity -> 2";
    return o;
  });

  criterion(8, "yao minimax", 60, [] {
    Outcome o;
    auto r = suite("yao", o);
    o.require(r.cases.size() == 50, "expected 50 instances");
    if (o.ok) o.note = "50 instances, values agree within 1e-9";
    return o;
  });

  criterion(9, "tarui pipeline", 30, [] {
    Outcome o;
    {
      auto rphi = tarui::parse_randomized_polynomial(io::read_file(data + "/or2_4x4.json"));
      auto L = io::parse_boolean_matrix(io::read_file(data + "/or2_4x4.bool"));
      auto r = tarui::pipeline(rphi, L);
      o.require(r.max_error == 0, "or2: error " + to_string(r.max_error));
      BooleanMatrix acc = pp_eval_grid(r.protocol.support().front().protocol);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) o.require(acc(x, y) == L(x, y), "or2: disagrees with L");
      o.require(r.passed(), "or2: member checks");
    }
    {
      auto rphi = tarui::parse_randomized_polynomial(io::read_file(data + "/boundary_4x4.json"));
      auto L = io::parse_boolean_matrix(io::read_file(data + "/boundary_4x4.bool"));
      auto r = tarui::pipeline(rphi, L);
      o.require(r.max_error == Rational(1, 3), "boundary: error " + to_string(r.max_error));
      o.require(r.passed(), "boundary: assertion failed");
      for (const auto& m : r.members) o.require(m.klauck.holds, "boundary: Klauck");
    }
    Outcome s;
    suite("tarui", s);
    o.require(s.ok, s.note);
    if (o.ok) o.note = "OR exact at 16 inputs; boundary error exactly 1/3";
    return o;
  });

  criterion(10, "reproducibility", 600, [] {
    Outcome o;
    // Rerun with a different thread count; reports must not change.
    int threads = omp_get_max_threads();
    omp_set_num_threads(threads == 1 ? 3 : 1);
    verify::SuiteOptions opts{kSeed};
    for (const auto& name : verify::suite_names()) {
      std::string again = verify::report_json(verify::run_suite(name, opts), opts).dump();
      auto it = first_dumps.find(name);
      o.require(it != first_dumps.end(), name + ": no first run");
      if (it != first_dumps.end()) o.require(it->second == again, name + ": report changed");
    }
    omp_set_num_threads(threads);
    if (o.ok) o.note = std::to_string(first_dumps.size()) + " suites byte-identical across thread counts";
    return o;
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
