#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccl/core/error.hpp"
#include "ccl/core/io.hpp"
#include "ccl/measures/measures.hpp"
#include "ccl/poly/compile.hpp"
#include "ccl/protocols/serialize.hpp"
#include "ccl/randomized/randomized.hpp"
#include "ccl/randomized/serialize.hpp"
#include "ccl/tarui/tarui.hpp"
#include "ccl/verify/suites.hpp"

using nlohmann::json;
using namespace ccl;

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

// Raised when a checked property fails; carries the report written so far.
struct ReportedFailure {
  std::string invariant;
  std::string witness;
};

json header(const std::string& command, std::uint64_t seed) {
  return {{"tool", "ccl"}, {"version", CCL_VERSION}, {"command", command}, {"seed", seed}, {"guards", verify::guards_json()}};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_file(path, text);
}

void emit(const json& j, const std::string& path) { emit(j.dump(1) + "\n", path); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json integers(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json bounds_json(const LemmaBounds& b) {
  return {{"applicable", b.applicable}, {"M", to_string(b.M)}, {"l", to_string(b.l)}, {"d", b.d},
          {"k", b.k},                   {"c", b.c},            {"guesses", to_string(b.guesses)}, {"cost", b.cost}};
}

BooleanMatrix read_boolean(const std::string& path) {
  auto m = io::parse_matrix(io::read_file(path));
  if (auto* b = std::get_if<BooleanMatrix>(&m)) return *b;
  throw DomainError(path + " holds a sign matrix; this command needs a 0/1 matrix");
}

// --- measure -------------------------------------------------------------

struct MeasureArgs {
  std::string matrix;
  std::string which = "disc";
  std::vector<std::string> eps;
  std::string lambda = "entry-count";
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 1;
};

measures::MeasureFn lambda_named(const std::string& name, std::uint64_t seed) {
  if (name == "entry-count") return measures::entry_count();
  if (name == "log-disc-prime") return measures::log_inv_disc_prime();
  measures::McOptions opts;
  opts.seed = seed;
  if (name == "mc-prime") return measures::mc_prime_measure(opts);
  throw DomainError("unknown lambda '" + name + "' (known: entry-count, log-disc-prime, mc-prime)");
}

int run_measure(const MeasureArgs& a) {
  io::AnyMatrix any = io::parse_matrix(io::read_file(a.matrix));
  const SignMatrix* sign = std::get_if<SignMatrix>(&any);
  const BooleanMatrix* boolean = std::get_if<BooleanMatrix>(&any);
  auto need_sign = [&]() -> const SignMatrix& {
    if (!sign) throw DomainError("--which " + a.which + " needs a sign matrix; use " + a.which + "-prime for 0/1 matrices");
    return *sign;
  };
  auto need_bool = [&]() -> const BooleanMatrix& {
    if (!boolean) throw DomainError("--which " + a.which + " needs a 0/1 matrix");
    return *boolean;
  };
  measures::McOptions mopts;
  mopts.seed = a.seed;

  json rep = header("measure", a.seed);
  rep["matrix"] = a.matrix;
  rep["which"] = a.which;
  std::vector<std::vector<std::string>> rows;  // csv
  std::vector<std::string> columns;

  if (a.which == "disc" || a.which == "disc-prime") {
    measures::DiscResult r = a.which == "disc" ? measures::disc(need_sign()) : measures::disc_prime(need_bool());
    rep["value"] = to_string(r.value);
    rep["value_decimal"] = r.value.get_d();
    rep["mu"] = rationals(r.mu.weights());
    rep["rounds"] = r.rounds;
    columns = {"which", "value", "value_decimal"};
    rows.push_back({a.which, to_string(r.value), json(r.value.get_d()).dump()});
  } else if (a.which == "mc" || a.which == "mc-prime") {
    measures::McResult r = a.which == "mc" ? measures::mc(need_sign(), mopts) : measures::mc_prime(need_bool(), mopts);
    rep["value"] = r.value;
    rep["min_margin"] = r.min_margin;
    rep["optimizer_feasible"] = r.optimizer_feasible;
    rep["realization"] = {{"x", r.realization.x}, {"y", r.realization.y}};
    columns = {"which", "value", "min_margin"};
    rows.push_back({a.which, json(r.value).dump(), json(r.min_margin).dump()});
  } else if (a.which == "bp") {
    if (a.eps.empty()) throw DomainError("--which bp needs at least one --eps");
    measures::MeasureFn lambda = lambda_named(a.lambda, a.seed);
    const BooleanMatrix& f = need_bool();
    rep["lambda"] = a.lambda;
    json sweep = json::array();
    columns = {"which", "lambda", "eps", "value"};
    for (const auto& text : a.eps) {
      Rational eps = parse_rational(text);
      if (sgn(eps) < 0 || eps > 1) throw DomainError("--eps must lie in [0, 1], got " + text);
      measures::BpResult r = measures::bp_measure(lambda, f, eps);
      json v = std::isinf(r.value) ? json("inf") : json(r.value);
      sweep.push_back({{"eps", to_string(eps)},
                       {"value", v},
                       {"mu", rationals(r.mu.weights())},
                       {"f_tilde", io::serialize(r.f_tilde)},
                       {"mu_distance", to_string(r.mu_distance)},
                       {"lp_solves", r.lp_solves}});
      rows.push_back({"bp", a.lambda, to_string(eps), v.is_string() ? "inf" : v.dump()});
    }
    rep["results"] = sweep;
  } else {
    throw DomainError("unknown --which '" + a.which + "' (known: disc, disc-prime, mc, mc-prime, bp)");
  }

  if (a.format == "csv") {
    std::string text;
    for (std::size_t i = 0; i < columns.size(); ++i) text += (i ? "," : "") + columns[i];
    text += "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) text += (i ? "," : "") + csv_field(r[i]);
      text += "\n";
    }
    emit(text, a.output);
  } else {
    emit(rep, a.output);
  }
  return 0;
}

// --- compile -------------------------------------------------------------

struct CompileArgs {
  std::vector<std::string> protocols;
  std::string polynomial;
  std::string rational;
  bool majority = false;
  std::string emit_path;
  std::string output;
};

int run_compile(const CompileArgs& a) {
  int modes = (!a.polynomial.empty()) + (!a.rational.empty()) + (a.majority ? 1 : 0);
  if (modes != 1) throw DomainError("give exactly one of --poly, --rational, --majority");
  if (a.protocols.empty()) throw DomainError("at least one --protocol file is needed");
  std::vector<GuessProtocol> ps;
  for (const auto& path : a.protocols) ps.push_back(serial::parse_guess(io::read_file(path)));

  json rep = header("compile", 0);
  rep.erase("seed");
  GuessProtocol out = ps.front();
  std::vector<GapProfile> in;
  for (const auto& g : ps) in.push_back(gap_profile(g));
  std::optional<ReportedFailure> failure;
  const Domain d = ps.front().domain();
  auto each_input = [&](auto&& fn) {
    for (int x = 0; x < d.x_size; ++x)
      for (int y = 0; y < d.y_size; ++y) {
        std::vector<Int> z;
        for (const auto& p : in) z.push_back(p.gap_at(x, y));
        fn(x, y, z);
      }
  };
  auto where = [](int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; };

  if (!a.polynomial.empty()) {
    IntPolynomial p = parse_polynomial(a.polynomial, static_cast<int>(ps.size()));
    CompileResult r = lemma1_compile(ps, p);
    out = r.protocol;
    GapProfile got = gap_profile(out);
    each_input([&](int x, int y, const std::vector<Int>& z) {
      if (!failure && got.gap_at(x, y) != p.evaluate(z))
        failure = ReportedFailure{"compiled gap = p(gaps)", where(x, y)};
    });
    rep["mode"] = "polynomial";
    rep["input"] = to_string(p);
    rep["bounds"] = bounds_json(r.bounds);
    rep["within_bounds"] = r.guesses_within() && r.cost_within();
    if (!failure && !(r.guesses_within() && r.cost_within()))
      failure = ReportedFailure{"Lemma 1 bounds", "guesses " + to_string(out.guess_count())};
  } else if (!a.rational.empty()) {
    RationalFunction q = parse_rational_function(a.rational, static_cast<int>(ps.size()));
    CompileResult r = lemma2_compile(ps, q);
    out = r.protocol;
    BooleanMatrix acc = pp_eval_grid(out);
    each_input([&](int x, int y, const std::vector<Int>& z) {
      auto v = q.evaluate(z);
      if (!failure && v && acc(x, y) != (sgn(*v) > 0))
        failure = ReportedFailure{"accepts iff r(gaps) > 0", where(x, y)};
    });
    rep["mode"] = "rational";
    rep["input"] = to_string(q);
    rep["bounds"] = bounds_json(r.bounds);
    rep["within_bounds"] = r.guesses_within() && r.cost_within();
  } else {
    MajorityResult r = majority_compile(ps);
    out = r.protocol;
    BooleanMatrix acc = pp_eval_grid(out);
    std::vector<BooleanMatrix> outs;
    for (const auto& g : ps) outs.push_back(pp_eval_grid(g));
    each_input([&](int x, int y, const std::vector<Int>&) {
      int yes = 0;
      for (const auto& o : outs) yes += o(x, y) ? 1 : 0;
      if (!failure && acc(x, y) != (2 * yes > static_cast<int>(outs.size())))
        failure = ReportedFailure{"majority_compile = pointwise majority", where(x, y)};
    });
    rep["mode"] = "majority";
    rep["scale"] = r.scale;
    rep["bounds"] = bounds_json(r.bounds);
    rep["within_bounds"] = r.guesses_within() && r.cost_within();
  }
  GapProfile prof = gap_profile(out);
  rep["guess_count"] = to_string(out.guess_count());
  rep["pp_cost"] = pp_cost(out);
  rep["member_cost"] = out.member_cost();
  rep["gap"] = integers(prof.gap);
  rep["verified"] = !failure;
  if (!a.emit_path.empty()) io::write_file(a.emit_path, serial::dump_guess(out));
  emit(rep, a.output);
  if (failure) throw InvariantError(failure->invariant, failure->witness);
  return 0;
}

// --- amplify -------------------------------------------------------------

struct AmplifyArgs {
  std::string input;
  std::string matrix;
  int t = 3;
  bool sparsify = false;
  std::string delta = "1/12";
  int trials = 64;
  bool yao = false;
  std::string eps = "1/3";
  std::uint64_t seed = 1;
  std::string output;
};

int run_amplify(const AmplifyArgs& a) {
  RandomizedPPProtocol rp = serial::parse_randomized(io::read_file(a.input));
  BooleanMatrix f = read_boolean(a.matrix);
  json rep = header("amplify", a.seed);
  Rational base = error(rp, f);
  rep["base"] = {{"error", to_string(base)}, {"error_grid", rationals(error_grid(rp, f))},
                 {"bppp_cost", bppp_cost(rp)}, {"members", rp.support().size()}};

  std::optional<ReportedFailure> failure;
  AmplifyResult amp = amplify(rp, a.t);
  Rational e = error(amp.protocol, f);
  json out = {{"t", a.t},
              {"tuples", amp.tuples},
              {"error", to_string(e)},
              {"error_grid", rationals(error_grid(amp.protocol, f))},
              {"bppp_cost", bppp_cost(amp.protocol)},
              {"cost_bound", amp.cost_bound},
              {"bounds_hold", amp.bounds_hold}};
  if (base < ratio(1, 2)) {
    Rational eps = ratio(1, 2) - base;
    eps.canonicalize();
    double limit = 1 - chernoff_bound(eps, a.t);
    out["chernoff_limit"] = limit;
    if (e.get_d() > limit) failure = ReportedFailure{"amplified error <= 1 - chernoff_bound", to_string(e)};
  }
  if (!amp.bounds_hold && !failure) failure = ReportedFailure{"amplified cost within Lemma 2 bound", ""};
  rep["amplified"] = out;

  if (a.sparsify) {
    Rational delta = parse_rational(a.delta);
    SparsifyResult s = newman_sparsify(rp, f, delta, a.trials, a.seed);
    rep["sparsified"] = {{"delta", to_string(delta)},   {"trials", a.trials},
                         {"attempts", s.attempts},      {"attempt_errors", rationals(s.attempt_errors)},
                         {"error", to_string(s.error)}, {"limit", to_string(Rational(s.base_error + delta))}};
  }
  if (a.yao) {
    std::vector<GuessProtocol> family;
    for (const auto& en : rp.support()) family.push_back(en.protocol);
    YaoReport y = yao_minimax_check(f, family, parse_rational(a.eps));
    rep["yao"] = {{"eps", a.eps},
                  {"protocol_side", to_string(y.protocol_side)},
                  {"input_side", to_string(y.input_side)},
                  {"family_strategy", rationals(y.family_strategy)},
                  {"input_strategy", rationals(y.input_strategy)},
                  {"agree", y.agree},
                  {"within_eps", y.within_eps}};
    if (!y.agree && !failure) failure = ReportedFailure{"primal and dual game values agree", ""};
  }
  emit(rep, a.output);
  if (failure) throw InvariantError(failure->invariant, failure->witness);
  return 0;
}

// --- pipeline ------------------------------------------------------------

int run_pipeline(const std::string& input, const std::string& matrix, const std::string& output) {
  auto rphi = tarui::parse_randomized_polynomial(io::read_file(input));
  BooleanMatrix L = read_boolean(matrix);
  tarui::PipelineReport r = tarui::pipeline(rphi, L);
  json rep = header("pipeline", 0);
  rep.erase("seed");
  rep["input"] = input;
  rep["matrix"] = matrix;
  rep["report"] = tarui::to_json(r);
  emit(rep, output);
  if (!r.violations.empty()) {
    const auto& v = r.violations.front();
    throw InvariantError("pipeline error <= 1/3", "input (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                                                      ") errs with probability " + to_string(v.probability));
  }
  if (!r.passed()) throw InvariantError("pipeline member checks", "see report");
  return 0;
}

// --- verify --------------------------------------------------------------

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& output) {
  verify::SuiteOptions opts{seed};
  auto reports = verify::run_suite(suite, opts);
  emit(verify::report_json(reports, opts), output);
  int failed = 0;
  for (const auto& r : reports)
    for (const auto& c : r.cases)
      if (!c.passed) {
        if (failed++ < 20) std::cerr << r.suite << "/" << c.id << ": " << c.invariant << ": " << c.witness << "\n";
      }
  if (failed) {
    std::cerr << failed << " case(s) failed\n";
    return kExitInvariant;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural communication complexity laboratory"};
  app.set_version_flag("--version", std::string(CCL_VERSION));
  app.require_subcommand(1);

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "disc, disc', mc, mc' or the BP operator of a matrix");
  measure->add_option("--matrix", ma.matrix, "matrix file")->required();
  measure->add_option("--which", ma.which, "disc | disc-prime | mc | mc-prime | bp")->capture_default_str();
  measure->add_option("--eps", ma.eps, "perturbation bound for bp (repeatable)");
  measure->add_option("--lambda", ma.lambda, "entry-count | log-disc-prime | mc-prime")->capture_default_str();
  measure->add_option("--out", ma.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  measure->add_option("--output", ma.output, "write here instead of stdout");
  measure->add_option("--seed", ma.seed, "optimizer seed")->capture_default_str();

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "compile a polynomial, rational function or majority");
  compile->add_option("--protocol", ca.protocols, "guess protocol JSON, one per variable")->required();
  compile->add_option("--poly", ca.polynomial, "integer polynomial in z1..zk");
  compile->add_option("--rational", ca.rational, "rational function 'p / q'");
  compile->add_flag("--majority", ca.majority, "majority of the given protocols");
  compile->add_option("--emit", ca.emit_path, "write the compiled protocol (when it has at most 2^20 guesses)");
  compile->add_option("--out", ca.output, "report path (default stdout)");

  AmplifyArgs aa;
  auto* amp = app.add_subcommand("amplify", "majority amplification and sparsification of a randomized protocol");
  amp->add_option("--input", aa.input, "randomized protocol JSON")->required();
  amp->add_option("--matrix", aa.matrix, "target 0/1 matrix")->required();
  amp->add_option("--t", aa.t, "odd number of votes")->capture_default_str();
  amp->add_flag("--sparsify", aa.sparsify, "also sample a small uniform support");
  amp->add_option("--delta", aa.delta, "allowed error increase when sparsifying")->capture_default_str();
  amp->add_option("--trials", aa.trials, "sample size when sparsifying")->capture_default_str();
  amp->add_flag("--yao", aa.yao, "solve the error game over the support members");
  amp->add_option("--eps", aa.eps, "error target for --yao")->capture_default_str();
  amp->add_option("--seed", aa.seed, "sampling seed")->capture_default_str();
  amp->add_option("--out", aa.output, "report path (default stdout)");

  std::string pin, pmatrix, pout;
  auto* pipe = app.add_subcommand("pipeline", "rectangle-term polynomials to a randomized PP protocol");
  pipe->add_option("--input", pin, "randomized rectangle polynomial JSON")->required();
  pipe->add_option("--matrix", pmatrix, "target 0/1 matrix")->required();
  pipe->add_option("--out", pout, "report path (default stdout)");

  std::string suite;
  std::uint64_t vseed = 1;
  std::string vout;
  auto* ver = app.add_subcommand("verify", "run a property suite");
  ver->add_option("--suite", suite, "suite name or 'all'")->required();
  ver->add_option("--seed", vseed, "suite seed")->capture_default_str();
  ver->add_option("--out", vout, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*measure) return run_measure(ma);
    if (*compile) return run_compile(ca);
    if (*amp) return run_amplify(aa);
    if (*pipe) return run_pipeline(pin, pmatrix, pout);
    if (*ver) return run_verify(suite, vseed, vout);
  } catch (const InvariantError& e) {
    std::cerr << "invariant failed: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
