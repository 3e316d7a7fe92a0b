#include "ccl/measures/measures.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "ccl/core/error.hpp"
#include "ccl/kernels/rectangle_kernels.hpp"
#include "ccl/kernels/sweep_kernels.hpp"
#include "ccl/numeric/lp.hpp"
#include "ccl/numeric/random.hpp"

namespace ccl::measures {
namespace {

void check_shapes(const SignMatrix& a, const InputDistribution& mu) {
  if (a.rows() != mu.rows() || a.cols() != mu.cols()) throw DomainError("distribution shape does not match the matrix");
  check_side_guard(a.rows(), a.cols());
}

Int common_denominator(const std::vector<Rational>& w) {
  Int l = 1;
  for (const auto& v : w) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

// mu_ij A_ij scaled by the common denominator of mu.
std::vector<Int> scaled_weights(const SignMatrix& a, const InputDistribution& mu, Int& scale) {
  scale = common_denominator(mu.weights());
  std::vector<Int> w(mu.weights().size());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Rational& m = mu(i, j);
      w[i * a.cols() + j] = m.get_num() * (scale / m.get_den()) * a(i, j);
    }
  return w;
}

constexpr std::size_t kCutsPerRound = 6;

struct Cut {
  Rectangle rect;
  int sign;
};

}  // namespace

Rational disc_mu(const SignMatrix& a, const InputDistribution& mu) {
  check_shapes(a, mu);
  Int scale;
  auto w = scaled_weights(a, mu, scale);
  return ratio(kernels::max_abs_rectangle_sum(w, a.rows(), a.cols()).value, scale);
}

Rational disc_mu_enumerated(const SignMatrix& a, const InputDistribution& mu) {
  check_shapes(a, mu);
  Int scale;
  auto w = scaled_weights(a, mu, scale);
  return ratio(kernels::max_abs_rectangle_sum_serial(w, a.rows(), a.cols()).value, scale);
}

DiscResult disc(const SignMatrix& a) {
  const int rows = a.rows(), cols = a.cols(), n = rows * cols;
  check_side_guard(rows, cols);
  std::vector<Cut> cuts;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (int s : {1, -1}) cuts.push_back({{1U << i, 1U << j}, s});
  Rectangle full{(1U << rows) - 1, (1U << cols) - 1};
  for (int s : {1, -1}) cuts.push_back({full, s});

  for (int round = 1;; ++round) {
    // The cut player maximizes s * sum_R mu A; the mu player minimizes.
    lp::RationalMatrix payoff(cuts.size(), std::vector<Rational>(n));
    for (std::size_t c = 0; c < cuts.size(); ++c)
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          if (cuts[c].rect.contains(i, j)) payoff[c][i * cols + j] = cuts[c].sign * a(i, j);
    lp::GameSolution g = lp::solve_game(payoff);
    InputDistribution mu(rows, cols, g.col_strategy);

    Int scale;
    auto w = scaled_weights(a, mu, scale);
    auto per_rows = kernels::best_rectangle_per_row_set(w, rows, cols);
    std::sort(per_rows.begin(), per_rows.end(), [](const auto& x, const auto& y) {
      if (x.value != y.value) return x.value > y.value;
      return x.rect.row_mask < y.rect.row_mask;
    });
    // Optimal once no rectangle beats the restricted value.
    if (ratio(per_rows.front().value, scale) <= g.value) return {g.value, mu, round, cuts.size()};
    const Int bar = g.value.get_num() * (scale / g.value.get_den());
    for (std::size_t k = 0; k < per_rows.size() && k < kCutsPerRound && per_rows[k].value > bar; ++k)
      cuts.push_back({per_rows[k].rect, per_rows[k].sign});
  }
}

DiscResult disc_prime(const BooleanMatrix& b) { return disc(to_sign(b)); }

double min_margin(const SignMatrix& a, const MarginRealization& r) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      double dot = 0;
      for (std::size_t t = 0; t < r.x[i].size(); ++t) dot += r.x[i][t] * r.y[j][t];
      m = std::min(m, a(i, j) * dot);
    }
  return m;
}

namespace {

double max_norm(const std::vector<std::vector<double>>& vs) {
  double best = 0;
  for (const auto& v : vs) {
    double s = 0;
    for (double t : v) s += t * t;
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

// Rows of A against unit vectors (or the transpose): every margin is 1.
MarginRealization trivial_realization(const SignMatrix& a) {
  MarginRealization r;
  const int rows = a.rows(), cols = a.cols();
  if (cols <= rows) {
    r.x.assign(rows, std::vector<double>(cols));
    r.y.assign(cols, std::vector<double>(cols, 0.0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.x[i][j] = a(i, j);
    for (int j = 0; j < cols; ++j) r.y[j][j] = 1;
  } else {
    r.x.assign(rows, std::vector<double>(rows, 0.0));
    r.y.assign(cols, std::vector<double>(rows));
    for (int i = 0; i < rows; ++i) r.x[i][i] = 1;
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) r.y[j][i] = a(i, j);
  }
  r.value = max_norm(r.x) * max_norm(r.y);
  return r;
}

using Mat = Eigen::MatrixXd;

void normalize_rows(Mat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double n = m.row(i).norm();
    if (n > 0) m.row(i) /= n;
  }
}

Mat random_unit_rows(Eigen::Index rows, Eigen::Index dim, Rng& rng) {
  Mat m(rows, dim);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      // Box-Muller
      double u1 = 1.0 - rng.uniform01(), u2 = rng.uniform01();
      m(i, j) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * M_PI * u2);
    }
  normalize_rows(m);
  return m;
}

}  // namespace

McResult mc(const SignMatrix& a, const McOptions& opts) {
  const int rows = a.rows(), cols = a.cols();
  check_side_guard(rows, cols);
  const Eigen::Index dim = rows + cols;
  Mat signs(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) signs(i, j) = a(i, j);

  double best_margin = -1;
  Mat best_u, best_v;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng(opts.seed, static_cast<std::uint64_t>(restart));
    Mat u = random_unit_rows(rows, dim, rng), v = random_unit_rows(cols, dim, rng);
    const double beta0 = 4, beta1 = 400, step0 = 0.2;
    for (int t = 0; t < opts.iterations; ++t) {
      double frac = static_cast<double>(t) / std::max(1, opts.iterations - 1);
      double beta = beta0 * std::pow(beta1 / beta0, frac);
      double step = step0 * (1.0 - 0.9 * frac);
      Mat margins = signs.cwiseProduct(u * v.transpose());
      double low = margins.minCoeff();
      if (low > best_margin) {
        best_margin = low;
        best_u = u;
        best_v = v;
      }
      // Softmin weights concentrate on the smallest margins.
      Mat w = (-beta * (margins.array() - low)).exp().matrix();
      w /= w.sum();
      Mat g = w.cwiseProduct(signs);
      Mat du = g * v, dv = g.transpose() * u;
      u += step * du;
      v += step * dv;
      normalize_rows(u);
      normalize_rows(v);
    }
    Mat margins = signs.cwiseProduct(u * v.transpose());
    if (margins.minCoeff() > best_margin) {
      best_margin = margins.minCoeff();
      best_u = u;
      best_v = v;
    }
  }

  McResult res;
  MarginRealization trivial = trivial_realization(a);
  if (best_margin > 1e-12) {
    double s = 1.0 / std::sqrt(best_margin);
    MarginRealization r;
    r.x.assign(rows, std::vector<double>(dim));
    r.y.assign(cols, std::vector<double>(dim));
    for (int i = 0; i < rows; ++i)
      for (Eigen::Index t = 0; t < dim; ++t) r.x[i][t] = best_u(i, t) * s;
    for (int j = 0; j < cols; ++j)
      for (Eigen::Index t = 0; t < dim; ++t) r.y[j][t] = best_v(j, t) * s;
    r.value = max_norm(r.x) * max_norm(r.y);
    if (min_margin(a, r) >= 1 - 1e-9 && r.value < trivial.value) {
      res.realization = std::move(r);
      res.optimizer_feasible = true;
    }
  }
  if (!res.optimizer_feasible) res.realization = std::move(trivial);
  res.value = res.realization.value;
  res.min_margin = min_margin(a, res.realization);
  return res;
}

McResult mc_prime(const BooleanMatrix& b, const McOptions& opts) { return mc(to_sign(b), opts); }

SandwichReport ls_sandwich_check(const SignMatrix& a, const McOptions& opts) {
  SandwichReport r;
  r.disc = disc(a).value;
  r.mc = mc(a, opts).value;
  double d = r.disc.get_d();
  r.product = r.mc * d;
  r.lower_ok = r.product >= 1.0 / 8;
  r.upper_ok = r.mc <= 8.0 / d + 1e-6;
  return r;
}

KlauckReport klauck_consistency(const BooleanMatrix& f, const GuessProtocol& g) {
  Domain d = g.domain();
  if (d.x_size != f.rows() || d.y_size != f.cols()) throw DomainError("protocol domain does not match the matrix");
  BooleanMatrix computed = pp_eval_grid(g);
  for (int x = 0; x < f.rows(); ++x)
    for (int y = 0; y < f.cols(); ++y)
      if (computed(x, y) != f(x, y))
        throw DomainError("protocol does not compute the matrix at (" + std::to_string(x) + "," + std::to_string(y) +
                          ")");
  KlauckReport r;
  r.disc_prime = disc_prime(f).value;
  r.log_inv_disc = -log2_of(r.disc_prime);
  r.pp_cost = pp_cost(g);
  r.holds = r.disc_prime * Rational(Int(1) << r.pp_cost) >= 1;
  return r;
}

MeasureFn entry_count() {
  return {"entry-count", [](const BooleanMatrix& b) { return static_cast<double>(b.count_ones()); }};
}

MeasureFn log_inv_disc_prime() {
  return {"log-inv-disc-prime", [](const BooleanMatrix& b) { return -log2_of(disc_prime(b).value); }};
}

MeasureFn mc_prime_measure(const McOptions& opts) {
  return {"mc-prime", [opts](const BooleanMatrix& b) { return mc_prime(b, opts).value; }};
}

MeasureFn best_pp_cost(std::vector<GuessProtocol> family) {
  if (family.empty()) throw DomainError("empty protocol family");
  auto table = std::make_shared<std::map<std::vector<std::uint8_t>, int>>();
  Domain d = family.front().domain();
  for (const auto& g : family) {
    if (!(g.domain() == d)) throw DomainError("protocol family on different domains");
    auto bits = pp_eval_grid(g).bits();
    int c = pp_cost(g);
    auto [it, fresh] = table->emplace(bits, c);
    if (!fresh) it->second = std::min(it->second, c);
  }
  return {"best-pp-cost", [table, d](const BooleanMatrix& b) {
            if (b.rows() != d.x_size || b.cols() != d.y_size) throw DomainError("matrix shape differs from family domain");
            auto it = table->find(b.bits());
            return it == table->end() ? std::numeric_limits<double>::infinity() : static_cast<double>(it->second);
          }};
}

DistanceGame distance_game(const BooleanMatrix& f, const std::vector<std::uint64_t>& codes) {
  if (codes.empty()) throw DomainError("empty candidate family");
  const int n = f.cells();
  const std::uint64_t base = f.code();
  auto diff = [&](std::uint64_t c) { return c ^ base; };

  // Start from the candidate closest to f under the uniform distribution.
  std::size_t first = 0;
  for (std::size_t i = 1; i < codes.size(); ++i)
    if (__builtin_popcountll(diff(codes[i])) < __builtin_popcountll(diff(codes[first]))) first = i;
  std::vector<std::uint64_t> columns{diff(codes[first])};

  for (int round = 1;; ++round) {
    lp::RationalMatrix payoff(n, std::vector<Rational>(columns.size()));
    for (int cell = 0; cell < n; ++cell)
      for (std::size_t c = 0; c < columns.size(); ++c) payoff[cell][c] = (columns[c] >> cell) & 1U;
    lp::GameSolution g = lp::solve_game(payoff);

    // Best reply of the candidate player to mu, in integer-scaled weights.
    Int scale = common_denominator(g.row_strategy);
    std::vector<Int> w(n);
    for (int cell = 0; cell < n; ++cell) {
      const Rational& m = g.row_strategy[cell];
      w[cell] = m.get_num() * (scale / m.get_den());
    }
    Int best_mass;
    std::uint64_t best_diff = 0;
    bool have = false;
    Int mass;
    for (std::uint64_t c : codes) {
      std::uint64_t dbits = diff(c);
      mass = 0;
      for (int cell = 0; cell < n; ++cell)
        if ((dbits >> cell) & 1U) mass += w[cell];
      if (!have || mass < best_mass) {
        best_mass = mass;
        best_diff = dbits;
        have = true;
      }
    }
    if (ratio(best_mass, scale) >= g.value) return {g.value, g.row_strategy, round};
    columns.push_back(best_diff);
  }
}

BpResult bp_measure(const MeasureFn& lambda, const BooleanMatrix& f, const Rational& eps) {
  const int rows = f.rows(), cols = f.cols(), n = f.cells();
  if (n > kMaxBpCells) throw GuardError("bp_measure enumerates 2^(rows*cols) matrices; limit is 16 cells");
  if (eps < 0) throw DomainError("eps must be non-negative");
  auto scores = kernels::score_all_matrices(rows, cols, lambda.apply);

  std::vector<double> values;
  for (double s : scores)
    if (std::isfinite(s)) values.push_back(s);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  BpResult res{std::numeric_limits<double>::infinity(), InputDistribution::uniform(rows, cols), f, Rational(0), 0, 0};
  for (double s : scores) res.candidates += std::isfinite(s) ? 1 : 0;
  if (values.empty()) return res;

  std::map<std::size_t, DistanceGame> games;
  auto game_at = [&](std::size_t idx) -> const DistanceGame& {
    auto it = games.find(idx);
    if (it != games.end()) return it->second;
    std::vector<std::uint64_t> codes;
    for (std::size_t c = 0; c < scores.size(); ++c)
      if (std::isfinite(scores[c]) && scores[c] <= values[idx]) codes.push_back(c);
    ++res.lp_solves;
    return games.emplace(idx, distance_game(f, codes)).first->second;
  };

  // Game values fall as the prefix grows; find the first one <= eps.
  std::size_t lo = 0, hi = values.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (game_at(mid).value <= eps)
      hi = mid;
    else
      lo = mid + 1;
  }
  if (lo == values.size()) return res;  // even f itself is too far (Lambda(f) infinite)

  const DistanceGame& witness = lo > 0 ? game_at(lo - 1) : game_at(lo);
  res.value = values[lo];
  res.mu = InputDistribution(rows, cols, witness.mu);

  // Lexicographically least (row-major) candidate at the critical value
  // within eps of f under the witness distribution.
  auto lex_key = [n](std::uint64_t code) {
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i) k |= ((code >> i) & 1U) << (n - 1 - i);
    return k;
  };
  bool found = false;
  std::uint64_t best = 0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (scores[c] != res.value) continue;
    Rational dist = 0;
    std::uint64_t dbits = c ^ f.code();
    for (int cell = 0; cell < n; ++cell)
      if ((dbits >> cell) & 1U) dist += witness.mu[cell];
    if (dist > eps) continue;
    if (!found || lex_key(c) < lex_key(best)) {
      best = c;
      res.mu_distance = dist;
      found = true;
    }
  }
  if (!found) throw InvariantError("bp witness", "no candidate at the critical value is eps-close under mu");
  res.f_tilde = BooleanMatrix::from_code(rows, cols, best);
  return res;
}

}  // namespace ccl::measures
