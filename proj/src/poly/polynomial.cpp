#include "ccl/poly/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "ccl/core/error.hpp"

namespace ccl {

IntPolynomial::IntPolynomial(int variables) : variables_(variables) {
  if (variables < 1) throw DomainError("a polynomial needs at least one variable");
}

IntPolynomial IntPolynomial::constant(int variables, const Int& c) {
  IntPolynomial p(variables);
  p.add_term(Exponent(variables, 0), c);
  return p;
}

IntPolynomial IntPolynomial::variable(int variables, int index) {
  if (index < 0 || index >= variables) throw DomainError("variable index out of range");
  IntPolynomial p(variables);
  Exponent e(variables, 0);
  e[index] = 1;
  p.add_term(e, Int(1));
  return p;
}

IntPolynomial IntPolynomial::univariate(const std::vector<Int>& coeffs) {
  IntPolynomial p(1);
  for (std::size_t e = 0; e < coeffs.size(); ++e)
    if (sgn(coeffs[e]) != 0) p.terms_.emplace(Exponent{static_cast<std::uint16_t>(e)}, coeffs[e]);
  return p;
}

void IntPolynomial::add_term(const Exponent& e, const Int& c) {
  if (static_cast<int>(e.size()) != variables_) throw DomainError("exponent length does not match variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Int IntPolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

int IntPolynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto a : e) s += a;
    d = std::max(d, s);
  }
  return d;
}

int IntPolynomial::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(var)));
  return d;
}

Int IntPolynomial::lc() const {
  Int m = 0;
  for (const auto& [e, c] : terms_) {
    Int a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

namespace {
template <class T>
T eval_terms(const std::map<Exponent, Int>& terms, std::span<const T> point) {
  // Powers are cached per variable; monomials then cost one product each.
  std::vector<std::vector<T>> powers(point.size());
  for (std::size_t v = 0; v < point.size(); ++v) powers[v].push_back(T(1));
  T total = 0;
  for (const auto& [e, c] : terms) {
    T mono = T(c);
    for (std::size_t v = 0; v < e.size(); ++v) {
      auto& pw = powers[v];
      while (pw.size() <= e[v]) pw.push_back(pw.back() * point[v]);
      if (e[v]) mono *= pw[e[v]];
    }
    total += mono;
  }
  return total;
}
}  // namespace

Int IntPolynomial::evaluate(std::span<const Int> point) const {
  if (static_cast<int>(point.size()) != variables_) throw DomainError("evaluation point has wrong arity");
  return eval_terms<Int>(terms_, point);
}

Rational IntPolynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != variables_) throw DomainError("evaluation point has wrong arity");
  Rational r = eval_terms<Rational>(terms_, point);
  r.canonicalize();
  return r;
}

void IntPolynomial::check_compatible(const IntPolynomial& o) const {
  if (variables_ != o.variables_) throw DomainError("polynomials over different variable counts");
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  check_compatible(o);
  IntPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

IntPolynomial IntPolynomial::scaled(const Int& c) const {
  if (sgn(c) == 0) return IntPolynomial(variables_);
  IntPolynomial r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  check_compatible(o);
  if (variables_ == 1) {
    // Dense convolution for the univariate families.
    auto a = dense(), b = o.dense();
    if (a.empty() || b.empty()) return IntPolynomial(1);
    std::vector<Int> out(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return univariate(out);
  }
  IntPolynomial r(variables_);
  Exponent e(variables_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int v = 0; v < variables_; ++v) e[v] = static_cast<std::uint16_t>(ea[v] + eb[v]);
      r.add_term(e, ca * cb);
    }
  return r;
}

IntPolynomial IntPolynomial::pow(unsigned n) const {
  IntPolynomial result = constant(variables_, Int(1));
  IntPolynomial base = *this;
  while (n) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

IntPolynomial IntPolynomial::reflect() const {
  IntPolynomial r = *this;
  for (auto& [e, c] : r.terms_) {
    int s = 0;
    for (auto a : e) s += a;
    if (s % 2) c = -c;
  }
  return r;
}

IntPolynomial IntPolynomial::embed(int variables, int var) const {
  if (variables_ != 1) throw DomainError("embed expects a univariate polynomial");
  if (var < 0 || var >= variables) throw DomainError("embed target variable out of range");
  IntPolynomial r(variables);
  for (const auto& [e, c] : terms_) {
    Exponent x(variables, 0);
    x[var] = e[0];
    r.terms_.emplace(std::move(x), c);
  }
  return r;
}

std::vector<Int> IntPolynomial::dense() const {
  if (variables_ != 1) throw DomainError("dense() expects a univariate polynomial");
  int d = degree();
  std::vector<Int> out(d < 0 ? 0 : d + 1, Int(0));
  for (const auto& [e, c] : terms_) out[e[0]] = c;
  return out;
}

RationalFunction::RationalFunction(IntPolynomial numerator, IntPolynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.variables() != den_.variables()) throw DomainError("numerator and denominator arity differ");
  if (den_.is_zero()) throw DomainError("denominator is identically zero");
}

int RationalFunction::degree() const { return std::max(num_.degree(), den_.degree()); }

Int RationalFunction::lc() const { return std::max(num_.lc(), den_.lc()); }

std::optional<Rational> RationalFunction::evaluate(std::span<const Int> point) const {
  Int q = den_.evaluate(point);
  if (sgn(q) == 0) return std::nullopt;
  Rational r(num_.evaluate(point), q);
  r.canonicalize();
  return r;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  // Terms as (coefficient, sparse exponent map index -> power).
  struct RawTerm {
    Int coeff;
    std::map<int, int> powers;
  };

  std::vector<RawTerm> parse() {
    if (s_.empty()) throw ParseError(0, "empty polynomial");
    std::vector<RawTerm> out;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      RawTerm t = term();
      if (sign < 0) t.coeff = -t.coeff;
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  RawTerm term() {
    RawTerm t{Int(1), {}};
    for (;;) {
      if (pos_ >= s_.size()) fail("unexpected end of term");
      if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        t.coeff *= Int(digits());
      } else if (s_[pos_] == 'z') {
        ++pos_;
        int idx = 1;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) idx = std::stoi(digits());
        if (idx < 1 || idx > 64) fail("variable index out of range");
        int power = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          power = std::stoi(digits());
          if (power > 60000) fail("exponent too large");
        }
        t.powers[idx - 1] += power;
      } else {
        fail(std::string("unexpected '") + s_[pos_] + "'");
      }
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      return t;
    }
  }

  std::string s_;
  std::size_t pos_ = 0;
};

int max_index(const std::vector<PolyParser::RawTerm>& terms) {
  int k = 1;
  for (const auto& t : terms)
    for (const auto& [v, p] : t.powers) k = std::max(k, v + 1);
  return k;
}

IntPolynomial assemble(const std::vector<PolyParser::RawTerm>& terms, int variables) {
  IntPolynomial p(variables);
  for (const auto& t : terms) {
    Exponent e(variables, 0);
    for (const auto& [v, pw] : t.powers) {
      if (v >= variables) throw ParseError(0, "variable z" + std::to_string(v + 1) + " beyond declared arity");
      e[v] = static_cast<std::uint16_t>(pw);
    }
    p.add_term(e, t.coeff);
  }
  return p;
}

}  // namespace

IntPolynomial parse_polynomial(std::string_view text, int variables) {
  auto terms = PolyParser(text).parse();
  return assemble(terms, variables > 0 ? variables : max_index(terms));
}

RationalFunction parse_rational_function(std::string_view text, int variables) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    IntPolynomial p = parse_polynomial(text, variables);
    return RationalFunction(p, IntPolynomial::constant(p.variables(), Int(1)));
  }
  if (text.find('/', slash + 1) != std::string_view::npos) throw ParseError(0, "more than one '/'");
  auto num = PolyParser(text.substr(0, slash)).parse();
  auto den = PolyParser(text.substr(slash + 1)).parse();
  int k = variables > 0 ? variables : std::max(max_index(num), max_index(den));
  IntPolynomial q = assemble(den, k);
  if (q.is_zero()) throw ParseError(0, "denominator is identically zero");
  return RationalFunction(assemble(num, k), q);
}

std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Int a = abs(c);
    bool has_var = std::any_of(e.begin(), e.end(), [](auto x) { return x != 0; });
    out += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    first = false;
    std::string body;
    if (!has_var || a != 1) body = a.get_str();
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (!e[v]) continue;
      if (!body.empty()) body += "*";
      body += "z" + std::to_string(v + 1);
      if (e[v] > 1) body += "^" + std::to_string(e[v]);
    }
    out += body;
  }
  return out;
}

std::string to_string(const RationalFunction& r) {
  return to_string(r.numerator()) + " / " + to_string(r.denominator());
}

}  // namespace ccl
