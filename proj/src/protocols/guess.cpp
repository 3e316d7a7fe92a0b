#include "ccl/protocols/guess.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "ccl/core/error.hpp"
#include "ccl/kernels/gap_kernels.hpp"

namespace ccl {
namespace detail {

enum class GuessKind { Explicit, Complement, Sum, Product, Replicate };

struct GuessNode {
  GuessKind kind = GuessKind::Explicit;
  Domain domain;
  Int count;
  int cost = 0;
  std::vector<DeterministicProtocol> members;               // Explicit
  std::vector<std::shared_ptr<const GuessNode>> children;   // Complement/Sum/Product/Replicate
  std::vector<Int> offsets;                                 // Sum: start index of each child
  Int copies;                                               // Replicate
};

}  // namespace detail

namespace {

using detail::GuessKind;
using detail::GuessNode;
using NodeRef = std::shared_ptr<const GuessNode>;

NodeRef make_node(GuessNode n) { return std::make_shared<const GuessNode>(std::move(n)); }

void require_same_domain(const GuessProtocol& a, const GuessProtocol& b) {
  if (!(a.domain() == b.domain())) throw DomainError("guess protocols on different domains");
}

ProtocolPair pair_at(const GuessNode& n, const Int& index) {
  switch (n.kind) {
    case GuessKind::Explicit:
      return ProtocolPair::of(n.members[index.get_ui()]);
    case GuessKind::Complement:
      return pair_at(*n.children[0], index).swapped();
    case GuessKind::Sum: {
      auto it = std::upper_bound(n.offsets.begin(), n.offsets.end(), index);
      std::size_t k = static_cast<std::size_t>(it - n.offsets.begin()) - 1;
      return pair_at(*n.children[k], index - n.offsets[k]);
    }
    case GuessKind::Product: {
      const Int& nb = n.children[1]->count;
      Int q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), index.get_mpz_t(), nb.get_mpz_t());
      return product(pair_at(*n.children[0], q), pair_at(*n.children[1], r));
    }
    case GuessKind::Replicate: {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), index.get_mpz_t(), n.copies.get_mpz_t());
      return pair_at(*n.children[0], q);
    }
  }
  throw Error("unreachable guess node kind");
}

using GridMemo = std::unordered_map<const GuessNode*, std::vector<Int>>;

const std::vector<Int>& accept_grid_of(const GuessNode& n, GridMemo& memo) {
  if (auto it = memo.find(&n); it != memo.end()) return it->second;
  const int x_size = n.domain.x_size, y_size = n.domain.y_size;
  std::vector<Int> grid(static_cast<std::size_t>(x_size) * y_size, Int(0));
  switch (n.kind) {
    case GuessKind::Explicit:
      for (const auto& p : n.members)
        for (int x = 0; x < x_size; ++x)
          for (int y = 0; y < y_size; ++y)
            if (p.eval(x, y)) grid[static_cast<std::size_t>(x) * y_size + y] += 1;
      break;
    case GuessKind::Complement: {
      const auto& c = accept_grid_of(*n.children[0], memo);
      for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = n.count - c[k];
      break;
    }
    case GuessKind::Sum:
      for (const auto& child : n.children) {
        const auto& c = accept_grid_of(*child, memo);
        for (std::size_t k = 0; k < grid.size(); ++k) grid[k] += c[k];
      }
      break;
    case GuessKind::Product: {
      // Pi_i * Pi'_j accepts iff both accept or both reject.
      const auto& a = accept_grid_of(*n.children[0], memo);
      const auto& b = accept_grid_of(*n.children[1], memo);
      const Int& na = n.children[0]->count;
      const Int& nb = n.children[1]->count;
      for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = a[k] * b[k] + (na - a[k]) * (nb - b[k]);
      break;
    }
    case GuessKind::Replicate: {
      const auto& c = accept_grid_of(*n.children[0], memo);
      for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = c[k] * n.copies;
      break;
    }
  }
  return memo.emplace(&n, std::move(grid)).first->second;
}

}  // namespace

GuessProtocol::GuessProtocol(std::vector<DeterministicProtocol> guesses) {
  if (guesses.empty()) throw DomainError("a guess protocol needs at least one guess");
  GuessNode n;
  n.kind = GuessKind::Explicit;
  n.domain = guesses.front().domain();
  for (const auto& p : guesses) {
    if (!(p.domain() == n.domain)) throw DomainError("guesses on different domains");
    n.cost = std::max(n.cost, p.cost());
  }
  n.count = static_cast<unsigned long>(guesses.size());
  n.members = std::move(guesses);
  node_ = make_node(std::move(n));
}

GuessProtocol::GuessProtocol(std::shared_ptr<const detail::GuessNode> node) : node_(std::move(node)) {}

GuessProtocol GuessProtocol::constant(Domain d, bool accept) {
  return GuessProtocol({DeterministicProtocol::leaf(d, accept)});
}

Domain GuessProtocol::domain() const { return node_->domain; }
const Int& GuessProtocol::guess_count() const { return node_->count; }
int GuessProtocol::member_cost() const { return node_->cost; }
bool GuessProtocol::is_explicit() const { return node_->kind == GuessKind::Explicit; }

DeterministicProtocol GuessProtocol::member(const Int& index) const { return member_pair(index).pos; }

ProtocolPair GuessProtocol::member_pair(const Int& index) const {
  if (sgn(index) < 0 || index >= node_->count)
    throw DomainError("guess index " + index.get_str() + " out of range");
  return pair_at(*node_, index);
}

std::vector<DeterministicProtocol> GuessProtocol::members(const Int& limit) const {
  if (node_->count > limit)
    throw GuardError("guess protocol has " + node_->count.get_str() + " members, above the materialization limit " +
                     limit.get_str());
  if (node_->kind == GuessKind::Explicit) return node_->members;
  std::vector<DeterministicProtocol> out;
  unsigned long n = node_->count.get_ui();
  out.reserve(n);
  for (unsigned long i = 0; i < n; ++i) out.push_back(member(Int(i)));
  return out;
}

std::vector<Int> GuessProtocol::accept_grid() const {
  GridMemo memo;
  return accept_grid_of(*node_, memo);
}

Int GuessProtocol::accept_count(int x, int y) const {
  Domain d = domain();
  if (x < 0 || x >= d.x_size || y < 0 || y >= d.y_size) throw DomainError("input outside the domain");
  return accept_grid()[static_cast<std::size_t>(x) * d.y_size + y];
}

std::size_t GuessProtocol::expression_size() const {
  std::unordered_set<const GuessNode*> seen;
  std::vector<const GuessNode*> stack{node_.get()};
  while (!stack.empty()) {
    const GuessNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->children) stack.push_back(c.get());
  }
  return seen.size();
}

namespace {
GapProfile profile_from_acc(Domain d, const Int& l, std::vector<Int> acc) {
  GapProfile p{d, l, std::move(acc), {}, {}};
  p.rej.reserve(p.acc.size());
  p.gap.reserve(p.acc.size());
  for (const auto& a : p.acc) {
    p.rej.push_back(l - a);
    p.gap.push_back(a - (l - a));
  }
  return p;
}
}  // namespace

GapProfile gap_profile(const GuessProtocol& g) {
  return profile_from_acc(g.domain(), g.guess_count(), g.accept_grid());
}

GapProfile gap_profile_enumerated(const GuessProtocol& g, const Int& limit) {
  auto members = g.members(limit);
  return profile_from_acc(g.domain(), g.guess_count(), kernels::enumerated_accept_grid(members, g.domain()));
}

bool pp_eval(const GuessProtocol& g, int x, int y) {
  Int acc = g.accept_count(x, y);
  return acc > g.guess_count() - acc;
}

BooleanMatrix pp_eval_grid(const GuessProtocol& g) {
  Domain d = g.domain();
  auto acc = g.accept_grid();
  BooleanMatrix out(d.x_size, d.y_size);
  for (int x = 0; x < d.x_size; ++x)
    for (int y = 0; y < d.y_size; ++y) {
      const Int& a = acc[static_cast<std::size_t>(x) * d.y_size + y];
      out.set(x, y, a > g.guess_count() - a);
    }
  return out;
}

int pp_cost(const GuessProtocol& g) { return ceil_log2(g.guess_count()) + g.member_cost(); }

GuessProtocol complement(const GuessProtocol& g) {
  const auto& src = *g.node();
  GuessNode n;
  n.domain = src.domain;
  n.count = src.count;
  n.cost = src.cost;
  if (src.kind == GuessKind::Explicit) {
    n.kind = GuessKind::Explicit;
    for (const auto& p : src.members) n.members.push_back(p.complement());
  } else {
    n.kind = GuessKind::Complement;
    n.children.push_back(g.node());
  }
  return GuessProtocol(make_node(std::move(n)));
}

GuessProtocol sum(const std::vector<GuessProtocol>& parts) {
  if (parts.empty()) throw DomainError("sum of no guess protocols");
  if (parts.size() == 1) return parts.front();
  GuessNode n;
  n.kind = GuessKind::Sum;
  n.domain = parts.front().domain();
  n.count = 0;
  for (const auto& p : parts) {
    require_same_domain(parts.front(), p);
    n.offsets.push_back(n.count);
    n.count += p.guess_count();
    n.cost = std::max(n.cost, p.member_cost());
    n.children.push_back(p.node());
  }
  return GuessProtocol(make_node(std::move(n)));
}

GuessProtocol sum(const GuessProtocol& a, const GuessProtocol& b) {
  if (a.is_explicit() && b.is_explicit()) {
    require_same_domain(a, b);
    auto m = a.node()->members;
    m.insert(m.end(), b.node()->members.begin(), b.node()->members.end());
    return GuessProtocol(std::move(m));
  }
  return sum(std::vector<GuessProtocol>{a, b});
}

GuessProtocol product(const GuessProtocol& a, const GuessProtocol& b) {
  require_same_domain(a, b);
  GuessNode n;
  n.kind = GuessKind::Product;
  n.domain = a.domain();
  n.count = a.guess_count() * b.guess_count();
  n.cost = a.member_cost() + b.member_cost();
  n.children = {a.node(), b.node()};
  return GuessProtocol(make_node(std::move(n)));
}

GuessProtocol replicate(const GuessProtocol& g, const Int& copies) {
  if (sgn(copies) <= 0) throw DomainError("replicate needs a positive copy count");
  if (copies == 1) return g;
  GuessNode n;
  n.kind = GuessKind::Replicate;
  n.domain = g.domain();
  n.count = g.guess_count() * copies;
  n.cost = g.member_cost();
  n.copies = copies;
  n.children.push_back(g.node());
  return GuessProtocol(make_node(std::move(n)));
}

GuessProtocol normalize_nonzero(const GuessProtocol& g) {
  return sum(replicate(g, 2), GuessProtocol::constant(g.domain(), false));
}

ThresholdForm pp_to_threshold(const GuessProtocol& g) {
  Int half;
  mpz_fdiv_q_2exp(half.get_mpz_t(), g.guess_count().get_mpz_t(), 1);
  return {g.domain(), g.accept_grid(), half};
}

GuessProtocol threshold_to_pp(const GuessProtocol& g, const Int& threshold) {
  if (sgn(threshold) < 0) throw DomainError("threshold must be non-negative");
  Domain d = g.domain();
  GuessProtocol out = g;
  Int l = g.guess_count();
  Int twice = 2 * threshold;
  if (l < twice) {
    out = sum(out, replicate(GuessProtocol::constant(d, false), twice - l));
    l = twice;
  }
  if (l > twice) out = sum(out, replicate(GuessProtocol::constant(d, true), l - twice));
  return out;
}

Int count_protocols(Domain d, int max_depth) {
  Int n = 2;
  Int tables = (Int(1) << d.x_size) + (Int(1) << d.y_size);
  for (int depth = 1; depth <= max_depth; ++depth) n = 2 + tables * n * n;
  return n;
}

std::vector<DeterministicProtocol> enumerate_protocols(Domain d, int max_depth, std::size_t max_count) {
  check_domain(d);
  if (d.x_size > 4 || d.y_size > 4 || max_depth < 0 || max_depth > 3)
    throw GuardError("protocol enumeration limited to sides <= 4 and depth <= 3");
  Int total = count_protocols(d, max_depth);
  if (total > Int(static_cast<unsigned long>(max_count)))
    throw GuardError("enumeration would yield " + total.get_str() + " protocols (limit " +
                     std::to_string(max_count) + ")");
  std::vector<DeterministicProtocol> level{DeterministicProtocol::leaf(d, false),
                                           DeterministicProtocol::leaf(d, true)};
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<DeterministicProtocol> next{level[0], level[1]};
    for (Speaker who : {Speaker::Alice, Speaker::Bob}) {
      int side = who == Speaker::Alice ? d.x_size : d.y_size;
      for (unsigned mask = 0; mask < (1U << side); ++mask) {
        std::vector<std::uint8_t> table(side);
        for (int i = 0; i < side; ++i) table[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
        for (const auto& c0 : level)
          for (const auto& c1 : level) next.push_back(DeterministicProtocol::speak(d, who, table, c0, c1));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace ccl
