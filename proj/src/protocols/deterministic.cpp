#include "ccl/protocols/deterministic.hpp"

#include <string>
#include <unordered_map>

#include "ccl/core/error.hpp"
#include "ccl/core/matrix.hpp"

namespace ccl {

void check_domain(Domain d) {
  if (d.x_size < 1 || d.y_size < 1) throw DomainError("protocol domain sides must be positive");
  if (d.x_size > kDefaultMaxSide || d.y_size > kDefaultMaxSide)
    throw GuardError("protocol domain exceeds side guard " + std::to_string(kDefaultMaxSide));
}

namespace {

using Node = DeterministicProtocol::Node;
using NodePtr = DeterministicProtocol::NodePtr;

NodePtr make_leaf(bool output) {
  auto n = std::make_shared<Node>();
  n->is_leaf = true;
  n->output = output;
  return n;
}

NodePtr make_internal(Speaker who, std::vector<std::uint8_t> table, NodePtr on_zero, NodePtr on_one) {
  auto n = std::make_shared<Node>();
  n->is_leaf = false;
  n->speaker = who;
  n->table = std::move(table);
  n->depth = 1 + std::max(on_zero->depth, on_one->depth);
  n->on_zero = std::move(on_zero);
  n->on_one = std::move(on_one);
  return n;
}

NodePtr complement_node(const NodePtr& n, std::unordered_map<const Node*, NodePtr>& memo) {
  if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
  NodePtr out = n->is_leaf ? make_leaf(!n->output)
                           : make_internal(n->speaker, n->table, complement_node(n->on_zero, memo),
                                           complement_node(n->on_one, memo));
  memo.emplace(n.get(), out);
  return out;
}

// Copy of `a` whose accepting leaves become `accept` and rejecting leaves `reject`.
NodePtr graft(const NodePtr& a, const NodePtr& accept, const NodePtr& reject,
              std::unordered_map<const Node*, NodePtr>& memo) {
  if (a->is_leaf) return a->output ? accept : reject;
  if (auto it = memo.find(a.get()); it != memo.end()) return it->second;
  NodePtr out = make_internal(a->speaker, a->table, graft(a->on_zero, accept, reject, memo),
                              graft(a->on_one, accept, reject, memo));
  memo.emplace(a.get(), out);
  return out;
}

bool equal_nodes(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a->is_leaf != b->is_leaf) return false;
  if (a->is_leaf) return a->output == b->output;
  return a->speaker == b->speaker && a->table == b->table && a->depth == b->depth &&
         equal_nodes(a->on_zero.get(), b->on_zero.get()) &&
         equal_nodes(a->on_one.get(), b->on_one.get());
}

}  // namespace

DeterministicProtocol::DeterministicProtocol(Domain d, NodePtr root) : domain_(d), root_(std::move(root)) {
  if (!root_) throw DomainError("protocol without a root");
}

DeterministicProtocol DeterministicProtocol::leaf(Domain d, bool output) {
  check_domain(d);
  return DeterministicProtocol(d, make_leaf(output));
}

DeterministicProtocol DeterministicProtocol::speak(Domain d, Speaker who, std::vector<std::uint8_t> table,
                                                   const DeterministicProtocol& on_zero,
                                                   const DeterministicProtocol& on_one) {
  check_domain(d);
  int side = who == Speaker::Alice ? d.x_size : d.y_size;
  if (static_cast<int>(table.size()) != side)
    throw DomainError("message table size " + std::to_string(table.size()) +
                      " does not match the speaker's input count " + std::to_string(side));
  for (auto b : table)
    if (b > 1) throw DomainError("message table entries must be bits");
  if (!(on_zero.domain() == d) || !(on_one.domain() == d)) throw DomainError("child protocol on a different domain");
  return DeterministicProtocol(d, make_internal(who, std::move(table), on_zero.root_, on_one.root_));
}

bool DeterministicProtocol::eval(int x, int y) const {
  if (x < 0 || x >= domain_.x_size || y < 0 || y >= domain_.y_size)
    throw DomainError("input (" + std::to_string(x) + "," + std::to_string(y) + ") outside the domain");
  const Node* n = root_.get();
  while (!n->is_leaf) {
    int idx = n->speaker == Speaker::Alice ? x : y;
    n = n->table[idx] ? n->on_one.get() : n->on_zero.get();
  }
  return n->output;
}

DeterministicProtocol DeterministicProtocol::complement() const {
  std::unordered_map<const Node*, NodePtr> memo;
  return DeterministicProtocol(domain_, complement_node(root_, memo));
}

bool DeterministicProtocol::operator==(const DeterministicProtocol& other) const {
  return domain_ == other.domain_ && equal_nodes(root_.get(), other.root_.get());
}

DeterministicProtocol product(const DeterministicProtocol& a, const DeterministicProtocol& b) {
  return product(ProtocolPair::of(a), ProtocolPair::of(b)).pos;
}

ProtocolPair product(const ProtocolPair& a, const ProtocolPair& b) {
  if (!(a.pos.domain() == b.pos.domain())) throw DomainError("product of protocols on different domains");
  Domain d = a.pos.domain();
  std::unordered_map<const Node*, NodePtr> memo_pos, memo_neg;
  // a*b accepts iff a and b agree; its complement accepts iff they differ.
  NodePtr pos = graft(a.pos.root_ptr(), b.pos.root_ptr(), b.neg.root_ptr(), memo_pos);
  NodePtr neg = graft(a.pos.root_ptr(), b.neg.root_ptr(), b.pos.root_ptr(), memo_neg);
  return {DeterministicProtocol(d, pos), DeterministicProtocol(d, neg)};
}

}  // namespace ccl
