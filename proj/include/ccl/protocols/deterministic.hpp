#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace ccl {

/// Input sizes |X| x |Y| of a two-party protocol.
struct Domain {
  int x_size = 0;
  int y_size = 0;

  int inputs() const { return x_size * y_size; }
  bool operator==(const Domain&) const = default;
};

void check_domain(Domain d);

enum class Speaker : std::uint8_t { Alice, Bob };

/// A binary protocol tree. Internal nodes name a speaker and a lookup table
/// from the speaker's input index to the bit sent; leaves carry the output.
///
/// Nodes are immutable and shared, so subtrees may appear in several trees.
class DeterministicProtocol {
 public:
  struct Node {
    bool is_leaf = true;
    bool output = false;
    Speaker speaker = Speaker::Alice;
    std::vector<std::uint8_t> table;
    std::shared_ptr<const Node> on_zero;
    std::shared_ptr<const Node> on_one;
    int depth = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  static DeterministicProtocol leaf(Domain d, bool output);
  static DeterministicProtocol speak(Domain d, Speaker who, std::vector<std::uint8_t> table,
                                     const DeterministicProtocol& on_zero,
                                     const DeterministicProtocol& on_one);
  DeterministicProtocol(Domain d, NodePtr root);

  Domain domain() const noexcept { return domain_; }
  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  bool eval(int x, int y) const;
  // Worst-case bits exchanged: tree depth. The leaf's output is not charged.
  int cost() const noexcept { return root_->depth; }
  bool is_leaf() const noexcept { return root_->is_leaf; }

  DeterministicProtocol complement() const;

  // Structural equality: same shape, speakers, tables and leaf bits.
  bool operator==(const DeterministicProtocol& other) const;

 private:
  Domain domain_;
  NodePtr root_;
};

/// A protocol together with its complement, built so that both share the
/// same subtrees. Product chains stay linear in size this way.
struct ProtocolPair {
  DeterministicProtocol pos;
  DeterministicProtocol neg;

  static ProtocolPair of(const DeterministicProtocol& p) { return {p, p.complement()}; }
  ProtocolPair swapped() const { return {neg, pos}; }
};

/// Run `a`; if it accepts run `b`, otherwise run the complement of `b`.
DeterministicProtocol product(const DeterministicProtocol& a, const DeterministicProtocol& b);
ProtocolPair product(const ProtocolPair& a, const ProtocolPair& b);

}  // namespace ccl
