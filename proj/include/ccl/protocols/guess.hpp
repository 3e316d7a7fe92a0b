#pragma once

#include <memory>
#include <vector>

#include "ccl/core/matrix.hpp"
#include "ccl/numeric/exact.hpp"
#include "ccl/protocols/deterministic.hpp"

namespace ccl {

namespace detail {
struct GuessNode;
}

// Member lists above this size are never materialized.
inline const Int kMaterializeLimit = Int(1) << 20;

/// A guess protocol (Pi_1, ..., Pi_l): an ordered, nonempty sequence of
/// deterministic protocols on one domain.
///
/// The sequence is held as an expression over explicit lists (complement,
/// concatenation, pairwise product, per-member repetition), so compiled
/// protocols with astronomically many guesses stay small in memory. Any
/// member can still be built as an explicit tree via `member()`, and
/// `accept_grid()` counts accepting members exactly.
class GuessProtocol {
 public:
  explicit GuessProtocol(std::vector<DeterministicProtocol> guesses);
  static GuessProtocol constant(Domain d, bool accept);

  Domain domain() const;
  const Int& guess_count() const;
  // max_i D(Pi_i)
  int member_cost() const;
  bool is_explicit() const;

  DeterministicProtocol member(const Int& index) const;
  ProtocolPair member_pair(const Int& index) const;
  // Throws GuardError when guess_count() exceeds `limit`.
  std::vector<DeterministicProtocol> members(const Int& limit = kMaterializeLimit) const;

  // acc at every input, row-major, counted from the expression structure.
  std::vector<Int> accept_grid() const;
  Int accept_count(int x, int y) const;

  // Number of distinct expression nodes.
  std::size_t expression_size() const;

  const std::shared_ptr<const detail::GuessNode>& node() const { return node_; }
  explicit GuessProtocol(std::shared_ptr<const detail::GuessNode> node);

 private:
  std::shared_ptr<const detail::GuessNode> node_;
};

/// acc, rej and gap = acc - rej at every input (row-major grids).
struct GapProfile {
  Domain domain;
  Int guesses;
  std::vector<Int> acc;
  std::vector<Int> rej;
  std::vector<Int> gap;

  const Int& gap_at(int x, int y) const { return gap[static_cast<std::size_t>(x) * domain.y_size + y]; }
  const Int& acc_at(int x, int y) const { return acc[static_cast<std::size_t>(x) * domain.y_size + y]; }
};

// Counts from the expression structure; works at any size.
GapProfile gap_profile(const GuessProtocol& g);
// Builds and runs every member protocol on every input. Guarded by `limit`.
GapProfile gap_profile_enumerated(const GuessProtocol& g, const Int& limit = kMaterializeLimit);

bool pp_eval(const GuessProtocol& g, int x, int y);
BooleanMatrix pp_eval_grid(const GuessProtocol& g);

// ceil(log2 l) + max_i D(Pi_i)
int pp_cost(const GuessProtocol& g);

GuessProtocol complement(const GuessProtocol& g);
GuessProtocol sum(const GuessProtocol& a, const GuessProtocol& b);
GuessProtocol sum(const std::vector<GuessProtocol>& parts);
GuessProtocol product(const GuessProtocol& a, const GuessProtocol& b);
// Every member repeated `copies` times in place: gap scales by `copies`.
GuessProtocol replicate(const GuessProtocol& g, const Int& copies);

// (Pi_1, Pi_1, ..., Pi_l, Pi_l, 0): gap' = 2 gap - 1, never zero.
GuessProtocol normalize_nonzero(const GuessProtocol& g);

/// Counting function plus threshold: accepted iff counting > threshold.
struct ThresholdForm {
  Domain domain;
  std::vector<Int> counting;
  Int threshold;
};

ThresholdForm pp_to_threshold(const GuessProtocol& g);
// Guess protocol accepting exactly where acc_g > threshold.
GuessProtocol threshold_to_pp(const GuessProtocol& g, const Int& threshold);

// All protocol trees of depth <= max_depth, each once up to structural equality.
std::vector<DeterministicProtocol> enumerate_protocols(Domain d, int max_depth,
                                                       std::size_t max_count = 2'000'000);
// Size of the enumeration without building it.
Int count_protocols(Domain d, int max_depth);

}  // namespace ccl
