#pragma once

#include "xpsrk/scalar.hpp"

#include <map>
#include <vector>

namespace xpsrk {

inline constexpr int kMaxTreeOrder = 12;

/** Rooted tree in canonical level-sequence form.
 *
 * The encoding lists vertex depths in preorder, root at level 1. The
 * canonical representative orders each vertex's subtrees so the full
 * sequence is lexicographically maximal; two trees are isomorphic iff
 * their canonical sequences are equal.
 */
class RootedTree {
 public:
  static RootedTree leaf() { return RootedTree({1}, true); }
  /// Accepts any valid preorder level sequence and canonicalizes it.
  static RootedTree from_levels(const std::vector<int>& levels);
  /// Chain with `order` vertices: (1, 2, ..., order).
  static RootedTree path(int order);

  int order() const { return int(levels_.size()); }
  const std::vector<int>& levels() const { return levels_; }
  std::vector<RootedTree> children() const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.levels_ == b.levels_;
  }
  friend bool operator!=(const RootedTree& a, const RootedTree& b) {
    return !(a == b);
  }
  friend bool operator<(const RootedTree& a, const RootedTree& b) {
    return a.levels_ < b.levels_;
  }

 private:
  RootedTree(std::vector<int> levels, bool) : levels_(std::move(levels)) {}
  std::vector<int> levels_;
};

/// Grafts u onto the root of v (the Butcher product u o v).
RootedTree butcher_product(const RootedTree& u, const RootedTree& v);

/// Density gamma(t): |t| times the product over subtrees.
Int density(const RootedTree& t);

/// Symmetry sigma(t): order of the tree's automorphism group.
Int symmetry(const RootedTree& t);

/// All rooted trees of order n in canonical form, lexicographically
/// descending (Beyer-Hedetniemi successor enumeration).
std::vector<RootedTree> enumerate_trees(int order);

/** Dense index of all trees up to max_order (capped at kMaxTreeOrder).
 * Used to key memo tables; iteration order is deterministic.
 */
class TreeTable {
 public:
  explicit TreeTable(int max_order);

  int max_order() const { return max_order_; }
  int size() const { return int(all_.size()); }
  const std::vector<RootedTree>& of_order(int n) const;
  const RootedTree& by_index(int id) const { return all_.at(size_t(id)); }
  int index_of(const RootedTree& t) const;  // throws if absent

 private:
  int max_order_;
  std::vector<std::vector<RootedTree>> orders_;
  std::vector<RootedTree> all_;
  std::map<std::vector<int>, int> index_;
};

/** Elementary weights Phi(t) of a Runge-Kutta scheme (A, b), memoized
 * against a TreeTable.
 *
 *   phi_i(t) = prod over children tau of (A phi(tau))_i,  Phi(t) = b . phi(t)
 *
 * Entries may be exact or float scalars; arithmetic follows Scalar rules.
 */
class ElementaryWeights {
 public:
  ElementaryWeights(SMat A, SVec b, const TreeTable& table);

  Scalar weight(const RootedTree& t);
  const SVec& stage_weights(const RootedTree& t);  // phi(t)

  int stages() const { return int(b_.size()); }

 private:
  const SVec& propagated(const RootedTree& t);  // A phi(t), memoized

  SMat A_;
  SVec b_;
  const TreeTable* table_;
  std::vector<SVec> phi_, prop_;
  std::vector<char> has_phi_, has_prop_;
};

/// One-shot elementary weight; prefer ElementaryWeights for repeated queries.
Scalar elementary_weight(const SMat& A, const SVec& b, const RootedTree& t,
                         const TreeTable& table);

}  // namespace xpsrk
