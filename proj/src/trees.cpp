#include "xpsrk/trees.hpp"

#include <algorithm>
#include <stdexcept>

namespace xpsrk {

namespace {

// Splits a preorder level sequence into the root's child subtree slices,
// rebased to root level 1.
std::vector<std::vector<int>> child_slices(const std::vector<int>& levels) {
  std::vector<std::vector<int>> out;
  size_t i = 1;
  while (i < levels.size()) {
    size_t j = i + 1;
    while (j < levels.size() && levels[j] > levels[i]) ++j;
    std::vector<int> sub(levels.begin() + long(i), levels.begin() + long(j));
    for (int& l : sub) l -= levels[i] - 1;
    out.push_back(std::move(sub));
    i = j;
  }
  return out;
}

std::vector<int> canonicalize(const std::vector<int>& levels) {
  if (levels.size() <= 1) return levels;
  std::vector<std::vector<int>> kids = child_slices(levels);
  for (auto& k : kids) k = canonicalize(k);
  std::sort(kids.begin(), kids.end(), std::greater<>());
  std::vector<int> out;
  out.reserve(levels.size());
  out.push_back(levels[0]);
  for (const auto& k : kids)
    for (int l : k) out.push_back(l + levels[0]);
  return out;
}

void validate_levels(const std::vector<int>& levels) {
  if (levels.empty()) throw std::invalid_argument("RootedTree: empty sequence");
  if (levels[0] != 1)
    throw std::invalid_argument("RootedTree: root must be at level 1");
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] < 2 || levels[i] > levels[i - 1] + 1)
      throw std::invalid_argument("RootedTree: invalid preorder level sequence");
}

}  // namespace

RootedTree RootedTree::from_levels(const std::vector<int>& levels) {
  validate_levels(levels);
  return RootedTree(canonicalize(levels), true);
}

RootedTree RootedTree::path(int order) {
  if (order < 1) throw std::invalid_argument("RootedTree: order must be >= 1");
  std::vector<int> levels(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) levels[size_t(i)] = i + 1;
  return RootedTree(std::move(levels), true);
}

std::vector<RootedTree> RootedTree::children() const {
  std::vector<RootedTree> out;
  for (auto& k : child_slices(levels_)) out.push_back(RootedTree(std::move(k), true));
  return out;
}

RootedTree butcher_product(const RootedTree& u, const RootedTree& v) {
  std::vector<int> levels = v.levels();
  for (int l : u.levels()) levels.push_back(l + 1);
  return RootedTree::from_levels(levels);
}

Int density(const RootedTree& t) {
  Int g = t.order();
  for (const auto& c : t.children()) g *= density(c);
  return g;
}

Int symmetry(const RootedTree& t) {
  std::vector<RootedTree> kids = t.children();
  std::sort(kids.begin(), kids.end());
  Int s = 1;
  size_t i = 0;
  while (i < kids.size()) {
    size_t j = i;
    while (j < kids.size() && kids[j] == kids[i]) {
      s *= Int(j - i + 1);        // accumulates multiplicity!
      s *= symmetry(kids[j]);
      ++j;
    }
    i = j;
  }
  return s;
}

std::vector<RootedTree> enumerate_trees(int order) {
  if (order < 1 || order > kMaxTreeOrder)
    throw std::invalid_argument("enumerate_trees: order must be in 1.." +
                                std::to_string(kMaxTreeOrder));
  std::vector<RootedTree> out;
  std::vector<int> L(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) L[size_t(i)] = i + 1;
  for (;;) {
    out.push_back(RootedTree::from_levels(L));
    // Beyer-Hedetniemi successor: rightmost entry above level 2 steps down,
    // and the tail repeats the segment starting at its parent.
    int p = order - 1;
    while (p >= 0 && L[size_t(p)] <= 2) --p;
    if (p < 0) break;
    int q = p - 1;
    while (L[size_t(q)] != L[size_t(p)] - 1) --q;
    for (int i = p; i < order; ++i) L[size_t(i)] = L[size_t(i - (p - q))];
  }
  return out;
}

TreeTable::TreeTable(int max_order) : max_order_(max_order) {
  if (max_order < 1 || max_order > kMaxTreeOrder)
    throw std::invalid_argument("TreeTable: max_order must be in 1.." +
                                std::to_string(kMaxTreeOrder));
  orders_.resize(size_t(max_order) + 1);
  for (int n = 1; n <= max_order; ++n) {
    orders_[size_t(n)] = enumerate_trees(n);
    for (const auto& t : orders_[size_t(n)]) {
      index_[t.levels()] = int(all_.size());
      all_.push_back(t);
    }
  }
}

const std::vector<RootedTree>& TreeTable::of_order(int n) const {
  if (n < 1 || n > max_order_)
    throw std::out_of_range("TreeTable: order out of range");
  return orders_[size_t(n)];
}

int TreeTable::index_of(const RootedTree& t) const {
  auto it = index_.find(t.levels());
  if (it == index_.end())
    throw std::out_of_range("TreeTable: tree exceeds table order");
  return it->second;
}

ElementaryWeights::ElementaryWeights(SMat A, SVec b, const TreeTable& table)
    : A_(std::move(A)), b_(std::move(b)), table_(&table) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size())
    throw std::invalid_argument("ElementaryWeights: shape mismatch");
  phi_.resize(size_t(table.size()));
  prop_.resize(size_t(table.size()));
  has_phi_.assign(size_t(table.size()), 0);
  has_prop_.assign(size_t(table.size()), 0);
}

const SVec& ElementaryWeights::stage_weights(const RootedTree& t) {
  int id = table_->index_of(t);
  if (has_phi_[size_t(id)]) return phi_[size_t(id)];
  SVec phi = SVec::Constant(b_.size(), Scalar(1));
  for (const auto& c : t.children()) {
    const SVec& g = propagated(c);
    for (Eigen::Index i = 0; i < phi.size(); ++i) phi(i) *= g(i);
  }
  phi_[size_t(id)] = std::move(phi);
  has_phi_[size_t(id)] = 1;
  return phi_[size_t(id)];
}

const SVec& ElementaryWeights::propagated(const RootedTree& t) {
  int id = table_->index_of(t);
  if (has_prop_[size_t(id)]) return prop_[size_t(id)];
  SVec g = A_ * stage_weights(t);
  prop_[size_t(id)] = std::move(g);
  has_prop_[size_t(id)] = 1;
  return prop_[size_t(id)];
}

Scalar ElementaryWeights::weight(const RootedTree& t) {
  const SVec& phi = stage_weights(t);
  Scalar acc;
  for (Eigen::Index i = 0; i < b_.size(); ++i) acc += b_(i) * phi(i);
  return acc;
}

Scalar elementary_weight(const SMat& A, const SVec& b, const RootedTree& t,
                         const TreeTable& table) {
  ElementaryWeights w(A, b, table);
  return w.weight(t);
}

}  // namespace xpsrk
