#pragma once

#include "xpsrk/tableau.hpp"
#include "xpsrk/trees.hpp"

#include <json.hpp>

#include <utility>
#include <vector>

namespace xpsrk {

// One violated order condition: a single tree (classical order,
// pseudosymmetry) or a pair of trees (pseudosymplecticity), with the exact
// residual.
struct TreeCondition {
  std::vector<RootedTree> trees;
  Scalar residual;
};

struct CensusRow {
  int order = 0;
  int conditions = 0;
  int satisfied = 0;
};

struct ClassicalOrderResult {
  int order = 0;
  std::vector<TreeCondition> violations;  // at order+1, when below the cap
};

struct PseudosymplecticResult {
  bool infinite = false;  // the symplecticity matrix M vanishes identically
  int order = 0;          // meaningful when !infinite
  std::vector<CensusRow> census;
  std::vector<TreeCondition> violations;
};

struct PseudosymmetryResult {
  bool infinite = false;  // the tableau equals its adjoint
  int order = 0;
  std::vector<TreeCondition> violations;
};

struct OrderReport {
  ClassicalOrderResult classical;
  PseudosymplecticResult pseudosymplectic;
  PseudosymmetryResult pseudosymmetry;
};

// Largest p <= p_max with Phi(t) = 1/gamma(t) for every tree of order <= p.
ClassicalOrderResult classical_order(const ButcherTableau& tab, int p_max);

// Phi(u) Phi(v) - Phi(u o v) - Phi(v o u).
Scalar symplecticity_residual(const ButcherTableau& tab, const RootedTree& u,
                              const RootedTree& v);

// Largest k <= k_max such that the symplecticity residual vanishes for every
// unordered tree pair with |u| + |v| <= k. The census counts conditions per
// order: the order-1 row is the consistency condition (sum of b equals 1),
// and the order-n row for n >= 2 collects the pairs with |u| + |v| = n; this
// indexing reproduces the condition counts 1, 1, 1, 3, 6, 16 at orders 1..6.
PseudosymplecticResult pseudosymplectic_order(const ButcherTableau& tab,
                                              int k_max);

// Largest k <= k_max such that the step composed with its own reversed step
// is the identity through order k: Phi(t) = 0 for the composed tableau for
// every tree of order <= k.
PseudosymmetryResult pseudosymmetry_order(const ButcherTableau& tab, int k_max);

// Residuals Phi(t) - 1/gamma(t) over the trees of order exactly q.
std::vector<std::pair<RootedTree, Scalar>> error_constants(
    const ButcherTableau& tab, int q);

// Runs all three classifications at the same cap (1 <= max_order <= 11).
OrderReport order_report(const ButcherTableau& tab, int max_order);

nlohmann::json order_report_to_json(const OrderReport& report);

}  // namespace xpsrk
