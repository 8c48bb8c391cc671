#include "xpsrk/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace xpsrk {

namespace {

constexpr int kMaxPairOrder = 11;

// Decides whether a residual counts as zero.  Exact tableaux get exact
// comparisons.  Floating tableaux are accepted only when every inexact entry
// carries at least 128 bits; residuals are then compared against 1e-30, which
// sits far below anything a rounded-but-correct 128-bit tableau can produce
// at these orders and far above the noise of one that is genuinely wrong.
class ZeroTest {
 public:
  explicit ZeroTest(const ButcherTableau& tab) {
    unsigned min_bits = 0;
    bool any_float = false;
    auto scan = [&](const Scalar& x) {
      if (x.kind() != Kind::floating) return;
      const unsigned bits = x.float_bits();
      min_bits = any_float ? std::min(min_bits, bits) : bits;
      any_float = true;
    };
    for (int i = 0; i < tab.stages(); ++i) {
      for (int j = 0; j < tab.stages(); ++j) scan(tab.A()(i, j));
      scan(tab.b()[i]);
    }
    if (any_float) {
      if (min_bits < 128)
        throw std::invalid_argument(
            "order analysis needs exact entries or floats of >= 128 bits");
      tolerant_ = true;
      tol_ = Scalar(Rational(Int(1), pow(Int(10), 30)));
    }
  }

  bool operator()(const Scalar& x) const {
    if (x.is_exact()) return x.is_zero();
    return abs(x) <= tol_;
  }

  bool tolerant() const { return tolerant_; }

 private:
  bool tolerant_ = false;
  Scalar tol_{0};
};

bool is_self_adjoint(const ButcherTableau& tab, const ZeroTest& zero) {
  const ButcherTableau adj = adjoint(tab);
  const int m = tab.stages();
  for (int i = 0; i < m; ++i) {
    if (!zero(adj.b()[i] - tab.b()[i])) return false;
    for (int j = 0; j < m; ++j)
      if (!zero(adj.A()(i, j) - tab.A()(i, j))) return false;
  }
  return true;
}

}  // namespace

ClassicalOrderResult classical_order(const ButcherTableau& tab, int p_max) {
  if (p_max < 1 || p_max > kMaxTreeOrder)
    throw std::invalid_argument("classical_order: cap must lie in 1..12");
  const ZeroTest zero(tab);
  TreeTable table(p_max);
  ElementaryWeights w(tab.A(), tab.b(), table);
  ClassicalOrderResult out;
  for (int p = 1; p <= p_max; ++p) {
    std::vector<TreeCondition> bad;
    for (const RootedTree& t : table.of_order(p)) {
      const Scalar r = w.weight(t) - Scalar(1) / Scalar(density(t));
      if (!zero(r)) bad.push_back({{t}, r});
    }
    if (!bad.empty()) {
      out.order = p - 1;
      out.violations = std::move(bad);
      return out;
    }
  }
  out.order = p_max;
  return out;
}

Scalar symplecticity_residual(const ButcherTableau& tab, const RootedTree& u,
                              const RootedTree& v) {
  const int n = u.order() + v.order();
  if (n > kMaxTreeOrder)
    throw std::invalid_argument("symplecticity_residual: |u|+|v| exceeds 12");
  TreeTable table(n);
  ElementaryWeights w(tab.A(), tab.b(), table);
  return w.weight(u) * w.weight(v) - w.weight(butcher_product(u, v)) -
         w.weight(butcher_product(v, u));
}

PseudosymplecticResult pseudosymplectic_order(const ButcherTableau& tab,
                                              int k_max) {
  if (k_max < 1 || k_max > kMaxPairOrder)
    throw std::invalid_argument(
        "pseudosymplectic_order: cap must lie in 1..11");
  const ZeroTest zero(tab);

  // M == 0 certifies that every pair residual vanishes identically.
  bool m_zero = true;
  const SMat M = m_matrix(tab);
  for (int i = 0; i < M.rows() && m_zero; ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (!zero(M(i, j))) {
        m_zero = false;
        break;
      }

  PseudosymplecticResult out;

  // Order 1 is the consistency condition sum(b) = 1.
  Scalar bsum{0};
  for (int i = 0; i < tab.stages(); ++i) bsum += tab.b()[i];
  const Scalar consistency = bsum - Scalar(1);
  const bool consistent = zero(consistency);
  out.census.push_back({1, 1, consistent ? 1 : 0});
  int first_bad = consistent ? 0 : 1;
  if (!consistent) out.violations.push_back({{}, consistency});

  if (k_max >= 2) {
    // Products u o v reach order k_max even though the factors stay below it.
    TreeTable table(k_max);
    ElementaryWeights w(tab.A(), tab.b(), table);
    for (int n = 2; n <= k_max; ++n) {
      CensusRow row{n, 0, 0};
      std::vector<TreeCondition> bad;
      for (int ou = 1; 2 * ou <= n; ++ou) {
        const int ov = n - ou;
        const auto& us = table.of_order(ou);
        const auto& vs = table.of_order(ov);
        for (std::size_t iu = 0; iu < us.size(); ++iu) {
          for (std::size_t jv = (ou == ov ? iu : 0); jv < vs.size(); ++jv) {
            ++row.conditions;
            const Scalar r = w.weight(us[iu]) * w.weight(vs[jv]) -
                             w.weight(butcher_product(us[iu], vs[jv])) -
                             w.weight(butcher_product(vs[jv], us[iu]));
            if (zero(r))
              ++row.satisfied;
            else
              bad.push_back({{us[iu], vs[jv]}, r});
          }
        }
      }
      out.census.push_back(row);
      if (!bad.empty() && first_bad == 0) {
        first_bad = n;
        out.violations = std::move(bad);
      }
    }
  }

  out.order = first_bad == 0 ? k_max : first_bad - 1;
  out.infinite = m_zero && first_bad == 0;
  return out;
}

PseudosymmetryResult pseudosymmetry_order(const ButcherTableau& tab,
                                          int k_max) {
  if (k_max < 1 || k_max > kMaxPairOrder)
    throw std::invalid_argument("pseudosymmetry_order: cap must lie in 1..11");
  const ZeroTest zero(tab);
  const bool self_adjoint = is_self_adjoint(tab, zero);

  // Walk the method forward over -h and then forward over +h; the elementary
  // weights of the composite are exactly the symmetry defects.
  const ButcherTableau round_trip = compose(tab, Scalar(-1), tab, Scalar(1));
  TreeTable table(k_max);
  ElementaryWeights w(round_trip.A(), round_trip.b(), table);

  PseudosymmetryResult out;
  out.order = k_max;
  for (int n = 1; n <= k_max; ++n) {
    std::vector<TreeCondition> bad;
    for (const RootedTree& t : table.of_order(n)) {
      const Scalar r = w.weight(t);
      if (!zero(r)) bad.push_back({{t}, r});
    }
    if (!bad.empty()) {
      out.order = n - 1;
      out.violations = std::move(bad);
      break;
    }
  }
  out.infinite = self_adjoint && out.order == k_max;
  return out;
}

std::vector<std::pair<RootedTree, Scalar>> error_constants(
    const ButcherTableau& tab, int q) {
  if (q < 1 || q > kMaxTreeOrder)
    throw std::invalid_argument("error_constants: order must lie in 1..12");
  TreeTable table(q);
  ElementaryWeights w(tab.A(), tab.b(), table);
  std::vector<std::pair<RootedTree, Scalar>> out;
  for (const RootedTree& t : table.of_order(q))
    out.emplace_back(t, w.weight(t) - Scalar(1) / Scalar(density(t)));
  return out;
}

OrderReport order_report(const ButcherTableau& tab, int max_order) {
  if (max_order < 1 || max_order > kMaxPairOrder)
    throw std::invalid_argument("order_report: cap must lie in 1..11");
  OrderReport out;
  out.classical = classical_order(tab, max_order);
  out.pseudosymplectic = pseudosymplectic_order(tab, max_order);
  out.pseudosymmetry = pseudosymmetry_order(tab, max_order);
  return out;
}

namespace {

nlohmann::json violation_json(const char* kind, const TreeCondition& c) {
  nlohmann::json trees = nlohmann::json::array();
  for (const RootedTree& t : c.trees) trees.push_back(t.levels());
  return {{"kind", kind},
          {"trees", std::move(trees)},
          {"residual", scalar_to_json(c.residual)}};
}

}  // namespace

nlohmann::json order_report_to_json(const OrderReport& r) {
  nlohmann::json j;
  j["classical_order"] = r.classical.order;
  j["pseudosymplectic_order"] = r.pseudosymplectic.infinite
                                    ? nlohmann::json("infinite")
                                    : nlohmann::json(r.pseudosymplectic.order);
  j["pseudosymmetry_order"] = r.pseudosymmetry.infinite
                                  ? nlohmann::json("infinite")
                                  : nlohmann::json(r.pseudosymmetry.order);
  nlohmann::json census = nlohmann::json::array();
  for (const CensusRow& row : r.pseudosymplectic.census)
    census.push_back({{"order", row.order},
                      {"conditions", row.conditions},
                      {"satisfied", row.satisfied}});
  j["symplecticity_census"] = std::move(census);
  nlohmann::json violations = nlohmann::json::array();
  for (const TreeCondition& c : r.classical.violations)
    violations.push_back(violation_json("classical", c));
  for (const TreeCondition& c : r.pseudosymplectic.violations)
    violations.push_back(violation_json("symplecticity", c));
  for (const TreeCondition& c : r.pseudosymmetry.violations)
    violations.push_back(violation_json("symmetry", c));
  j["violated_conditions"] = std::move(violations);
  return j;
}

}  // namespace xpsrk
