#pragma once

#include "xpsrk/scalar.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace xpsrk {

// Exact linear algebra over Scalar. Pivoting picks the first nonzero entry;
// exactness makes the choice a matter of convention only.
SMat rref(SMat M);
int matrix_rank(const SMat& M);
// Columns span ker M; one column per free column of rref(M), in column order.
SMat kernel_basis(const SMat& M);
// Solves A X = B for square A; throws std::domain_error when A is singular.
SMat solve_linear(SMat A, SMat B);

struct TableauMeta {
  std::string construction;  // "midpoint", "symmetric", "monoimplicit", or ""
  std::vector<Scalar> alphas;
};

// Runge-Kutta coefficients (A, b) with c fixed to the row sums of A.
// A default-constructed tableau has zero stages and represents the identity
// map; it only arises as a composition operand.
class ButcherTableau {
 public:
  ButcherTableau() = default;
  ButcherTableau(SMat A, SVec b, TableauMeta meta = {});

  int stages() const { return int(b_.size()); }
  const SMat& A() const { return A_; }
  const SVec& b() const { return b_; }
  const SVec& c() const { return c_; }
  const TableauMeta& meta() const { return meta_; }
  bool is_explicit() const;

  friend bool operator==(const ButcherTableau& x, const ButcherTableau& y);
  friend bool operator!=(const ButcherTableau& x, const ButcherTableau& y) {
    return !(x == y);
  }

 private:
  SMat A_{0, 0};
  SVec b_{0};
  SVec c_{0};
  TableauMeta meta_;
};

// Runge-Kutta-like scheme with m stage slopes of which only the first s are
// evaluations of f; the remaining m-s slopes are determined by the full-rank
// linear constraints d k = 0.
class ExtendedTableau {
 public:
  ExtendedTableau(int s, SMat a, SVec b, SMat d, TableauMeta meta = {});

  int evaluated_stages() const { return s_; }
  int total_stages() const { return int(b_.size()); }
  const SMat& a() const { return a_; }  // s x m
  const SVec& b() const { return b_; }  // length m
  const SMat& d() const { return d_; }  // (m-s) x m, full row rank
  const TableauMeta& meta() const { return meta_; }

 private:
  int s_ = 0;
  SMat a_;
  SVec b_;
  SMat d_;
  TableauMeta meta_;
};

// L strictly lower triangular with A = L + (1/4) u v^T.
struct MonoimplicitForm {
  SMat L;
  SVec u;
  SVec v;
  SVec b;
};

struct QuadraticPreservation {
  bool preserved = false;    // b_tail_zero && vtmv_zero
  bool b_tail_zero = false;  // b vanishes on the non-evaluated slots
  bool vtmv_zero = false;
  SMat V;     // kernel basis of d
  SMat VtMV;  // V^T M V
};

// Substep-size validation. Midpoint projection composes s whole maps whose
// sizes must sum to 1; the alternating family interleaves the two partial
// flows, so the odd-position and even-position sizes must each sum to 1.
void validate_midpoint_alphas(const std::vector<Scalar>& alphas);
void validate_alternating_alphas(const std::vector<Scalar>& alphas);

// Interleaved schedule equivalent to composing s whole maps of sizes gammas:
// (g1/2, g1, (g1+g2)/2, g2, ..., gs, gs/2), length 2s+1. Both parity sums
// equal the gamma sum, so valid composition sizes give a valid alternating
// list.
std::vector<Scalar> alternating_alphas(const std::vector<Scalar>& gammas);

ButcherTableau midpoint_projection_tableau(const std::vector<Scalar>& alphas);
ExtendedTableau symmetric_projection_extended(const std::vector<Scalar>& alphas);
ButcherTableau monoimplicit_tableau(const std::vector<Scalar>& alphas);

// Substitutes the constrained slopes away, yielding the equivalent s-stage
// method. Throws std::domain_error when the trailing (m-s)x(m-s) block of d
// is singular.
ButcherTableau eliminate_constraints(const ExtendedTableau& ext);

// M_ij = b_i b_j - b_i a_ij - b_j a_ji; identically zero iff the method
// preserves quadratic invariants.
SMat m_matrix(const SMat& A, const SVec& b);
SMat m_matrix(const ButcherTableau& tab);
// Extended variant pads a with zero rows for the non-evaluated slopes.
SMat m_matrix(const ExtendedTableau& ext);

QuadraticPreservation quadratic_preservation_check(const ExtendedTableau& ext);

// Splits A into a strictly lower triangular part plus a rank-one part,
// normalized so the first nonzero entry of u is 1. Throws std::domain_error
// when no such decomposition exists.
MonoimplicitForm monoimplicit_decompose(const ButcherTableau& tab);

// Single tableau for "apply tab1 with step r1*h, then tab2 with step r2*h".
ButcherTableau compose(const ButcherTableau& tab1, const Scalar& r1,
                       const ButcherTableau& tab2, const Scalar& r2);

ButcherTableau adjoint(const ButcherTableau& tab);

nlohmann::json tableau_to_json(const ButcherTableau& tab);
ButcherTableau tableau_from_json(const nlohmann::json& j);
nlohmann::json extended_to_json(const ExtendedTableau& ext);
ExtendedTableau extended_from_json(const nlohmann::json& j);

// Aligned human-readable rendering with decimal entries.
std::string format_tableau(const ButcherTableau& tab);
std::string format_extended(const ExtendedTableau& ext);

}  // namespace xpsrk
