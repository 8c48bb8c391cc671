#include "xpsrk/tableau.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace xpsrk {

namespace {

SVec row_sums(const SMat& A) {
  SVec c(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Scalar s = 0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) s += A(i, j);
    c[i] = s;
  }
  return c;
}

bool all_zero(const SMat& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero()) return false;
  return true;
}

std::vector<int> pivot_columns(const SMat& R) {
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < R.cols() && row < R.rows(); ++col) {
    if (!R(row, col).is_zero()) {
      piv.push_back(col);
      ++row;
    }
  }
  return piv;
}

}  // namespace

SMat rref(SMat M) {
  const Eigen::Index rows = M.rows(), cols = M.cols();
  Eigen::Index lead = 0;
  for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = lead; i < rows; ++i)
      if (!M(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead) M.row(piv).swap(M.row(lead));
    const Scalar p = M(lead, col);
    for (Eigen::Index j = col; j < cols; ++j) M(lead, j) /= p;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == lead || M(i, col).is_zero()) continue;
      const Scalar f = M(i, col);
      for (Eigen::Index j = col; j < cols; ++j) M(i, j) -= f * M(lead, j);
    }
    ++lead;
  }
  return M;
}

int matrix_rank(const SMat& M) {
  return int(pivot_columns(rref(M)).size());
}

SMat kernel_basis(const SMat& M) {
  const SMat R = rref(M);
  const std::vector<int> piv = pivot_columns(R);
  const int n = int(M.cols());
  std::vector<int> free_cols;
  {
    size_t k = 0;
    for (int col = 0; col < n; ++col) {
      if (k < piv.size() && piv[k] == col)
        ++k;
      else
        free_cols.push_back(col);
    }
  }
  SMat V = SMat::Zero(n, Eigen::Index(free_cols.size()));
  for (size_t f = 0; f < free_cols.size(); ++f) {
    V(free_cols[f], Eigen::Index(f)) = 1;
    for (size_t r = 0; r < piv.size(); ++r)
      V(piv[r], Eigen::Index(f)) = -R(Eigen::Index(r), free_cols[f]);
  }
  return V;
}

SMat solve_linear(SMat A, SMat B) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n)
    throw std::invalid_argument("solve_linear: dimension mismatch");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = col; i < n; ++i)
      if (!A(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("solve_linear: singular matrix");
    if (piv != col) {
      A.row(piv).swap(A.row(col));
      B.row(piv).swap(B.row(col));
    }
    const Scalar p = A(col, col);
    for (Eigen::Index j = col; j < n; ++j) A(col, j) /= p;
    for (Eigen::Index j = 0; j < B.cols(); ++j) B(col, j) /= p;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || A(i, col).is_zero()) continue;
      const Scalar f = A(i, col);
      for (Eigen::Index j = col; j < n; ++j) A(i, j) -= f * A(col, j);
      for (Eigen::Index j = 0; j < B.cols(); ++j) B(i, j) -= f * B(col, j);
    }
  }
  return B;
}

ButcherTableau::ButcherTableau(SMat A, SVec b, TableauMeta meta)
    : A_(std::move(A)), b_(std::move(b)), meta_(std::move(meta)) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size())
    throw std::invalid_argument("ButcherTableau: A must be m x m and b length m");
  c_ = row_sums(A_);
}

bool ButcherTableau::is_explicit() const {
  for (Eigen::Index i = 0; i < A_.rows(); ++i)
    for (Eigen::Index j = i; j < A_.cols(); ++j)
      if (!A_(i, j).is_zero()) return false;
  return true;
}

bool operator==(const ButcherTableau& x, const ButcherTableau& y) {
  if (x.stages() != y.stages()) return false;
  for (Eigen::Index i = 0; i < x.b_.size(); ++i) {
    if (x.b_[i] != y.b_[i]) return false;
    for (Eigen::Index j = 0; j < x.b_.size(); ++j)
      if (x.A_(i, j) != y.A_(i, j)) return false;
  }
  return true;
}

ExtendedTableau::ExtendedTableau(int s, SMat a, SVec b, SMat d, TableauMeta meta)
    : s_(s), a_(std::move(a)), b_(std::move(b)), d_(std::move(d)),
      meta_(std::move(meta)) {
  const Eigen::Index m = b_.size();
  if (s_ < 1 || s_ > m)
    throw std::invalid_argument("ExtendedTableau: need 1 <= s <= m");
  if (a_.rows() != s_ || a_.cols() != m)
    throw std::invalid_argument("ExtendedTableau: a must be s x m");
  if (d_.rows() != m - s_ || d_.cols() != m)
    throw std::invalid_argument("ExtendedTableau: d must be (m-s) x m");
  if (matrix_rank(d_) != int(m) - s_)
    throw std::invalid_argument("ExtendedTableau: d must have full row rank");
}

void validate_midpoint_alphas(const std::vector<Scalar>& alphas) {
  if (alphas.empty())
    throw std::invalid_argument("composition coefficients: empty list");
  Scalar sum = 0;
  for (const Scalar& a : alphas) sum += a;
  if (sum != Scalar(1))
    throw std::invalid_argument(
        "composition coefficients: substep sizes must sum to 1");
}

void validate_alternating_alphas(const std::vector<Scalar>& alphas) {
  if (alphas.empty())
    throw std::invalid_argument("composition coefficients: empty list");
  Scalar odd = 0, even = 0;
  for (size_t i = 0; i < alphas.size(); ++i)
    (i % 2 == 0 ? odd : even) += alphas[i];
  if (odd != Scalar(1) || even != Scalar(1))
    throw std::invalid_argument(
        "composition coefficients: each interleaved flow must sum to 1");
}

std::vector<Scalar> alternating_alphas(const std::vector<Scalar>& gammas) {
  const int s = int(gammas.size());
  if (s < 1)
    throw std::invalid_argument("alternating_alphas: empty schedule");
  const Scalar half = Scalar::rational(1, 2);
  std::vector<Scalar> out;
  out.reserve(size_t(2 * s + 1));
  for (int i = 0; i <= s; ++i) {
    if (i == 0)
      out.push_back(half * gammas[0]);
    else if (i == s)
      out.push_back(half * gammas[size_t(s - 1)]);
    else
      out.push_back(half * (gammas[size_t(i - 1)] + gammas[size_t(i)]));
    if (i < s) out.push_back(gammas[size_t(i)]);
  }
  return out;
}

ButcherTableau midpoint_projection_tableau(const std::vector<Scalar>& alphas) {
  validate_midpoint_alphas(alphas);
  const int s = int(alphas.size());
  const int m = 2 * s + 1;
  const Scalar half = Scalar::rational(1, 2);
  SMat A = SMat::Zero(m, m);
  SVec zw = SVec::Zero(m);  // accumulated slope weights of the two copies
  SVec hw = SVec::Zero(m);
  for (int blk = 0; blk <= s; ++blk) {
    // One merged half-step of the first partial flow: evaluate the second
    // copy, advance the first.
    const int t = 2 * blk;
    A.row(t) = hw.transpose();
    Scalar step = (blk == 0) ? half * alphas[0]
                : (blk == s) ? half * alphas[size_t(s - 1)]
                             : half * (alphas[size_t(blk - 1)] + alphas[size_t(blk)]);
    zw[t] += step;
    if (blk < s) {
      // Whole step of the second partial flow in between.
      A.row(t + 1) = zw.transpose();
      hw[t + 1] += alphas[size_t(blk)];
    }
  }
  SVec b = (zw + hw) * half;
  return ButcherTableau(std::move(A), std::move(b), {"midpoint", alphas});
}

ExtendedTableau symmetric_projection_extended(const std::vector<Scalar>& alphas) {
  validate_alternating_alphas(alphas);
  const int s = int(alphas.size());
  const int m = s + 1;  // slope m is the shift divided by h
  SMat a = SMat::Zero(s, m);
  SVec zw = SVec::Zero(m);
  SVec hw = SVec::Zero(m);
  zw[s] = 1;  // the two copies start at z0 +/- shift
  hw[s] = -1;
  for (int i = 0; i < s; ++i) {
    if (i % 2 == 0) {  // advance the first copy, evaluating the second
      a.row(i) = hw.transpose();
      zw[i] += alphas[size_t(i)];
    } else {
      a.row(i) = zw.transpose();
      hw[i] += alphas[size_t(i)];
    }
  }
  // Re-applying the shift must land both copies on the same point.
  SMat d(1, m);
  d.row(0) = (hw - zw).transpose();
  d(0, s) -= 2;
  SVec b = (zw + hw) * Scalar::rational(1, 2);
  return ExtendedTableau(s, std::move(a), std::move(b), std::move(d),
                         {"symmetric", alphas});
}

ButcherTableau monoimplicit_tableau(const std::vector<Scalar>& alphas) {
  validate_alternating_alphas(alphas);
  const int s = int(alphas.size());
  const Scalar quarter = Scalar::rational(1, 4);
  SMat A(s, s);
  SVec b(s);
  for (int i = 0; i < s; ++i) {
    b[i] = Scalar::rational(1, 2) * alphas[size_t(i)];
    for (int j = 0; j < s; ++j) {
      const int k = j - i;
      const Scalar ck = (k % 2 == 0) ? Scalar(1) : (k > 0 ? Scalar(-1) : Scalar(3));
      A(i, j) = quarter * alphas[size_t(j)] * ck;
    }
  }
  return ButcherTableau(std::move(A), std::move(b), {"monoimplicit", alphas});
}

ButcherTableau eliminate_constraints(const ExtendedTableau& ext) {
  const int s = ext.evaluated_stages();
  const int m = ext.total_stages();
  const int r = m - s;
  if (r == 0) return ButcherTableau(ext.a(), ext.b(), ext.meta());
  const SMat D1 = ext.d().leftCols(s);
  const SMat D2 = ext.d().rightCols(r);
  SMat X;  // extra slopes as combinations of the evaluated ones
  try {
    X = solve_linear(D2, SMat(-D1));
  } catch (const std::domain_error&) {
    throw std::domain_error(
        "eliminate_constraints: constraints do not determine the extra slopes");
  }
  SMat A = ext.a().leftCols(s) + ext.a().rightCols(r) * X;
  SVec b = ext.b().head(s) + X.transpose() * ext.b().tail(r);
  return ButcherTableau(std::move(A), std::move(b), ext.meta());
}

SMat m_matrix(const SMat& A, const SVec& b) {
  const Eigen::Index m = b.size();
  SMat M(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      M(i, j) = b[i] * b[j] - b[i] * A(i, j) - b[j] * A(j, i);
  return M;
}

SMat m_matrix(const ButcherTableau& tab) { return m_matrix(tab.A(), tab.b()); }

SMat m_matrix(const ExtendedTableau& ext) {
  const int m = ext.total_stages();
  SMat A = SMat::Zero(m, m);
  A.topRows(ext.evaluated_stages()) = ext.a();
  return m_matrix(A, ext.b());
}

QuadraticPreservation quadratic_preservation_check(const ExtendedTableau& ext) {
  QuadraticPreservation out;
  out.V = kernel_basis(ext.d());
  out.VtMV = SMat(out.V.transpose() * m_matrix(ext) * out.V);
  out.b_tail_zero = true;
  for (int i = ext.evaluated_stages(); i < ext.total_stages(); ++i)
    if (!ext.b()[i].is_zero()) out.b_tail_zero = false;
  out.vtmv_zero = all_zero(out.VtMV);
  out.preserved = out.b_tail_zero && out.vtmv_zero;
  return out;
}

MonoimplicitForm monoimplicit_decompose(const ButcherTableau& tab) {
  const Eigen::Index m = tab.stages();
  const SMat& A = tab.A();
  SVec u = SVec::Zero(m), v = SVec::Zero(m);
  // Need u_i v_j = 4 a_ij on the diagonal and above; the strictly lower part
  // is absorbed by L. Fix the scale via the first row carrying a nonzero
  // upper entry, then read off v from that row and u from the columns.
  Eigen::Index lead = -1;
  for (Eigen::Index i = 0; i < m && lead < 0; ++i)
    for (Eigen::Index j = i; j < m; ++j)
      if (!A(i, j).is_zero()) {
        lead = i;
        break;
      }
  if (lead >= 0) {
    u[lead] = 1;
    for (Eigen::Index j = lead; j < m; ++j) v[j] = 4 * A(lead, j);
    for (Eigen::Index i = lead + 1; i < m; ++i) {
      Eigen::Index ref = -1;
      for (Eigen::Index j = i; j < m; ++j)
        if (!v[j].is_zero()) {
          ref = j;
          break;
        }
      if (ref >= 0) u[i] = 4 * A(i, ref) / v[ref];
    }
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i; j < m; ++j)
        if (4 * A(i, j) != u[i] * v[j])
          throw std::domain_error(
              "monoimplicit_decompose: no rank-one completion of the upper part");
  }
  MonoimplicitForm out;
  out.u = std::move(u);
  out.v = std::move(v);
  out.L = A - SMat(Scalar::rational(1, 4) * (out.u * out.v.transpose()));
  out.b = tab.b();
  return out;
}

ButcherTableau compose(const ButcherTableau& tab1, const Scalar& r1,
                       const ButcherTableau& tab2, const Scalar& r2) {
  const Eigen::Index m1 = tab1.stages(), m2 = tab2.stages();
  SMat A = SMat::Zero(m1 + m2, m1 + m2);
  SVec b(m1 + m2);
  A.topLeftCorner(m1, m1) = r1 * tab1.A();
  for (Eigen::Index i = m1; i < m1 + m2; ++i)
    A.row(i).head(m1) = (r1 * tab1.b()).transpose();
  A.bottomRightCorner(m2, m2) = r2 * tab2.A();
  b.head(m1) = r1 * tab1.b();
  b.tail(m2) = r2 * tab2.b();
  return ButcherTableau(std::move(A), std::move(b));
}

ButcherTableau adjoint(const ButcherTableau& tab) {
  const Eigen::Index m = tab.stages();
  SMat A(m, m);
  SVec b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b[i] = tab.b()[m - 1 - i];
    for (Eigen::Index j = 0; j < m; ++j)
      A(i, j) = tab.b()[m - 1 - j] - tab.A()(m - 1 - i, m - 1 - j);
  }
  return ButcherTableau(std::move(A), std::move(b));
}

namespace {

nlohmann::json meta_to_json(const TableauMeta& meta) {
  nlohmann::json alphas = nlohmann::json::array();
  for (const Scalar& a : meta.alphas) alphas.push_back(scalar_to_json(a));
  return {{"construction", meta.construction}, {"alphas", alphas}};
}

TableauMeta meta_from_json(const nlohmann::json& j) {
  TableauMeta meta;
  if (!j.is_object()) return meta;
  meta.construction = j.value("construction", std::string());
  if (j.contains("alphas"))
    for (const auto& a : j["alphas"]) meta.alphas.push_back(scalar_from_json(a));
  return meta;
}

nlohmann::json matrix_to_json(const SMat& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      row.push_back(scalar_to_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

SMat matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = Eigen::Index(j.size());
  const Eigen::Index cols = rows ? Eigen::Index(j.at(0).size()) : 0;
  SMat M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (Eigen::Index(j.at(size_t(i)).size()) != cols)
      throw std::invalid_argument("tableau_from_json: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k)
      M(i, k) = scalar_from_json(j.at(size_t(i)).at(size_t(k)));
  }
  return M;
}

nlohmann::json vector_to_json(const SVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v[i]));
  return out;
}

SVec vector_from_json(const nlohmann::json& j) {
  SVec v(Eigen::Index(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = scalar_from_json(j.at(size_t(i)));
  return v;
}

std::string decimal(const Scalar& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", to_double(x));
  return buf;
}

// Aligned table: each line is a label plus one row of entries; the label is
// separated from the entries by " | ".
std::string format_rows(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& lines) {
  size_t label_w = 0, ncols = 0;
  for (const auto& [label, row] : lines) {
    label_w = std::max(label_w, label.size());
    ncols = std::max(ncols, row.size());
  }
  std::vector<size_t> width(ncols, 0);
  for (const auto& [label, row] : lines)
    for (size_t j = 0; j < row.size(); ++j)
      width[j] = std::max(width[j], row[j].size());
  std::ostringstream os;
  for (const auto& [label, row] : lines) {
    os.width(std::streamsize(label_w));
    os << label << " |";
    for (size_t j = 0; j < row.size(); ++j) {
      os << ' ';
      os.width(std::streamsize(width[j]));
      os << row[j];
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::string> decimal_row(const SMat& M, Eigen::Index i) {
  std::vector<std::string> row;
  for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(decimal(M(i, j)));
  return row;
}

std::vector<std::string> decimal_row(const SVec& v) {
  std::vector<std::string> row;
  for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(decimal(v[i]));
  return row;
}

}  // namespace

nlohmann::json tableau_to_json(const ButcherTableau& tab) {
  return {{"m", tab.stages()},
          {"A", matrix_to_json(tab.A())},
          {"b", vector_to_json(tab.b())},
          {"c", vector_to_json(tab.c())},
          {"meta", meta_to_json(tab.meta())}};
}

ButcherTableau tableau_from_json(const nlohmann::json& j) {
  ButcherTableau tab(matrix_from_json(j.at("A")), vector_from_json(j.at("b")),
                     meta_from_json(j.value("meta", nlohmann::json())));
  if (j.contains("m") && j["m"].get<int>() != tab.stages())
    throw std::invalid_argument("tableau_from_json: stage count mismatch");
  if (j.contains("c")) {
    const SVec c = vector_from_json(j["c"]);
    if (c.size() != tab.c().size())
      throw std::invalid_argument("tableau_from_json: c length mismatch");
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (c[i] != tab.c()[i])
        throw std::invalid_argument("tableau_from_json: c must equal row sums of A");
  }
  return tab;
}

nlohmann::json extended_to_json(const ExtendedTableau& ext) {
  return {{"s", ext.evaluated_stages()},
          {"m", ext.total_stages()},
          {"a", matrix_to_json(ext.a())},
          {"b", vector_to_json(ext.b())},
          {"d", matrix_to_json(ext.d())},
          {"meta", meta_to_json(ext.meta())}};
}

ExtendedTableau extended_from_json(const nlohmann::json& j) {
  return ExtendedTableau(j.at("s").get<int>(), matrix_from_json(j.at("a")),
                         vector_from_json(j.at("b")), matrix_from_json(j.at("d")),
                         meta_from_json(j.value("meta", nlohmann::json())));
}

std::string format_tableau(const ButcherTableau& tab) {
  std::vector<std::pair<std::string, std::vector<std::string>>> lines;
  for (Eigen::Index i = 0; i < tab.stages(); ++i)
    lines.emplace_back(decimal(tab.c()[i]), decimal_row(tab.A(), i));
  lines.emplace_back("b", decimal_row(tab.b()));
  return format_rows(lines);
}

std::string format_extended(const ExtendedTableau& ext) {
  std::vector<std::pair<std::string, std::vector<std::string>>> lines;
  for (Eigen::Index i = 0; i < ext.a().rows(); ++i)
    lines.emplace_back("a" + std::to_string(i + 1), decimal_row(ext.a(), i));
  lines.emplace_back("b", decimal_row(ext.b()));
  for (Eigen::Index i = 0; i < ext.d().rows(); ++i)
    lines.emplace_back("d" + std::to_string(i + 1), decimal_row(ext.d(), i));
  return format_rows(lines);
}

}  // namespace xpsrk
