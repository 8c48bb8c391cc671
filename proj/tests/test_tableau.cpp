#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xpsrk/tableau.hpp"
#include "xpsrk/trees.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace xpsrk;

namespace {

Scalar q(long long num, long long den = 1) { return Scalar::rational(num, den); }

SMat mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  SMat M(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const Scalar& x : row) M(i, j++) = x;
    ++i;
  }
  return M;
}

SVec vec(std::initializer_list<Scalar> xs) {
  SVec v(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (const Scalar& x : xs) v[i++] = x;
  return v;
}

bool matrix_eq(const SMat& X, const SMat& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) return false;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      if (X(i, j) != Y(i, j)) return false;
  return true;
}

bool vector_eq(const SVec& x, const SVec& y) {
  if (x.size() != y.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return false;
  return true;
}

bool matrix_zero(const SMat& X) {
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      if (!X(i, j).is_zero()) return false;
  return true;
}

Scalar random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long long> num(-9, 9), den(1, 9);
  return Scalar::rational(num(rng), den(rng));
}

// Random substep lists, all entries nonzero, whose interleaved flows each
// sum to 1.
std::vector<Scalar> random_alternating(int s, std::mt19937& rng) {
  for (;;) {
    std::vector<Scalar> a(size_t(s), Scalar(0));
    Scalar odd = 0, even = 0;
    int last_odd = -1, last_even = -1;
    for (int i = 0; i < s; ++i) (i % 2 == 0 ? last_odd : last_even) = i;
    for (int i = 0; i < s; ++i) {
      if (i == last_odd || i == last_even) continue;
      a[size_t(i)] = random_rational(rng);
      (i % 2 == 0 ? odd : even) += a[size_t(i)];
    }
    a[size_t(last_odd)] = Scalar(1) - odd;
    if (last_even >= 0) a[size_t(last_even)] = Scalar(1) - even;
    bool ok = true;
    for (const Scalar& x : a)
      if (x.is_zero()) ok = false;
    if (ok) return a;
  }
}

std::vector<Scalar> random_midpoint(int s, std::mt19937& rng) {
  std::vector<Scalar> a(size_t(s), Scalar(0));
  Scalar sum = 0;
  for (int i = 0; i + 1 < s; ++i) {
    a[size_t(i)] = random_rational(rng);
    sum += a[size_t(i)];
  }
  a[size_t(s - 1)] = Scalar(1) - sum;
  return a;
}

const ButcherTableau& reference_midpoint3() {
  static const ButcherTableau t(
      mat({{q(0), q(0), q(0)}, {q(1, 2), q(0), q(0)}, {q(0), q(1), q(0)}}),
      vec({q(1, 4), q(1, 2), q(1, 4)}));
  return t;
}

const ButcherTableau& reference_monoimplicit3() {
  static const ButcherTableau t(mat({{q(1, 8), q(-1, 4), q(1, 8)},
                                     {q(3, 8), q(1, 4), q(-1, 8)},
                                     {q(1, 8), q(3, 4), q(1, 8)}}),
                                vec({q(1, 4), q(1, 2), q(1, 4)}));
  return t;
}

}  // namespace

TEST_CASE("exact gaussian elimination") {
  const SMat d = mat({{q(-1, 2), q(1), q(-1, 2), q(-4)}});

  SUBCASE("rref normalizes the pivot row") {
    CHECK(matrix_eq(rref(d), mat({{q(1), q(-2), q(1), q(8)}})));
    CHECK(matrix_rank(d) == 1);
  }

  SUBCASE("kernel basis") {
    const SMat V = kernel_basis(d);
    CHECK(matrix_eq(V, mat({{q(2), q(-1), q(-8)},
                            {q(1), q(0), q(0)},
                            {q(0), q(1), q(0)},
                            {q(0), q(0), q(1)}})));
    CHECK(matrix_zero(SMat(d * V)));
  }

  SUBCASE("solve and singular detection") {
    const SMat A = mat({{q(2), q(1)}, {q(1), q(1)}});
    const SMat B = mat({{q(3)}, {q(2)}});
    CHECK(matrix_eq(solve_linear(A, B), mat({{q(1)}, {q(1)}})));
    CHECK_THROWS_AS(solve_linear(mat({{q(1), q(2)}, {q(2), q(4)}}), B),
                    std::domain_error);
  }

  SUBCASE("kernel dimension complements rank") {
    std::mt19937 rng(77);
    for (int rep = 0; rep < 20; ++rep) {
      SMat M(3, 5);
      for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 5; ++j) M(i, j) = random_rational(rng);
      const SMat V = kernel_basis(M);
      CHECK(matrix_rank(M) + int(V.cols()) == 5);
      CHECK(matrix_zero(SMat(M * V)));
    }
  }
}

TEST_CASE("butcher tableau basics") {
  const ButcherTableau& t = reference_midpoint3();
  CHECK(t.stages() == 3);
  CHECK(vector_eq(t.c(), vec({q(0), q(1, 2), q(1)})));
  CHECK(t.is_explicit());
  CHECK_FALSE(reference_monoimplicit3().is_explicit());
  CHECK_THROWS_AS(ButcherTableau(SMat::Zero(2, 2), vec({q(1)})),
                  std::invalid_argument);
  CHECK(ButcherTableau().stages() == 0);
}

TEST_CASE("midpoint projection tableau: one substep") {
  const ButcherTableau t = midpoint_projection_tableau({Scalar(1)});
  CHECK(t == reference_midpoint3());
  CHECK(t.meta().construction == "midpoint");
  CHECK_THROWS_AS(midpoint_projection_tableau({q(1, 2), q(1, 4)}),
                  std::invalid_argument);
}

TEST_CASE("midpoint projection tableau: three substeps, symbolic") {
  const Scalar a1 = q(1, 5), a2 = q(3, 10), a3 = q(1, 2);
  const Scalar h = q(1, 2), qt = q(1, 4);
  const ButcherTableau t = midpoint_projection_tableau({a1, a2, a3});
  REQUIRE(t.stages() == 7);
  const Scalar z = q(0);
  CHECK(matrix_eq(
      t.A(),
      mat({{z, z, z, z, z, z, z},
           {h * a1, z, z, z, z, z, z},
           {z, a1, z, z, z, z, z},
           {h * a1, z, h * (a1 + a2), z, z, z, z},
           {z, a1, z, a2, z, z, z},
           {h * a1, z, h * (a1 + a2), z, h * (a2 + a3), z, z},
           {z, a1, z, a2, z, a3, z}})));
  CHECK(vector_eq(t.b(), vec({qt * a1, h * a1, qt * (a1 + a2), h * a2,
                              qt * (a2 + a3), h * a3, qt * a3})));
  CHECK(vector_eq(t.c(), vec({z, h * a1, a1, a1 + h * a2, a1 + a2,
                              a1 + a2 + h * a3, Scalar(1)})));
}

TEST_CASE("midpoint projection tableau: structural properties") {
  std::mt19937 rng(101);
  for (int s : {1, 2, 3, 4, 5}) {
    const std::vector<Scalar> alphas = random_midpoint(s, rng);
    const ButcherTableau t = midpoint_projection_tableau(alphas);
    CHECK(t.stages() == 2 * s + 1);
    CHECK(t.is_explicit());
    Scalar bsum = 0;
    for (Eigen::Index i = 0; i < t.stages(); ++i) bsum += t.b()[i];
    CHECK(bsum == Scalar(1));
    // The two copies alternate: even-indexed stages evaluate the second copy
    // (weights on odd slots) and vice versa.
    for (Eigen::Index i = 0; i < t.stages(); ++i)
      for (Eigen::Index j = 0; j < t.stages(); ++j)
        if (!t.A()(i, j).is_zero()) CHECK(i % 2 != j % 2);
  }
}

TEST_CASE("midpoint projection tableau matches direct simulation") {
  // Runs the split extended-space map plus averaging directly in doubles and
  // compares with evaluating the constructed explicit tableau.
  std::mt19937 rng(2024);
  auto f = [](const std::array<double, 2>& w) {
    return std::array<double, 2>{w[1] * w[1] - w[0], w[0] * w[1] + 1.0};
  };
  for (int s : {1, 2, 3}) {
    const std::vector<Scalar> alphas = random_midpoint(s, rng);
    const ButcherTableau t = midpoint_projection_tableau(alphas);
    const double hstep = 0.02;
    const std::array<double, 2> z0{0.7, -0.3};

    std::array<double, 2> z = z0, zh = z0;
    for (int i = 0; i < s; ++i) {
      const double ai = to_double(alphas[size_t(i)]);
      auto fz = f(zh);
      for (int d = 0; d < 2; ++d) z[d] += 0.5 * ai * hstep * fz[d];
      auto fz2 = f(z);
      for (int d = 0; d < 2; ++d) zh[d] += ai * hstep * fz2[d];
      auto fz3 = f(zh);
      for (int d = 0; d < 2; ++d) z[d] += 0.5 * ai * hstep * fz3[d];
    }
    std::array<double, 2> direct{(z[0] + zh[0]) / 2, (z[1] + zh[1]) / 2};

    const int m = t.stages();
    std::vector<std::array<double, 2>> k(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      std::array<double, 2> zi = z0;
      for (int j = 0; j < i; ++j) {
        const double aij = to_double(t.A()(i, j));
        for (int d = 0; d < 2; ++d) zi[d] += hstep * aij * k[size_t(j)][d];
      }
      k[size_t(i)] = f(zi);
    }
    std::array<double, 2> viartk = z0;
    for (int i = 0; i < m; ++i) {
      const double bi = to_double(t.b()[i]);
      for (int d = 0; d < 2; ++d) viartk[d] += hstep * bi * k[size_t(i)][d];
    }
    for (int d = 0; d < 2; ++d)
      CHECK(std::abs(direct[d] - viartk[d]) < 1e-15);
  }
}

TEST_CASE("symmetric projection extended tableau") {
  const ExtendedTableau ext =
      symmetric_projection_extended({q(1, 2), q(1), q(1, 2)});
  CHECK(ext.evaluated_stages() == 3);
  CHECK(ext.total_stages() == 4);
  CHECK(matrix_eq(ext.a(), mat({{q(0), q(0), q(0), q(-1)},
                                {q(1, 2), q(0), q(0), q(1)},
                                {q(0), q(1), q(0), q(-1)}})));
  CHECK(vector_eq(ext.b(), vec({q(1, 4), q(1, 2), q(1, 4), q(0)})));
  CHECK(matrix_eq(ext.d(), mat({{q(-1, 2), q(1), q(-1, 2), q(-4)}})));
  CHECK(matrix_rank(ext.d()) == 1);
  CHECK(ext.meta().construction == "symmetric");

  CHECK_THROWS_AS(symmetric_projection_extended({q(1, 2), q(1), q(1, 4)}),
                  std::invalid_argument);

  SUBCASE("structural properties at random substeps") {
    std::mt19937 rng(55);
    for (int s : {3, 5, 7}) {
      const std::vector<Scalar> a = random_alternating(s, rng);
      const ExtendedTableau e = symmetric_projection_extended(a);
      CHECK(e.total_stages() == s + 1);
      CHECK(e.b()[s].is_zero());
      for (int i = 0; i < s; ++i)
        CHECK(e.b()[i] == Scalar::rational(1, 2) * a[size_t(i)]);
      CHECK(e.d()(0, s) == Scalar(-4));
    }
  }
}

TEST_CASE("monoimplicit tableau closed form") {
  CHECK(monoimplicit_tableau({q(1, 2), q(1), q(1, 2)}) == reference_monoimplicit3());
  CHECK(monoimplicit_tableau({q(1), q(1)}) ==
        ButcherTableau(mat({{q(1, 4), q(-1, 4)}, {q(3, 4), q(1, 4)}}),
                       vec({q(1, 2), q(1, 2)})));
  CHECK_THROWS_AS(monoimplicit_tableau({q(1), q(2)}), std::invalid_argument);

  SUBCASE("agrees with the strictly-lower plus rank-one form") {
    std::mt19937 rng(7);
    for (int s : {2, 3, 4, 5, 6, 7}) {
      const std::vector<Scalar> a = random_alternating(s, rng);
      const ButcherTableau t = monoimplicit_tableau(a);
      SMat L = SMat::Zero(s, s);
      SVec u(s), v(s);
      for (int i = 0; i < s; ++i) {
        u[i] = (i + 1) % 2 == 0 ? Scalar(1) : Scalar(-1);
        v[i] = a[size_t(i)] * u[i];
        for (int j = 0; j < i; ++j)
          if ((i - j) % 2 == 1) L(i, j) = a[size_t(j)];
      }
      const SMat A = L + SMat(Scalar::rational(1, 4) * (u * v.transpose()));
      CHECK(matrix_eq(t.A(), A));
      for (int i = 0; i < s; ++i)
        CHECK(t.b()[i] == Scalar::rational(1, 2) * a[size_t(i)]);
    }
  }
}

TEST_CASE("monoimplicit tableaux are symplectic") {
  std::mt19937 rng(13);
  for (int s : {3, 5, 7}) {
    for (int rep = 0; rep < 3; ++rep) {
      const std::vector<Scalar> a = random_alternating(s, rng);
      CHECK(matrix_zero(m_matrix(monoimplicit_tableau(a))));
    }
  }
}

TEST_CASE("eliminate constraints") {
  SUBCASE("reproduces the eliminated three-stage method") {
    const ButcherTableau t = eliminate_constraints(
        symmetric_projection_extended({q(1, 2), q(1), q(1, 2)}));
    CHECK(t == reference_monoimplicit3());
    CHECK(vector_eq(t.c(), vec({q(0), q(1, 2), q(1)})));
  }

  SUBCASE("agrees with the closed form at random substeps") {
    std::mt19937 rng(21);
    for (int s : {3, 5, 7}) {
      const std::vector<Scalar> a = random_alternating(s, rng);
      CHECK(eliminate_constraints(symmetric_projection_extended(a)) ==
            monoimplicit_tableau(a));
    }
  }

  SUBCASE("identity constraints drop unused slopes verbatim") {
    const SMat a = mat({{q(1, 3), q(2), q(0)}, {q(5), q(-1), q(0)}});
    const SVec b = vec({q(1, 2), q(1, 2), q(0)});
    const SMat d = mat({{q(0), q(0), q(1)}});
    const ButcherTableau t = eliminate_constraints(ExtendedTableau(2, a, b, d));
    CHECK(matrix_eq(t.A(), mat({{q(1, 3), q(2)}, {q(5), q(-1)}})));
    CHECK(vector_eq(t.b(), vec({q(1, 2), q(1, 2)})));
  }

  SUBCASE("undetermined extra slopes are rejected") {
    const SMat a = mat({{q(0), q(0), q(1)}, {q(1), q(0), q(0)}});
    const SVec b = vec({q(1, 2), q(1, 2), q(0)});
    const SMat d = mat({{q(1), q(0), q(0)}});  // full rank, but not in k3
    CHECK_THROWS_AS(eliminate_constraints(ExtendedTableau(2, a, b, d)),
                    std::domain_error);
  }
}

TEST_CASE("m matrix") {
  SUBCASE("extended leapfrog fixture") {
    const ExtendedTableau ext =
        symmetric_projection_extended({q(1, 2), q(1), q(1, 2)});
    const Scalar w = q(1, 16);
    CHECK(matrix_eq(m_matrix(ext),
                    mat({{w, -2 * w, w, 4 * w},
                         {-2 * w, 4 * w, -2 * w, -8 * w},
                         {w, -2 * w, w, 4 * w},
                         {4 * w, -8 * w, 4 * w, q(0)}})));
  }

  SUBCASE("eliminated method is symplectic") {
    CHECK(matrix_zero(m_matrix(reference_monoimplicit3())));
  }

  SUBCASE("explicit euler") {
    const ButcherTableau euler(mat({{q(0)}}), vec({q(1)}));
    CHECK(matrix_eq(m_matrix(euler), mat({{q(1)}})));
  }
}

TEST_CASE("quadratic preservation check") {
  const ExtendedTableau ext =
      symmetric_projection_extended({q(1, 2), q(1), q(1, 2)});

  SUBCASE("leapfrog fixture passes with the expected kernel basis") {
    const QuadraticPreservation r = quadratic_preservation_check(ext);
    CHECK(r.preserved);
    CHECK(r.b_tail_zero);
    CHECK(r.vtmv_zero);
    CHECK(matrix_eq(r.V, mat({{q(2), q(-1), q(-8)},
                              {q(1), q(0), q(0)},
                              {q(0), q(1), q(0)},
                              {q(0), q(0), q(1)}})));
    CHECK(matrix_zero(r.VtMV));
  }

  SUBCASE("random substeps pass") {
    std::mt19937 rng(31);
    for (int s : {3, 5, 7}) {
      const std::vector<Scalar> a = random_alternating(s, rng);
      CHECK(quadratic_preservation_check(symmetric_projection_extended(a))
                .preserved);
    }
  }

  SUBCASE("nonzero weight on the constrained slope fails") {
    SVec b = ext.b();
    b[3] = Scalar(1);
    const QuadraticPreservation r = quadratic_preservation_check(
        ExtendedTableau(3, ext.a(), b, ext.d()));
    CHECK_FALSE(r.preserved);
    CHECK_FALSE(r.b_tail_zero);
  }

  SUBCASE("rank-deficient constraints are rejected at construction") {
    CHECK_THROWS_AS(
        ExtendedTableau(3, ext.a(), ext.b(), SMat::Zero(1, 4)),
        std::invalid_argument);
  }
}

TEST_CASE("monoimplicit decomposition") {
  SUBCASE("reference method factors through the leapfrog L") {
    const MonoimplicitForm f = monoimplicit_decompose(reference_monoimplicit3());
    CHECK(matrix_eq(f.L, mat({{q(0), q(0), q(0)},
                              {q(1, 2), q(0), q(0)},
                              {q(0), q(1), q(0)}})));
    CHECK(vector_eq(f.u, vec({q(1), q(-1), q(1)})));
    CHECK(vector_eq(f.v, vec({q(1, 2), q(-1), q(1, 2)})));
    const SMat back = f.L + SMat(q(1, 4) * (f.u * f.v.transpose()));
    CHECK(matrix_eq(back, reference_monoimplicit3().A()));
  }

  SUBCASE("explicit methods decompose trivially") {
    const MonoimplicitForm f = monoimplicit_decompose(reference_midpoint3());
    CHECK(matrix_eq(f.L, reference_midpoint3().A()));
    for (Eigen::Index i = 0; i < 3; ++i) {
      CHECK(f.u[i].is_zero());
      CHECK(f.v[i].is_zero());
    }
  }

  SUBCASE("random monoimplicit tableaux recover the family factors") {
    std::mt19937 rng(41);
    for (int s : {3, 5, 7}) {
      const std::vector<Scalar> a = random_alternating(s, rng);
      const ButcherTableau t = monoimplicit_tableau(a);
      const MonoimplicitForm f = monoimplicit_decompose(t);
      for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = i; j < s; ++j) CHECK(f.L(i, j).is_zero());
        for (Eigen::Index j = 0; j < s; ++j) {
          const Scalar expect =
              ((i + j) % 2 == 0 ? Scalar(1) : Scalar(-1)) * a[size_t(j)];
          CHECK(f.u[i] * f.v[j] == expect);
        }
      }
      const SMat back = f.L + SMat(q(1, 4) * (f.u * f.v.transpose()));
      CHECK(matrix_eq(back, t.A()));
    }
  }

  SUBCASE("dense two-stage methods with nonzero upper entries decompose") {
    // A fully implicit pair in the mold of the two-stage Gauss method; any
    // dense upper part with nonzero corners admits the rank-one completion.
    const ButcherTableau gauss_like(
        mat({{q(1, 4), q(-1, 12)}, {q(7, 12), q(1, 4)}}),
        vec({q(1, 2), q(1, 2)}));
    const MonoimplicitForm f = monoimplicit_decompose(gauss_like);
    CHECK(matrix_eq(SMat(f.L + SMat(q(1, 4) * (f.u * f.v.transpose()))),
                    gauss_like.A()));
    CHECK(f.L(0, 0).is_zero());
    CHECK(f.L(0, 1).is_zero());
    CHECK(f.L(1, 1).is_zero());
  }

  SUBCASE("diagonally implicit methods with zero upper part are rejected") {
    const ButcherTableau sdirk(mat({{q(1, 4), q(0)}, {q(1, 2), q(1, 4)}}),
                               vec({q(1, 2), q(1, 2)}));
    CHECK_THROWS_AS(monoimplicit_decompose(sdirk), std::domain_error);
  }
}

TEST_CASE("composition of tableaux") {
  const ButcherTableau euler(mat({{q(0)}}), vec({q(1)}));

  SUBCASE("identity operand") {
    CHECK(compose(reference_midpoint3(), Scalar(1), ButcherTableau(), Scalar(0)) ==
          reference_midpoint3());
    CHECK(compose(ButcherTableau(), Scalar(0), reference_midpoint3(), Scalar(1)) ==
          reference_midpoint3());
  }

  SUBCASE("two half euler steps") {
    const ButcherTableau t = compose(euler, q(1, 2), euler, q(1, 2));
    CHECK(t == ButcherTableau(mat({{q(0), q(0)}, {q(1, 2), q(0)}}),
                              vec({q(1, 2), q(1, 2)})));
    const TreeTable table(2);
    ElementaryWeights phi(t.A(), t.b(), table);
    CHECK(phi.weight(RootedTree::leaf()) == Scalar(1));
    CHECK(phi.weight(RootedTree::path(2)) == q(1, 4));
  }

  SUBCASE("signed self-composition has zero weight sum") {
    const ButcherTableau t =
        compose(reference_midpoint3(), Scalar(-1), reference_midpoint3(), Scalar(1));
    CHECK(t.stages() == 6);
    Scalar bsum = 0;
    for (Eigen::Index i = 0; i < 6; ++i) bsum += t.b()[i];
    CHECK(bsum.is_zero());
    // First block feeds the second through r1 * b1.
    for (Eigen::Index i = 3; i < 6; ++i)
      for (Eigen::Index j = 0; j < 3; ++j)
        CHECK(t.A()(i, j) == -reference_midpoint3().b()[j]);
  }
}

TEST_CASE("adjoint tableau") {
  const ButcherTableau euler(mat({{q(0)}}), vec({q(1)}));

  SUBCASE("euler pair") {
    const ButcherTableau adj = adjoint(euler);
    CHECK(adj == ButcherTableau(mat({{q(1)}}), vec({q(1)})));
  }

  SUBCASE("monoimplicit method is self-adjoint") {
    CHECK(adjoint(reference_monoimplicit3()) == reference_monoimplicit3());
    // Palindromic substeps give symmetric methods.
    std::mt19937 rng(61);
    for (int rep = 0; rep < 4; ++rep) {
      const Scalar x = random_rational(rng), y = random_rational(rng);
      const std::vector<Scalar> a5 = {x, q(1, 2), Scalar(1) - 2 * x, q(1, 2), x};
      const std::vector<Scalar> a7 = {x,           y, q(1, 2) - x, Scalar(1) - 2 * y,
                                      q(1, 2) - x, y, x};
      CHECK(adjoint(monoimplicit_tableau(a5)) == monoimplicit_tableau(a5));
      CHECK(adjoint(monoimplicit_tableau(a7)) == monoimplicit_tableau(a7));
    }
  }

  SUBCASE("midpoint projection method is not self-adjoint") {
    CHECK(adjoint(reference_midpoint3()) != reference_midpoint3());
  }

  SUBCASE("involution") {
    std::mt19937 rng(71);
    SMat A(3, 3);
    SVec b(3);
    for (Eigen::Index i = 0; i < 3; ++i) {
      b[i] = random_rational(rng);
      for (Eigen::Index j = 0; j < 3; ++j) A(i, j) = random_rational(rng);
    }
    const ButcherTableau t(A, b);
    CHECK(adjoint(adjoint(t)) == t);
  }
}

TEST_CASE("tableau json round trip") {
  const ButcherTableau tj =
      midpoint_projection_tableau(composition_alphas(Scheme::TripleJump4));
  const nlohmann::json j = tableau_to_json(tj);
  CHECK(j["m"] == 7);
  CHECK(j["meta"]["construction"] == "midpoint");
  CHECK(tableau_from_json(j) == tj);

  nlohmann::json bad = j;
  bad["c"][0] = scalar_to_json(Scalar(1));
  CHECK_THROWS_AS(tableau_from_json(bad), std::invalid_argument);

  const ExtendedTableau ext =
      symmetric_projection_extended({q(1, 2), q(1), q(1, 2)});
  const nlohmann::json je = extended_to_json(ext);
  const ExtendedTableau back = extended_from_json(je);
  CHECK(matrix_eq(back.a(), ext.a()));
  CHECK(vector_eq(back.b(), ext.b()));
  CHECK(matrix_eq(back.d(), ext.d()));
  CHECK(back.meta().construction == "symmetric");
}

TEST_CASE("tableau formatting") {
  const std::string s = format_tableau(reference_monoimplicit3());
  CHECK(s.find("0.375") != std::string::npos);
  CHECK(s.find(" | ") != std::string::npos);
  const std::string e =
      format_extended(symmetric_projection_extended({q(1, 2), q(1), q(1, 2)}));
  CHECK(e.find("-4") != std::string::npos);
  CHECK(e.find("d1") != std::string::npos);
}

TEST_CASE("alternating schedule from whole-map sizes") {
  const std::vector<Scalar> lf = alternating_alphas({Scalar(1)});
  REQUIRE(lf.size() == 3);
  CHECK(lf[0] == q(1, 2));
  CHECK(lf[1] == q(1));
  CHECK(lf[2] == q(1, 2));

  const std::vector<Scalar> tj =
      alternating_alphas(composition_alphas(Scheme::TripleJump4));
  REQUIRE(tj.size() == 7);
  validate_alternating_alphas(tj);  // both interleaved flows sum to 1
  CHECK(matrix_zero(m_matrix(monoimplicit_tableau(tj))));

  const std::vector<Scalar> sz =
      alternating_alphas(composition_alphas(Scheme::Suzuki4));
  REQUIRE(sz.size() == 11);
  validate_alternating_alphas(sz);

  CHECK_THROWS_AS(alternating_alphas({}), std::invalid_argument);
}
