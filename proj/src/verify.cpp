#include "xpsrk/verify.hpp"

#include "xpsrk/analysis.hpp"
#include "xpsrk/integrate.hpp"
#include "xpsrk/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace xpsrk {
namespace {

using nlohmann::json;

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

SVec svec(std::initializer_list<Scalar> xs) {
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

const ButcherTableau& midpoint3_fixture() {
  static const ButcherTableau t(
      mat({{q(0), q(0), q(0)}, {q(1, 2), q(0), q(0)}, {q(0), q(1), q(0)}}),
      svec({q(1, 4), q(1, 2), q(1, 4)}));
  return t;
}

const ButcherTableau& monoimplicit3_fixture() {
  static const ButcherTableau t(mat({{q(1, 8), q(-1, 4), q(1, 8)},
                                     {q(3, 8), q(1, 4), q(-1, 8)},
                                     {q(1, 8), q(3, 4), q(1, 8)}}),
                                svec({q(1, 4), q(1, 2), q(1, 4)}));
  return t;
}

Scalar random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long long> num(-9, 9), den(1, 9);
  return Scalar::rational(num(rng), den(rng));
}

// Nonzero substep lists whose interleaved flows each sum to 1.
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

Problem<double> random_smooth_problem(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RMat<double> B(dim, dim), S(dim, dim);
  RVec<double> c(dim);
  for (int i = 0; i < dim; ++i) {
    c[i] = U(rng);
    for (int j = 0; j < dim; ++j) {
      B(i, j) = U(rng);
      S(i, j) = U(rng);
    }
  }
  Problem<double> p;
  p.name = "random";
  p.dim = dim;
  p.f = [B, S, c, dim](const RVec<double>& z) {
    RVec<double> out = c;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        out[i] += B(i, j) * z[j] + S(i, j) * std::sin(z[j]);
    return out;
  };
  return p;
}

RVec<double> random_state(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RVec<double> z(dim);
  for (int i = 0; i < dim; ++i) z[i] = U(rng);
  return z;
}

double rel_diff(const RVec<double>& a, const RVec<double>& b) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  const double n = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sxx += lx * lx;
    sy += ly;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct SecularFit {
  double rate = 0;
  double se = 0;
};

// Least-squares slope of y against t = h*i over i in [skip, n), with the
// standard error of that slope.
SecularFit secular_rate(const std::vector<double>& y, double h, size_t skip) {
  const size_t n = y.size();
  const size_t m = n - skip;
  double tbar = 0;
  for (size_t i = skip; i < n; ++i) tbar += h * double(i);
  tbar /= double(m);
  double stt = 0, ste = 0, sy = 0;
  for (size_t i = skip; i < n; ++i) {
    const double t = h * double(i) - tbar;
    stt += t * t;
    ste += t * y[i];
    sy += y[i];
  }
  SecularFit f;
  f.rate = ste / stt;
  const double ybar = sy / double(m);
  double sse = 0;
  for (size_t i = skip; i < n; ++i) {
    const double t = h * double(i) - tbar;
    const double r = y[i] - ybar - f.rate * t;
    sse += r * r;
  }
  f.se = std::sqrt(std::max(0.0, sse / double(m - 2)) / stt);
  return f;
}

VerifyCheck check_1() {
  VerifyCheck c{1, "midpoint construction reproduces the 3-stage tableau", false,
                false, {}};
  const ButcherTableau got = midpoint_projection_tableau({Scalar(1)});
  c.passed = (got == midpoint3_fixture());
  c.details = {{"stages", got.stages()}, {"entrywise_equal", c.passed}};
  return c;
}

VerifyCheck check_2() {
  VerifyCheck c{2, "7-stage symbolic pattern; 4th-order schemes have classical order 4",
                false, false, {}};
  const Scalar a1 = q(1, 5), a2 = q(3, 10), a3 = q(1, 2);
  const Scalar h = q(1, 2), qt = q(1, 4), z = q(0);
  const ButcherTableau t = midpoint_projection_tableau({a1, a2, a3});
  const bool pattern =
      t.stages() == 7 &&
      matrix_eq(t.A(),
                mat({{z, z, z, z, z, z, z},
                     {h * a1, z, z, z, z, z, z},
                     {z, a1, z, z, z, z, z},
                     {h * a1, z, h * (a1 + a2), z, z, z, z},
                     {z, a1, z, a2, z, z, z},
                     {h * a1, z, h * (a1 + a2), z, h * (a2 + a3), z, z},
                     {z, a1, z, a2, z, a3, z}})) &&
      vector_eq(t.b(), svec({qt * a1, h * a1, qt * (a1 + a2), h * a2,
                             qt * (a2 + a3), h * a3, qt * a3}));

  const ButcherTableau tj =
      midpoint_projection_tableau(composition_alphas(Scheme::TripleJump4));
  const ButcherTableau su =
      midpoint_projection_tableau(composition_alphas(Scheme::Suzuki4));
  const int tj_order = classical_order(tj, 5).order;
  const int su_order = classical_order(su, 5).order;
  c.passed = pattern && tj_order == 4 && su_order == 4 && su.stages() == 11;
  c.details = {{"pattern_equal", pattern},
               {"triple_jump", {{"stages", tj.stages()}, {"classical_order", tj_order}}},
               {"suzuki", {{"stages", su.stages()}, {"classical_order", su_order}}}};
  return c;
}

VerifyCheck check_3() {
  VerifyCheck c{3, "single-substep census 1,1,1,3,6 then 13 of 16; pseudo orders 5",
                false, false, {}};
  const ButcherTableau t = midpoint_projection_tableau({Scalar(1)});
  const PseudosymplecticResult sp = pseudosymplectic_order(t, 6);
  const PseudosymmetryResult sm = pseudosymmetry_order(t, 6);

  const int want_cond[6] = {1, 1, 1, 3, 6, 16};
  const int want_sat[6] = {1, 1, 1, 3, 6, 13};
  bool census_ok = sp.census.size() == 6;
  json census = json::array();
  for (size_t i = 0; i < sp.census.size(); ++i) {
    const CensusRow& r = sp.census[i];
    census.push_back({{"order", r.order},
                      {"conditions", r.conditions},
                      {"satisfied", r.satisfied}});
    if (i < 6 &&
        (r.order != int(i) + 1 || r.conditions != want_cond[i] ||
         r.satisfied != want_sat[i]))
      census_ok = false;
  }
  c.passed = census_ok && !sp.infinite && sp.order == 5 && !sm.infinite &&
             sm.order == 5;
  c.details = {{"census", census},
               {"pseudosymplectic_order", sp.order},
               {"pseudosymmetry_order", sm.order}};
  return c;
}

VerifyCheck check_4() {
  VerifyCheck c{4, "4th-order schemes: pseudosymplectic and pseudosymmetry order 9",
                false, false, {}};
  json details = json::object();
  bool ok = true;
  for (const Scheme s : {Scheme::TripleJump4, Scheme::Suzuki4}) {
    const ButcherTableau t = midpoint_projection_tableau(composition_alphas(s));
    const PseudosymplecticResult sp = pseudosymplectic_order(t, 10);
    const PseudosymmetryResult sm = pseudosymmetry_order(t, 10);
    ok = ok && !sp.infinite && sp.order == 9 && !sm.infinite && sm.order == 9;
    details[to_string(s)] = {{"stages", t.stages()},
                             {"pseudosymplectic_order", sp.order},
                             {"pseudosymmetry_order", sm.order}};
  }
  c.passed = ok;
  c.details = std::move(details);
  return c;
}

VerifyCheck check_5() {
  VerifyCheck c{5, "symmetric projection fixtures: extended tableau, M, kernel, eliminated",
                false, false, {}};
  const ExtendedTableau ext =
      symmetric_projection_extended({q(1, 2), q(1), q(1, 2)});
  const bool ext_ok =
      matrix_eq(ext.a(), mat({{q(0), q(0), q(0), q(-1)},
                              {q(1, 2), q(0), q(0), q(1)},
                              {q(0), q(1), q(0), q(-1)}})) &&
      vector_eq(ext.b(), svec({q(1, 4), q(1, 2), q(1, 4), q(0)})) &&
      matrix_eq(ext.d(), mat({{q(-1, 2), q(1), q(-1, 2), q(-4)}}));

  const Scalar w = q(1, 16);
  const bool m_ok = matrix_eq(m_matrix(ext),
                              mat({{w, -2 * w, w, 4 * w},
                                   {-2 * w, 4 * w, -2 * w, -8 * w},
                                   {w, -2 * w, w, 4 * w},
                                   {4 * w, -8 * w, 4 * w, q(0)}}));

  const QuadraticPreservation qp = quadratic_preservation_check(ext);
  const bool kernel_ok = qp.preserved && qp.vtmv_zero &&
                         matrix_eq(qp.V, mat({{q(2), q(-1), q(-8)},
                                              {q(1), q(0), q(0)},
                                              {q(0), q(1), q(0)},
                                              {q(0), q(0), q(1)}})) &&
                         matrix_zero(qp.VtMV);

  const ButcherTableau elim = eliminate_constraints(ext);
  const bool elim_ok =
      elim == monoimplicit3_fixture() && matrix_zero(m_matrix(elim));

  c.passed = ext_ok && m_ok && kernel_ok && elim_ok;
  c.details = {{"extended_equal", ext_ok},
               {"m_matrix_equal", m_ok},
               {"kernel_check", kernel_ok},
               {"eliminated_equal", elim_ok}};
  return c;
}

VerifyCheck check_6(std::uint64_t seed) {
  VerifyCheck c{6, "monoimplicit family symplectic; alternating triple-jump instance has order 4",
                false, false, {}};
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  int instances = 0;
  bool all_zero = true;
  for (const int s : {3, 5, 7})
    for (int rep = 0; rep < 3; ++rep) {
      const ButcherTableau t = monoimplicit_tableau(random_alternating(s, rng));
      all_zero = all_zero && matrix_zero(m_matrix(t));
      ++instances;
    }

  const ButcherTableau inst = monoimplicit_tableau(
      alternating_alphas(composition_alphas(Scheme::TripleJump4)));
  const bool inst_symplectic = matrix_zero(m_matrix(inst));
  const int inst_order = classical_order(inst, 5).order;

  c.passed = all_zero && inst_symplectic && inst_order == 4;
  c.details = {{"random_instances", instances},
               {"all_m_zero", all_zero},
               {"order4_instance",
                {{"stages", inst.stages()},
                 {"classical_order", inst_order},
                 {"m_zero", inst_symplectic}}}};
  return c;
}

VerifyCheck check_7(std::uint64_t seed) {
  VerifyCheck c{7, "stepper equivalences on random smooth problems", false,
                false, {}};
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + 7));
  SolverConfig cfg;
  cfg.tolerance = 1e-13;

  double mid_max = 0;
  const Scheme schemes[] = {Scheme::Leapfrog2, Scheme::TripleJump4,
                            Scheme::Suzuki4};
  for (int rep = 0; rep < 20; ++rep) {
    const int dim = 2 + rep % 3;
    const auto prob = random_smooth_problem(rng, dim);
    const RVec<double> z0 = random_state(rng, dim);
    for (const Scheme s : schemes) {
      const auto alphas = composition_alphas(s);
      const ButcherTableau tab = midpoint_projection_tableau(alphas);
      const RVec<double> a = midpoint_ext_step<double>(alphas, prob.f, z0, 0.02);
      const RVec<double> b = rk_step(tab, prob.f, z0, 0.02, cfg);
      mid_max = std::max(mid_max, rel_diff(a, b));
    }
  }

  double sym_max = 0;
  const std::vector<Scalar> lf = alternating_alphas({Scalar(1)});
  const auto rt = realize<double>(monoimplicit_tableau(lf));
  for (int rep = 0; rep < 20; ++rep) {
    const int dim = 2 + rep % 3;
    const auto prob = random_smooth_problem(rng, dim);
    const RVec<double> z0 = random_state(rng, dim);
    const RVec<double> a =
        symmetric_projection_step<double>(lf, prob.f, z0, 0.05, cfg);
    const RVec<double> b = rk_step(rt, prob.f, z0, 0.05, cfg);
    sym_max = std::max(sym_max, rel_diff(a, b));
  }

  const double sym_tol = std::max(10 * cfg.tolerance, 1e-12);
  c.passed = mid_max <= 1e-12 && sym_max <= sym_tol;
  c.details = {{"midpoint_max_rel", mid_max},
               {"midpoint_tol", 1e-12},
               {"symmetric_max_rel", sym_max},
               {"symmetric_tol", sym_tol}};
  return c;
}

json rates_to_json(const std::vector<DriftRate<double>>& rates) {
  json out = json::array();
  for (const auto& r : rates)
    out.push_back({{"h", r.h},
                   {"rate", r.rate},
                   {"rate_err", r.rate_err},
                   {"below_floor", r.below_floor}});
  return out;
}

template <class Real>
json rates_to_json_real(const std::vector<DriftRate<Real>>& rates) {
  json out = json::array();
  for (const auto& r : rates)
    out.push_back({{"h", static_cast<double>(r.h)},
                   {"rate", r.rate},
                   {"rate_err", r.rate_err},
                   {"below_floor", r.below_floor}});
  return out;
}

VerifyCheck check_8() {
  VerifyCheck c{8, "energy drift slopes 5 and 9 on the nonseparable problem",
                false, false, {}};
  const auto nonsep = builtin_problem<double>("nonseparable");
  auto mp1 = make_midpoint_stepper<double>({Scalar(1)});
  RVec<double> z0(2);
  z0 << 0.6, 0.4;
  const auto fit5 =
      drift_fit(mp1, nonsep, z0, std::vector<double>{0.2, 0.14, 0.1, 0.07}, 1e4);

  using R = Float128;
  const auto nonsep128 = builtin_problem<R>("nonseparable");
  auto tj4 = make_midpoint_stepper<R>(composition_alphas(Scheme::TripleJump4));
  RVec<R> w0(2);
  w0[0] = R(3) / R(5);
  w0[1] = R(2) / R(5);
  const std::vector<R> hs{R(1) / R(2), R(2) / R(5), R(3) / R(10), R(11) / R(50)};
  const auto fit9 = drift_fit(tj4, nonsep128, w0, hs, R(10000));

  c.passed = fit5.slope_defined && std::abs(fit5.slope - 5.0) <= 0.6 &&
             fit9.slope_defined && std::abs(fit9.slope - 9.0) <= 0.8;
  c.details = {{"single_substep",
                {{"slope", fit5.slope}, {"rates", rates_to_json(fit5.rates)}}},
               {"triple_jump_128bit",
                {{"slope", fit9.slope}, {"rates", rates_to_json_real(fit9.rates)}}}};
  return c;
}

VerifyCheck check_9() {
  VerifyCheck c{9, "defect exponents 6 (single substep) and 10 (4th order, 128-bit)",
                false, false, {}};
  const std::vector<double> hs{0.4, 0.2, 0.1, 0.05};

  const auto nonsep = builtin_problem<double>("nonseparable");
  auto mp1 = make_midpoint_stepper<double>({Scalar(1)});
  RVec<double> z0(2);
  z0 << 0.4, 0.1;
  std::vector<double> sp6, sm6;
  for (const double h : hs) {
    sp6.push_back(symplectic_defect(mp1, nonsep, z0, h));
    sm6.push_back(symmetry_defect(mp1, nonsep, z0, h));
  }
  const double sp6_slope = loglog_slope(hs, sp6);
  const double sm6_slope = loglog_slope(hs, sm6);

  using R = Float128;
  const auto nonsep128 = builtin_problem<R>("nonseparable");
  auto tj4 = make_midpoint_stepper<R>(composition_alphas(Scheme::TripleJump4));
  RVec<R> w0(2);
  w0[0] = R(2) / R(5);
  w0[1] = R(1) / R(10);
  std::vector<double> sp10, sm10;
  for (const double h : hs) {
    sp10.push_back(static_cast<double>(symplectic_defect(tj4, nonsep128, w0, R(h))));
    sm10.push_back(static_cast<double>(symmetry_defect(tj4, nonsep128, w0, R(h))));
  }
  const double sp10_slope = loglog_slope(hs, sp10);
  const double sm10_slope = loglog_slope(hs, sm10);

  c.passed = std::abs(sp6_slope - 6.0) <= 0.5 && std::abs(sm6_slope - 6.0) <= 0.5 &&
             std::abs(sp10_slope - 10.0) <= 0.5 &&
             std::abs(sm10_slope - 10.0) <= 0.5;
  c.details = {{"single_substep",
                {{"symplectic_slope", sp6_slope}, {"symmetry_slope", sm6_slope}}},
               {"triple_jump_128bit",
                {{"symplectic_slope", sp10_slope}, {"symmetry_slope", sm10_slope}}},
               {"h_grid", hs}};
  return c;
}

VerifyCheck check_10(std::uint64_t seed) {
  VerifyCheck c{10, "affine equivariance of all steppers", false, false, {}};
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + 10));
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  SolverConfig cfg;
  cfg.tolerance = 1e-13;

  std::vector<Stepper<double>> steppers;
  steppers.push_back(
      make_midpoint_stepper<double>(composition_alphas(Scheme::TripleJump4)));
  steppers.push_back(
      make_symmetric_stepper<double>(alternating_alphas({Scalar(1)}), cfg));
  steppers.push_back(make_rk_stepper<double>(
      monoimplicit_tableau(alternating_alphas({Scalar(1)})), cfg));
  steppers.push_back(
      make_rk_stepper<double>(midpoint_projection_tableau({Scalar(1)}), cfg));

  double worst = 0;
  for (int rep = 0; rep < 6; ++rep) {
    const int dim = 2 + rep % 2;
    const auto prob = random_smooth_problem(rng, dim);
    RMat<double> T = RMat<double>::Identity(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) T(i, j) += 0.3 * U(rng);
    const RMat<double> Tinv = T.inverse();
    RVec<double> shift(dim);
    for (int i = 0; i < dim; ++i) shift[i] = U(rng);

    Problem<double> mapped;
    mapped.name = "mapped";
    mapped.dim = dim;
    mapped.f = [T, Tinv, shift, f = prob.f](const RVec<double>& y) -> RVec<double> {
      return T * f(Tinv * (y - shift));
    };

    const RVec<double> z0 = random_state(rng, dim);
    const RVec<double> y0 = T * z0 + shift;
    for (const auto& stepper : steppers) {
      const RVec<double> direct = stepper(mapped, y0, 0.05, nullptr);
      const RVec<double> pushed = T * stepper(prob, z0, 0.05, nullptr) + shift;
      worst = std::max(worst, rel_diff(direct, pushed));
    }
  }
  c.passed = worst <= 1e-12;
  c.details = {{"max_rel", worst}, {"tol", 1e-12}};
  return c;
}

VerifyCheck check_11() {
  VerifyCheck c{11, "secular drift contrast: symplectic flat, projected method drifts",
                false, false, {}};
  SolverConfig cfg;
  cfg.tolerance = 1e-12;
  const long n = 100000;
  const double h = 0.1;

  const auto harmonic = builtin_problem<double>("harmonic");
  auto mono = make_rk_stepper<double>(
      monoimplicit_tableau(alternating_alphas({Scalar(1)})), cfg);
  RVec<double> z1(2);
  z1 << 1.0, 0.0;
  const auto traj_m = integrate(mono, harmonic, z1, h, n);
  const SecularFit fm = secular_rate(traj_m.quad_error, h, size_t(n / 10));
  const double mono_floor = std::max(3 * fm.se, 1e-10);
  const bool mono_flat = std::abs(fm.rate) <= mono_floor;

  const auto nonsep = builtin_problem<double>("nonseparable");
  auto mp1 = make_midpoint_stepper<double>({Scalar(1)});
  RVec<double> z0(2);
  z0 << 0.6, 0.4;
  const auto traj_s = integrate(mp1, nonsep, z0, h, n);
  const SecularFit fs = secular_rate(traj_s.energy_error, h, size_t(n / 10));
  const double s1_floor = std::max(3 * fs.se, 1e-10);
  const bool s1_drifts = std::abs(fs.rate) >= 10 * s1_floor;

  c.passed = mono_flat && s1_drifts;
  c.details = {{"monoimplicit",
                {{"quad_rate", fm.rate}, {"rate_err", fm.se}, {"floor", mono_floor}}},
               {"single_substep",
                {{"energy_rate", fs.rate}, {"rate_err", fs.se}, {"floor", s1_floor}}},
               {"steps", n},
               {"h", h}};
  return c;
}

}  // namespace

std::vector<VerifyCheck> run_verification(
    const VerifyOptions& opt,
    const std::function<void(const VerifyCheck&)>& on_check) {
  std::vector<VerifyCheck> out;
  const auto want = [&](int id) {
    return opt.only.empty() ||
           std::find(opt.only.begin(), opt.only.end(), id) != opt.only.end();
  };
  const auto push = [&](VerifyCheck c) {
    if (on_check) on_check(c);
    out.push_back(std::move(c));
  };
  const auto numeric = [&](int id, const std::string& name, auto&& fn) {
    if (!want(id)) return;
    if (opt.skip_numeric) {
      push({id, name + " [skipped: exact-only run]", false, true, {}});
      return;
    }
    push(fn());
  };

  if (want(1)) push(check_1());
  if (want(2)) push(check_2());
  if (want(3)) push(check_3());
  if (want(4)) push(check_4());
  if (want(5)) push(check_5());
  if (want(6)) push(check_6(opt.seed));
  numeric(7, "stepper equivalences on random smooth problems",
          [&] { return check_7(opt.seed); });
  numeric(8, "energy drift slopes 5 and 9 on the nonseparable problem", check_8);
  numeric(9, "defect exponents 6 (single substep) and 10 (4th order, 128-bit)",
          check_9);
  numeric(10, "affine equivariance of all steppers",
          [&] { return check_10(opt.seed); });
  numeric(11, "secular drift contrast: symplectic flat, projected method drifts",
          check_11);
  return out;
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  for (const VerifyCheck& c : checks)
    if (!c.skipped && !c.passed) return false;
  return true;
}

}  // namespace xpsrk
