#pragma once

#include "xpsrk/scalar.hpp"
#include "xpsrk/tableau.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xpsrk {

template <class Real>
using RVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <class Real>
using RMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

/// Thrown when an implicit solve fails to reach tolerance.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double last_residual() const { return residual_; }

 private:
  double residual_;
};

enum class SolveStrategy { FixedPoint, Newton };
enum class JacobianMode { ForwardSensitivity, FiniteDifference };

struct SolverConfig {
  SolveStrategy strategy = SolveStrategy::Newton;
  double tolerance = 1e-12;  // residual sup norm
  int max_iterations = 50;
  JacobianMode jacobian = JacobianMode::ForwardSensitivity;
};

/// Per-step solver diagnostics.
struct StepStats {
  int iterations = 0;
  double residual = 0;
  double mu_norm = 0;
};

/** First-order ODE with optional Hamiltonian structure.
 *
 * `f` is the vector field; `df` its Jacobian (needed for forward-sensitivity
 * tangents); `hamiltonian` is conserved along exact flows with f = J grad H.
 * `C` (symmetric) marks z^T C z as invariant; `J` (skew) is the symplectic
 * structure. Empty matrices / null functions mean "absent".
 */
template <class Real>
struct Problem {
  std::string name;
  int dim = 0;
  std::function<RVec<Real>(const RVec<Real>&)> f;
  std::function<RMat<Real>(const RVec<Real>&)> df;
  std::function<Real(const RVec<Real>&)> hamiltonian;
  RMat<Real> C;
  RMat<Real> J;

  bool has_jacobian() const { return bool(df); }
  bool has_hamiltonian() const { return bool(hamiltonian); }
  bool has_quadratic() const { return C.size() > 0; }
  bool has_structure() const { return J.size() > 0; }
};

/// One-step map: (problem, state, h) -> state, with optional diagnostics.
template <class Real>
using Stepper = std::function<RVec<Real>(const Problem<Real>&,
                                         const RVec<Real>&, Real, StepStats*)>;

namespace detail {

template <class Real>
Real sup_norm(const RVec<Real>& v) {
  using std::abs;
  Real m{0};
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (m < abs(v[i])) m = abs(v[i]);
  return m;
}

/** Drives residual(x) to zero.  FixedPoint iterates x += gain * residual;
 * Newton refreshes a forward-difference Jacobian of the residual at every
 * iteration (the systems here are tiny).
 */
template <class Real, class Fn>
RVec<Real> solve_root(Fn&& residual, RVec<Real> x, const Real& gain,
                      const SolverConfig& cfg, const char* what,
                      StepStats* stats) {
  using std::abs;
  using std::isnan;
  using std::sqrt;
  if (cfg.tolerance <= 0 || cfg.max_iterations < 1)
    throw std::invalid_argument("solver config: tolerance > 0 and at least one iteration required");
  const Real tol(cfg.tolerance);
  const Real eps = sqrt(std::numeric_limits<Real>::epsilon());
  Real norm{0};
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const RVec<Real> r = residual(x);
    norm = sup_norm(r);
    if (stats) {
      stats->iterations = it;
      stats->residual = static_cast<double>(norm);
    }
    if (isnan(norm))
      throw SolverFailure(std::string(what) + ": residual is NaN",
                          std::numeric_limits<double>::quiet_NaN());
    if (norm <= tol) return x;
    if (cfg.strategy == SolveStrategy::FixedPoint) {
      x += gain * r;
    } else {
      const Eigen::Index n = x.size();
      RMat<Real> Jr(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        Real step = eps;
        if (step < eps * abs(x[j])) step = eps * abs(x[j]);
        RVec<Real> xp = x;
        xp[j] += step;
        Jr.col(j) = (residual(xp) - r) / step;
      }
      x -= Jr.partialPivLu().solve(r);
    }
  }
  throw SolverFailure(std::string(what) + ": no convergence after " +
                          std::to_string(cfg.max_iterations) + " iterations",
                      static_cast<double>(norm));
}

}  // namespace detail

/// Tableau with entries lowered to Real, classified by how it can be solved.
template <class Real>
struct RealizedTableau {
  enum class Form { Explicit, Monoimplicit, FullyImplicit };
  RMat<Real> A;
  RVec<Real> b;
  Form form = Form::Explicit;
  // A = L + (1/4) u v^T with L strictly lower, when form == Monoimplicit.
  RMat<Real> L;
  RVec<Real> u, v;
};

template <class Real>
RealizedTableau<Real> realize(const ButcherTableau& tab) {
  const int m = tab.stages();
  RealizedTableau<Real> out;
  out.A.resize(m, m);
  out.b.resize(m);
  for (int i = 0; i < m; ++i) {
    out.b[i] = to_real<Real>(tab.b()[i]);
    for (int j = 0; j < m; ++j) out.A(i, j) = to_real<Real>(tab.A()(i, j));
  }
  if (tab.is_explicit()) {
    out.form = RealizedTableau<Real>::Form::Explicit;
    return out;
  }
  try {
    const MonoimplicitForm mono = monoimplicit_decompose(tab);
    out.form = RealizedTableau<Real>::Form::Monoimplicit;
    out.L.resize(m, m);
    out.u.resize(m);
    out.v.resize(m);
    for (int i = 0; i < m; ++i) {
      out.u[i] = to_real<Real>(mono.u[i]);
      out.v[i] = to_real<Real>(mono.v[i]);
      for (int j = 0; j < m; ++j) out.L(i, j) = to_real<Real>(mono.L(i, j));
    }
  } catch (const std::domain_error&) {
    out.form = RealizedTableau<Real>::Form::FullyImplicit;
  }
  return out;
}

/** One Runge-Kutta step y = z + h sum b_i f(Z_i).
 *
 * Strictly-lower A runs without a solver.  A monoimplicit tableau solves
 * only for the dim-sized coupling w = sum v_j k_j; given w the stages
 * resolve in sequence through the strictly lower part.  Anything else
 * solves all stage slopes at once.
 */
template <class Real, class F>
RVec<Real> rk_step(const RealizedTableau<Real>& rt, F&& f, const RVec<Real>& z,
                   const Real& h, const SolverConfig& cfg,
                   StepStats* stats = nullptr) {
  using Form = typename RealizedTableau<Real>::Form;
  const int m = int(rt.b.size());
  const Eigen::Index d = z.size();
  std::vector<RVec<Real>> k(static_cast<size_t>(m));

  auto check_dim = [&](const RVec<Real>& slope) {
    if (slope.size() != d)
      throw std::invalid_argument("rk_step: vector field dimension mismatch");
  };

  if (rt.form == Form::Explicit) {
    for (int i = 0; i < m; ++i) {
      RVec<Real> Zi = z;
      for (int j = 0; j < i; ++j)
        if (rt.A(i, j) != Real(0)) Zi += h * rt.A(i, j) * k[size_t(j)];
      k[size_t(i)] = f(Zi);
      check_dim(k[size_t(i)]);
    }
    if (stats) *stats = StepStats{};
  } else if (rt.form == Form::Monoimplicit) {
    const Real quarter = Real(1) / Real(4);
    auto fill_stages = [&](const RVec<Real>& w) {
      for (int i = 0; i < m; ++i) {
        RVec<Real> Zi = z + (h * quarter * rt.u[i]) * w;
        for (int j = 0; j < i; ++j)
          if (rt.L(i, j) != Real(0)) Zi += h * rt.L(i, j) * k[size_t(j)];
        k[size_t(i)] = f(Zi);
        check_dim(k[size_t(i)]);
      }
    };
    auto residual = [&](const RVec<Real>& w) -> RVec<Real> {
      fill_stages(w);
      RVec<Real> r = RVec<Real>::Zero(d);
      for (int j = 0; j < m; ++j)
        if (rt.v[j] != Real(0)) r += rt.v[j] * k[size_t(j)];
      return r - w;
    };
    const RVec<Real> w = detail::solve_root<Real>(
        residual, RVec<Real>::Zero(d).eval(), Real(1), cfg, "rk_step", stats);
    fill_stages(w);
  } else {
    const RVec<Real> f0 = f(z);
    check_dim(f0);
    auto unpack = [&](const RVec<Real>& K) {
      for (int i = 0; i < m; ++i) {
        RVec<Real> Zi = z;
        for (int j = 0; j < m; ++j)
          if (rt.A(i, j) != Real(0))
            Zi += h * rt.A(i, j) * K.segment(j * d, d);
        k[size_t(i)] = f(Zi);
        check_dim(k[size_t(i)]);
      }
    };
    auto residual = [&](const RVec<Real>& K) -> RVec<Real> {
      unpack(K);
      RVec<Real> r(m * d);
      for (int i = 0; i < m; ++i)
        r.segment(i * d, d) = k[size_t(i)] - K.segment(i * d, d);
      return r;
    };
    RVec<Real> K0(m * d);
    for (int i = 0; i < m; ++i) K0.segment(i * d, d) = f0;
    const RVec<Real> K = detail::solve_root<Real>(residual, std::move(K0),
                                                  Real(1), cfg, "rk_step", stats);
    unpack(K);
  }

  RVec<Real> y = z;
  for (int i = 0; i < m; ++i)
    if (rt.b[i] != Real(0)) y += h * rt.b[i] * k[size_t(i)];
  return y;
}

template <class Real, class F>
RVec<Real> rk_step(const ButcherTableau& tab, F&& f, const RVec<Real>& z,
                   const Real& h, const SolverConfig& cfg,
                   StepStats* stats = nullptr) {
  return rk_step(realize<Real>(tab), std::forward<F>(f), z, h, cfg, stats);
}

template <class Real>
std::vector<Real> realize_alphas(const std::vector<Scalar>& alphas) {
  std::vector<Real> out;
  out.reserve(alphas.size());
  for (const Scalar& a : alphas) out.push_back(to_real<Real>(a));
  return out;
}

/** Midpoint-projected step: run the duplicated chains directly and average.
 *
 * The two copies advance through the merged substep ladder (each copy's
 * slope is evaluated on the other copy), then the step returns the midpoint
 * of the two ends. Algebraically identical to rk_step on
 * midpoint_projection_tableau(alphas).
 */
template <class Real, class F>
RVec<Real> midpoint_ext_step(const std::vector<Real>& alphas, F&& f,
                             const RVec<Real>& z, const Real& h) {
  const int s = int(alphas.size());
  if (s < 1) throw std::invalid_argument("midpoint_ext_step: empty schedule");
  const Real half = Real(1) / Real(2);
  RVec<Real> zc = z, hc = z;
  for (int blk = 0; blk <= s; ++blk) {
    Real step;
    if (blk == 0)
      step = half * alphas[0];
    else if (blk == s)
      step = half * alphas[size_t(s - 1)];
    else
      step = half * (alphas[size_t(blk - 1)] + alphas[size_t(blk)]);
    zc += (h * step) * f(hc);
    if (blk < s) hc += (h * alphas[size_t(blk)]) * f(zc);
  }
  return half * (zc + hc);
}

template <class Real, class F>
RVec<Real> midpoint_ext_step(const std::vector<Scalar>& alphas, F&& f,
                             const RVec<Real>& z, const Real& h) {
  validate_midpoint_alphas(alphas);
  return midpoint_ext_step(realize_alphas<Real>(alphas), std::forward<F>(f), z, h);
}

/** Symmetrically projected step: perturb the two copies to (z + mu, z - mu),
 * run the alternating substep chain, add the same perturbation again, and
 * pick mu so both copies land on the diagonal.  g(mu) = 0 is solved by
 * cfg.strategy from mu = 0; mu is dim-sized.
 */
template <class Real, class F>
RVec<Real> symmetric_projection_step(const std::vector<Real>& alphas, F&& f,
                                     const RVec<Real>& z, const Real& h,
                                     const SolverConfig& cfg,
                                     StepStats* stats = nullptr) {
  const int s = int(alphas.size());
  if (s < 1)
    throw std::invalid_argument("symmetric_projection_step: empty schedule");
  RVec<Real> zc, hc;
  auto run_chain = [&](const RVec<Real>& mu) {
    zc = z + mu;
    hc = z - mu;
    for (int i = 0; i < s; ++i) {
      if (i % 2 == 0)
        zc += (h * alphas[size_t(i)]) * f(hc);
      else
        hc += (h * alphas[size_t(i)]) * f(zc);
    }
  };
  auto residual = [&](const RVec<Real>& mu) -> RVec<Real> {
    run_chain(mu);
    return zc - hc + Real(2) * mu;
  };
  // dg/dmu = 4 I + O(h): the offset enters the endpoints with weight 2 and
  // the on-diagonal condition with another 2, so -1/4 contracts like O(h).
  const Real minus_quarter = Real(-1) / Real(4);
  const RVec<Real> mu = detail::solve_root<Real>(
      residual, RVec<Real>::Zero(z.size()).eval(), minus_quarter, cfg,
      "symmetric_projection_step", stats);
  if (stats) stats->mu_norm = static_cast<double>(detail::sup_norm(mu));
  run_chain(mu);
  return (Real(1) / Real(2)) * (zc + hc);
}

template <class Real, class F>
RVec<Real> symmetric_projection_step(const std::vector<Scalar>& alphas, F&& f,
                                     const RVec<Real>& z, const Real& h,
                                     const SolverConfig& cfg,
                                     StepStats* stats = nullptr) {
  validate_alternating_alphas(alphas);
  return symmetric_projection_step(realize_alphas<Real>(alphas),
                                   std::forward<F>(f), z, h, cfg, stats);
}

// ---- stepper factories --------------------------------------------------

template <class Real>
Stepper<Real> make_rk_stepper(const ButcherTableau& tab, SolverConfig cfg = {}) {
  return [rt = realize<Real>(tab), cfg](const Problem<Real>& prob,
                                        const RVec<Real>& z, Real h,
                                        StepStats* stats) {
    return rk_step(rt, prob.f, z, h, cfg, stats);
  };
}

template <class Real>
Stepper<Real> make_midpoint_stepper(const std::vector<Scalar>& alphas) {
  validate_midpoint_alphas(alphas);
  return [a = realize_alphas<Real>(alphas)](const Problem<Real>& prob,
                                            const RVec<Real>& z, Real h,
                                            StepStats* stats) {
    if (stats) *stats = StepStats{};
    return midpoint_ext_step(a, prob.f, z, h);
  };
}

template <class Real>
Stepper<Real> make_symmetric_stepper(const std::vector<Scalar>& alphas,
                                     SolverConfig cfg = {}) {
  validate_alternating_alphas(alphas);
  return [a = realize_alphas<Real>(alphas), cfg](const Problem<Real>& prob,
                                                 const RVec<Real>& z, Real h,
                                                 StepStats* stats) {
    return symmetric_projection_step(a, prob.f, z, h, cfg, stats);
  };
}

// ---- trajectories -------------------------------------------------------

template <class Real>
struct Trajectory {
  std::vector<Real> times;             // t_n = n h, n = 0..n_steps
  std::vector<RVec<Real>> states;      // same length as times
  std::vector<Real> energy_error;      // H(z_n) - H(z_0); empty without H
  std::vector<Real> quad_error;        // z^T C z drift; empty without C
  std::vector<int> iterations;         // per step, length n_steps
};

template <class Real>
Trajectory<Real> integrate(const Stepper<Real>& stepper,
                           const Problem<Real>& prob, const RVec<Real>& z0,
                           const Real& h, long n_steps) {
  if (n_steps < 1) throw std::invalid_argument("integrate: n_steps >= 1");
  Trajectory<Real> out;
  out.times.reserve(size_t(n_steps) + 1);
  out.states.reserve(size_t(n_steps) + 1);
  const bool has_h = prob.has_hamiltonian();
  const bool has_q = prob.has_quadratic();
  const Real H0 = has_h ? prob.hamiltonian(z0) : Real(0);
  const Real Q0 = has_q ? Real(z0.dot(prob.C * z0)) : Real(0);
  RVec<Real> z = z0;
  out.times.push_back(Real(0));
  out.states.push_back(z);
  if (has_h) out.energy_error.push_back(Real(0));
  if (has_q) out.quad_error.push_back(Real(0));
  for (long n = 1; n <= n_steps; ++n) {
    StepStats st;
    try {
      z = stepper(prob, z, h, &st);
    } catch (const SolverFailure& e) {
      throw SolverFailure("step " + std::to_string(n) + ": " + e.what(),
                          e.last_residual());
    }
    out.times.push_back(Real(n) * h);
    out.states.push_back(z);
    out.iterations.push_back(st.iterations);
    if (has_h) out.energy_error.push_back(prob.hamiltonian(z) - H0);
    if (has_q) out.quad_error.push_back(Real(z.dot(prob.C * z)) - Q0);
  }
  return out;
}

// ---- structure defects --------------------------------------------------

/// Duplicates the state with a full tangent basis: the tail carries the
/// columns of T' = f'(z) T, so stepping it propagates exact derivatives.
template <class Real>
Problem<Real> augmented_tangent_problem(const Problem<Real>& prob) {
  if (!prob.has_jacobian())
    throw std::invalid_argument("augmented_tangent_problem: problem lacks df");
  const int d = prob.dim;
  Problem<Real> out;
  out.name = prob.name + "+tangent";
  out.dim = d + d * d;
  out.f = [d, f = prob.f, df = prob.df](const RVec<Real>& x) {
    const RVec<Real> z = x.head(d);
    const Eigen::Map<const RMat<Real>> T(x.data() + d, d, d);
    RVec<Real> out_x(d + d * d);
    out_x.head(d) = f(z);
    Eigen::Map<RMat<Real>>(out_x.data() + d, d, d) = df(z) * T;
    return out_x;
  };
  return out;
}

/** One-step symplecticity defect ||D^T J D - J||_max, with the step Jacobian
 * D obtained either by forward sensitivity (the stepper runs on the
 * tangent-augmented problem, so D inherits the stepper's own arithmetic) or
 * by central differences.
 */
template <class Real>
Real symplectic_defect(const Stepper<Real>& stepper, const Problem<Real>& prob,
                       const RVec<Real>& z, const Real& h,
                       JacobianMode mode = JacobianMode::ForwardSensitivity) {
  using std::abs;
  using std::pow;
  if (!prob.has_structure())
    throw std::invalid_argument("symplectic_defect: problem lacks J");
  const int d = prob.dim;
  RMat<Real> D(d, d);
  if (mode == JacobianMode::ForwardSensitivity) {
    const Problem<Real> aug = augmented_tangent_problem(prob);
    RVec<Real> x(d + d * d);
    x.head(d) = z;
    Eigen::Map<RMat<Real>>(x.data() + d, d, d) = RMat<Real>::Identity(d, d);
    const RVec<Real> y = stepper(aug, x, h, nullptr);
    D = Eigen::Map<const RMat<Real>>(y.data() + d, d, d);
  } else {
    const Real eps = pow(std::numeric_limits<Real>::epsilon(),
                         Real(1) / Real(3));
    for (int j = 0; j < d; ++j) {
      RVec<Real> zp = z, zm = z;
      zp[j] += eps;
      zm[j] -= eps;
      D.col(j) = (stepper(prob, zp, h, nullptr) -
                  stepper(prob, zm, h, nullptr)) /
                 (Real(2) * eps);
    }
  }
  const RMat<Real> defect = D.transpose() * prob.J * D - prob.J;
  Real m{0};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (m < abs(defect(i, j))) m = abs(defect(i, j));
  return m;
}

/// || stepper(stepper(z, -h), +h) - z ||_max.
template <class Real>
Real symmetry_defect(const Stepper<Real>& stepper, const Problem<Real>& prob,
                     const RVec<Real>& z, const Real& h) {
  const RVec<Real> back = stepper(prob, z, -h, nullptr);
  const RVec<Real> round = stepper(prob, back, h, nullptr);
  return detail::sup_norm<Real>(round - z);
}

// ---- energy drift fits --------------------------------------------------

template <class Real>
struct DriftRate {
  Real h;
  double rate = 0;      // least-squares d(H - H0)/dt after the transient
  double rate_err = 0;  // standard error of that slope
  bool below_floor = false;
};

template <class Real>
struct DriftFit {
  std::vector<DriftRate<Real>> rates;
  double slope = std::numeric_limits<double>::quiet_NaN();  // log|rate| vs log h
  bool slope_defined = false;
  std::string warning;
};

/** Secular energy drift study: for each h, integrate to time T, discard the
 * first 10% as transient, fit H(z_n) - H(z_0) against t, then fit
 * log|rate| against log h across the grid.  A rate is flagged below the
 * floor (and left out of the slope) when it is statistically
 * indistinguishable from zero or smaller than the precision's own
 * roundoff-accumulation scale, ~1000 eps |H0|.
 */
template <class Real>
DriftFit<Real> drift_fit(const Stepper<Real>& stepper,
                         const Problem<Real>& prob, const RVec<Real>& z0,
                         const std::vector<Real>& h_list, const Real& T) {
  using std::abs;
  using std::log;
  using std::sqrt;
  if (h_list.size() < 3)
    throw std::invalid_argument("drift_fit: need at least three step sizes");
  if (!prob.has_hamiltonian())
    throw std::invalid_argument("drift_fit: problem lacks a hamiltonian");

  DriftFit<Real> out;
  const Real H0 = prob.hamiltonian(z0);
  const double floor_abs =
      1e3 * static_cast<double>(std::numeric_limits<Real>::epsilon()) *
      std::max(1.0, std::abs(static_cast<double>(H0)));
  for (const Real& h : h_list) {
    const long n = std::llround(static_cast<double>(T / h));
    if (n < 20) throw std::invalid_argument("drift_fit: T/h too small");
    const long skip = n / 10;
    const long cnt = n - skip;
    // Center the time variable for a well-conditioned one-pass fit.
    const Real tbar = h * Real(n + skip + 1) / Real(2);
    Real Stt{0}, Ste{0}, Se{0}, See{0};
    RVec<Real> z = z0;
    for (long i = 1; i <= n; ++i) {
      z = stepper(prob, z, h, nullptr);
      if (i <= skip) continue;
      const Real tc = Real(i) * h - tbar;
      const Real e = prob.hamiltonian(z) - H0;
      Stt += tc * tc;
      Ste += tc * e;
      Se += e;
      See += e * e;
    }
    const Real slope = Ste / Stt;
    Real sse = See - Se * Se / Real(cnt) - slope * slope * Stt;
    if (sse < Real(0)) sse = Real(0);
    const Real var = sse / Real(cnt - 2) / Stt;
    DriftRate<Real> r;
    r.h = h;
    r.rate = static_cast<double>(slope);
    r.rate_err = static_cast<double>(sqrt(var));
    r.below_floor = std::abs(r.rate) <= std::max(3 * r.rate_err, floor_abs);
    out.rates.push_back(r);
  }

  std::vector<double> lx, ly;
  for (const DriftRate<Real>& r : out.rates)
    if (!r.below_floor) {
      lx.push_back(std::log(static_cast<double>(r.h)));
      ly.push_back(std::log(std::abs(r.rate)));
    }
  if (lx.size() != out.rates.size())
    out.warning = lx.empty()
                      ? "all drift rates sit below the roundoff floor; raise "
                        "the precision bits"
                      : "some drift rates sit below the roundoff floor";
  if (lx.size() >= 2) {
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    const double m = double(lx.size());
    for (size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sxx += lx[i] * lx[i];
      sy += ly[i];
      sxy += lx[i] * ly[i];
    }
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.slope_defined = true;
  }
  return out;
}

// ---- built-in problems --------------------------------------------------

/// Canonical structure matrix [[0, I], [-I, 0]] for even dim.
template <class Real>
RMat<Real> canonical_structure(int dim) {
  if (dim < 2 || dim % 2 != 0)
    throw std::invalid_argument("canonical_structure: dim must be even");
  RMat<Real> J = RMat<Real>::Zero(dim, dim);
  const int d = dim / 2;
  for (int i = 0; i < d; ++i) {
    J(i, d + i) = Real(1);
    J(d + i, i) = Real(-1);
  }
  return J;
}

template <class Real>
std::vector<Problem<Real>> builtin_problems() {
  std::vector<Problem<Real>> out;

  {
    Problem<Real> p;
    p.name = "harmonic";
    p.dim = 2;
    p.f = [](const RVec<Real>& z) {
      RVec<Real> out_z(2);
      out_z << z[1], -z[0];
      return out_z;
    };
    p.df = [](const RVec<Real>&) {
      RMat<Real> J(2, 2);
      J << Real(0), Real(1), Real(-1), Real(0);
      return J;
    };
    p.hamiltonian = [](const RVec<Real>& z) {
      return (z[0] * z[0] + z[1] * z[1]) / Real(2);
    };
    p.C = RMat<Real>::Identity(2, 2);
    p.J = canonical_structure<Real>(2);
    out.push_back(std::move(p));
  }

  {
    Problem<Real> p;
    p.name = "nonseparable";
    p.dim = 2;
    // H = (q^2 + 1)(p^2 + 1) / 2
    p.f = [](const RVec<Real>& z) {
      const Real q = z[0], pp = z[1];
      RVec<Real> out_z(2);
      out_z << pp * (q * q + Real(1)), -q * (pp * pp + Real(1));
      return out_z;
    };
    p.df = [](const RVec<Real>& z) {
      const Real q = z[0], pp = z[1];
      RMat<Real> J(2, 2);
      J << Real(2) * q * pp, q * q + Real(1),
          -(pp * pp + Real(1)), Real(-2) * q * pp;
      return J;
    };
    p.hamiltonian = [](const RVec<Real>& z) {
      return (z[0] * z[0] + Real(1)) * (z[1] * z[1] + Real(1)) / Real(2);
    };
    p.J = canonical_structure<Real>(2);
    out.push_back(std::move(p));
  }

  {
    Problem<Real> p;
    p.name = "rotation";
    p.dim = 2;
    const RMat<Real> J = canonical_structure<Real>(2);
    p.f = [J](const RVec<Real>& z) -> RVec<Real> { return J * z; };
    p.df = [J](const RVec<Real>&) { return J; };
    p.C = RMat<Real>::Identity(2, 2);
    p.J = J;
    out.push_back(std::move(p));
  }

  {
    Problem<Real> p;
    p.name = "kepler";
    p.dim = 4;
    p.f = [](const RVec<Real>& z) {
      using std::sqrt;
      const Real r2 = z[0] * z[0] + z[1] * z[1];
      const Real r3 = r2 * sqrt(r2);
      RVec<Real> out_z(4);
      out_z << z[2], z[3], -z[0] / r3, -z[1] / r3;
      return out_z;
    };
    p.df = [](const RVec<Real>& z) {
      using std::sqrt;
      const Real r2 = z[0] * z[0] + z[1] * z[1];
      const Real r = sqrt(r2);
      const Real r3 = r2 * r, r5 = r3 * r2;
      RMat<Real> J = RMat<Real>::Zero(4, 4);
      J(0, 2) = Real(1);
      J(1, 3) = Real(1);
      J(2, 0) = -Real(1) / r3 + Real(3) * z[0] * z[0] / r5;
      J(2, 1) = Real(3) * z[0] * z[1] / r5;
      J(3, 0) = Real(3) * z[0] * z[1] / r5;
      J(3, 1) = -Real(1) / r3 + Real(3) * z[1] * z[1] / r5;
      return J;
    };
    p.hamiltonian = [](const RVec<Real>& z) {
      using std::sqrt;
      return (z[2] * z[2] + z[3] * z[3]) / Real(2) -
             Real(1) / sqrt(z[0] * z[0] + z[1] * z[1]);
    };
    // Angular momentum q1 p2 - q2 p1 as a quadratic form.
    RMat<Real> C = RMat<Real>::Zero(4, 4);
    C(0, 3) = Real(1) / Real(2);
    C(3, 0) = Real(1) / Real(2);
    C(1, 2) = Real(-1) / Real(2);
    C(2, 1) = Real(-1) / Real(2);
    p.C = C;
    p.J = canonical_structure<Real>(4);
    out.push_back(std::move(p));
  }

  return out;
}

template <class Real>
Problem<Real> builtin_problem(const std::string& name) {
  for (Problem<Real>& p : builtin_problems<Real>())
    if (p.name == name) return std::move(p);
  throw std::invalid_argument(
      "unknown problem '" + name +
      "' (available: harmonic, nonseparable, rotation, kepler)");
}

}  // namespace xpsrk
