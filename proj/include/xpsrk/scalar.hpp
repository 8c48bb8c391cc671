#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace xpsrk {

namespace mp = boost::multiprecision;

using Int = mp::cpp_int;
using Rational = mp::cpp_rational;

using Float128 = mp::number<mp::backends::cpp_bin_float<128, mp::backends::digit_base_2>, mp::et_off>;
using Float256 = mp::number<mp::backends::cpp_bin_float<256, mp::backends::digit_base_2>, mp::et_off>;

/// Binary precisions the float kind supports. Exact kinds are unaffected.
inline constexpr unsigned kFloatBitsMenu[] = {53, 128, 256};
inline constexpr unsigned kDefaultFloatBits = 53;
inline constexpr unsigned kMaxFloatBits = 256;

/** Element of Q(theta), theta = 2^(1/3), as c0 + c1*theta + c2*theta^2.
 *
 * The basis {1, theta, theta^2} is a Q-vector-space basis, so equality and
 * zero tests are coefficient-wise and exact. theta^3 reduces to 2.
 */
struct CubicNum {
  Rational c0, c1, c2;

  CubicNum() = default;
  explicit CubicNum(Rational r0, Rational r1 = 0, Rational r2 = 0)
      : c0(std::move(r0)), c1(std::move(r1)), c2(std::move(r2)) {}

  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
  bool is_rational() const { return c1 == 0 && c2 == 0; }

  friend bool operator==(const CubicNum& a, const CubicNum& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
  }
  friend bool operator!=(const CubicNum& a, const CubicNum& b) { return !(a == b); }
};

CubicNum operator+(const CubicNum& a, const CubicNum& b);
CubicNum operator-(const CubicNum& a, const CubicNum& b);
CubicNum operator-(const CubicNum& a);
CubicNum operator*(const CubicNum& a, const CubicNum& b);

/// Multiplicative inverse in Q(theta); throws std::domain_error on zero.
CubicNum inv(const CubicNum& x);

/// Exact sign (-1, 0, +1) via rational interval refinement of theta.
int sign(const CubicNum& x);

/// Floor of the real cube root of a non-negative integer.
Int icbrt(const Int& n);

enum class Kind { rational, cubic, floating };

/** Exact-first scalar: rational, cubic (Q(2^(1/3))), or binary float.
 *
 * Mixed arithmetic promotes rational -> cubic -> float; the float width of a
 * mixed expression is the widest float operand. Exact kinds never demote to
 * float implicitly; use to_float for that.
 */
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int n) : v_(Rational(n)) {}
  Scalar(long long n) : v_(Rational(n)) {}
  Scalar(const Int& n) : v_(Rational(n)) {}
  Scalar(Rational r) : v_(std::move(r)) {}
  Scalar(CubicNum q);  // collapses to rational kind when c1 = c2 = 0
  explicit Scalar(double x) : v_(x) {}
  explicit Scalar(Float128 x) : v_(std::move(x)) {}
  explicit Scalar(Float256 x) : v_(std::move(x)) {}

  static Scalar rational(Int num, Int den);
  static Scalar theta() { return Scalar(CubicNum(0, 1, 0)); }
  static Scalar theta_sq() { return Scalar(CubicNum(0, 0, 1)); }

  Kind kind() const;
  bool is_exact() const { return kind() != Kind::floating; }
  /// Mantissa bits for float kind; 0 for exact kinds.
  unsigned float_bits() const;

  bool is_zero() const;
  int sign() const;

  const Rational& as_rational() const;  // throws unless rational kind
  const CubicNum& as_cubic() const;     // throws unless cubic kind
  CubicNum to_cubic() const;            // embeds rational; throws on float

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

  template <class V>
  decltype(auto) visit(V&& v) const { return std::visit(std::forward<V>(v), v_); }

 private:
  std::variant<Rational, CubicNum, double, Float128, Float256> v_;
};

Scalar abs(const Scalar& x);

/// Correctly rounded conversion to the float kind at `bits` (menu: 53/128/256).
Scalar to_float(const Scalar& x, unsigned bits = kDefaultFloatBits);

/// Correctly rounded conversion to a concrete float type.
template <class Real> Real to_real(const Scalar& x);
double to_double(const Scalar& x);

std::string to_decimal_string(const Scalar& x, unsigned sig_digits = 24);

nlohmann::json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const nlohmann::json& j);

/// C-style hex-float rendering; exact round trip for all supported widths.
template <class Real> std::string float_to_hex(const Real& x);
template <class Real> Real float_from_hex(const std::string& s);

enum class Scheme { Leapfrog2, TripleJump4, Suzuki4 };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

/**
 * Substep fractions of the named splitting scheme, exact, summing to 1.
 * Leapfrog2 -> (1); TripleJump4 -> (a, 1-2a, a) with a = 1/(2 - 2^(1/3));
 * Suzuki4 -> (a, a, 1-4a, a, a) with a = 1/(4 - 4^(1/3)).
 */
std::vector<Scalar> composition_alphas(Scheme s);

template <class T> using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T> using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
using SMat = MatX<Scalar>;
using SVec = VecX<Scalar>;

}  // namespace xpsrk

namespace Eigen {
template <>
struct NumTraits<xpsrk::Scalar> {
  typedef xpsrk::Scalar Real;
  typedef xpsrk::Scalar NonInteger;
  typedef xpsrk::Scalar Nested;
  typedef xpsrk::Scalar Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60
  };
  static inline Real epsilon() { return xpsrk::Scalar(0); }
  static inline Real dummy_precision() { return xpsrk::Scalar(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
