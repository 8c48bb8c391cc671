#include "xpsrk/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <utility>

namespace xpsrk {

namespace {

Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

struct RatInterval {
  Rational lo, hi;
};

RatInterval scale(const Rational& c, const RatInterval& iv) {
  if (c >= 0) return {c * iv.lo, c * iv.hi};
  return {c * iv.hi, c * iv.lo};
}

// Interval enclosure of c0 + c1*theta + c2*theta^2 with theta known to
// g fractional bits: theta in [t, t+1]/2^g, t = floor(2^g * cbrt(2)).
RatInterval cubic_enclosure(const CubicNum& x, unsigned g) {
  Int t = icbrt(Int(2) << (3 * g));
  Int scale_den = Int(1) << g;
  RatInterval th{Rational(t, scale_den), Rational(t + 1, scale_den)};
  RatInterval th2{th.lo * th.lo, th.hi * th.hi};  // theta > 0
  RatInterval a = scale(x.c1, th);
  RatInterval b = scale(x.c2, th2);
  return {x.c0 + a.lo + b.lo, x.c0 + a.hi + b.hi};
}

}  // namespace

CubicNum operator+(const CubicNum& a, const CubicNum& b) {
  return CubicNum(a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2);
}

CubicNum operator-(const CubicNum& a, const CubicNum& b) {
  return CubicNum(a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2);
}

CubicNum operator-(const CubicNum& a) { return CubicNum(-a.c0, -a.c1, -a.c2); }

CubicNum operator*(const CubicNum& a, const CubicNum& b) {
  // (a0 + a1 t + a2 t^2)(b0 + b1 t + b2 t^2) with t^3 = 2, t^4 = 2t.
  return CubicNum(a.c0 * b.c0 + 2 * (a.c1 * b.c2 + a.c2 * b.c1),
                  a.c0 * b.c1 + a.c1 * b.c0 + 2 * a.c2 * b.c2,
                  a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0);
}

CubicNum inv(const CubicNum& x) {
  if (x.is_zero()) throw std::domain_error("CubicNum: division by zero");
  // Solve M y = e1 where M is multiplication-by-x in the basis {1, t, t^2}:
  //   M = [ c0  2c2  2c1 ]
  //       [ c1   c0  2c2 ]
  //       [ c2   c1   c0 ]
  const Rational &p = x.c0, &q = x.c1, &r = x.c2;
  Rational det = p * (p * p - 2 * q * r) - 2 * r * (p * q - 2 * r * r) +
                 2 * q * (q * q - p * r);
  // det = N(x) is nonzero for x != 0 in a field extension.
  Rational y0 = (p * p - 2 * q * r) / det;
  Rational y1 = (2 * r * r - p * q) / det;
  Rational y2 = (q * q - p * r) / det;
  return CubicNum(y0, y1, y2);
}

int sign(const CubicNum& x) {
  if (x.is_zero()) return 0;
  if (x.c1 == 0 && x.c2 == 0) return x.c0 > 0 ? 1 : -1;
  for (unsigned g = 32;; g *= 2) {
    RatInterval iv = cubic_enclosure(x, g);
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
    if (g > (1u << 20))
      throw std::runtime_error("CubicNum: sign refinement failed to converge");
  }
}

Int icbrt(const Int& n) {
  if (n < 0) throw std::domain_error("icbrt: negative argument");
  if (n == 0) return 0;
  Int x = Int(1) << (unsigned(msb(n)) / 3 + 2);
  for (;;) {
    Int y = (2 * x + n / (x * x)) / 3;
    if (y >= x) break;
    x = y;
  }
  while ((x + 1) * (x + 1) * (x + 1) <= n) ++x;
  while (x * x * x > n) --x;
  return x;
}

// ---------------------------------------------------------------------------
// Correctly rounded conversions.

namespace detail {

template <class Real>
Real ldexp_real(const Real& x, long e) {
  using mp::ldexp;
  return ldexp(x, static_cast<int>(e));
}

template <>
double ldexp_real<double>(const double& x, long e) {
  return std::ldexp(x, static_cast<int>(e));
}

// Round-to-nearest-even conversion of num/den, exact integer arithmetic only.
template <class Real>
Real rational_to_real(const Rational& x) {
  if (x == 0) return Real(0);
  const int w = std::numeric_limits<Real>::digits;
  Int a = numerator(x), b = denominator(x);
  bool neg = a < 0;
  if (neg) a = -a;

  long shift = w + 1 + long(msb(b)) - long(msb(a));
  Int q, r;
  auto requotient = [&](long s) {
    if (s >= 0)
      divide_qr(a << unsigned(s), b, q, r);
    else
      divide_qr(a, b << unsigned(-s), q, r);
  };
  requotient(shift);
  while (long(msb(q)) + 1 > w + 1) requotient(--shift);
  while (long(msb(q)) + 1 < w + 1) requotient(++shift);

  bool half = bit_test(q, 0);
  q >>= 1;
  if (half && (r != 0 || bit_test(q, 0))) ++q;
  if (long(msb(q)) + 1 > w) {
    q >>= 1;
    --shift;
  }
  Real out = ldexp_real(static_cast<Real>(q), 1 - shift);
  return neg ? Real(-out) : out;
}

// Interval-verified conversion: refine theta until both interval ends round
// to the same Real. Terminates because the value is irrational.
template <class Real>
Real cubic_to_real(const CubicNum& x) {
  if (x.is_rational()) return rational_to_real<Real>(x.c0);
  for (unsigned g = unsigned(std::numeric_limits<Real>::digits) + 64;; g *= 2) {
    RatInterval iv = cubic_enclosure(x, g);
    Real lo = rational_to_real<Real>(iv.lo);
    Real hi = rational_to_real<Real>(iv.hi);
    if (lo == hi) return lo;
    if (g > (1u << 20))
      throw std::runtime_error("CubicNum: rounding refinement failed");
  }
}

}  // namespace detail

template <class Real>
Real to_real(const Scalar& x) {
  return x.visit([](const auto& v) -> Real {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, Rational>)
      return detail::rational_to_real<Real>(v);
    else if constexpr (std::is_same_v<T, CubicNum>)
      return detail::cubic_to_real<Real>(v);
    else
      return static_cast<Real>(v);
  });
}

template double to_real<double>(const Scalar&);
template Float128 to_real<Float128>(const Scalar&);
template Float256 to_real<Float256>(const Scalar&);

double to_double(const Scalar& x) { return to_real<double>(x); }

Scalar to_float(const Scalar& x, unsigned bits) {
  switch (bits) {
    case 53: return Scalar(to_real<double>(x));
    case 128: return Scalar(to_real<Float128>(x));
    case 256: return Scalar(to_real<Float256>(x));
    default:
      throw std::invalid_argument(
          "unsupported float precision " + std::to_string(bits) +
          " (supported: 53, 128, 256)");
  }
}

// ---------------------------------------------------------------------------
// Scalar.

Scalar::Scalar(CubicNum q) {
  if (q.is_rational())
    v_ = std::move(q.c0);
  else
    v_ = std::move(q);
}

Scalar Scalar::rational(Int num, Int den) {
  if (den == 0) throw std::domain_error("Scalar: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Scalar(Rational(std::move(num), std::move(den)));
}

Kind Scalar::kind() const {
  if (std::holds_alternative<Rational>(v_)) return Kind::rational;
  if (std::holds_alternative<CubicNum>(v_)) return Kind::cubic;
  return Kind::floating;
}

unsigned Scalar::float_bits() const {
  if (std::holds_alternative<double>(v_)) return 53;
  if (std::holds_alternative<Float128>(v_)) return 128;
  if (std::holds_alternative<Float256>(v_)) return 256;
  return 0;
}

bool Scalar::is_zero() const {
  return visit([](const auto& v) {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, CubicNum>)
      return v.is_zero();
    else
      return v == 0;
  });
}

int Scalar::sign() const {
  return visit([](const auto& v) -> int {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, CubicNum>)
      return xpsrk::sign(v);
    else
      return v > 0 ? 1 : (v < 0 ? -1 : 0);
  });
}

const Rational& Scalar::as_rational() const {
  if (auto* p = std::get_if<Rational>(&v_)) return *p;
  throw std::logic_error("Scalar: not a rational");
}

const CubicNum& Scalar::as_cubic() const {
  if (auto* p = std::get_if<CubicNum>(&v_)) return *p;
  throw std::logic_error("Scalar: not a cubic");
}

CubicNum Scalar::to_cubic() const {
  if (auto* p = std::get_if<Rational>(&v_)) return CubicNum(*p);
  if (auto* p = std::get_if<CubicNum>(&v_)) return *p;
  throw std::logic_error("Scalar: float does not embed in Q(2^(1/3))");
}

namespace {

enum class Op { add, sub, mul, div };

template <class Real>
Scalar float_apply(const Scalar& a, const Scalar& b, Op op) {
  Real x = to_real<Real>(a), y = to_real<Real>(b);
  switch (op) {
    case Op::add: return Scalar(Real(x + y));
    case Op::sub: return Scalar(Real(x - y));
    case Op::mul: return Scalar(Real(x * y));
    case Op::div:
      if (y == 0) throw std::domain_error("Scalar: division by zero");
      return Scalar(Real(x / y));
  }
  throw std::logic_error("unreachable");
}

Scalar binary_op(const Scalar& a, const Scalar& b, Op op) {
  unsigned wa = a.float_bits(), wb = b.float_bits();
  if (wa == 0 && wb == 0) {
    if (a.kind() == Kind::rational && b.kind() == Kind::rational) {
      const Rational &x = a.as_rational(), &y = b.as_rational();
      switch (op) {
        case Op::add: return Scalar(Rational(x + y));
        case Op::sub: return Scalar(Rational(x - y));
        case Op::mul: return Scalar(Rational(x * y));
        case Op::div:
          if (y == 0) throw std::domain_error("Scalar: division by zero");
          return Scalar(Rational(x / y));
      }
    }
    CubicNum x = a.to_cubic(), y = b.to_cubic();
    switch (op) {
      case Op::add: return Scalar(x + y);
      case Op::sub: return Scalar(x - y);
      case Op::mul: return Scalar(x * y);
      case Op::div:
        if (y.is_zero()) throw std::domain_error("Scalar: division by zero");
        return Scalar(x * inv(y));
    }
  }
  switch (std::max(wa, wb)) {
    case 53: return float_apply<double>(a, b, op);
    case 128: return float_apply<Float128>(a, b, op);
    default: return float_apply<Float256>(a, b, op);
  }
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) { return *this = binary_op(*this, o, Op::add); }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = binary_op(*this, o, Op::sub); }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = binary_op(*this, o, Op::mul); }
Scalar& Scalar::operator/=(const Scalar& o) { return *this = binary_op(*this, o, Op::div); }

Scalar Scalar::operator-() const { return binary_op(Scalar(0), *this, Op::sub); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    if (a.kind() == Kind::rational && b.kind() == Kind::rational)
      return a.as_rational() == b.as_rational();
    return a.to_cubic() == b.to_cubic();
  }
  return binary_op(a, b, Op::sub).is_zero();
}

bool operator<(const Scalar& a, const Scalar& b) {
  return binary_op(a, b, Op::sub).sign() < 0;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

// ---------------------------------------------------------------------------
// Hex float I/O.

namespace {

template <class Real>
void frexp_real(const Real& x, Real& m, int& e) {
  using mp::frexp;
  m = frexp(x, &e);
}

template <>
void frexp_real<double>(const double& x, double& m, int& e) {
  m = std::frexp(x, &e);
}

const char* kHexDigits = "0123456789abcdef";

}  // namespace

template <class Real>
std::string float_to_hex(const Real& x) {
  using std::signbit;
  std::string s;
  if (signbit(x)) s += '-';
  if (x == 0) return s + "0x0p+0";
  const int w = std::numeric_limits<Real>::digits;
  Real m;
  int e;
  frexp_real(x < 0 ? Real(-x) : x, m, e);
  m = detail::ldexp_real(m, 1);
  --e;  // m in [1, 2)
  Int frac = static_cast<Int>(detail::ldexp_real(Real(m - 1), w - 1));
  int nib = (w - 1 + 3) / 4;
  frac <<= unsigned(4 * nib - (w - 1));
  std::string digits(nib, '0');
  for (int i = nib - 1; i >= 0; --i) {
    digits[i] = kHexDigits[unsigned(frac & 0xf)];
    frac >>= 4;
  }
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  s += "0x1";
  if (!digits.empty()) s += "." + digits;
  s += "p" + std::string(e >= 0 ? "+" : "") + std::to_string(e);
  return s;
}

template <class Real>
Real float_from_hex(const std::string& in) {
  std::string s;
  for (char c : in) s += char(std::tolower(static_cast<unsigned char>(c)));
  bool neg = false;
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  if (s.compare(i, 2, "0x") != 0) throw std::invalid_argument("bad hex float: " + in);
  i += 2;
  Int mant = 0;
  int frac_nibbles = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size() && s[i] != 'p'; ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw std::invalid_argument("bad hex float: " + in);
      seen_dot = true;
      continue;
    }
    const char* pos = std::strchr(kHexDigits, s[i]);
    if (!pos) throw std::invalid_argument("bad hex float: " + in);
    mant = (mant << 4) + int(pos - kHexDigits);
    any = true;
    if (seen_dot) ++frac_nibbles;
  }
  if (!any || i >= s.size() || s[i] != 'p')
    throw std::invalid_argument("bad hex float: " + in);
  long e = std::stol(s.substr(i + 1));
  if (mant == 0) return Real(0) * (neg ? -1 : 1);
  Real out = detail::ldexp_real(static_cast<Real>(mant), e - 4 * frac_nibbles);
  return neg ? Real(-out) : out;
}

template std::string float_to_hex<double>(const double&);
template std::string float_to_hex<Float128>(const Float128&);
template std::string float_to_hex<Float256>(const Float256&);
template double float_from_hex<double>(const std::string&);
template Float128 float_from_hex<Float128>(const std::string&);
template Float256 float_from_hex<Float256>(const std::string&);

// ---------------------------------------------------------------------------
// Strings and JSON.

std::string to_decimal_string(const Scalar& x, unsigned sig_digits) {
  Float256 v = to_real<Float256>(x);
  std::ostringstream os;
  os.precision(sig_digits);
  os << v;
  return os.str();
}

nlohmann::json scalar_to_json(const Scalar& x) {
  nlohmann::json j;
  switch (x.kind()) {
    case Kind::rational: {
      const Rational& r = x.as_rational();
      j["kind"] = "rational";
      j["num"] = numerator(r).str();
      j["den"] = denominator(r).str();
      break;
    }
    case Kind::cubic: {
      const CubicNum& q = x.as_cubic();
      auto pair = [](const Rational& r) {
        return nlohmann::json::array({numerator(r).str(), denominator(r).str()});
      };
      j["kind"] = "cubic";
      j["c"] = nlohmann::json::array({pair(q.c0), pair(q.c1), pair(q.c2)});
      break;
    }
    case Kind::floating: {
      j["kind"] = "float";
      j["bits"] = x.float_bits();
      j["hex"] = x.visit([](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, CubicNum>)
          return {};
        else
          return float_to_hex(v);
      });
      break;
    }
  }
  j["dec"] = to_decimal_string(x);
  return j;
}

namespace {

Rational rational_from_strings(const std::string& num, const std::string& den) {
  Int n(num), d(den);
  if (d == 0) throw std::domain_error("Scalar: zero denominator in JSON");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

}  // namespace

Scalar scalar_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational")
    return Scalar(rational_from_strings(j.at("num").get<std::string>(),
                                        j.at("den").get<std::string>()));
  if (kind == "cubic") {
    const auto& c = j.at("c");
    if (!c.is_array() || c.size() != 3)
      throw std::invalid_argument("Scalar JSON: cubic wants 3 coefficient pairs");
    auto coef = [&](size_t i) {
      return rational_from_strings(c[i].at(0).get<std::string>(),
                                   c[i].at(1).get<std::string>());
    };
    return Scalar(CubicNum(coef(0), coef(1), coef(2)));
  }
  if (kind == "float") {
    unsigned bits = j.at("bits").get<unsigned>();
    const std::string hex = j.at("hex").get<std::string>();
    switch (bits) {
      case 53: return Scalar(float_from_hex<double>(hex));
      case 128: return Scalar(float_from_hex<Float128>(hex));
      case 256: return Scalar(float_from_hex<Float256>(hex));
      default:
        throw std::invalid_argument("Scalar JSON: unsupported bits " +
                                    std::to_string(bits));
    }
  }
  throw std::invalid_argument("Scalar JSON: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Composition schemes.

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Leapfrog2: return "leapfrog2";
    case Scheme::TripleJump4: return "triplejump4";
    case Scheme::Suzuki4: return "suzuki4";
  }
  throw std::logic_error("unreachable");
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "leapfrog2") return Scheme::Leapfrog2;
  if (name == "triplejump4") return Scheme::TripleJump4;
  if (name == "suzuki4") return Scheme::Suzuki4;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected leapfrog2, triplejump4, suzuki4)");
}

std::vector<Scalar> composition_alphas(Scheme s) {
  switch (s) {
    case Scheme::Leapfrog2:
      return {Scalar(1)};
    case Scheme::TripleJump4: {
      Scalar a = Scalar(CubicNum(inv(CubicNum(2, -1, 0))));
      return {a, Scalar(1) - Scalar(2) * a, a};
    }
    case Scheme::Suzuki4: {
      Scalar a = Scalar(CubicNum(inv(CubicNum(4, 0, -1))));
      return {a, a, Scalar(1) - Scalar(4) * a, a, a};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace xpsrk
