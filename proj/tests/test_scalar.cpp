#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xpsrk/scalar.hpp"

#include <random>

using namespace xpsrk;

namespace {

Scalar theta() { return Scalar::theta(); }

CubicNum cub(Rational a, Rational b, Rational c) { return CubicNum(a, b, c); }

}  // namespace

TEST_CASE("rational canonical form") {
  Scalar x = Scalar::rational(2, -4);
  CHECK(x.as_rational() == Rational(-1, 2));
  CHECK(numerator(x.as_rational()) == -1);
  CHECK(denominator(x.as_rational()) == 2);
  CHECK(Scalar::rational(0, 7).is_zero());
  CHECK_THROWS_AS(Scalar::rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
}

TEST_CASE("cubic multiplication reduces theta^3 to 2") {
  CHECK(theta() * theta() == Scalar::theta_sq());
  CHECK(theta() * theta() * theta() == Scalar(2));
  // (2 - t)(4 + 2t + t^2) = 8 - t^3 = 6
  Scalar a = Scalar(2) - theta();
  Scalar b = Scalar(4) + Scalar(2) * theta() + Scalar::theta_sq();
  CHECK(a * b == Scalar(6));
}

TEST_CASE("cubic inverse via 3x3 rational solve") {
  CHECK(inv(cub(1, 0, 0)) == cub(1, 0, 0));
  CHECK(inv(cub(2, -1, 0)) == cub(Rational(2, 3), Rational(1, 3), Rational(1, 6)));
  CHECK(inv(cub(4, 0, -1)) ==
        cub(Rational(4, 15), Rational(1, 30), Rational(1, 15)));
  CHECK_THROWS_AS(inv(cub(0, 0, 0)), std::domain_error);

  std::mt19937 rng(20260817);
  std::uniform_int_distribution<int> d(-40, 40);
  for (int trial = 0; trial < 200; ++trial) {
    CubicNum x(Rational(d(rng), 1 + std::abs(d(rng))),
               Rational(d(rng), 1 + std::abs(d(rng))),
               Rational(d(rng), 1 + std::abs(d(rng))));
    if (x.is_zero()) continue;
    CHECK(x * inv(x) == cub(1, 0, 0));
  }
}

TEST_CASE("cubic sign by interval refinement") {
  CHECK(sign(cub(0, 0, 0)) == 0);
  CHECK(sign(cub(2, -1, 0)) == 1);    // 2 - theta > 0
  CHECK(sign(cub(-2, 1, 0)) == -1);   // theta - 2 < 0
  CHECK(sign(cub(0, -1, 0) * cub(0, -1, 0)) == 1);
  // theta^2 - theta - 1/3 = 1.5874 - 1.2599 - 0.3333 < 0
  CHECK(sign(cub(Rational(-1, 3), -1, 1)) == -1);
  // theta^2 - theta - 1/4 = 0.0775 > 0
  CHECK(sign(cub(Rational(-1, 4), -1, 1)) == 1);
  // tight: theta - 5040/4001 = 1.25992... - 1.259685... > 0
  CHECK(sign(cub(Rational(-5040, 4001), 1, 0)) == 1);
  CHECK(sign(cub(Rational(-5041, 4001), 1, 0)) == -1);
}

TEST_CASE("scalar promotion ladder") {
  Scalar r(Rational(1, 3)), c = theta(), f = to_float(Scalar(1), 128);
  CHECK((r + r).kind() == Kind::rational);
  CHECK((r + c).kind() == Kind::cubic);
  CHECK((c * c).kind() == Kind::cubic);
  CHECK((r + f).kind() == Kind::floating);
  CHECK((r + f).float_bits() == 128);
  CHECK((to_float(r, 53) + f).float_bits() == 128);
  CHECK((to_float(r, 256) + f).float_bits() == 256);
  // cubic with vanishing theta parts collapses to the embedded rational
  Scalar collapsed = theta() * theta() * theta();
  CHECK(collapsed.kind() == Kind::rational);
  CHECK(collapsed == Scalar(2));
  // scalar_mul(theta/3, 3) stays cubic
  CHECK(((theta() / Scalar(3)) * Scalar(3)) == theta());
}

TEST_CASE("ordering is exact across kinds") {
  CHECK(Scalar(2) - theta() > Scalar(0));
  CHECK(theta() < Scalar(Rational(13, 10)));
  CHECK(theta() > Scalar(Rational(5, 4)));
  CHECK(abs(Scalar(-3)) == Scalar(3));
  CHECK(abs(theta() - Scalar(2)) == Scalar(2) - theta());
  std::vector<Scalar> v = {theta(), Scalar(1), Scalar(Rational(3, 2))};
  std::sort(v.begin(), v.end());
  CHECK(v[0] == Scalar(1));
  CHECK(v[1] == theta());
}

TEST_CASE("to_float is correctly rounded") {
  CHECK(to_double(Scalar(Rational(1, 2))) == 0.5);
  CHECK(to_double(Scalar(Rational(1, 3))) == 1.0 / 3.0);
  CHECK(to_double(theta()) == 1.2599210498948732);
  // 1/(2-theta), correctly rounded at 53 bits (0x1.59e8b6eb96338p+0);
  // naive double evaluation 1/(2-cbrt(2)) lands one ulp higher.
  Scalar alpha = Scalar(1) / (Scalar(2) - theta());
  CHECK(to_double(alpha) == 1.3512071919596575);
  CHECK(float_to_hex(to_double(alpha)) == "0x1.59e8b6eb96338p+0");
  Scalar alpha_s = Scalar(1) / (Scalar(4) - Scalar::theta_sq());
  CHECK(to_double(alpha_s) == 0.4144907717943757);

  CHECK_THROWS_AS(to_float(Scalar(1), 100), std::invalid_argument);
  CHECK_THROWS_AS(to_float(Scalar(1), 512), std::invalid_argument);

  // narrowing a wide float is explicit and correctly rounded
  Scalar w = to_float(Scalar(Rational(1, 3)), 256);
  CHECK(to_double(w) == 1.0 / 3.0);
}

TEST_CASE("rational rounding matches hardware division oracle") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long long> d(1, (1LL << 50));
  for (int trial = 0; trial < 2000; ++trial) {
    long long p = d(rng), q = d(rng);
    if (trial % 3 == 0) p = -p;
    // both operands are exact doubles, so p/q in double is correctly rounded
    double expect = double(p) / double(q);
    CHECK(to_double(Scalar(Rational(p, q))) == expect);
  }
}

TEST_CASE("to_real at 128 and 256 bits brackets the exact value") {
  Scalar third(Rational(1, 3));
  Float128 x = to_real<Float128>(third);
  Float256 y = to_real<Float256>(third);
  CHECK(abs(Float256(x) - y) < Float256(1e-37));
  Float128 t = to_real<Float128>(theta());
  Float256 cube = Float256(t) * Float256(t) * Float256(t);
  CHECK(cube != Float256(2));  // the 128-bit rounding of theta leaves a residue
  CHECK(abs(cube - 2) < Float256(1e-37));
  CHECK(abs(t * t * t - 2) < Float128(1e-37));
}

TEST_CASE("hex float round trips") {
  CHECK(float_to_hex(3.0) == "0x1.8p+1");
  CHECK(float_to_hex(1.0) == "0x1p+0");
  CHECK(float_to_hex(-0.375) == "-0x1.8p-2");
  CHECK(float_from_hex<double>("0x1.8p+1") == 3.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int trial = 0; trial < 500; ++trial) {
    double x = d(rng) * std::pow(2.0, int(rng() % 64) - 32);
    CHECK(float_from_hex<double>(float_to_hex(x)) == x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    CHECK(float_from_hex<double>(buf) == x);
  }
  Float128 v = to_real<Float128>(theta());
  CHECK(float_from_hex<Float128>(float_to_hex(v)) == v);
  Float256 w = to_real<Float256>(Scalar(Rational(-22, 7)));
  CHECK(float_from_hex<Float256>(float_to_hex(w)) == w);
}

TEST_CASE("scalar json round trips exactly") {
  auto roundtrip = [](const Scalar& x) {
    Scalar y = scalar_from_json(scalar_to_json(x));
    CHECK(y.kind() == x.kind());
    CHECK(y == x);
  };
  roundtrip(Scalar(Rational(-7, 12)));
  roundtrip(theta() / Scalar(6) - Scalar(Rational(1, 9)) * Scalar::theta_sq());
  roundtrip(to_float(Scalar(Rational(1, 3)), 53));
  roundtrip(to_float(theta(), 128));
  roundtrip(to_float(theta(), 256));

  nlohmann::json j = scalar_to_json(Scalar(Rational(1, 4)));
  CHECK(j["kind"] == "rational");
  CHECK(j["num"] == "1");
  CHECK(j["den"] == "4");
  CHECK(j.contains("dec"));
  CHECK_THROWS(scalar_from_json(nlohmann::json{{"kind", "complex"}}));
}

TEST_CASE("composition alphas") {
  auto lf = composition_alphas(Scheme::Leapfrog2);
  REQUIRE(lf.size() == 1);
  CHECK(lf[0] == Scalar(1));

  auto tj = composition_alphas(Scheme::TripleJump4);
  REQUIRE(tj.size() == 3);
  CHECK(tj[0] == tj[2]);
  CHECK(tj[0].kind() == Kind::cubic);
  CHECK(tj[0] == Scalar(1) / (Scalar(2) - theta()));
  Scalar sum;
  for (const auto& a : tj) sum += a;
  CHECK(sum == Scalar(1));
  CHECK(to_double(tj[0]) == 1.3512071919596575);
  CHECK(to_double(tj[1]) == -1.7024143839193153);

  auto su = composition_alphas(Scheme::Suzuki4);
  REQUIRE(su.size() == 5);
  CHECK(su[0] == su[1]);
  CHECK(su[0] == su[4]);
  sum = Scalar(0);
  for (const auto& a : su) sum += a;
  CHECK(sum == Scalar(1));
  CHECK(to_double(su[0]) == 0.4144907717943757);
  CHECK(to_double(su[2]) == -0.657963087177503);

  CHECK(scheme_from_string("triplejump4") == Scheme::TripleJump4);
  CHECK(to_string(Scheme::Suzuki4) == "suzuki4");
  CHECK_THROWS_AS(scheme_from_string("rk4"), std::invalid_argument);
}

TEST_CASE("eigen matrices over exact scalars") {
  SMat A(2, 2);
  A << Scalar(1), theta(), Scalar(0), Scalar(Rational(1, 2));
  SVec v(2);
  v << Scalar(2), Scalar(4);
  SVec w = A * v;
  CHECK(w(0) == Scalar(2) + Scalar(4) * theta());
  CHECK(w(1) == Scalar(2));
  SMat B = A * A;
  CHECK(B(0, 1) == theta() + theta() / Scalar(2));
}
