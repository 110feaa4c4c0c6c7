#include <doctest.h>

#include <cmath>
#include <random>

#include "tfm/error.hpp"
#include "tfm/phase_matching.hpp"

using namespace tfm;
using cplx = std::complex<double>;

namespace {
LinearDispersion linear(double c1 = 1.0, double c2 = -1.0) {
  LinearDispersion m;
  m.c1 = c1;
  m.c2 = c2;
  m.length = units::mm(0.7177910894921958);
  return m;
}
}  // namespace

TEST_CASE("linear mismatch") {
  const LinearDispersion m = linear();
  CHECK(delta_k_linear(m, 1e10, 0.0) == doctest::Approx(10.0));
  CHECK(delta_k_linear(m, 1e10, 1e10) == 0.0);
  CHECK(delta_k_linear(linear(2.0, -0.5), 1e10, 4e10) == doctest::Approx(0.0));
}

TEST_CASE("Taylor mismatch: first order cancels, second order is the GVD term") {
  TaylorDispersion m;
  m.k1 = 7e-9;
  m.length = units::mm(1);
  CHECK(std::abs(delta_k_taylor(m, 3e11, -1e11, 5e10)) < 1e-12);
  m.k2 = 2e-25;
  const double ds = 3e11, di = 1e11, dp = 0.0;
  // k2/2 [dp^2 + (ds+di-dp)^2 - ds^2 - di^2] = k2 ds di at dp = 0
  CHECK(delta_k_taylor(m, ds, di, dp) == doctest::Approx(m.k2 * ds * di));
  m.gamma0 = 1.0;
  m.peak_power = Power(2.0);
  CHECK(delta_k_taylor(m, 0, 0, 0) == doctest::Approx(-2.0));
}

TEST_CASE("pmf values") {
  const Length l = units::mm(1);
  CHECK(pmf_from_delta_k(0.0, l) == cplx(1.0, 0.0));
  const cplx p = pmf_from_delta_k(2.0 * std::numbers::pi / l.value(), l);
  CHECK(std::abs(p) < 1e-15);
  const double x = 0.7;
  const cplx q = pmf_from_delta_k(2.0 * x / l.value(), l);
  CHECK(std::abs(q - std::polar(std::sin(x) / x, x)) < 1e-15);
  CHECK(pump_independent(linear()));
  CHECK_FALSE(pump_independent(TaylorDispersion{}));
}

TEST_CASE("anti-symmetric linear PMF depends only on the detuning difference") {
  const LinearDispersion m = linear();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1e12, 1e12);
  for (int k = 0; k < 500; ++k) {
    const double a = u(rng), b = u(rng), t = u(rng);
    CHECK(std::abs(pmf(m, a + t, b + t) - pmf(m, a, b)) < 1e-12);
    CHECK(std::abs(pmf(m, a, b)) <= 1.0);
  }
}

TEST_CASE("orientation angle") {
  CHECK(orientation_angle(1.0, -1.0).degrees == doctest::Approx(45.0));
  CHECK(orientation_angle(1.0, 1.0).degrees == doctest::Approx(-45.0));
  const OrientationAngle lim = orientation_angle(1.0, 0.0);
  CHECK(lim.limit);
  CHECK(std::abs(lim.degrees) == 90.0);
  CHECK_THROWS_AS(orientation_angle(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(validate(DispersionModel{linear(0.0, 0.0)}), DomainError);
}
