#include <doctest.h>

#include <cmath>
#include <random>

#include "tfm/error.hpp"
#include "tfm/units.hpp"

using namespace tfm;

TEST_CASE("unit suffixes convert to SI") {
  CHECK(parse_quantity("1215.70 THz", Dimension::kAngularFrequency, "k") == doctest::Approx(1215.70e12));
  CHECK(parse_quantity("4.02 2pi*GHz", Dimension::kAngularFrequency, "k") == doctest::Approx(4.02 * kTwoPi * 1e9));
  CHECK(parse_quantity("2.44 GHz", Dimension::kRate, "k") == doctest::Approx(2.44e9));
  CHECK(parse_quantity("0.0985 sqrtTHz", Dimension::kSqrtRate, "k") == doctest::Approx(0.0985e6));
  CHECK(parse_quantity("75 ps", Dimension::kTime, "k") == doctest::Approx(75e-12));
  CHECK(parse_quantity("1 ps/mm", Dimension::kInverseDispersion, "k") == doctest::Approx(1e-9));
  CHECK(parse_quantity("4mW", Dimension::kPower, "k") == doctest::Approx(4e-3));
  CHECK(parse_quantity("0.5", Dimension::kDimensionless, "k") == 0.5);
}

TEST_CASE("unit-less numbers are rejected for dimensioned fields") {
  try {
    parse_quantity("0.0985", Dimension::kSqrtRate, "resonances.signal.kappa");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "resonances.signal.kappa");
    CHECK(std::string(e.what()).find("missing unit") != std::string::npos);
  }
}

TEST_CASE("wrong units and garbage are rejected") {
  CHECK_THROWS_AS(parse_quantity("3 ps", Dimension::kRate, "k"), ConfigError);
  CHECK_THROWS_AS(parse_quantity("GHz", Dimension::kRate, "k"), ConfigError);
  CHECK_THROWS_AS(parse_quantity("", Dimension::kRate, "k"), ConfigError);
  CHECK_THROWS_AS(parse_quantity("inf GHz", Dimension::kRate, "k"), ConfigError);
}

TEST_CASE("format_quantity round-trips bit-exactly") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mant(0.1, 10.0);
  std::uniform_int_distribution<int> ex(-15, 15);
  for (int k = 0; k < 2000; ++k) {
    const double v = mant(rng) * std::pow(10.0, ex(rng));
    for (auto [dim, unit] : {std::pair{Dimension::kAngularFrequency, "THz"}, std::pair{Dimension::kRate, "GHz"},
                             std::pair{Dimension::kAngularFrequency, "2pi*GHz"}, std::pair{Dimension::kLength, "mm"}}) {
      const std::string s = format_quantity(v, dim, unit);
      REQUIRE(parse_quantity(s, dim, "k") == v);
    }
  }
  CHECK(format_quantity(2.44e9, Dimension::kRate, "GHz") == "2.44 GHz");
}
