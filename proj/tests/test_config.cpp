#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tfm/config.hpp"
#include "tfm/error.hpp"

using namespace tfm;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("tfm_test_config_" + name);
  std::ofstream(p) << text;
  return p.string();
}

void check_chain(const ResonanceChain& a, const ResonanceChain& b) {
  CHECK(a.omega == b.omega);
  CHECK(a.decay == b.decay);
  CHECK(a.mu == b.mu);
  CHECK(a.kappa == b.kappa);
  CHECK(a.perimeter == b.perimeter);
  CHECK(a.group_velocity == b.group_velocity);
}

void check_same(const DeviceConfig& a, const DeviceConfig& b) {
  CHECK(a.group_velocity == b.group_velocity);
  CHECK(a.perimeter == b.perimeter);
  REQUIRE(a.has_model == b.has_model);
  if (a.has_model) {
    CHECK(a.model.pump.sigma_p == b.model.pump.sigma_p);
    CHECK(a.model.pump.carrier == b.model.pump.carrier);
    CHECK(a.model.pump.base_delay == b.model.pump.base_delay);
    REQUIRE(a.model.pump.taps.size() == b.model.pump.taps.size());
    for (std::size_t n = 0; n < a.model.pump.taps.size(); ++n) {
      CHECK(a.model.pump.taps[n].amplitude == b.model.pump.taps[n].amplitude);
      CHECK(a.model.pump.taps[n].phase == b.model.pump.taps[n].phase);
    }
    check_chain(a.model.idler, b.model.idler);
    check_chain(a.model.pump_resonance, b.model.pump_resonance);
    check_chain(a.model.signal, b.model.signal);
    const auto& la = std::get<LinearDispersion>(a.model.dispersion);
    const auto& lb = std::get<LinearDispersion>(b.model.dispersion);
    CHECK(la.c1 == lb.c1);
    CHECK(la.c2 == lb.c2);
    CHECK(la.slope == lb.slope);
    CHECK(la.length == lb.length);
  }
  CHECK(a.grid.half_span == b.grid.half_span);
  CHECK(a.grid.points == b.grid.points);
  CHECK(a.analysis.subspace == b.analysis.subspace);
  CHECK(a.analysis.pi.prominence == b.analysis.pi.prominence);
  CHECK(a.analysis.pi.mode == b.analysis.pi.mode);
  REQUIRE(a.target.has_value() == b.target.has_value());
  if (a.target) {
    CHECK(a.target->dimension == b.target->dimension);
    CHECK(a.target->sigma == b.target->sigma);
    CHECK(a.target->coefficients == b.target->coefficients);
  }
  CHECK(a.pgr.n2 == b.pgr.n2);
  CHECK(a.pgr.a_eff == b.pgr.a_eff);
  CHECK(a.pgr.avg_power == b.pgr.avg_power);
  CHECK(a.pgr.rep_rate == b.pgr.rep_rate);
  REQUIRE(a.mzi.has_value() == b.mzi.has_value());
  if (a.mzi) {
    CHECK(a.mzi->k_prime == b.mzi->k_prime);
    CHECK(a.mzi->phi_h1 == b.mzi->phi_h1);
    CHECK(a.mzi->l2 == b.mzi->l2);
  }
  REQUIRE(a.has_search == b.has_search);
  if (a.has_search) {
    CHECK(a.search.restarts == b.search.restarts);
    CHECK(a.search.seed == b.search.seed);
    CHECK(a.search.mu.min == b.search.mu.min);
    CHECK(a.search.mu.max == b.search.mu.max);
    CHECK(a.search.mu.step == b.search.mu.step);
    CHECK(a.search.epsilon == b.search.epsilon);
    CHECK(a.search.grid_points == b.search.grid_points);
    CHECK(a.search.verify_points == b.search.verify_points);
    CHECK(a.search.fit.mode == b.search.fit.mode);
    CHECK(a.search.fit.gradient_tolerance == b.search.fit.gradient_tolerance);
    CHECK(a.search.fit.step_tolerance == b.search.fit.step_tolerance);
    CHECK(a.search.fit.max_iterations == b.search.fit.max_iterations);
  }
}

}  // namespace

TEST_CASE("parse, serialize, parse is the identity") {
  for (const char* name : {"bell_phi_minus.yaml", "mes_d3.yaml", "mes_d4.yaml", "separable.yaml",
                           "mzi/kprime_005.yaml", "targets/mes_d3.yaml"}) {
    CAPTURE(name);
    std::string text = slurp(test::preset(name));
    if (std::string(name).starts_with("targets")) text = slurp(test::preset("bell_phi_minus.yaml")) + "\n" + text.substr(text.find("target:"));
    const DeviceConfig a = parse_config(text);
    const DeviceConfig b = parse_config(serialize_config(a));
    check_same(a, b);
    CHECK(serialize_config(b) == serialize_config(a));
  }
}

TEST_CASE("merged device, target and search configs round-trip") {
  const DeviceConfig a = load_config({test::preset("mes_d4.yaml"), test::preset("targets/mes_d4.yaml"),
                                      test::preset("search/default.yaml"), test::preset("mzi/kprime_010.yaml")});
  CHECK(a.has_search);
  CHECK(a.mzi.has_value());
  CHECK_FALSE(a.target->sigma.has_value());
  check_same(a, parse_config(serialize_config(a)));
}

TEST_CASE("values land in SI") {
  const DeviceConfig c = load_config({test::preset("bell_phi_minus.yaml")});
  CHECK(c.model.pump.sigma_p.value() == doctest::Approx(4.02 * kTwoPi * 1e9));
  CHECK(c.model.signal.omega.value() == doctest::Approx(1215.70e12));
  CHECK(c.model.signal.kappa.value() == doctest::Approx(0.0985e6));
  CHECK(c.model.signal.decay[1].value() == doctest::Approx(2.44e9));
  CHECK(c.model.pump.taps[3].amplitude == 0.995);
  CHECK(c.model.pump.taps[5].phase == 6.282);
  CHECK(c.model.signal.perimeter == c.perimeter);
  CHECK(c.target_state().sigma.value() == doctest::Approx(1.968 * kTwoPi * 1e9));
  CHECK(c.target_state().coefficients[1] == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("missing and malformed keys are named") {
  std::string text = slurp(test::preset("bell_phi_minus.yaml"));
  const auto cut = text.find("    kappa: 0.0985 sqrtTHz\n", text.find("  signal:"));
  REQUIRE(cut != std::string::npos);
  const std::string no_kappa = text.substr(0, cut) + text.substr(cut + 26);
  try {
    parse_config(no_kappa);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "resonances.signal.kappa");
  }
  std::string unitless = text;
  unitless.replace(unitless.find("base_delay: 75 ps"), 17, "base_delay: 75");
  try {
    parse_config(unitless);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "pump.base_delay");
  }
  CHECK_THROWS_AS(parse_config("- just\n- a list\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("device: {group_velocity: 7e7 m/s, perimeter: 1 mm}\ngrid: {half_span: 40 GHz, points: 4}\n"),
                  ConfigError);
  CHECK_THROWS_AS(load_config({"/nonexistent/tfm.yaml"}), ConfigError);
}

TEST_CASE("later files override earlier ones key by key") {
  const std::string over = temp_file("over.yaml", "pump:\n  sigma_p: 9 2pi*GHz\nresonances:\n  signal:\n    mu: [2 GHz]\n");
  const DeviceConfig c = load_config({test::preset("bell_phi_minus.yaml"), over});
  CHECK(c.model.pump.sigma_p.value() == doctest::Approx(9 * kTwoPi * 1e9));
  CHECK(c.model.signal.mu[0].value() == doctest::Approx(2e9));
  CHECK(c.model.signal.kappa.value() == doctest::Approx(0.0985e6));  // sibling key kept
  CHECK(c.model.pump.taps.size() == 6);                              // untouched list kept
  CHECK(c.model.idler.mu[0].value() == doctest::Approx(1.45e9));
}

TEST_CASE("free parameters merge back over a device config") {
  FreeParams p;
  p.sigma_p = units::ghz(kTwoPi * 7.5);
  p.taps = {{0.25, 1.0}, {0.5, 6.0}};
  p.mu_signal_idler = {units::ghz_rate(3.25)};
  p.mu_pump = {Rate(0.0)};
  const std::string frag = temp_file("free.yaml", serialize_free_params(p));
  const DeviceConfig c = load_config({test::preset("bell_phi_minus.yaml"), frag});
  CHECK(c.model.pump.sigma_p == p.sigma_p);
  REQUIRE(c.model.pump.taps.size() == 2);
  CHECK(c.model.pump.taps[1].phase == 6.0);
  CHECK(c.model.signal.mu[0] == p.mu_signal_idler[0]);
  CHECK(c.model.idler.mu[0] == p.mu_signal_idler[0]);
}

TEST_CASE("empty mu sweep is rejected") {
  const std::string bad = temp_file("mu.yaml", "search:\n  mu_min: 3 GHz\n  mu_max: 1 GHz\n");
  try {
    load_config({test::preset("bell_phi_minus.yaml"), test::preset("search/default.yaml"), bad});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key().starts_with("search.mu"));
  }
}
