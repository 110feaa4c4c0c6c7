#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tfm/config.hpp"
#include "tfm/error.hpp"
#include "tfm/jsa.hpp"
#include "tfm/model.hpp"

using namespace tfm;

namespace {

Eigen::VectorXcd random_vector(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v[k] = cplx(g(rng), g(rng));
  return v;
}

Eigen::VectorXcd direct_convolve(const Eigen::VectorXcd& a) {
  const int n = static_cast<int>(a.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n - 1);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) out[p + q] += a[p] * a[q];
  return out;
}

double rel_l2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / b.norm(); }

// Symmetric single-ring device: pump midway between signal and idler.
DeviceModel single_ring_device() {
  DeviceModel m;
  m.idler = test::chain({}, 1214.45);
  m.idler.label = "idler";
  m.pump_resonance = test::chain({}, 1215.075);
  m.pump_resonance.label = "pump";
  m.signal = test::chain({}, 1215.70);
  m.pump.carrier = units::thz(1215.075);
  m.pump.sigma_p = units::ghz(20);
  m.pump.base_delay = units::ps(75);
  m.pump.taps = {{1.0, 0.0}};
  LinearDispersion d;
  d.length = m.signal.perimeter;
  m.dispersion = d;
  return m;
}

}  // namespace

TEST_CASE("FFT self-convolution matches the direct sum") {
  std::mt19937 rng(11);
  for (int n : {1, 2, 7, 64, 301}) {
    const Eigen::VectorXcd a = random_vector(n, rng);
    CHECK(rel_l2(self_convolve(a), direct_convolve(a)) < 1e-10);
  }
}

TEST_CASE("ADP of a Gaussian is a Gaussian of width sqrt(2) sigma") {
  const AngularFrequency c = units::thz(1215.075);
  const AngularFrequency sigma = units::ghz(10);
  const SpectralGrid g(c, sigma * 10.0, 801);
  const AdpProfile adp = compute_adp(gaussian_envelope(g, c, sigma));
  CHECK_FALSE(adp.truncated);
  CHECK(adp.grid.center().value() == doctest::Approx(2.0 * c.value()));
  // int exp(-x^2/2s^2) exp(-(u-x)^2/2s^2) dx = sqrt(pi) s exp(-u^2/4s^2)
  double err = 0.0;
  for (int k = 0; k < adp.grid.size(); ++k) {
    const double u = adp.grid.offset(k);
    const double expect = std::sqrt(std::numbers::pi) * sigma.value() * std::exp(-u * u / (4.0 * sigma.value() * sigma.value()));
    err = std::max(err, std::abs(adp.values[k] - expect));
  }
  CHECK(err < 1e-9 * std::sqrt(std::numbers::pi) * sigma.value());
  CHECK(compute_adp(gaussian_envelope(g, c, sigma * 4.0)).truncated);
}

TEST_CASE("TDSI is a rank-one outer product") {
  const ResonanceChain a = test::chain({4.0});
  const ResonanceChain b = test::chain({2.0}, 1214.45);
  const SpectralGrid ga(a.omega, units::ghz(30), 65), gb(b.omega, units::ghz(30), 65);
  const Field2D t = compute_tdsi(field_enhancement_chain(a, ga), field_enhancement_chain(b, gb));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t.values);
  CHECK(svd.singularValues()[1] < 1e-12 * svd.singularValues()[0]);
  const Field2D u = compute_tdsi(field_enhancement_chain(b, gb), field_enhancement_chain(a, ga));
  CHECK((u.values - t.values.transpose()).norm() == 0.0);
}

TEST_CASE("factorized and integral paths agree on the golden configs") {
  for (const char* name : {"bell_phi_minus.yaml", "mes_d3.yaml", "mes_d4.yaml", "separable.yaml"}) {
    CAPTURE(name);
    const DeviceConfig c = load_config({test::preset(name)});
    const SpectralGrid gs = signal_grid(c.model, c.grid.half_span, 256);
    const SpectralGrid gi = idler_grid(c.model, c.grid.half_span, 256);
    const Jsa fast = forward(c.model, gs, gi, JsaPath::kFactorized).jsa;
    const Jsa slow = forward(c.model, gs, gi, JsaPath::kIntegral).jsa;
    CHECK(rel_l2(fast.amplitude, slow.amplitude) < 1e-8);
  }
}

TEST_CASE("factorized path refuses a pump-dependent PMF") {
  DeviceModel m = single_ring_device();
  TaylorDispersion t;
  t.reference = m.pump.carrier;
  t.k2 = 1e-25;
  t.length = units::mm(1);
  m.dispersion = t;
  const SpectralGrid gs = signal_grid(m, units::ghz(20), 33), gi = idler_grid(m, units::ghz(20), 33);
  CHECK_THROWS_AS(forward(m, gs, gi, JsaPath::kFactorized), PreconditionError);
  CHECK(forward(m, gs, gi).jsa.normalized);
}

TEST_CASE("normalize gives unit norm and rejects zero") {
  const SpectralGrid g(units::thz(1215), units::ghz(10), 9);
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Constant(9, 9, cplx(3, 4));
  const Jsa j = normalize(Jsa(g, g, f));
  CHECK(j.norm2() == doctest::Approx(1.0));
  CHECK(j.normalized);
  CHECK_THROWS_AS(normalize(Jsa(g, g, Eigen::MatrixXcd::Zero(9, 9))), DegenerateInputError);
}

TEST_CASE("cut minima respect prominence and the noise floor") {
  Eigen::VectorXd v(9);
  v << 0, 1, 2, 0.1, 2, 1.5, 1.2, 1.4, 0;
  CHECK(find_cut_minima(v, 0.5, 1e-6) == std::vector<int>{3});
  CHECK(find_cut_minima(v, 0.9, 1e-6) == std::vector<int>{3, 6});
  CHECK(find_cut_minima(v, 0.5, 0.6).size() == 1);
  v << 1e-9, 2e-9, 1e-10, 2e-9, 1, 0.1, 1, 0, 0;
  CHECK(find_cut_minima(v, 0.5, 1e-6) == std::vector<int>{5});
}

TEST_CASE("pi flips are an involution and keep |F|") {
  const DeviceConfig c = load_config({test::preset("bell_phi_minus.yaml")});
  const SpectralGrid gs = signal_grid(c.model, c.grid.half_span, 128);
  const SpectralGrid gi = idler_grid(c.model, c.grid.half_span, 128);
  const Jsa j = forward(c.model, gs, gi).jsa;
  const std::vector<int> minima = diagonal_minima(j);
  CHECK(minima.size() == 2);
  const Jsa once = apply_pi_flips(j, minima);
  CHECK((once.amplitude.cwiseAbs() - j.amplitude.cwiseAbs()).norm() == 0.0);
  CHECK((apply_pi_flips(once, minima).amplitude - j.amplitude).norm() == 0.0);

  const PiPhaseResult r = impose_pi_phase(j);
  CHECK(r.minima == minima);
  CHECK(r.jsa.amplitude.imag().norm() == 0.0);
  PiPhaseOptions keep;
  keep.mode = PhaseMode::kRetain;
  CHECK((impose_pi_phase(j, keep).jsa.amplitude - once.amplitude).norm() == 0.0);
}

TEST_CASE("JSA maximum sits on the energy-conservation ridge") {
  const DeviceModel m = single_ring_device();
  for (int n : {127, 255}) {
    const SpectralGrid gs = signal_grid(m, units::ghz(40), n), gi = idler_grid(m, units::ghz(40), n);
    const Jsa j = forward(m, gs, gi).jsa;
    Eigen::Index s = 0, i = 0;
    j.amplitude.cwiseAbs().maxCoeff(&s, &i);
    // ws + wi = 2 wp0 is the anti-diagonal s + i = n - 1.
    CHECK(std::abs(static_cast<int>(s + i) - (n - 1)) <= 1);
  }
}

TEST_CASE("grid mismatches are rejected") {
  const DeviceModel m = single_ring_device();
  const SpectralGrid gs = signal_grid(m, units::ghz(40), 64), gi = idler_grid(m, units::ghz(40), 65);
  CHECK_THROWS_AS(forward(m, gs, gi), ShapeError);
}
