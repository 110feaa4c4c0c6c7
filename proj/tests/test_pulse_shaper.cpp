#include <doctest.h>

#include <cmath>

#include "tfm/error.hpp"
#include "tfm/pulse_shaper.hpp"

using namespace tfm;

namespace {
const Duration kTau = units::ps(75);
Eigen::VectorXd detunings(int n, double span) { return Eigen::VectorXd::LinSpaced(n, -span, span); }
}  // namespace

TEST_CASE("single tap has unit magnitude") {
  const Eigen::VectorXcd h = fir_values({{1.0, 0.3}}, kTau, detunings(257, 2e12));
  CHECK((h.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("two equal in-phase taps give 2|cos(w tau / 2)|") {
  const Eigen::VectorXd d = detunings(1001, 3e11);
  const Eigen::VectorXcd h = fir_values({{1.0, 0.0}, {1.0, 0.0}}, kTau, d);
  double err = 0.0;
  for (int k = 0; k < d.size(); ++k)
    err = std::max(err, std::abs(std::abs(h[k]) - 2.0 * std::abs(std::cos(d[k] * kTau.value() / 2.0))));
  CHECK(err < 1e-10);
}

TEST_CASE("response is periodic in 2 pi / tau") {
  const std::vector<Tap> taps = {{0.8, 0.1}, {0.3, 2.0}, {0.5, -1.2}, {0.9, 4.0}};
  const Eigen::VectorXd d = detunings(301, 1e11);
  const Eigen::VectorXd shifted = d.array() + kTwoPi / kTau.value();
  CHECK((fir_values(taps, kTau, d) - fir_values(taps, kTau, shifted)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("global phase offset multiplies H by a phase") {
  std::vector<Tap> taps = {{0.8, 0.1}, {0.3, 2.0}, {0.5, -1.2}};
  const Eigen::VectorXd d = detunings(101, 1e11);
  const Eigen::VectorXcd h0 = fir_values(taps, kTau, d);
  for (Tap& t : taps) t.phase += 0.7;
  const Eigen::VectorXcd h1 = fir_values(taps, kTau, d);
  CHECK((h1 - h0 * std::polar(1.0, 0.7)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("|H| is bounded by the tap sum and reaches it when phases align") {
  const std::vector<Tap> taps = {{0.2, 0.0}, {0.7, 0.0}, {0.4, 0.0}};
  const Eigen::VectorXcd h = fir_values(taps, kTau, detunings(2001, kTwoPi / kTau.value()));
  CHECK(h.cwiseAbs().maxCoeff() <= 1.3 + 1e-12);
  CHECK(h.cwiseAbs().maxCoeff() == doctest::Approx(1.3).epsilon(1e-9));
}

TEST_CASE("shaped pump is the Gaussian envelope times the FIR") {
  PumpSpec p;
  p.sigma_p = units::ghz(30);
  p.carrier = units::thz(1215.075);
  p.taps = {{1.0, 0.0}, {0.5, 1.0}};
  p.base_delay = kTau;
  const SpectralGrid g(p.carrier, units::ghz(100), 201);
  const Field1D a = shaped_pump(p, g);
  const Field1D h = fir_response(p, g);
  const Field1D e = gaussian_envelope(g, p.carrier, p.sigma_p);
  CHECK((a.values - e.values.cwiseProduct(h.values)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(h.values[100] - (1.0 + std::polar(0.5, 1.0))) < 1e-14);
}

TEST_CASE("pump spec validation") {
  PumpSpec p;
  p.sigma_p = units::ghz(30);
  p.carrier = units::thz(1215.075);
  p.base_delay = kTau;
  p.taps = {{0.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(p.validate(), DegenerateInputError);
  p.taps = {{1.5, 0.0}};
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.taps = {{1.0, 0.0}};
  p.sigma_p = AngularFrequency(0.0);
  CHECK_THROWS_AS(p.validate(), DomainError);
}
