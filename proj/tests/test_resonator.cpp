#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tfm/error.hpp"
#include "tfm/resonator.hpp"

using namespace tfm;
using tfm::test::chain;

namespace {
SpectralGrid grid_for(const ResonanceChain& c, int n = 2001) { return SpectralGrid(c.omega, units::ghz(40), n); }

// Interior local maxima of |l|.
std::vector<int> peaks(const Eigen::VectorXcd& l) {
  std::vector<int> out;
  for (int k = 1; k + 1 < l.size(); ++k)
    if (std::abs(l[k]) > std::abs(l[k - 1]) && std::abs(l[k]) >= std::abs(l[k + 1])) out.push_back(k);
  return out;
}
}  // namespace

TEST_CASE("two-stage chain matches the closed form") {
  for (double mu : {0.0, 1.5, 4.02, 9.0}) {
    const ResonanceChain c = chain({mu});
    const SpectralGrid g = grid_for(c);
    const Field1D a = field_enhancement_two_stage(c, g);
    const Field1D b = field_enhancement_chain(c, g);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() / a.values.cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(field_enhancement_two_stage(chain({1.0, 1.0}), grid_for(chain())), DomainError);
}

TEST_CASE("uncoupled chain is a Lorentzian") {
  const ResonanceChain c = chain({0.0});
  const double r1 = c.decay[0].value();
  const double scale = std::sqrt(c.group_velocity.value() / c.perimeter.value());
  const SpectralGrid g = grid_for(c, 101);
  const Field1D l = field_enhancement_chain(c, g);
  for (int k = 0; k < g.size(); ++k) {
    const cplx expect = -cplx(0, 1) * c.kappa.value() * scale / (cplx(0, g.offset(k)) + r1);
    CHECK(std::abs(l.values[k] - expect) <= 1e-12 * std::abs(expect));
  }
  CHECK(std::abs(l.values[50] - (-cplx(0, 1) * c.kappa.value() / r1 * scale)) < 1e-9 * std::abs(l.values[50]));
}

TEST_CASE("zeroing a coupling truncates the chain") {
  const ResonanceChain full = chain({4.0, 0.0, 3.0});
  const ResonanceChain cut = chain({4.0});
  const SpectralGrid g = grid_for(full);
  const Eigen::VectorXcd a = field_enhancement_chain(full, g).values;
  const Eigen::VectorXcd b = field_enhancement_chain(cut, g).values;
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12 * b.cwiseAbs().maxCoeff());
}

TEST_CASE("split resonance peak counts") {
  CHECK(peaks(field_enhancement_chain(chain({4.02}), grid_for(chain())).values).size() == 2);
  CHECK(peaks(field_enhancement_chain(chain({5.0, 5.0}), grid_for(chain())).values).size() == 3);
  CHECK(peaks(field_enhancement_chain(chain({}), grid_for(chain())).values).size() == 1);
}

TEST_CASE("split peaks are symmetric when stage losses are equal") {
  ResonanceChain c = chain({6.0});
  c.decay = {units::ghz_rate(7.26), units::ghz_rate(7.26)};
  const SpectralGrid g = grid_for(c);
  const std::vector<int> p = peaks(field_enhancement_chain(c, g).values);
  REQUIRE(p.size() == 2);
  CHECK(std::abs(p[0] + p[1] - (g.size() - 1)) <= 1);
}

TEST_CASE("bus transmission is passive and conserves energy") {
  for (const auto& mu : std::vector<std::vector<double>>{{}, {2.0}, {4.02, 3.1}, {1.0, 8.0, 2.0}}) {
    const ResonanceChain c = chain(mu);
    const SpectralGrid g = grid_for(c);
    const Eigen::VectorXd t2 = bus_transmission(c, g).values.cwiseAbs2();
    CHECK(t2.maxCoeff() <= 1.0 + 1e-9);
    const Eigen::VectorXd lost = dissipated_fraction(c, g.detuning_from(c.omega));
    CHECK((t2 + lost - Eigen::VectorXd::Ones(g.size())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("main-ring decay below kappa^2/2 is rejected") {
  ResonanceChain c = chain();
  c.decay[0] = Rate(0.4 * c.kappa.value() * c.kappa.value());
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = chain({1.0});
  c.mu.clear();
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("doubling the main-ring perimeter scales |l| by 1/sqrt(2)") {
  ResonanceChain c = chain({4.0});
  const SpectralGrid g = grid_for(c, 301);
  const Eigen::VectorXcd a = field_enhancement_chain(c, g).values;
  c.perimeter = c.perimeter * 2.0;
  const Eigen::VectorXcd b = field_enhancement_chain(c, g).values;
  CHECK((b * std::sqrt(2.0) - a).cwiseAbs().maxCoeff() < 1e-12 * a.cwiseAbs().maxCoeff());
}

namespace {
MziCouplerSpec mzi(double k_prime) {
  MziCouplerSpec m;
  m.k_prime = k_prime;
  m.l1 = units::mm(0.7177910894921958);
  m.l2 = m.l1 / 2.0;
  m.group_velocity = Speed(7.14e7);
  return m;
}
}  // namespace

TEST_CASE("MZI coupler: unitary, bar state at dphi = pi") {
  MziCouplerSpec m = mzi(0.1);
  const Eigen::Matrix2cd u = mzi_transfer(m);
  CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  CHECK(mzi_power_coupling(m) == doctest::Approx(4 * 0.1 * 0.9));
  m.phi_h1 = std::numbers::pi;
  CHECK(mzi_power_coupling(m) < 1e-30);
  CHECK_THROWS_AS(mzi(1.0).validate(), DomainError);
}

TEST_CASE("MZI inverse map round trip") {
  const MziCouplerSpec m = mzi(0.05);
  const double mu_max = mzi_max_mu(m).value();
  for (double f : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    const MziSetting s = mzi_phase_for_mu(m, Rate(f * mu_max));
    MziCouplerSpec set = m;
    set.phi_h1 = s.phi_h1;
    set.phi_h2 = s.phi_h2;
    set.phi_h3 = s.phi_h3;
    CHECK(std::abs(mzi_effective_mu(set).value() - f * mu_max) < 1e-6 * mu_max);
    const cplx through = mzi_transfer(set)(0, 0);
    CHECK(std::abs(through.imag()) < 1e-12);
    CHECK(through.real() >= -1e-12);
  }
  CHECK_THROWS_AS(mzi_phase_for_mu(m, Rate(1.01 * mu_max)), DomainError);
}

TEST_CASE("weaker couplers give the finer phase resolution") {
  const Rate mu = units::ghz_rate(2.0);
  const double f05 = mzi_phase_for_mu(mzi(0.05), mu).finesse;
  const double f10 = mzi_phase_for_mu(mzi(0.10), mu).finesse;
  CHECK(f05 > f10);
}
