#include "tfm/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfm/error.hpp"

namespace tfm {

namespace {
constexpr cplx kI{0.0, 1.0};
}

void ResonanceChain::validate() const {
  const std::string who = "resonator[" + label + "]";
  if (decay.empty()) throw DomainError(who, "chain needs at least one stage");
  if (mu.size() + 1 != decay.size())
    throw DomainError(who, "need exactly M-1 inter-stage couplings for M stages");
  for (const auto& r : decay)
    if (!(r.value() > 0.0)) throw DomainError(who, "stage decay rates must be positive");
  for (const auto& m : mu)
    if (!(m.value() >= 0.0)) throw DomainError(who, "inter-stage couplings must be non-negative");
  if (!(kappa.value() > 0.0)) throw DomainError(who, "bus coupling kappa must be positive");
  // The main-ring decay includes the extrinsic part kappa^2/2; less than that
  // would mean intrinsic gain and |S_t/S_i| > 1.
  if (decay.front().value() < 0.5 * kappa.value() * kappa.value() * (1.0 - 1e-12))
    throw DomainError(who, "main-ring decay rate is below the bus-coupling limit kappa^2/2");
  if (!(perimeter.value() > 0.0)) throw DomainError(who, "perimeter must be positive");
  if (!(group_velocity.value() > 0.0)) throw DomainError(who, "group velocity must be positive");
}

Eigen::MatrixXcd chain_amplitudes(const ResonanceChain& chain, const Eigen::VectorXd& detuning) {
  chain.validate();
  const int m = chain.stages();
  Eigen::MatrixXcd out(detuning.size(), m);
  std::vector<cplx> c_prime(m), d_prime(m), a(m);
  for (Eigen::Index k = 0; k < detuning.size(); ++k) {
    // Thomas algorithm; the system is diagonally dominant in the imaginary
    // sense only, so guard the pivots explicitly.
    for (int j = 0; j < m; ++j) {
      const cplx diag = kI * detuning[k] + chain.decay[j].value();
      const cplx lower = j > 0 ? kI * chain.mu[j - 1].value() : cplx{};
      const cplx upper = j + 1 < m ? kI * chain.mu[j].value() : cplx{};
      const cplx rhs = j == 0 ? -kI * chain.kappa.value() : cplx{};
      const cplx pivot = j > 0 ? diag - lower * c_prime[j - 1] : diag;
      if (std::abs(pivot) == 0.0 || !std::isfinite(std::abs(pivot)))
        throw NumericalError("resonator[" + chain.label + "]", "singular coupled-mode system");
      c_prime[j] = upper / pivot;
      d_prime[j] = (j > 0 ? rhs - lower * d_prime[j - 1] : rhs) / pivot;
    }
    a[m - 1] = d_prime[m - 1];
    for (int j = m - 2; j >= 0; --j) a[j] = d_prime[j] - c_prime[j] * a[j + 1];
    for (int j = 0; j < m; ++j) out(k, j) = a[j];
  }
  return out;
}

Eigen::VectorXcd field_enhancement_values(const ResonanceChain& chain, const Eigen::VectorXd& detuning) {
  const double scale = std::sqrt(chain.group_velocity.value() / chain.perimeter.value());
  return chain_amplitudes(chain, detuning).col(0) * scale;
}

Field1D field_enhancement_chain(const ResonanceChain& chain, const SpectralGrid& grid) {
  return Field1D(grid, field_enhancement_values(chain, grid.detuning_from(chain.omega)));
}

Field1D field_enhancement_two_stage(const ResonanceChain& chain, const SpectralGrid& grid) {
  chain.validate();
  if (chain.stages() != 2)
    throw DomainError("resonator[" + chain.label + "]", "two-stage formula needs M = 2");
  const double scale = std::sqrt(chain.group_velocity.value() / chain.perimeter.value());
  const double r1 = chain.decay[0].value();
  const double r2 = chain.decay[1].value();
  const double mu = chain.mu[0].value();
  const double kappa = chain.kappa.value();
  const Eigen::VectorXd d = grid.detuning_from(chain.omega);
  Eigen::VectorXcd v(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    const cplx num = kappa * (d[k] - kI * r2);
    const cplx den = (kI * d[k] + r1) * (kI * d[k] + r2) + mu * mu;
    v[k] = scale * num / den;
  }
  return Field1D(grid, std::move(v));
}

Field1D bus_transmission(const ResonanceChain& chain, const SpectralGrid& grid) {
  const Eigen::MatrixXcd a = chain_amplitudes(chain, grid.detuning_from(chain.omega));
  Eigen::VectorXcd t = Eigen::VectorXcd::Ones(grid.size()) - kI * chain.kappa.value() * a.col(0);
  return Field1D(grid, std::move(t));
}

Eigen::VectorXd dissipated_fraction(const ResonanceChain& chain, const Eigen::VectorXd& detuning) {
  const Eigen::MatrixXcd a = chain_amplitudes(chain, detuning);
  const double kappa2 = chain.kappa.value() * chain.kappa.value();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(detuning.size());
  for (int j = 0; j < chain.stages(); ++j) {
    const double intrinsic = chain.decay[j].value() - (j == 0 ? 0.5 * kappa2 : 0.0);
    out += 2.0 * intrinsic * a.col(j).cwiseAbs2();
  }
  return out;
}

void MziCouplerSpec::validate() const {
  if (!(k_prime > 0.0 && k_prime < 1.0)) throw DomainError("resonator", "MZI splitter k' must lie in (0, 1)");
  if (!(l1.value() > 0.0) || !(l2.value() > 0.0)) throw DomainError("resonator", "ring perimeters must be positive");
  if (!(group_velocity.value() > 0.0)) throw DomainError("resonator", "group velocity must be positive");
}

Eigen::Matrix2cd mzi_transfer(const MziCouplerSpec& c) {
  c.validate();
  const double t = std::sqrt(1.0 - c.k_prime);
  const cplx x = -kI * std::sqrt(c.k_prime);
  Eigen::Matrix2cd coupler;
  coupler << t, x, x, t;
  Eigen::Matrix2cd arms = Eigen::Matrix2cd::Zero();
  arms(0, 0) = std::polar(1.0, c.phi_h1);
  arms(1, 1) = std::polar(1.0, c.phi_h2);
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
  out(0, 0) = std::polar(1.0, c.phi_h3);
  return out * coupler * arms * coupler;
}

double mzi_power_coupling(const MziCouplerSpec& c) { return std::norm(mzi_transfer(c)(1, 0)); }

namespace {
double mu_per_k(const MziCouplerSpec& c) {
  return c.group_velocity.value() / std::sqrt(c.l1.value() * c.l2.value());
}
}  // namespace

Rate mzi_effective_mu(const MziCouplerSpec& c) { return Rate(mzi_power_coupling(c) * mu_per_k(c)); }

Rate mzi_max_mu(const MziCouplerSpec& c) {
  MziCouplerSpec bar = c;
  bar.phi_h1 = bar.phi_h2 = bar.phi_h3 = 0.0;
  return mzi_effective_mu(bar);
}

MziSetting mzi_phase_for_mu(const MziCouplerSpec& c, Rate target) {
  const double mu_max = mzi_max_mu(c).value();
  const double mu = target.value();
  if (!(mu >= 0.0) || mu > mu_max * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "target mu_12 = " << mu << " 1/s is outside the achievable range [0, " << mu_max << "] 1/s";
    throw DomainError("resonator", msg.str());
  }
  // |cross|^2 = 4k'(1-k') cos^2(dphi/2), so dphi = 2 acos(sqrt(mu/mu_max)).
  auto dphi_of = [&](double m) { return 2.0 * std::acos(std::sqrt(std::clamp(m / mu_max, 0.0, 1.0))); };
  MziSetting s;
  s.phi_h1 = dphi_of(mu);
  s.phi_h2 = 0.0;
  MziCouplerSpec probe = c;
  probe.phi_h1 = s.phi_h1;
  probe.phi_h2 = 0.0;
  probe.phi_h3 = 0.0;
  s.phi_h3 = -std::arg(mzi_transfer(probe)(0, 0));
  // Central difference, one-sided near the ends of the range.
  const double h = 1e-6 * mu_max;
  const double lo = std::max(0.0, mu - h);
  const double hi = std::min(mu_max, mu + h);
  s.finesse = std::abs(dphi_of(hi) - dphi_of(lo)) / (hi - lo);
  return s;
}

}  // namespace tfm
