#pragma once

#include <string>
#include <vector>

#include "tfm/spectral.hpp"

namespace tfm {

// One labelled resonance (idler, pump or signal) of an M-stage linear ring chain.
// Stage 1 is the main ring, the only one coupled to the bus.
struct ResonanceChain {
  std::string label;
  AngularFrequency omega;
  std::vector<Rate> decay;  // 1/tau_m, m = 1..M
  SqrtRate kappa;
  std::vector<Rate> mu;     // mu_{m,m+1}, m = 1..M-1
  Length perimeter;         // L_1
  Speed group_velocity;

  int stages() const { return static_cast<int>(decay.size()); }
  void validate() const;
};

// Closed-form split-resonance enhancement; chain must have exactly two stages.
Field1D field_enhancement_two_stage(const ResonanceChain& chain, const SpectralGrid& grid);

// Steady-state tridiagonal solve of the chain, l_x = sqrt(v_g/L_1) a_1 / S_i.
Field1D field_enhancement_chain(const ResonanceChain& chain, const SpectralGrid& grid);
Eigen::VectorXcd field_enhancement_values(const ResonanceChain& chain, const Eigen::VectorXd& detuning);

// Stage amplitudes a_m / S_i, one row per detuning, one column per stage.
Eigen::MatrixXcd chain_amplitudes(const ResonanceChain& chain, const Eigen::VectorXd& detuning);

// S_t / S_i = 1 - i kappa a_1 / S_i.
Field1D bus_transmission(const ResonanceChain& chain, const SpectralGrid& grid);

// Fraction of input power dissipated in the rings, from the stage amplitudes.
Eigen::VectorXd dissipated_fraction(const ResonanceChain& chain, const Eigen::VectorXd& detuning);

struct MziCouplerSpec {
  double k_prime = 0.0;  // power coupling of each directional coupler
  double phi_h1 = 0.0;
  double phi_h2 = 0.0;
  double phi_h3 = 0.0;
  Length l1;
  Length l2;
  Speed group_velocity;

  void validate() const;
};

// Composed 2x2 transfer matrix coupler * arm phases * coupler, output phase phi_h3 on port 1.
Eigen::Matrix2cd mzi_transfer(const MziCouplerSpec& c);

// Effective point-coupler power coupling k_12 = |cross|^2.
double mzi_power_coupling(const MziCouplerSpec& c);

Rate mzi_effective_mu(const MziCouplerSpec& c);
Rate mzi_max_mu(const MziCouplerSpec& c);

struct MziSetting {
  double phi_h1 = 0.0;
  double phi_h2 = 0.0;
  double phi_h3 = 0.0;
  // |d(phi_h1 - phi_h2) / d mu_12| in rad per (rad/s), by central differences.
  double finesse = 0.0;
};

// Inverse map on the branch phi_h1 - phi_h2 in [0, pi] with phi_h2 = 0.
// phi_h3 cancels the phase of the through element so the bar output is real.
// Phases in `c` are ignored.
MziSetting mzi_phase_for_mu(const MziCouplerSpec& c, Rate target);

}  // namespace tfm
