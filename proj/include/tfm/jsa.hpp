#pragma once

#include <vector>

#include "tfm/phase_matching.hpp"
#include "tfm/spectral.hpp"

namespace tfm {

// Joint spectral amplitude; rows follow the signal grid, columns the idler grid.
struct Jsa {
  Jsa(SpectralGrid gs, SpectralGrid gi, Eigen::MatrixXcd f, bool is_normalized = false);

  SpectralGrid grid_s;
  SpectralGrid grid_i;
  Eigen::MatrixXcd amplitude;
  bool normalized = false;

  // sum |F|^2 dws dwi
  double norm2() const;
};

// Function of the sum frequency ws + wi; grid.center() is the sum-frequency origin.
struct AdpProfile {
  SpectralGrid grid;
  Eigen::VectorXcd values;
  bool truncated = false;  // input not negligible at the window edges
};

// Full linear self-convolution (length 2n - 1), unscaled, by FFT.
Eigen::VectorXcd self_convolve(const Eigen::VectorXcd& a);

// ADP = [alpha_p l_p] * [alpha_p l_p] with quadrature weight dw, on the sum grid.
AdpProfile compute_adp(const Field1D& pump_times_lp);

Field2D compute_tdsi(const Field1D& l_s, const Field1D& l_i);

struct JsaInputs {
  Field1D pump;  // alpha_p on the pump grid
  Field1D l_p;   // same grid as pump
  Field1D l_s;
  Field1D l_i;
  DispersionModel dispersion;
  AngularFrequency omega_s0;  // phase-matched frequencies for the linear model
  AngularFrequency omega_i0;
};

enum class JsaPath {
  kAuto,        // factorized when the PMF is pump independent
  kFactorized,  // ADP(ws + wi) PMF l_s l_i
  kIntegral,    // pump quadrature at every (ws, wi)
};

// Normalized JSA. The pump grid must share the signal/idler spacing and put
// ws + wi on its sum grid; its span must cover the signal/idler sums.
Jsa compute_jsa(const JsaInputs& in, JsaPath path = JsaPath::kAuto);

Jsa normalize(const Jsa& jsa);

enum class PhaseMode {
  kDiscardResidual,  // F -> |F| * sign
  kRetain,           // F -> F * sign
};

struct PiPhaseOptions {
  double prominence = 0.5;
  double noise_floor = 1e-6;  // minima beside peaks below this fraction of the cut maximum are ignored
  PhaseMode mode = PhaseMode::kDiscardResidual;
};

// Interior local minima of a non-negative profile lying below prominence times
// the smaller of the two neighbouring local maxima.
std::vector<int> find_cut_minima(const Eigen::VectorXd& profile, double prominence, double noise_floor);

// Minima of |F| along the diagonal cut, as diagonal node indices k (sum index 2k).
std::vector<int> diagonal_minima(const Jsa& jsa, const PiPhaseOptions& opt = {});

// Multiplies F(s, i) by (-1)^(number of minima k with s + i > 2k).
Jsa apply_pi_flips(const Jsa& jsa, const std::vector<int>& minima);

struct PiPhaseResult {
  Jsa jsa;
  std::vector<int> minima;
};

PiPhaseResult impose_pi_phase(const Jsa& jsa, const PiPhaseOptions& opt = {});

}  // namespace tfm
