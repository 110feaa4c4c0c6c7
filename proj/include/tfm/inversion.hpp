#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfm/analysis.hpp"
#include "tfm/model.hpp"

namespace tfm {

// Everything the search does not touch: taps count and delay, carrier,
// resonance chains (their mu values are overwritten by the sweep), dispersion
// for the forward check, and the analysis window.
struct FixedParams {
  int taps = 6;
  Duration tau;
  AngularFrequency carrier;
  ResonanceChain idler;
  ResonanceChain pump;
  ResonanceChain signal;
  DispersionModel dispersion;
  AngularFrequency half_span;  // signal/idler window half width
};

struct FreeParams {
  AngularFrequency sigma_p;
  std::vector<Tap> taps;
  std::vector<Rate> mu_signal_idler;  // mu_{m,m+1}, equal on signal and idler
  std::vector<Rate> mu_pump;
};

enum class FitMode {
  kMagnitude,  // sum (c |ADP| - |profile|)^2, real c >= 0
  kComplex,    // sum |c ADP - profile|^2, complex c
};

struct FitOptions {
  FitMode mode = FitMode::kMagnitude;
  double gradient_tolerance = 1e-8;
  double step_tolerance = 1e-10;
  int max_iterations = 2000;
};

struct MuSweep {
  Rate min{0.0};
  Rate max{5e9};
  Rate step{0.25e9};

  std::vector<Rate> values() const;
};

struct SearchConfig {
  int restarts = 32;
  std::uint64_t seed = 0;
  MuSweep mu;                     // applied to every signal/idler coupling
  double epsilon = 1e-3;          // decoupling regularization
  int grid_points = 256;          // signal/idler samples during the search
  int verify_points = 512;        // samples for the final forward check
  FitOptions fit;
  PiPhaseOptions pi;
  int subspace = 4;

  void validate() const;
};

// G = F conj(T) / (|T|^2 + eps^2 max|T|^2).
Field2D decouple_tdsi(const Jsa& target, const Field2D& tdsi, double epsilon);

// Diagonal cut u -> G(ws0 + u/2, wi0 + u/2) on the sum-frequency grid of
// spacing dw: nodes at even sum index, cell-centre bilinear values at odd ones.
AdpProfile extract_antidiagonal(const Field2D& g);

// Self-convolution model of the pump, evaluated at the profile's sum frequencies.
class AdpKernel {
 public:
  AdpKernel(const ResonanceChain& pump_chain, AngularFrequency carrier, Duration tau, int taps,
            const SpectralGrid& pump_grid, const SpectralGrid& profile_grid);

  int taps() const { return taps_; }
  const SpectralGrid& pump_grid() const { return pump_grid_; }
  Eigen::VectorXcd adp(double sigma_p, const std::vector<Tap>& taps) const;

  // Also fills d ADP / d(log sigma_p, alpha_1..N, phi_1..N), one column each.
  Eigen::VectorXcd adp(double sigma_p, const std::vector<Tap>& taps, Eigen::MatrixXcd& jacobian) const;

 private:
  int taps_;
  SpectralGrid pump_grid_;
  Eigen::VectorXd detuning_;    // from the carrier
  Eigen::VectorXcd l_p_;
  Eigen::MatrixXcd delays_;     // exp(-i n d tau), taps x points
  std::vector<int> index_;      // profile sample -> sum-grid index
  int fft_len_ = 0;
};

struct FitStart {
  double sigma_p = 0.0;
  std::vector<Tap> taps;
};

struct FitResult {
  double sigma_p = 0.0;
  std::vector<Tap> taps;
  cplx scale;
  double residual = 0.0;  // sum of squared residuals relative to sum |profile|^2
  bool converged = false;
  int iterations = 0;
};

FitResult fit_adp(const AdpProfile& profile, const AdpKernel& kernel, const FitStart& start,
                  const FitOptions& opt = {});

// Residual of given parameters with the best nuisance scale; the quantity fit_adp minimizes.
double adp_residual(const AdpProfile& profile, const AdpKernel& kernel, double sigma_p,
                    const std::vector<Tap>& taps, FitMode mode, cplx* scale = nullptr);

struct TrialRecord {
  int mu_index = 0;
  std::vector<double> mu;  // 1/s
  int restart = 0;
  double sigma_p = 0.0;
  std::vector<double> alpha;
  std::vector<double> phi;
  double fidelity = 0.0;
  double residual = 0.0;
  bool converged = false;
};

struct OptimizeResult {
  FreeParams best;
  double fidelity = 0.0;  // best trial, search grid
  std::vector<TrialRecord> trace;
};

using TrialCallback = std::function<void(const TrialRecord&)>;

OptimizeResult optimize_state(const TargetState& target, const FixedParams& fixed, const SearchConfig& search,
                              const TrialCallback& on_trial = {});

}  // namespace tfm
