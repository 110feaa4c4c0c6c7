#pragma once

#include <vector>

#include "tfm/spectral.hpp"

namespace tfm {

struct Tap {
  double amplitude = 0.0;  // alpha_n in [0, 1]
  double phase = 0.0;      // phi_n, radians, kept unwrapped
};

struct PumpSpec {
  AngularFrequency sigma_p;
  AngularFrequency carrier;
  std::vector<Tap> taps;  // taps[0] is n = 1
  Duration base_delay;

  void validate() const;
};

// H(w) = sum_n alpha_n exp(i(phi_n - n (w - carrier) tau)) at the given detunings from the carrier.
// The carrier only fixes the phase reference of the taps.
Eigen::VectorXcd fir_values(const std::vector<Tap>& taps, Duration tau, const Eigen::VectorXd& detuning);

Field1D fir_response(const PumpSpec& spec, const SpectralGrid& grid);

// alpha_p(w) = gaussian_envelope(w) * H(w).
Field1D shaped_pump(const PumpSpec& spec, const SpectralGrid& grid);

}  // namespace tfm
