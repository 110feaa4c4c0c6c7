#include "tfm/pulse_shaper.hpp"

#include <cmath>

#include "tfm/error.hpp"

namespace tfm {

void PumpSpec::validate() const {
  if (taps.empty()) throw DomainError("pulse_shaper", "pump needs at least one tap");
  if (!(base_delay.value() > 0.0)) throw DomainError("pulse_shaper", "base delay must be positive");
  if (!(sigma_p.value() > 0.0)) throw DomainError("pulse_shaper", "sigma_p must be positive");
  bool any = false;
  for (const auto& t : taps) {
    if (!(t.amplitude >= 0.0 && t.amplitude <= 1.0))
      throw DomainError("pulse_shaper", "tap amplitude outside [0, 1]");
    if (!std::isfinite(t.phase)) throw DomainError("pulse_shaper", "tap phase is not finite");
    any = any || t.amplitude > 0.0;
  }
  if (!any) throw DegenerateInputError("pulse_shaper", "all tap amplitudes are zero");
}

Eigen::VectorXcd fir_values(const std::vector<Tap>& taps, Duration tau, const Eigen::VectorXd& detuning) {
  bool any = false;
  for (const auto& t : taps) any = any || t.amplitude != 0.0;
  if (!any) throw DegenerateInputError("pulse_shaper", "all tap amplitudes are zero");
  Eigen::VectorXcd h = Eigen::VectorXcd::Zero(detuning.size());
  for (std::size_t n = 0; n < taps.size(); ++n) {
    const double delay = static_cast<double>(n + 1) * tau.value();
    for (Eigen::Index k = 0; k < detuning.size(); ++k)
      h[k] += taps[n].amplitude * std::polar(1.0, taps[n].phase - detuning[k] * delay);
  }
  return h;
}

Field1D fir_response(const PumpSpec& spec, const SpectralGrid& grid) {
  return Field1D(grid, fir_values(spec.taps, spec.base_delay, grid.detuning_from(spec.carrier)));
}

Field1D shaped_pump(const PumpSpec& spec, const SpectralGrid& grid) {
  spec.validate();
  Field1D env = gaussian_envelope(grid, spec.carrier, spec.sigma_p);
  env.values.array() *= fir_response(spec, grid).values.array();
  return env;
}

}  // namespace tfm
