#include "tfm/model.hpp"

#include <algorithm>
#include <cmath>

#include "tfm/error.hpp"

namespace tfm {

SpectralGrid pump_grid_for(const SpectralGrid& gs, const SpectralGrid& gi, double sigma_p) {
  const double dx = gs.spacing();
  const double half = std::max(8.0 * sigma_p, 2.0 * std::max(gs.half_span().value(), gi.half_span().value()));
  const int side = static_cast<int>(std::ceil(half / dx - 1e-9));
  const AngularFrequency center = gi.center() + (gs.center() - gi.center()) * 0.5;
  return SpectralGrid(center, AngularFrequency(side * dx), 2 * side + 1);
}

SpectralGrid signal_grid(const DeviceModel& m, AngularFrequency half_span, int points) {
  return SpectralGrid(m.signal.omega, half_span, points);
}

SpectralGrid idler_grid(const DeviceModel& m, AngularFrequency half_span, int points) {
  return SpectralGrid(m.idler.omega, half_span, points);
}

ForwardResult forward(const DeviceModel& m, const SpectralGrid& gs, const SpectralGrid& gi, JsaPath path) {
  m.pump.validate();
  const SpectralGrid gp = pump_grid_for(gs, gi, m.pump.sigma_p.value());
  Field1D fir = fir_response(m.pump, gp);
  Field1D alpha = shaped_pump(m.pump, gp);
  Field1D l_p = field_enhancement_chain(m.pump_resonance, gp);
  Field1D l_s = field_enhancement_chain(m.signal, gs);
  Field1D l_i = field_enhancement_chain(m.idler, gi);
  Jsa jsa = compute_jsa(JsaInputs{alpha, l_p, l_s, l_i, m.dispersion, m.signal.omega, m.idler.omega}, path);
  return {std::move(fir), std::move(alpha), std::move(l_p), std::move(l_s), std::move(l_i), std::move(jsa)};
}

}  // namespace tfm
