#pragma once

#include "tfm/jsa.hpp"
#include "tfm/pulse_shaper.hpp"
#include "tfm/resonator.hpp"

namespace tfm {

struct DeviceModel {
  PumpSpec pump;
  ResonanceChain idler;
  ResonanceChain pump_resonance;
  ResonanceChain signal;
  DispersionModel dispersion;
};

// Pump grid sharing the signal/idler spacing, centred on their midpoint so
// every ws + wi lands on the sum grid, spanning max(8 sigma_p, 2 half_span).
SpectralGrid pump_grid_for(const SpectralGrid& grid_s, const SpectralGrid& grid_i, double sigma_p);

struct ForwardResult {
  Field1D fir;      // H on the pump grid
  Field1D alpha_p;  // shaped pump
  Field1D l_p;
  Field1D l_s;
  Field1D l_i;
  Jsa jsa;          // normalized, before phase imposition
};

ForwardResult forward(const DeviceModel& m, const SpectralGrid& grid_s, const SpectralGrid& grid_i,
                      JsaPath path = JsaPath::kAuto);

// Signal and idler grids centred on their resonances.
SpectralGrid signal_grid(const DeviceModel& m, AngularFrequency half_span, int points);
SpectralGrid idler_grid(const DeviceModel& m, AngularFrequency half_span, int points);

}  // namespace tfm
