#pragma once

#include <optional>

#include "tfm/analysis.hpp"
#include "tfm/config.hpp"
#include "tfm/model.hpp"

namespace tfm {

struct Spectra {
  Field1D fir;      // pump grid
  Field1D l_idler;  // idler grid
  Field1D l_pump;   // pump grid
  Field1D l_signal; // signal grid
  Eigen::VectorXd bus_idler;   // |S_t / S_i|^2
  Eigen::VectorXd bus_pump;
  Eigen::VectorXd bus_signal;
};

struct Simulation {
  Jsa jsa;  // normalized, pi phase imposed
  std::vector<int> minima;
  StateReport report;
  Spectra spectra;
  PgrInput pgr_input;
  PgrResult pgr;
};

// Forward model, pi imposition, Schmidt analysis and PGR for one config.
Simulation simulate(const DeviceConfig& c, std::optional<int> points = std::nullopt);

}  // namespace tfm
