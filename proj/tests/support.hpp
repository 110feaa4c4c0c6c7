#pragma once

#include <string>

#include "tfm/resonator.hpp"
#include "tfm/units.hpp"

namespace tfm::test {

inline std::string preset(const std::string& name) { return std::string(TFM_PRESET_DIR) + "/" + name; }

// Chain with the |phi-> preset's loss figures; `mu` fixes the stage count.
inline ResonanceChain chain(std::vector<double> mu_ghz = {}, double omega_thz = 1215.70) {
  ResonanceChain c;
  c.label = "signal";
  c.omega = units::thz(omega_thz);
  c.decay = {units::ghz_rate(7.26)};
  for (double m : mu_ghz) {
    c.decay.push_back(units::ghz_rate(2.44));
    c.mu.push_back(units::ghz_rate(m));
  }
  c.kappa = units::sqrt_thz(0.0985);
  c.perimeter = units::mm(0.7177910894921958);
  c.group_velocity = Speed(7.14e7);
  return c;
}

}  // namespace tfm::test
