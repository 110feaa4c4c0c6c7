#include "tfm/phase_matching.hpp"

#include <cmath>
#include <numbers>

#include "tfm/error.hpp"

namespace tfm {

void validate(const DispersionModel& model) {
  std::visit(
      [](const auto& m) {
        if (!(m.length.value() > 0.0)) throw DomainError("phase_matching", "interaction length must be positive");
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LinearDispersion>) {
          if (m.c1 == 0.0 && m.c2 == 0.0) throw DomainError("phase_matching", "c1 and c2 cannot both be zero");
        }
      },
      model);
}

double delta_k_linear(const LinearDispersion& m, double ds, double di) {
  return m.slope * (m.c1 * ds + m.c2 * di);
}

double delta_k_taylor(const TaylorDispersion& m, double ds, double di, double dp) {
  auto k = [&](double d) { return m.k1 * d + m.k2 * d * d / 2.0 + m.k3 * d * d * d / 6.0; };
  return k(dp) + k(ds + di - dp) - k(ds) - k(di) - m.gamma0 * m.peak_power.value();
}

std::complex<double> pmf_from_delta_k(double delta_k, Length length) {
  const double x = 0.5 * length.value() * delta_k;
  const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return std::polar(sinc, x);
}

std::complex<double> pmf(const LinearDispersion& m, double ds, double di) {
  return pmf_from_delta_k(delta_k_linear(m, ds, di), m.length);
}

std::complex<double> pmf(const TaylorDispersion& m, double ds, double di, double dp) {
  return pmf_from_delta_k(delta_k_taylor(m, ds, di, dp), m.length);
}

bool pump_independent(const DispersionModel& model) {
  return std::holds_alternative<LinearDispersion>(model);
}

OrientationAngle orientation_angle(double c1, double c2) {
  if (c2 == 0.0) {
    if (c1 == 0.0) throw DomainError("phase_matching", "orientation undefined for c1 = c2 = 0");
    return {c1 > 0.0 ? -90.0 : 90.0, true};
  }
  return {-std::atan(c1 / c2) * 180.0 / std::numbers::pi, false};
}

}  // namespace tfm
