#pragma once

#include <complex>
#include <variant>

#include "tfm/units.hpp"

namespace tfm {

// Linearized mismatch dk = slope * (c1 ds + c2 di), detunings from the
// phase-matched signal/idler frequencies. Zeroth order (including gamma0 P) is absorbed.
struct LinearDispersion {
  double c1 = 1.0;
  double c2 = -1.0;
  double slope = 1e-9;  // s/m per rad
  Length length;
};

// dk = k(wp) + k(ws + wi - wp) - k(ws) - k(wi) - gamma0 P, with k expanded
// about `reference` to third order. k0 and k1 cancel identically (k0 is not stored).
struct TaylorDispersion {
  AngularFrequency reference;
  double k1 = 0.0;  // s/m
  double k2 = 0.0;  // s^2/m
  double k3 = 0.0;  // s^3/m
  double gamma0 = 0.0;  // 1/(W m)
  Power peak_power;
  Length length;
};

using DispersionModel = std::variant<LinearDispersion, TaylorDispersion>;

void validate(const DispersionModel& model);

double delta_k_linear(const LinearDispersion& m, double ds, double di);

// Detunings measured from m.reference.
double delta_k_taylor(const TaylorDispersion& m, double ds, double di, double dp);

// sinc(x) exp(ix) with x = L dk / 2.
std::complex<double> pmf_from_delta_k(double delta_k, Length length);

std::complex<double> pmf(const LinearDispersion& m, double ds, double di);
std::complex<double> pmf(const TaylorDispersion& m, double ds, double di, double dp);

// True when the PMF does not depend on the pump frequency, so it can leave the pump integral.
bool pump_independent(const DispersionModel& model);

struct OrientationAngle {
  double degrees = 0.0;
  bool limit = false;  // c2 == 0, reported as +-90
};

OrientationAngle orientation_angle(double c1, double c2);

}  // namespace tfm
