#pragma once

#include <complex>

#include <Eigen/Dense>

#include "tfm/units.hpp"

namespace tfm {

using cplx = std::complex<double>;

// Uniform angular-frequency sampling: n points over [center - half_span, center + half_span].
class SpectralGrid {
 public:
  SpectralGrid(AngularFrequency center, AngularFrequency half_span, int n_points);

  AngularFrequency center() const { return center_; }
  AngularFrequency half_span() const { return half_span_; }
  int size() const { return n_; }
  double spacing() const { return 2.0 * half_span_.value() / (n_ - 1); }

  // Detuning of sample k from the grid center, computed without going through
  // the absolute frequency (which would lose ~5 digits at optical carriers).
  double offset(int k) const { return (k - 0.5 * (n_ - 1)) * spacing(); }
  double at(int k) const { return center_.value() + offset(k); }

  // Detunings of all samples from an arbitrary reference frequency.
  Eigen::VectorXd detuning_from(AngularFrequency ref) const;

  bool operator==(const SpectralGrid& o) const;

 private:
  AngularFrequency center_;
  AngularFrequency half_span_;
  int n_;
};

struct Field1D {
  Field1D(SpectralGrid g, Eigen::VectorXcd v);

  SpectralGrid grid;
  Eigen::VectorXcd values;
};

// values(s, i): rows follow the signal grid, columns the idler grid.
struct Field2D {
  Field2D(SpectralGrid gs, SpectralGrid gi, Eigen::MatrixXcd v);

  SpectralGrid grid_s;
  SpectralGrid grid_i;
  Eigen::MatrixXcd values;
};

// Rectangle-rule quadrature, conjugate-linear in the first argument.
cplx inner_product(const Field1D& a, const Field1D& b);
cplx inner_product(const Field2D& a, const Field2D& b);

struct HgMode {
  Field1D field;
  // Set when the grid does not hold the mode's norm to within 1e-3.
  bool truncated = false;
};

// Hermite-Gaussian mode of order n <= 10, normalized to unit L2 norm in omega.
HgMode hg_mode(int n, const SpectralGrid& grid, AngularFrequency center, AngularFrequency sigma);

// Real samples of the same mode at arbitrary detunings (no normalization check).
Eigen::VectorXd hg_values(int n, const Eigen::VectorXd& detuning, double sigma);

// exp(-(w - center)^2 / (2 sigma_p^2)), peak 1.
Field1D gaussian_envelope(const SpectralGrid& grid, AngularFrequency center, AngularFrequency sigma_p);

}  // namespace tfm
