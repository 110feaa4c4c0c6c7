#include "tfm/spectral.hpp"

#include <cmath>
#include <numbers>

#include "tfm/error.hpp"

namespace tfm {

SpectralGrid::SpectralGrid(AngularFrequency center, AngularFrequency half_span, int n_points)
    : center_(center), half_span_(half_span), n_(n_points) {
  if (n_points < 2) throw DomainError("spectral", "grid needs at least 2 points");
  if (!(half_span.value() > 0.0) || !std::isfinite(half_span.value()))
    throw DomainError("spectral", "grid half span must be positive and finite");
  if (!std::isfinite(center.value())) throw DomainError("spectral", "grid center is not finite");
}

Eigen::VectorXd SpectralGrid::detuning_from(AngularFrequency ref) const {
  const double shift = center_.value() - ref.value();
  Eigen::VectorXd d(n_);
  for (int k = 0; k < n_; ++k) d[k] = shift + offset(k);
  return d;
}

bool SpectralGrid::operator==(const SpectralGrid& o) const {
  return n_ == o.n_ && center_ == o.center_ && half_span_ == o.half_span_;
}

Field1D::Field1D(SpectralGrid g, Eigen::VectorXcd v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw ShapeError("spectral", "field length does not match grid");
}

Field2D::Field2D(SpectralGrid gs, SpectralGrid gi, Eigen::MatrixXcd v)
    : grid_s(gs), grid_i(gi), values(std::move(v)) {
  if (values.rows() != grid_s.size() || values.cols() != grid_i.size())
    throw ShapeError("spectral", "field shape does not match grids");
}

cplx inner_product(const Field1D& a, const Field1D& b) {
  if (!(a.grid == b.grid)) throw ShapeError("spectral", "inner product of fields on different grids");
  return a.values.dot(b.values) * a.grid.spacing();
}

cplx inner_product(const Field2D& a, const Field2D& b) {
  if (!(a.grid_s == b.grid_s) || !(a.grid_i == b.grid_i))
    throw ShapeError("spectral", "inner product of fields on different grids");
  const cplx sum = (a.values.conjugate().cwiseProduct(b.values)).sum();
  return sum * a.grid_s.spacing() * a.grid_i.spacing();
}

Eigen::VectorXd hg_values(int n, const Eigen::VectorXd& detuning, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("spectral", "HG width sigma must be positive");
  if (n < 0 || n > 10) throw DomainError("spectral", "HG order must be in [0, 10]");
  // Normalized Hermite functions psi_n(t) by the stable three-term recurrence,
  // then f_n(w) = psi_n(w / sigma) / sqrt(sigma) so that int |f_n|^2 dw = 1.
  const double norm0 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  Eigen::VectorXd out(detuning.size());
  for (Eigen::Index k = 0; k < detuning.size(); ++k) {
    const double t = detuning[k] / sigma;
    double prev = 0.0;
    double cur = norm0 * std::exp(-0.5 * t * t);
    for (int j = 1; j <= n; ++j) {
      const double next = std::sqrt(2.0 / j) * t * cur - std::sqrt((j - 1.0) / j) * prev;
      prev = cur;
      cur = next;
    }
    out[k] = cur / std::sqrt(sigma);
  }
  return out;
}

HgMode hg_mode(int n, const SpectralGrid& grid, AngularFrequency center, AngularFrequency sigma) {
  const Eigen::VectorXd v = hg_values(n, grid.detuning_from(center), sigma.value());
  const double norm = v.squaredNorm() * grid.spacing();
  HgMode mode{Field1D(grid, v.cast<cplx>()), std::abs(norm - 1.0) > 1e-3};
  return mode;
}

Field1D gaussian_envelope(const SpectralGrid& grid, AngularFrequency center, AngularFrequency sigma_p) {
  if (!(sigma_p.value() > 0.0)) throw DomainError("spectral", "pump bandwidth sigma_p must be positive");
  const Eigen::VectorXd d = grid.detuning_from(center);
  const double s = sigma_p.value();
  Eigen::VectorXcd v(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) v[k] = std::exp(-d[k] * d[k] / (2.0 * s * s));
  return Field1D(grid, std::move(v));
}

}  // namespace tfm
