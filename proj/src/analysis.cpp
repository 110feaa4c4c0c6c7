#include "tfm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "tfm/error.hpp"

namespace tfm {

namespace {

void require_normalized(const Jsa& jsa) {
  if (std::abs(jsa.norm2() - 1.0) > 1e-6)
    throw PreconditionError("analysis", "JSA must be normalized before Schmidt analysis");
}

std::vector<double> weights_from(const Eigen::VectorXd& sv) {
  std::vector<double> w(sv.size());
  double total = 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) total += (w[k] = sv[k] * sv[k]);
  if (!(total > 0.0)) throw DegenerateInputError("analysis", "JSA has no weight");
  for (auto& v : w) v /= total;
  return w;
}

void require_weights(std::span<const double> w) {
  if (w.empty()) throw DegenerateInputError("analysis", "empty Schmidt weights");
}

}  // namespace

SchmidtResult schmidt_decompose(const Jsa& jsa, int max_modes) {
  require_normalized(jsa);
  const double ws = jsa.grid_s.spacing();
  const double wi = jsa.grid_i.spacing();
  const Eigen::MatrixXcd a = jsa.amplitude * std::sqrt(ws * wi);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("analysis", "SVD did not converge");
  SchmidtResult out;
  out.weights = weights_from(svd.singularValues());
  const int keep = std::min<int>(max_modes, static_cast<int>(svd.singularValues().size()));
  for (int k = 0; k < keep; ++k) {
    out.signal_modes.emplace_back(jsa.grid_s, svd.matrixU().col(k) / std::sqrt(ws));
    out.idler_modes.emplace_back(jsa.grid_i, svd.matrixV().col(k).conjugate() / std::sqrt(wi));
  }
  return out;
}

std::vector<double> schmidt_weights(const Jsa& jsa) {
  require_normalized(jsa);
  // Eigenvalues of F^H F are the squared singular values; no vectors needed.
  const Eigen::MatrixXcd gram = jsa.amplitude.adjoint() * jsa.amplitude;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("analysis", "eigen-decomposition did not converge");
  const Eigen::VectorXd ev = eig.eigenvalues().reverse().cwiseMax(0.0);
  return weights_from(ev.cwiseSqrt());
}

double purity(std::span<const double> w) {
  require_weights(w);
  double p = 0.0;
  for (double v : w) p += v * v;
  return p;
}

double schmidt_number(std::span<const double> w) { return 1.0 / purity(w); }

double truncated_purity(std::span<const double> w, int modes) {
  require_weights(w);
  const auto head = w.first(std::min<std::size_t>(modes, w.size()));
  double total = 0.0, p = 0.0;
  for (double v : head) total += v;
  for (double v : head) p += (v / total) * (v / total);
  return p;
}

double higher_order_weight(std::span<const double> w, int pairs) {
  require_weights(w);
  double s = 0.0;
  for (std::size_t k = 0; k < w.size() && k < static_cast<std::size_t>(pairs); ++k) s += w[k];
  return std::max(0.0, 1.0 - s);
}

TargetState TargetState::maximally_entangled(int d, AngularFrequency sigma, AngularFrequency omega_s0,
                                             AngularFrequency omega_i0) {
  TargetState t{d, {}, sigma, omega_s0, omega_i0};
  for (int k = 0; k < d; ++k) t.coefficients.push_back((k % 2 ? -1.0 : 1.0) / std::sqrt(d));
  return t;
}

void TargetState::validate() const {
  if (dimension < 1 || dimension > 10) throw DomainError("analysis", "target dimension must be in [1, 10]");
  if (static_cast<int>(coefficients.size()) != dimension)
    throw DomainError("analysis", "target needs one coefficient per dimension");
  double n = 0.0;
  for (double c : coefficients) n += c * c;
  if (std::abs(n - 1.0) > 1e-9) throw DomainError("analysis", "target coefficients must have unit norm");
  if (!(sigma.value() > 0.0)) throw DomainError("analysis", "target mode width must be positive");
}

Jsa target_jsa(const TargetState& t, const SpectralGrid& gs, const SpectralGrid& gi) {
  t.validate();
  const Eigen::VectorXd ds = gs.detuning_from(t.omega_s0);
  const Eigen::VectorXd di = gi.detuning_from(t.omega_i0);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(gs.size(), gi.size());
  for (int k = 0; k < t.dimension; ++k)
    f += t.coefficients[k] * hg_values(k, ds, t.sigma.value()) * hg_values(k, di, t.sigma.value()).transpose();
  return normalize(Jsa(gs, gi, f.cast<cplx>()));
}

TfmProjection project_to_tfm(const Jsa& jsa, AngularFrequency sigma, AngularFrequency omega_s0,
                             AngularFrequency omega_i0, int d) {
  require_normalized(jsa);
  if (d < 1) throw DomainError("analysis", "projection dimension must be positive");
  const double w = jsa.grid_s.spacing() * jsa.grid_i.spacing();
  const Eigen::VectorXd ds = jsa.grid_s.detuning_from(omega_s0);
  const Eigen::VectorXd di = jsa.grid_i.detuning_from(omega_i0);
  Eigen::MatrixXd fs(jsa.grid_s.size(), d), fi(jsa.grid_i.size(), d);
  for (int k = 0; k < d; ++k) {
    fs.col(k) = hg_values(k, ds, sigma.value());
    fi.col(k) = hg_values(k, di, sigma.value());
  }
  TfmProjection p;
  p.c = (fs.transpose().cast<cplx>() * jsa.amplitude * fi.cast<cplx>()) * w;
  p.subspace_weight = p.c.squaredNorm();
  p.suspicious = p.subspace_weight < 0.5;
  Eigen::VectorXcd psi(d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) psi[k * d + l] = p.c(k, l);
  if (p.subspace_weight > 0.0) psi /= std::sqrt(p.subspace_weight);
  p.rho = psi * psi.adjoint();
  return p;
}

Eigen::MatrixXcd ideal_density(const TargetState& t, int d) {
  t.validate();
  if (t.dimension > d) throw DomainError("analysis", "target dimension exceeds the projection subspace");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
  for (int k = 0; k < t.dimension; ++k) psi[k * d + k] = t.coefficients[k];
  return psi * psi.adjoint();
}

Eigen::MatrixXcd schmidt_pair_density(std::span<const double> weights, const TargetState& t, int d) {
  require_weights(weights);
  t.validate();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
  for (int k = 0; k < d && k < static_cast<int>(weights.size()); ++k) {
    // Each Schmidt pair carries an arbitrary phase; align it with the target.
    const double sign = k < t.dimension && t.coefficients[k] < 0.0 ? -1.0 : 1.0;
    psi[k * d + k] = sign * std::sqrt(std::max(0.0, weights[k]));
  }
  const double n = psi.squaredNorm();
  if (!(n > 0.0)) throw DegenerateInputError("analysis", "no weight in the leading Schmidt pairs");
  psi /= std::sqrt(n);
  return psi * psi.adjoint();
}

namespace {

// Round-off eigenvalues of a PSD matrix are O(1e-17); their square roots would
// add O(1e-9) to a fidelity, so zero everything below a relative floor.
Eigen::VectorXd clip_noise(const Eigen::VectorXd& ev) {
  const double floor = 1e-13 * std::max(ev.maxCoeff(), 0.0);
  return ev.unaryExpr([floor](double v) { return v > floor ? v : 0.0; });
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("analysis", "eigendecomposition failed");
  const Eigen::VectorXd ev = clip_noise(es.eigenvalues()).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != rho.cols() || sigma.rows() != sigma.cols() || rho.rows() != sigma.rows())
    throw ShapeError("analysis", "density matrices must be square and of equal size");
  if (std::abs(rho.trace() - 1.0) > 1e-6 || std::abs(sigma.trace() - 1.0) > 1e-6)
    throw PreconditionError("analysis", "density matrices must have unit trace");
  const Eigen::MatrixXcd s = psd_sqrt(rho);
  const Eigen::MatrixXcd inner = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("analysis", "eigendecomposition failed");
  const double tr = clip_noise(es.eigenvalues()).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double pure_state_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw ShapeError("analysis", "state vectors of different length");
  return std::norm(a.dot(b));
}

StateReport analyze_state(const Jsa& jsa, const std::optional<TargetState>& target, int d, int reported_modes) {
  StateReport r;
  const std::vector<double> w = schmidt_weights(jsa);
  r.lambda.assign(w.begin(), w.begin() + std::min<std::size_t>(reported_modes, w.size()));
  r.purity = purity(w);
  r.k_prime = 1.0 / r.purity;
  r.purity_six_modes = truncated_purity(w, 6);
  r.higher_order_weight = higher_order_weight(w, d);
  if (target) {
    r.fidelity = fidelity(schmidt_pair_density(w, *target, d), ideal_density(*target, d));
    const TfmProjection p = project_to_tfm(jsa, target->sigma, target->omega_s0, target->omega_i0, d);
    r.fidelity_hg = fidelity(p.rho, ideal_density(*target, d));
    r.subspace_weight = p.subspace_weight;
    r.c_kl = p.c;
    r.suspicious_projection = p.suspicious;
  }
  return r;
}

PgrInput make_pgr_input(const PgrRaw& raw) {
  if (raw.pump_decay.empty()) throw DomainError("analysis", "pump decay rates missing");
  double total = 0.0;
  for (const auto& r : raw.pump_decay) total += r.value();
  const double wp = raw.omega_p0.value();
  PgrInput in;
  in.gamma = raw.n2 * wp / (kSpeedOfLight * raw.a_eff);
  in.pulse_energy = raw.avg_power.value() / raw.rep_rate.value();
  in.group_velocity = raw.group_velocity;
  in.radius = raw.perimeter / kTwoPi;
  in.omega_p0 = raw.omega_p0;
  in.q_tot = wp / (2.0 * total);
  in.q_ext = wp / (raw.kappa.value() * raw.kappa.value());
  in.rep_rate = raw.rep_rate;
  return in;
}

PgrResult pair_generation_rate(const PgrInput& in) {
  const double vg = in.group_velocity.value();
  const double r = in.radius.value();
  const double wp = in.omega_p0.value();
  if (!(in.gamma > 0.0 && in.pulse_energy > 0.0 && vg > 0.0 && r > 0.0 && wp > 0.0 && in.q_tot > 0.0 &&
        in.q_ext > 0.0 && in.rep_rate.value() > 0.0))
    throw DomainError("analysis", "pair generation rate inputs must be positive");
  const double pi = std::numbers::pi;
  const double n = 3.0 * in.gamma * in.gamma * in.pulse_energy * in.pulse_energy * std::pow(vg, 4) /
                   (8.0 * pi * pi * r * r * wp * wp) * std::pow(in.q_tot, 6) / std::pow(in.q_ext, 4);
  return {n, n * in.rep_rate.value()};
}

AngularFrequency target_sigma_from_linewidths(const std::vector<ResonanceChain>& chains, int dimension,
                                              std::span<const double> coefficients, AngularFrequency half_span,
                                              int points) {
  if (chains.empty()) throw DomainError("analysis", "need at least one resonance chain");
  if (dimension < 1 || static_cast<int>(coefficients.size()) != dimension)
    throw DomainError("analysis", "need one coefficient per target mode");
  std::vector<Eigen::VectorXd> det, p;
  for (const auto& ch : chains) {
    const SpectralGrid g(ch.omega, half_span, points);
    Eigen::VectorXd v = field_enhancement_chain(ch, g).values.cwiseAbs2();
    p.push_back(v / v.sum());
    det.push_back(g.detuning_from(ch.omega));
  }
  auto overlap = [&](double log_sigma) {
    const double sigma = std::exp(log_sigma);
    double total = 0.0;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      Eigen::VectorXd q = Eigen::VectorXd::Zero(det[c].size());
      for (int k = 0; k < dimension; ++k)
        q += coefficients[k] * coefficients[k] * hg_values(k, det[c], sigma).cwiseAbs2();
      q /= q.sum();
      total += p[c].cwiseProduct(q).cwiseSqrt().sum();
    }
    return total / static_cast<double>(chains.size());
  };
  // Coarse scan for the basin, then golden-section refinement.
  const double lo = std::log(0.01 * half_span.value()), hi = std::log(half_span.value());
  const int scan = 200;
  int best = 0;
  double best_v = -1.0;
  for (int k = 0; k <= scan; ++k) {
    const double v = overlap(lo + (hi - lo) * k / scan);
    if (v > best_v) best_v = v, best = k;
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / scan, b = lo + (hi - lo) * std::min(scan, best + 1) / scan;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a), x2 = a + r * (b - a), f1 = overlap(x1), f2 = overlap(x2);
  while (b - a > 1e-9) {
    if (f1 < f2) {
      a = x1, x1 = x2, f1 = f2, x2 = a + r * (b - a), f2 = overlap(x2);
    } else {
      b = x2, x2 = x1, f2 = f1, x1 = b - r * (b - a), f1 = overlap(x1);
    }
  }
  return AngularFrequency(std::exp(0.5 * (a + b)));
}

}  // namespace tfm
