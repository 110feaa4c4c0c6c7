#include "tfm/inversion.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>

#include <ceres/ceres.h>
#include <unsupported/Eigen/FFT>

#include "tfm/error.hpp"
#include "tfm/parallel.hpp"

namespace tfm {

Field2D decouple_tdsi(const Jsa& target, const Field2D& tdsi, double epsilon) {
  if (!(target.grid_s == tdsi.grid_s) || !(target.grid_i == tdsi.grid_i))
    throw ShapeError("inversion", "target JSA and TDSI are on different grids");
  if (!(epsilon >= 0.0)) throw DomainError("inversion", "decoupling epsilon must be non-negative");
  const Eigen::ArrayXXd mag2 = tdsi.values.cwiseAbs2().array();
  const double floor = epsilon * epsilon * mag2.maxCoeff();
  if (floor == 0.0 && (mag2 == 0.0).any())
    throw DomainError("inversion", "TDSI has zeros and epsilon = 0; the division is undefined");
  Eigen::MatrixXcd g = (target.amplitude.array() * tdsi.values.conjugate().array() / (mag2 + floor)).matrix();
  return Field2D(tdsi.grid_s, tdsi.grid_i, std::move(g));
}

AdpProfile extract_antidiagonal(const Field2D& g) {
  const int n = g.grid_s.size();
  const double dx = g.grid_s.spacing();
  if (g.grid_i.size() != n || std::abs(g.grid_i.spacing() - dx) > 1e-9 * dx)
    throw DomainError("inversion", "diagonal cut leaves the grid: signal and idler grids differ in size or spacing");
  Eigen::VectorXcd v(2 * n - 1);
  for (int q = 0; q < 2 * n - 1; ++q) {
    const int k = q / 2;
    v[q] = q % 2 == 0 ? g.values(k, k)
                      : 0.25 * (g.values(k, k) + g.values(k + 1, k) + g.values(k, k + 1) + g.values(k + 1, k + 1));
  }
  const SpectralGrid sum_grid(g.grid_s.center() + g.grid_i.center(), AngularFrequency((n - 1) * dx), 2 * n - 1);
  return AdpProfile{sum_grid, std::move(v), false};
}

AdpKernel::AdpKernel(const ResonanceChain& pump_chain, AngularFrequency carrier, Duration tau, int taps,
                     const SpectralGrid& pump_grid, const SpectralGrid& profile_grid)
    : taps_(taps), pump_grid_(pump_grid) {
  if (taps < 1) throw DomainError("inversion", "need at least one tap");
  const int m = pump_grid.size();
  const double dx = pump_grid.spacing();
  if (std::abs(profile_grid.spacing() - dx) > 1e-9 * dx)
    throw ShapeError("inversion", "profile and pump grids must share one spacing");
  detuning_ = pump_grid.detuning_from(carrier);
  l_p_ = field_enhancement_values(pump_chain, pump_grid.detuning_from(pump_chain.omega));
  delays_.resize(taps, m);
  for (int n = 0; n < taps; ++n)
    for (int k = 0; k < m; ++k) delays_(n, k) = std::polar(1.0, -(n + 1) * detuning_[k] * tau.value());
  // Sum-grid node j sits at 2 c_p + (j - (m - 1)) dx.
  const double shift = ((profile_grid.center() - pump_grid.center()) - pump_grid.center()).value() / dx;
  const double rounded = std::round(shift);
  if (std::abs(shift - rounded) > 1e-6) throw ShapeError("inversion", "profile samples miss the pump sum grid");
  const int half = (profile_grid.size() - 1) / 2;
  if (profile_grid.size() % 2 == 0) throw ShapeError("inversion", "profile grid must have an odd size");
  for (int q = 0; q < profile_grid.size(); ++q) {
    const int j = q - half + (m - 1) + static_cast<int>(rounded);
    if (j < 0 || j > 2 * (m - 1)) throw ShapeError("inversion", "pump grid too narrow for the profile");
    index_.push_back(j);
  }
  fft_len_ = 1;
  while (fft_len_ < 2 * m - 1) fft_len_ <<= 1;
}

Eigen::VectorXcd AdpKernel::adp(double sigma_p, const std::vector<Tap>& taps) const {
  Eigen::VectorXcd coef(taps_);
  for (int n = 0; n < taps_; ++n) coef[n] = std::polar(taps[n].amplitude, taps[n].phase);
  Eigen::VectorXcd a = delays_.transpose() * coef;
  const double inv = 1.0 / (2.0 * sigma_p * sigma_p);
  for (Eigen::Index k = 0; k < a.size(); ++k) a[k] *= std::exp(-detuning_[k] * detuning_[k] * inv) * l_p_[k];
  const Eigen::VectorXcd full = self_convolve(a) * pump_grid_.spacing();
  Eigen::VectorXcd out(index_.size());
  for (std::size_t q = 0; q < index_.size(); ++q) out[q] = full[index_[q]];
  return out;
}

Eigen::VectorXcd AdpKernel::adp(double sigma_p, const std::vector<Tap>& taps, Eigen::MatrixXcd& jacobian) const {
  const Eigen::Index m = detuning_.size();
  const double dx = pump_grid_.spacing();
  const double inv = 1.0 / (2.0 * sigma_p * sigma_p);
  // basis.col(n): pump field of tap n alone with unit coefficient.
  Eigen::MatrixXcd basis(m, taps_);
  Eigen::VectorXd weight(m);
  for (Eigen::Index k = 0; k < m; ++k) weight[k] = std::exp(-detuning_[k] * detuning_[k] * inv);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(m);
  for (int n = 0; n < taps_; ++n) {
    const cplx e = std::polar(1.0, taps[n].phase);
    for (Eigen::Index k = 0; k < m; ++k) basis(k, n) = e * delays_(n, k) * weight[k] * l_p_[k];
    a += taps[n].amplitude * basis.col(n);
  }
  Eigen::VectorXcd da_sigma(m);
  for (Eigen::Index k = 0; k < m; ++k) da_sigma[k] = a[k] * (2.0 * detuning_[k] * detuning_[k] * inv);

  // d(a * a) = 2 a * da; every convolution shares the transform of a.
  thread_local Eigen::FFT<double> fft;
  const int len = fft_len_;
  std::vector<cplx> time(len), fa, fb;
  auto forward = [&](const Eigen::VectorXcd& v, std::vector<cplx>& out) {
    std::fill(time.begin(), time.end(), cplx{});
    for (Eigen::Index k = 0; k < m; ++k) time[k] = v[k];
    fft.fwd(out, time);
  };
  auto sample = [&](std::vector<cplx>& spectrum, double scale, auto&& store) {
    fft.inv(time, spectrum);
    for (std::size_t q = 0; q < index_.size(); ++q) store(q, time[index_[q]] * scale);
  };
  forward(a, fa);
  Eigen::VectorXcd out(index_.size());
  jacobian.resize(static_cast<Eigen::Index>(index_.size()), 1 + 2 * taps_);
  fb = fa;
  for (auto& v : fb) v *= v;
  sample(fb, dx, [&](std::size_t q, cplx v) { out[q] = v; });
  forward(da_sigma, fb);
  for (int k = 0; k < len; ++k) fb[k] *= fa[k];
  sample(fb, 2.0 * dx, [&](std::size_t q, cplx v) { jacobian(q, 0) = v; });
  for (int n = 0; n < taps_; ++n) {
    forward(basis.col(n), fb);
    for (int k = 0; k < len; ++k) fb[k] *= fa[k];
    const cplx dphi = cplx(0.0, taps[n].amplitude);
    sample(fb, 2.0 * dx, [&](std::size_t q, cplx v) {
      jacobian(q, 1 + n) = v;
      jacobian(q, 1 + taps_ + n) = dphi * v;
    });
  }
  return out;
}

namespace {

constexpr double kSigmaLo = 0.1 * kTwoPi * 1e9;
constexpr double kSigmaHi = 100.0 * kTwoPi * 1e9;

std::vector<Tap> taps_from(const double* x, int n) {
  std::vector<Tap> t(n);
  for (int k = 0; k < n; ++k) t[k] = {x[1 + k], x[1 + n + k]};
  return t;
}

// Residuals (scaled by 1/|profile|) at the best nuisance scale c. With
// `dmodel`, also the row-major Jacobian including the dependence of c.
void residuals(const Eigen::VectorXcd& model, const Eigen::VectorXcd& profile, double pnorm, FitMode mode,
               double* r, cplx* scale, const Eigen::MatrixXcd* dmodel = nullptr, double* jac = nullptr) {
  const Eigen::Index n = profile.size();
  const Eigen::Index np = dmodel ? dmodel->cols() : 0;
  if (mode == FitMode::kMagnitude) {
    const Eigen::VectorXd a = model.cwiseAbs();
    const Eigen::VectorXd p = profile.cwiseAbs();
    const double aa = a.squaredNorm();
    const double ratio = aa > 0.0 ? a.dot(p) / aa : 0.0;
    const double c = std::max(0.0, ratio);
    for (Eigen::Index k = 0; k < n; ++k) r[k] = (c * a[k] - p[k]) / pnorm;
    if (scale) *scale = c;
    if (!jac) return;
    for (Eigen::Index j = 0; j < np; ++j) {
      Eigen::VectorXd da(n);
      for (Eigen::Index k = 0; k < n; ++k)
        da[k] = a[k] > 0.0 ? (std::conj(model[k]) * (*dmodel)(k, j)).real() / a[k] : 0.0;
      const double dc = ratio > 0.0 ? (da.dot(p) - 2.0 * c * a.dot(da)) / aa : 0.0;
      for (Eigen::Index k = 0; k < n; ++k) jac[k * np + j] = (dc * a[k] + c * da[k]) / pnorm;
    }
  } else {
    const double aa = model.squaredNorm();
    const cplx c = aa > 0.0 ? model.dot(profile) / aa : cplx{};
    for (Eigen::Index k = 0; k < n; ++k) {
      const cplx d = (c * model[k] - profile[k]) / pnorm;
      r[k] = d.real();
      r[n + k] = d.imag();
    }
    if (scale) *scale = c;
    if (!jac || !(aa > 0.0)) {
      if (jac) std::fill(jac, jac + 2 * n * np, 0.0);
      return;
    }
    for (Eigen::Index j = 0; j < np; ++j) {
      const auto dm = dmodel->col(j);
      const cplx dc = (dm.dot(profile) - c * 2.0 * model.dot(dm).real()) / aa;
      for (Eigen::Index k = 0; k < n; ++k) {
        const cplx d = (dc * model[k] + c * dm[k]) / pnorm;
        jac[k * np + j] = d.real();
        jac[(n + k) * np + j] = d.imag();
      }
    }
  }
}

class AdpCost : public ceres::CostFunction {
 public:
  AdpCost(const AdpProfile& profile, const AdpKernel& kernel, FitMode mode, double pnorm)
      : profile_(profile), kernel_(kernel), mode_(mode), pnorm_(pnorm) {
    const int n = static_cast<int>(profile.values.size());
    set_num_residuals(mode == FitMode::kMagnitude ? n : 2 * n);
    mutable_parameter_block_sizes()->push_back(1 + 2 * kernel.taps());
  }

  bool Evaluate(double const* const* params, double* r, double** jacobians) const override {
    const double* x = params[0];
    const std::vector<Tap> taps = taps_from(x, kernel_.taps());
    if (jacobians && jacobians[0]) {
      Eigen::MatrixXcd d;
      const Eigen::VectorXcd model = kernel_.adp(std::exp(x[0]), taps, d);
      residuals(model, profile_.values, pnorm_, mode_, r, nullptr, &d, jacobians[0]);
    } else {
      residuals(kernel_.adp(std::exp(x[0]), taps), profile_.values, pnorm_, mode_, r, nullptr);
    }
    return true;
  }

 private:
  const AdpProfile& profile_;
  const AdpKernel& kernel_;
  FitMode mode_;
  double pnorm_;
};

}  // namespace

double adp_residual(const AdpProfile& profile, const AdpKernel& kernel, double sigma_p, const std::vector<Tap>& taps,
                    FitMode mode, cplx* scale) {
  const double pnorm = profile.values.norm();
  if (!(pnorm > 0.0)) throw DegenerateInputError("inversion", "ADP profile is identically zero");
  const Eigen::Index n = profile.values.size();
  std::vector<double> r(mode == FitMode::kMagnitude ? n : 2 * n);
  residuals(kernel.adp(sigma_p, taps), profile.values, pnorm, mode, r.data(), scale);
  double s = 0.0;
  for (double v : r) s += v * v;
  return s;
}

FitResult fit_adp(const AdpProfile& profile, const AdpKernel& kernel, const FitStart& start, const FitOptions& opt) {
  const double pnorm = profile.values.norm();
  if (!(pnorm > 0.0)) throw DegenerateInputError("inversion", "ADP profile is identically zero");
  const int n = kernel.taps();
  if (static_cast<int>(start.taps.size()) != n) throw DomainError("inversion", "start has the wrong number of taps");
  if (!(start.sigma_p > 0.0)) throw DomainError("inversion", "start sigma_p must be positive");

  std::vector<double> x(1 + 2 * n);
  x[0] = std::log(std::clamp(start.sigma_p, kSigmaLo, kSigmaHi));
  for (int k = 0; k < n; ++k) {
    x[1 + k] = std::clamp(start.taps[k].amplitude, 0.0, 1.0);
    x[1 + n + k] = start.taps[k].phase;
  }

  auto* cost = new AdpCost(profile, kernel, opt.mode, pnorm);

  ceres::Problem problem;
  problem.AddResidualBlock(cost, nullptr, x.data());
  problem.SetParameterLowerBound(x.data(), 0, std::log(kSigmaLo));
  problem.SetParameterUpperBound(x.data(), 0, std::log(kSigmaHi));
  for (int k = 0; k < n; ++k) {
    problem.SetParameterLowerBound(x.data(), 1 + k, 0.0);
    problem.SetParameterUpperBound(x.data(), 1 + k, 1.0);
  }

  ceres::Solver::Options so;
  so.minimizer_type = ceres::TRUST_REGION;
  so.trust_region_strategy_type = ceres::LEVENBERG_MARQUARDT;
  so.linear_solver_type = ceres::DENSE_QR;
  so.max_num_iterations = opt.max_iterations;
  so.gradient_tolerance = opt.gradient_tolerance;
  so.parameter_tolerance = opt.step_tolerance;
  so.function_tolerance = 1e-12;
  so.num_threads = 1;
  so.logging_type = ceres::SILENT;
  so.minimizer_progress_to_stdout = false;
  ceres::Solver::Summary summary;
  ceres::Solve(so, &problem, &summary);

  FitResult out;
  out.sigma_p = std::exp(x[0]);
  out.taps = taps_from(x.data(), n);
  out.residual = adp_residual(profile, kernel, out.sigma_p, out.taps, opt.mode, &out.scale);
  out.converged = summary.termination_type == ceres::CONVERGENCE;
  out.iterations = static_cast<int>(summary.iterations.size());
  return out;
}

namespace {

// Uniform [0, 1) from the top 53 bits; independent of the standard library's distributions.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::vector<Rate>> mu_grid(const MuSweep& sweep, int couplings) {
  const std::vector<Rate> v = sweep.values();
  std::vector<std::vector<Rate>> out{{}};
  for (int c = 0; c < couplings; ++c) {
    std::vector<std::vector<Rate>> next;
    for (const auto& prefix : out)
      for (const auto& r : v) {
        auto p = prefix;
        p.push_back(r);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

double wrap_phase(double p) {
  const double w = std::fmod(p, kTwoPi);
  return w < 0.0 ? w + kTwoPi : w;
}

}  // namespace

OptimizeResult optimize_state(const TargetState& target, const FixedParams& fixed, const SearchConfig& search,
                              const TrialCallback& on_trial) {
  search.validate();
  target.validate();
  const int stages = fixed.signal.stages();
  if (fixed.idler.stages() != stages)
    throw DomainError("inversion", "signal and idler chains need the same number of stages");
  const auto grid = stages > 1 ? mu_grid(search.mu, stages - 1) : std::vector<std::vector<Rate>>{{}};
  if (grid.empty() || search.mu.values().empty()) throw ConfigError("search.mu_step", "empty mu sweep");

  const SpectralGrid gs(fixed.signal.omega, fixed.half_span, search.grid_points);
  const SpectralGrid gi(fixed.idler.omega, fixed.half_span, search.grid_points);
  const Jsa target_f = target_jsa(target, gs, gi);
  const AdpKernel kernel(fixed.pump, fixed.carrier, fixed.tau, fixed.taps, pump_grid_for(gs, gi, 0.0),
                         SpectralGrid(gs.center() + gi.center(), AngularFrequency((gs.size() - 1) * gs.spacing()),
                                      2 * gs.size() - 1));
  const Eigen::MatrixXcd ideal = ideal_density(target, search.subspace);

  std::vector<std::vector<TrialRecord>> results(grid.size());
  std::vector<bool> done(grid.size(), false);
  std::size_t flushed = 0;
  std::mutex mu;

  parallel_for(static_cast<int>(grid.size()), [&](int gidx) {
    ResonanceChain sig = fixed.signal, idl = fixed.idler;
    sig.mu = idl.mu = grid[gidx];
    const Field1D ls = field_enhancement_chain(sig, gs);
    const Field1D li = field_enhancement_chain(idl, gi);
    const AdpProfile profile = extract_antidiagonal(decouple_tdsi(target_f, compute_tdsi(ls, li), search.epsilon));

    std::vector<TrialRecord> trials;
    for (int r = 0; r < search.restarts; ++r) {
      std::seed_seq seq{static_cast<std::uint32_t>(search.seed), static_cast<std::uint32_t>(search.seed >> 32),
                        static_cast<std::uint32_t>(gidx), static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      FitStart start;
      start.sigma_p = kTwoPi * 1e9 * 0.5 * std::pow(100.0, uniform01(rng));
      for (int n = 0; n < fixed.taps; ++n) {
        const double alpha = 0.1 + 0.9 * uniform01(rng);
        start.taps.push_back({alpha, kTwoPi * uniform01(rng)});
      }
      const FitResult fit = fit_adp(profile, kernel, start, search.fit);

      DeviceModel m{PumpSpec{AngularFrequency(fit.sigma_p), fixed.carrier, fit.taps, fixed.tau}, idl, fixed.pump, sig,
                    fixed.dispersion};
      TrialRecord rec;
      rec.mu_index = gidx;
      for (const auto& v : grid[gidx]) rec.mu.push_back(v.value());
      rec.restart = r;
      rec.sigma_p = fit.sigma_p;
      for (const auto& t : fit.taps) {
        rec.alpha.push_back(t.amplitude);
        rec.phi.push_back(wrap_phase(t.phase));
      }
      rec.residual = fit.residual;
      rec.converged = fit.converged;
      try {
        const PiPhaseResult imposed = impose_pi_phase(forward(m, gs, gi).jsa, search.pi);
        const std::vector<double> w = schmidt_weights(imposed.jsa);
        rec.fidelity = fidelity(schmidt_pair_density(w, target, search.subspace), ideal);
      } catch (const DegenerateInputError&) {
        rec.fidelity = 0.0;  // all taps driven to zero
      }
      trials.push_back(std::move(rec));
    }

    std::lock_guard lock(mu);
    results[gidx] = std::move(trials);
    done[gidx] = true;
    while (flushed < grid.size() && done[flushed]) {
      if (on_trial)
        for (const auto& t : results[flushed]) on_trial(t);
      ++flushed;
    }
  });

  OptimizeResult out;
  const TrialRecord* best = nullptr;
  for (const auto& group : results)
    for (const auto& t : group) {
      out.trace.push_back(t);
      if (!best || t.fidelity > best->fidelity) best = &t;
    }
  out.fidelity = best->fidelity;
  out.best.sigma_p = AngularFrequency(best->sigma_p);
  for (std::size_t n = 0; n < best->alpha.size(); ++n) out.best.taps.push_back({best->alpha[n], best->phi[n]});
  for (double v : best->mu) out.best.mu_signal_idler.emplace_back(v);
  out.best.mu_pump = fixed.pump.mu;
  return out;
}

}  // namespace tfm
