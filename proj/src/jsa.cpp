#include "tfm/jsa.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "tfm/error.hpp"
#include "tfm/parallel.hpp"

namespace tfm {

Jsa::Jsa(SpectralGrid gs, SpectralGrid gi, Eigen::MatrixXcd f, bool is_normalized)
    : grid_s(gs), grid_i(gi), amplitude(std::move(f)), normalized(is_normalized) {
  if (amplitude.rows() != grid_s.size() || amplitude.cols() != grid_i.size())
    throw ShapeError("jsa", "amplitude shape does not match grids");
}

double Jsa::norm2() const { return amplitude.squaredNorm() * grid_s.spacing() * grid_i.spacing(); }

Eigen::VectorXcd self_convolve(const Eigen::VectorXcd& a) {
  const Eigen::Index n = a.size();
  if (n == 0) return {};
  if (n == 1) return Eigen::VectorXcd::Constant(1, a[0] * a[0]);  // kissfft cannot do length 1
  const Eigen::Index out_len = 2 * n - 1;
  Eigen::Index len = 1;
  while (len < out_len) len <<= 1;
  std::vector<cplx> time(len, cplx{}), freq;
  for (Eigen::Index k = 0; k < n; ++k) time[k] = a[k];
  Eigen::FFT<double> fft;
  fft.fwd(freq, time);
  for (auto& v : freq) v *= v;
  fft.inv(time, freq);
  Eigen::VectorXcd out(out_len);
  for (Eigen::Index k = 0; k < out_len; ++k) out[k] = time[k];
  return out;
}

AdpProfile compute_adp(const Field1D& in) {
  const int m = in.grid.size();
  const double dx = in.grid.spacing();
  const double peak = in.values.cwiseAbs().maxCoeff();
  if (peak == 0.0) throw DegenerateInputError("jsa", "pump field is identically zero");
  const double edge = std::max(std::abs(in.values[0]), std::abs(in.values[m - 1]));
  AdpProfile out{SpectralGrid(in.grid.center() * 2.0, AngularFrequency((m - 1) * dx), 2 * m - 1),
                 self_convolve(in.values) * dx, edge > 1e-4 * peak};
  return out;
}

Field2D compute_tdsi(const Field1D& l_s, const Field1D& l_i) {
  return Field2D(l_s.grid, l_i.grid, l_s.values * l_i.values.transpose());
}

namespace {

// ws + wi for node (s, i) equals the pump sum-grid node s + i + base.
int sum_index_base(const SpectralGrid& gs, const SpectralGrid& gi, const SpectralGrid& gp) {
  const double dx = gp.spacing();
  if (std::abs(gs.spacing() - dx) > 1e-9 * dx || std::abs(gi.spacing() - dx) > 1e-9 * dx)
    throw ShapeError("jsa", "signal, idler and pump grids must share one spacing");
  if ((gs.size() + gi.size()) % 2 != 0)
    throw ShapeError("jsa", "signal and idler grids need sizes of equal parity");
  const double shift = ((gs.center() - gp.center()).value() + (gi.center() - gp.center()).value()) / dx;
  const double rounded = std::round(shift);
  if (std::abs(shift - rounded) > 1e-6)
    throw ShapeError("jsa", "signal + idler frequencies do not fall on the pump sum grid");
  const int base = -(gs.size() - 1 + gi.size() - 1) / 2 + (gp.size() - 1) + static_cast<int>(rounded);
  const int last = base + gs.size() - 1 + gi.size() - 1;
  if (base < 0 || last > 2 * (gp.size() - 1))
    throw ShapeError("jsa", "pump grid too narrow to cover the signal/idler sum frequencies");
  return base;
}

Eigen::MatrixXcd factorized(const JsaInputs& in, const Eigen::VectorXcd& a, int base) {
  const Field1D prod(in.pump.grid, a);
  const AdpProfile adp = compute_adp(prod);
  const auto& gs = in.l_s.grid;
  const auto& gi = in.l_i.grid;
  const auto& lin = std::get<LinearDispersion>(in.dispersion);
  const Eigen::VectorXd ds = gs.detuning_from(in.omega_s0);
  const Eigen::VectorXd di = gi.detuning_from(in.omega_i0);
  Eigen::MatrixXcd f(gs.size(), gi.size());
  for (int i = 0; i < gi.size(); ++i)
    for (int s = 0; s < gs.size(); ++s)
      f(s, i) = adp.values[s + i + base] * pmf(lin, ds[s], di[i]) * in.l_s.values[s] * in.l_i.values[i];
  return f;
}

Eigen::MatrixXcd integral(const JsaInputs& in, const Eigen::VectorXcd& a, int base) {
  const auto& gs = in.l_s.grid;
  const auto& gi = in.l_i.grid;
  const auto& gp = in.pump.grid;
  const int m = gp.size();
  const double dx = gp.spacing();
  Eigen::MatrixXcd f(gs.size(), gi.size());

  // Detunings from whichever reference the PMF uses.
  Eigen::VectorXd ds, di, dp;
  if (const auto* t = std::get_if<TaylorDispersion>(&in.dispersion)) {
    ds = gs.detuning_from(t->reference);
    di = gi.detuning_from(t->reference);
    dp = gp.detuning_from(t->reference);
  } else {
    ds = gs.detuning_from(in.omega_s0);
    di = gi.detuning_from(in.omega_i0);
  }
  parallel_for(gs.size(), [&](int s) {
    for (int i = 0; i < gi.size(); ++i) {
      const int j = s + i + base;
      const int lo = std::max(0, j - (m - 1));
      const int hi = std::min(m - 1, j);
      cplx acc{};
      if (const auto* t = std::get_if<TaylorDispersion>(&in.dispersion)) {
        for (int p = lo; p <= hi; ++p) acc += a[p] * a[j - p] * pmf(*t, ds[s], di[i], dp[p]);
      } else {
        const cplx phase_matching = pmf(std::get<LinearDispersion>(in.dispersion), ds[s], di[i]);
        for (int p = lo; p <= hi; ++p) acc += a[p] * a[j - p] * phase_matching;
      }
      f(s, i) = acc * dx * in.l_s.values[s] * in.l_i.values[i];
    }
  });
  return f;
}

}  // namespace

Jsa compute_jsa(const JsaInputs& in, JsaPath path) {
  if (!(in.pump.grid == in.l_p.grid)) throw ShapeError("jsa", "pump and l_p must share a grid");
  validate(in.dispersion);
  const int base = sum_index_base(in.l_s.grid, in.l_i.grid, in.pump.grid);
  const Eigen::VectorXcd a = in.pump.values.cwiseProduct(in.l_p.values);

  if (path == JsaPath::kAuto) path = pump_independent(in.dispersion) ? JsaPath::kFactorized : JsaPath::kIntegral;
  if (path == JsaPath::kFactorized && !pump_independent(in.dispersion))
    throw PreconditionError("jsa", "factorized path needs a pump-independent phase-matching function");

  Eigen::MatrixXcd f = path == JsaPath::kFactorized ? factorized(in, a, base) : integral(in, a, base);
  if (!f.allFinite()) throw NumericalError("jsa", "non-finite JSA entries");
  return normalize(Jsa(in.l_s.grid, in.l_i.grid, std::move(f)));
}

Jsa normalize(const Jsa& jsa) {
  const double n2 = jsa.norm2();
  if (!(n2 > 0.0)) throw DegenerateInputError("jsa", "cannot normalize an all-zero JSA");
  return Jsa(jsa.grid_s, jsa.grid_i, jsa.amplitude / std::sqrt(n2), true);
}

std::vector<int> find_cut_minima(const Eigen::VectorXd& v, double prominence, double noise_floor) {
  std::vector<int> out;
  const int n = static_cast<int>(v.size());
  if (n < 3) return out;
  const double floor = noise_floor * v.maxCoeff();
  for (int k = 1; k < n - 1; ++k) {
    if (!(v[k] < v[k - 1] && v[k] <= v[k + 1])) continue;
    // Walk uphill to the neighbouring maxima (the window edge counts as one).
    int l = k - 1;
    while (l > 0 && v[l - 1] >= v[l]) --l;
    int r = k + 1;
    while (r < n - 1 && v[r + 1] >= v[r]) ++r;
    const double shoulder = std::min(v[l], v[r]);
    if (shoulder > floor && v[k] < prominence * shoulder) out.push_back(k);
  }
  return out;
}

std::vector<int> diagonal_minima(const Jsa& jsa, const PiPhaseOptions& opt) {
  const int n = jsa.grid_s.size();
  if (jsa.grid_i.size() != n || std::abs(jsa.grid_s.spacing() - jsa.grid_i.spacing()) > 1e-9 * jsa.grid_s.spacing())
    throw ShapeError("jsa", "diagonal cut needs signal and idler grids of equal size and spacing");
  Eigen::VectorXd cut(n);
  for (int k = 0; k < n; ++k) cut[k] = std::abs(jsa.amplitude(k, k));
  return find_cut_minima(cut, opt.prominence, opt.noise_floor);
}

Jsa apply_pi_flips(const Jsa& jsa, const std::vector<int>& minima) {
  Jsa out = jsa;
  for (int i = 0; i < out.amplitude.cols(); ++i)
    for (int s = 0; s < out.amplitude.rows(); ++s) {
      int flips = 0;
      for (int k : minima) flips += (s + i > 2 * k);
      if (flips % 2) out.amplitude(s, i) = -out.amplitude(s, i);
    }
  return out;
}

PiPhaseResult impose_pi_phase(const Jsa& jsa, const PiPhaseOptions& opt) {
  std::vector<int> minima = diagonal_minima(jsa, opt);
  Jsa base = jsa;
  if (opt.mode == PhaseMode::kDiscardResidual) base.amplitude = jsa.amplitude.cwiseAbs().cast<cplx>();
  return {apply_pi_flips(base, minima), std::move(minima)};
}

}  // namespace tfm
