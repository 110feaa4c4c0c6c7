#include "tfm/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "tfm/error.hpp"

namespace tfm {

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("io", "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error("io", "cannot rename onto '" + path + "': " + ec.message());
}

double sig9(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(sig9(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vec9(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(sig9(x));
  return a;
}

nlohmann::json grid_json(const SpectralGrid& g) {
  return {{"center_rad_per_s", g.center().value()},
          {"half_span_rad_per_s", g.half_span().value()},
          {"points", g.size()},
          {"spacing_rad_per_s", g.spacing()}};
}

}  // namespace

nlohmann::json report_json(const StateReport& r, const PgrResult& pgr) {
  nlohmann::json j;
  j["lambda"] = vec9(r.lambda);
  j["K_prime"] = sig9(r.k_prime);
  j["purity"] = sig9(r.purity);
  j["purity_six_modes"] = sig9(r.purity_six_modes);
  j["higher_order_weight"] = sig9(r.higher_order_weight);
  j["fidelity"] = r.fidelity ? nlohmann::json(sig9(*r.fidelity)) : nlohmann::json(nullptr);
  j["fidelity_hg"] = r.fidelity_hg ? nlohmann::json(sig9(*r.fidelity_hg)) : nlohmann::json(nullptr);
  j["subspace_weight"] = r.subspace_weight ? nlohmann::json(sig9(*r.subspace_weight)) : nlohmann::json(nullptr);
  if (r.c_kl.size() > 0) {
    j["c_kl"] = {{"real", matrix_json(r.c_kl.real())}, {"imag", matrix_json(r.c_kl.imag())}};
  } else {
    j["c_kl"] = nullptr;
  }
  j["suspicious_projection"] = r.suspicious_projection;
  j["pgr_hz"] = sig9(pgr.pgr_hz);
  j["pairs_per_pulse"] = sig9(pgr.pairs_per_pulse);
  return j;
}

nlohmann::json pgr_json(const PgrInput& in, const PgrResult& r) {
  return {{"pairs_per_pulse", sig9(r.pairs_per_pulse)}, {"pgr_hz", sig9(r.pgr_hz)},
          {"q_tot", sig9(in.q_tot)},                     {"q_ext", sig9(in.q_ext)},
          {"gamma", sig9(in.gamma)},                     {"pulse_energy", sig9(in.pulse_energy)}};
}

nlohmann::json trial_json(const TrialRecord& t) {
  nlohmann::json mu = nlohmann::json::object();
  mu["index"] = t.mu_index;
  mu["signal_idler_hz"] = vec9(t.mu);
  return {{"mu", mu},
          {"restart", t.restart},
          {"sigma_p", sig9(t.sigma_p)},
          {"alpha", vec9(t.alpha)},
          {"phi", vec9(t.phi)},
          {"fidelity", sig9(t.fidelity)},
          {"residual", sig9(t.residual)},
          {"converged", t.converged}};
}

std::string jsa_csv(const Jsa& jsa) {
  std::string out = "omega_s,omega_i,re,im\n";
  for (int s = 0; s < jsa.grid_s.size(); ++s)
    for (int i = 0; i < jsa.grid_i.size(); ++i) {
      const cplx v = jsa.amplitude(s, i);
      out += fmt9(jsa.grid_s.at(s)) + ',' + fmt9(jsa.grid_i.at(i)) + ',' + fmt9(v.real()) + ',' +
             fmt9(v.imag()) + '\n';
    }
  return out;
}

std::string jsa_binary(const Jsa& jsa) {
  const int ns = jsa.grid_s.size(), ni = jsa.grid_i.size();
  std::string out(static_cast<std::size_t>(ns) * ni * 16, '\0');
  char* p = out.data();
  auto put = [&p](double d) {
    std::uint64_t u = std::bit_cast<std::uint64_t>(d);
    for (int b = 0; b < 8; ++b) *p++ = static_cast<char>((u >> (8 * b)) & 0xff);
  };
  // Signal index fastest: idler rows, signal columns.
  for (int i = 0; i < ni; ++i)
    for (int s = 0; s < ns; ++s) {
      put(jsa.amplitude(s, i).real());
      put(jsa.amplitude(s, i).imag());
    }
  return out;
}

nlohmann::json jsa_sidecar(const Jsa& jsa, const std::string& binary_name) {
  return {{"file", binary_name},
          {"dtype", "float64"},
          {"endianness", "little"},
          {"complex", "interleaved re,im"},
          {"shape", {jsa.grid_i.size(), jsa.grid_s.size()}},
          {"order", "signal index fastest"},
          {"normalization", "sum |F|^2 d omega_s d omega_i = 1"},
          {"units", {{"frequency", "rad/s"}, {"amplitude", "s"}}},
          {"signal_grid", grid_json(jsa.grid_s)},
          {"idler_grid", grid_json(jsa.grid_i)}};
}

std::string spectrum_csv(const SpectralGrid& grid, const Eigen::VectorXd& values, const std::string& column) {
  if (values.size() != grid.size()) throw ShapeError("io", "spectrum and grid sizes differ");
  std::string out = "omega," + column + "\n";
  for (int k = 0; k < grid.size(); ++k) out += fmt9(grid.at(k)) + ',' + fmt9(values[k]) + '\n';
  return out;
}

}  // namespace tfm
