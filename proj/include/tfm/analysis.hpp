#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tfm/jsa.hpp"
#include "tfm/resonator.hpp"

namespace tfm {

struct SchmidtResult {
  std::vector<double> weights;  // descending, sum 1
  std::vector<Field1D> signal_modes;
  std::vector<Field1D> idler_modes;
};

// SVD of F sqrt(dws dwi). Keeps up to max_modes mode pairs; weights cover all modes.
SchmidtResult schmidt_decompose(const Jsa& jsa, int max_modes);

// Weights only (no singular vectors).
std::vector<double> schmidt_weights(const Jsa& jsa);

double schmidt_number(std::span<const double> weights);
double purity(std::span<const double> weights);

// Purity of the first `modes` weights renormalized among themselves.
double truncated_purity(std::span<const double> weights, int modes);

// 1 - sum of the first `pairs` weights.
double higher_order_weight(std::span<const double> weights, int pairs = 4);

struct TargetState {
  int dimension = 2;
  std::vector<double> coefficients;  // c_k on |k>_s |k>_i
  AngularFrequency sigma;
  AngularFrequency omega_s0;
  AngularFrequency omega_i0;

  // (|00> - |11> + |22> - ...) / sqrt(D)
  static TargetState maximally_entangled(int d, AngularFrequency sigma, AngularFrequency omega_s0,
                                         AngularFrequency omega_i0);
  void validate() const;
};

Jsa target_jsa(const TargetState& t, const SpectralGrid& grid_s, const SpectralGrid& grid_i);

// Basis width matching the target's marginal sum_k |c_k|^2 f_k^2 to the
// normalized |l_x|^2 of each chain: maximizes the mean Bhattacharyya overlap.
AngularFrequency target_sigma_from_linewidths(const std::vector<ResonanceChain>& chains, int dimension,
                                              std::span<const double> coefficients, AngularFrequency half_span,
                                              int points = 2001);

struct TfmProjection {
  Eigen::MatrixXcd c;    // c_kl = <f_k (x) f_l, F>
  Eigen::MatrixXcd rho;  // |psi><psi| of vec(c) renormalized, index k * d + l
  double subspace_weight = 0.0;
  bool suspicious = false;  // subspace weight below 0.5
};

TfmProjection project_to_tfm(const Jsa& jsa, AngularFrequency sigma, AngularFrequency omega_s0,
                             AngularFrequency omega_i0, int d);

// Ideal density matrix in the d^2 pair basis, index k * d + l.
Eigen::MatrixXcd ideal_density(const TargetState& t, int d);

// Practical state in the basis of its own first d Schmidt pairs, pair phases
// aligned with the target coefficients, renormalized within the subspace.
Eigen::MatrixXcd schmidt_pair_density(std::span<const double> weights, const TargetState& t, int d);

// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2 for unit-trace PSD matrices.
double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

// |<a|b>|^2 for unit vectors.
double pure_state_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

struct StateReport {
  std::vector<double> lambda;  // leading Schmidt weights
  double k_prime = 0.0;
  double purity = 0.0;
  double purity_six_modes = 0.0;
  double higher_order_weight = 0.0;
  std::optional<double> fidelity;     // Schmidt-pair basis
  std::optional<double> fidelity_hg;  // HG product basis
  std::optional<double> subspace_weight;
  Eigen::MatrixXcd c_kl;
  bool suspicious_projection = false;
};

// Scalar summary of a normalized (phase-imposed) JSA against an optional target.
StateReport analyze_state(const Jsa& jsa, const std::optional<TargetState>& target, int d = 4,
                          int reported_modes = 16);

struct PgrInput {
  double gamma = 0.0;         // 1/(W m)
  double pulse_energy = 0.0;  // J
  Speed group_velocity;
  Length radius;
  AngularFrequency omega_p0;
  double q_tot = 0.0;
  double q_ext = 0.0;
  Rate rep_rate;
};

struct PgrRaw {
  double n2 = 5.59e-18;     // m^2/W
  double a_eff = 0.191e-12; // m^2
  Power avg_power{1e-3};
  Rate rep_rate{500e6};
  Speed group_velocity;
  Length perimeter;  // main ring; R = L_1 / 2 pi
  AngularFrequency omega_p0;
  std::vector<Rate> pump_decay;
  SqrtRate kappa;
};

PgrInput make_pgr_input(const PgrRaw& raw);

struct PgrResult {
  double pairs_per_pulse = 0.0;
  double pgr_hz = 0.0;
};

PgrResult pair_generation_rate(const PgrInput& in);

}  // namespace tfm
