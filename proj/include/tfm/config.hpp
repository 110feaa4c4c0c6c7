#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfm/analysis.hpp"
#include "tfm/inversion.hpp"
#include "tfm/model.hpp"

namespace tfm {

struct GridSpec {
  AngularFrequency half_span{40e9};
  int points = 512;
};

struct AnalysisOptions {
  int subspace = 4;
  int reported_modes = 16;
  PiPhaseOptions pi;
};

struct TargetSpec {
  int dimension = 2;
  std::optional<AngularFrequency> sigma;  // empty ("auto"): fitted to the signal/idler linewidths
  std::vector<double> coefficients;       // empty: alternating +-1/sqrt(D)
};

struct PgrOptions {
  double n2 = 5.59e-18;
  double a_eff = 0.191e-12;
  Power avg_power{1e-3};
  Rate rep_rate{500e6};
};

struct MziOptions {
  double k_prime = 0.05;
  double phi_h1 = 0.0;
  double phi_h2 = 0.0;
  double phi_h3 = 0.0;
  std::optional<Length> l2;  // defaults to L_1 / 2 (1:2 FSR ratio)
};

// Merged view of one or more YAML files. Sections other than `device` are
// optional at parse time; commands check for what they need.
struct DeviceConfig {
  Speed group_velocity;
  Length perimeter;

  bool has_model = false;
  DeviceModel model;
  GridSpec grid;
  AnalysisOptions analysis;
  std::optional<TargetSpec> target;
  PgrOptions pgr;
  std::optional<MziOptions> mzi;
  bool has_search = false;
  SearchConfig search;

  void require_model() const;
  TargetState target_state() const;
  MziCouplerSpec mzi_spec() const;
  FixedParams fixed_params() const;
  PgrRaw pgr_raw() const;
};

DeviceConfig parse_config(const std::string& yaml_text);

// Later files override earlier ones key by key (maps merge, lists replace).
DeviceConfig load_config(const std::vector<std::string>& paths);

std::string serialize_config(const DeviceConfig& c);

// Config fragment with the free parameters of `p`, mergeable over a device config.
std::string serialize_free_params(const FreeParams& p);

}  // namespace tfm
