#pragma once

#include <string>

#include <json.hpp>

#include "tfm/inversion.hpp"
#include "tfm/pipeline.hpp"

namespace tfm {

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

// Rounded to 9 significant digits.
double sig9(double v);
std::string fmt9(double v);

nlohmann::json report_json(const StateReport& r, const PgrResult& pgr);
nlohmann::json pgr_json(const PgrInput& in, const PgrResult& r);
nlohmann::json trial_json(const TrialRecord& t);

// CSV rows (w_s, w_i, Re F, Im F), angular frequencies in rad/s.
std::string jsa_csv(const Jsa& jsa);

// Little-endian f64 pairs (Re, Im), signal index fastest.
std::string jsa_binary(const Jsa& jsa);
nlohmann::json jsa_sidecar(const Jsa& jsa, const std::string& binary_name);

// CSV rows (omega, value) for a real spectrum.
std::string spectrum_csv(const SpectralGrid& grid, const Eigen::VectorXd& values, const std::string& column);

}  // namespace tfm
