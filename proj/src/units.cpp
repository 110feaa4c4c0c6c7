#include "tfm/units.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <span>

#include "tfm/error.hpp"

namespace tfm {
namespace {

struct UnitEntry {
  std::string_view name;
  double scale;
};

std::span<const UnitEntry> units_for(Dimension dim);

constexpr std::array kAngular{
    UnitEntry{"THz", 1e12},          UnitEntry{"GHz", 1e9},         UnitEntry{"MHz", 1e6},
    UnitEntry{"2pi*THz", kTwoPi * 1e12}, UnitEntry{"2pi*GHz", kTwoPi * 1e9}, UnitEntry{"rad/s", 1.0},
};
constexpr std::array kRate{
    UnitEntry{"THz", 1e12}, UnitEntry{"GHz", 1e9}, UnitEntry{"MHz", 1e6},
    UnitEntry{"kHz", 1e3},  UnitEntry{"Hz", 1.0},  UnitEntry{"1/s", 1.0},
};
constexpr std::array kSqrtRate{
    UnitEntry{"sqrtTHz", 1e6}, UnitEntry{"sqrtGHz", 31622.776601683792}, UnitEntry{"sqrtHz", 1.0},
};
constexpr std::array kTime{
    UnitEntry{"s", 1.0}, UnitEntry{"ns", 1e-9}, UnitEntry{"ps", 1e-12}, UnitEntry{"fs", 1e-15},
};
constexpr std::array kLength{
    UnitEntry{"m", 1.0}, UnitEntry{"mm", 1e-3}, UnitEntry{"um", 1e-6}, UnitEntry{"nm", 1e-9},
};
constexpr std::array kSpeed{UnitEntry{"m/s", 1.0}};
constexpr std::array kPower{UnitEntry{"W", 1.0}, UnitEntry{"mW", 1e-3}, UnitEntry{"uW", 1e-6}};
constexpr std::array kArea{UnitEntry{"m2", 1.0}, UnitEntry{"um2", 1e-12}};
constexpr std::array kKerr{UnitEntry{"m2/W", 1.0}};
constexpr std::array kNonlinear{UnitEntry{"1/(W*m)", 1.0}, UnitEntry{"1/W/m", 1.0}};
constexpr std::array kInvDisp{UnitEntry{"s/m", 1.0}, UnitEntry{"ps/mm", 1e-9}, UnitEntry{"ps/m", 1e-12},
                              UnitEntry{"fs/mm", 1e-12}};
constexpr std::array kGvd{UnitEntry{"s2/m", 1.0}, UnitEntry{"ps2/mm", 1e-21}, UnitEntry{"ps2/m", 1e-24}};
constexpr std::array kTod{UnitEntry{"s3/m", 1.0}, UnitEntry{"ps3/mm", 1e-33}, UnitEntry{"ps3/m", 1e-36}};
constexpr std::array kDimless{UnitEntry{"rad", 1.0}};

std::span<const UnitEntry> units_for(Dimension dim) {
  switch (dim) {
    case Dimension::kAngularFrequency: return kAngular;
    case Dimension::kRate: return kRate;
    case Dimension::kSqrtRate: return kSqrtRate;
    case Dimension::kTime: return kTime;
    case Dimension::kLength: return kLength;
    case Dimension::kSpeed: return kSpeed;
    case Dimension::kPower: return kPower;
    case Dimension::kArea: return kArea;
    case Dimension::kKerrIndex: return kKerr;
    case Dimension::kNonlinearity: return kNonlinear;
    case Dimension::kInverseDispersion: return kInvDisp;
    case Dimension::kGroupVelocityDispersion: return kGvd;
    case Dimension::kThirdOrderDispersion: return kTod;
    case Dimension::kDimensionless: return kDimless;
  }
  return {};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> scale_of(Dimension dim, std::string_view unit) {
  if (unit.empty() && dim == Dimension::kDimensionless) return 1.0;
  for (const auto& u : units_for(dim)) {
    if (u.name == unit) return u.scale;
  }
  return std::nullopt;
}

std::string accepted_units(Dimension dim) {
  std::string out;
  for (const auto& u : units_for(dim)) {
    if (!out.empty()) out += ", ";
    out += u.name;
  }
  return out;
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::kAngularFrequency: return "angular frequency";
    case Dimension::kRate: return "rate";
    case Dimension::kSqrtRate: return "square-root rate";
    case Dimension::kTime: return "time";
    case Dimension::kLength: return "length";
    case Dimension::kSpeed: return "speed";
    case Dimension::kPower: return "power";
    case Dimension::kArea: return "area";
    case Dimension::kKerrIndex: return "Kerr index";
    case Dimension::kNonlinearity: return "nonlinear parameter";
    case Dimension::kInverseDispersion: return "inverse dispersion slope";
    case Dimension::kGroupVelocityDispersion: return "group-velocity dispersion";
    case Dimension::kThirdOrderDispersion: return "third-order dispersion";
    case Dimension::kDimensionless: return "dimensionless";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension dim, const std::string& key) {
  const std::string s(trim(text));
  if (s.empty()) throw ConfigError(key, "empty value");
  const char* begin = s.c_str();
  char* end = nullptr;
  const double number = std::strtod(begin, &end);
  if (end == begin) throw ConfigError(key, "expected a number, got '" + s + "'");
  if (!std::isfinite(number)) throw ConfigError(key, "value is not finite");
  const std::string_view unit = trim(std::string_view(end));
  if (unit.empty()) {
    if (dim == Dimension::kDimensionless) return number;
    throw ConfigError(key, "missing unit for " + std::string(dimension_name(dim)) +
                               " (accepted: " + accepted_units(dim) + ")");
  }
  const auto scale = scale_of(dim, unit);
  if (!scale) {
    throw ConfigError(key, "unknown unit '" + std::string(unit) + "' for " +
                               std::string(dimension_name(dim)) + " (accepted: " +
                               accepted_units(dim) + ")");
  }
  return number * *scale;
}

std::string format_quantity(double si, Dimension dim, std::string_view unit) {
  auto render = [](double v, std::string_view u) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string out(buf);
    if (!u.empty()) {
      out += ' ';
      out += u;
    }
    return out;
  };
  if (const auto scale = scale_of(dim, unit)) {
    // Shortest representation that reads back bit-exactly.
    for (int digits = 6; digits <= 17; ++digits) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*g", digits, si / *scale);
      std::string candidate = std::string(buf) + (unit.empty() ? "" : " " + std::string(unit));
      if (parse_quantity(candidate, dim, "") == si) return candidate;
    }
  }
  const auto base = units_for(dim);
  for (const auto& u : base) {
    if (u.scale == 1.0) return render(si, dim == Dimension::kDimensionless ? "" : u.name);
  }
  return render(si, "");
}

}  // namespace tfm
