#pragma once

#include <compare>
#include <numbers>
#include <string>
#include <string_view>

namespace tfm {

// Dimensioned scalar stored in SI. The tag keeps e.g. a decay rate from being
// passed where a carrier frequency is expected.
template <class Tag>
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr explicit Quantity(double si) : value_(si) {}

  constexpr double value() const { return value_; }

  constexpr Quantity operator+(Quantity o) const { return Quantity(value_ + o.value_); }
  constexpr Quantity operator-(Quantity o) const { return Quantity(value_ - o.value_); }
  constexpr Quantity operator-() const { return Quantity(-value_); }
  constexpr Quantity operator*(double s) const { return Quantity(value_ * s); }
  constexpr Quantity operator/(double s) const { return Quantity(value_ / s); }
  constexpr double operator/(Quantity o) const { return value_ / o.value_; }
  friend constexpr Quantity operator*(double s, Quantity q) { return q * s; }

  constexpr auto operator<=>(const Quantity&) const = default;

 private:
  double value_ = 0.0;
};

struct AngularFrequencyTag {};
struct RateTag {};
struct SqrtRateTag {};
struct DurationTag {};
struct LengthTag {};
struct SpeedTag {};
struct PowerTag {};

using AngularFrequency = Quantity<AngularFrequencyTag>;  // rad/s
using Rate = Quantity<RateTag>;                          // 1/s
using SqrtRate = Quantity<SqrtRateTag>;                  // s^-1/2
using Duration = Quantity<DurationTag>;                  // s
using Length = Quantity<LengthTag>;                      // m
using Speed = Quantity<SpeedTag>;                        // m/s
using Power = Quantity<PowerTag>;                        // W

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

namespace units {

// THz and GHz are 1e12 and 1e9 rad/s (or s^-1 for rates): the tables quote
// angular quantities in these units.
constexpr AngularFrequency thz(double v) { return AngularFrequency(v * 1e12); }
constexpr AngularFrequency ghz(double v) { return AngularFrequency(v * 1e9); }
constexpr Rate ghz_rate(double v) { return Rate(v * 1e9); }
constexpr SqrtRate sqrt_thz(double v) { return SqrtRate(v * 1e6); }
constexpr Duration ps(double v) { return Duration(v * 1e-12); }
constexpr Length mm(double v) { return Length(v * 1e-3); }

}  // namespace units

// Physical dimension of a config value. Each accepts a fixed set of unit suffixes.
enum class Dimension {
  kAngularFrequency,  // THz, GHz, MHz, 2pi*GHz, 2pi*THz, rad/s
  kRate,              // THz, GHz, MHz, kHz, Hz, 1/s
  kSqrtRate,          // sqrtTHz, sqrtGHz, sqrtHz
  kTime,              // s, ns, ps, fs
  kLength,            // m, mm, um, nm
  kSpeed,             // m/s
  kPower,             // W, mW, uW
  kArea,              // m2, um2
  kKerrIndex,         // m2/W
  kNonlinearity,      // 1/(W*m)
  kInverseDispersion, // s/m, ps/mm  (rad^-1 implied)
  kGroupVelocityDispersion,  // s2/m, ps2/mm
  kThirdOrderDispersion,     // s3/m, ps3/mm
  kDimensionless,     // optional "rad"
};

std::string_view dimension_name(Dimension d);

// Parses "<number> <unit>" into SI. Unit-less numbers are rejected for every
// dimension except kDimensionless. Throws ConfigError carrying `key`.
double parse_quantity(std::string_view text, Dimension dim, const std::string& key);

// Formats an SI value in `unit` so that parse_quantity reads back exactly the
// same double; falls back to the SI base unit when the scaled value does not round-trip.
std::string format_quantity(double si, Dimension dim, std::string_view unit);

}  // namespace tfm
