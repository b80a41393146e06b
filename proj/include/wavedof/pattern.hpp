// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

namespace wavedof {

/// Isotropic hemispherical multipath angle density, sin(theta)/(2*pi) on
/// theta in [0, pi/2]; zero below the horizon.
inline double angle_density(double theta) {
  if (theta < 0.0 || theta > M_PI / 2) return 0.0;
  return std::sin(theta) / (2.0 * M_PI);
}

/// Element power radiation pattern over the upper hemisphere. Values are
/// linear power gains (realized gain for tabulated data); no renormalization
/// is applied, so absolute scale carries through to coupling sums.
class RadiationPattern {
 public:
  static RadiationPattern cos_power(double m);
  static RadiationPattern hypothetical();
  /// Regular (theta_deg, phi_deg) grid covering the hemisphere; gains row
  /// per (theta, phi) pair, theta-major.
  static RadiationPattern tabulated(std::vector<double> theta_deg,
                                    std::vector<double> phi_deg,
                                    std::vector<double> gain);
  /// Pattern CSV: header theta_deg,phi_deg,gain (linear) or
  /// theta_deg,phi_deg,gain_db; rows a complete regular grid with theta
  /// spanning [0, 90] and phi covering [0, 360) (a 360 column duplicates 0).
  static RadiationPattern load(const std::filesystem::path& path);

  /// G(theta, phi); theta in [0, pi/2] (tabulated throws outside coverage).
  double gain_angular(double theta, double phi) const;

  /// G at the normalized wavenumber point; requires kx^2 + ky^2 <= 1.
  double gain_wavenumber(double kx, double ky) const;

  bool is_cos_power() const { return kind_ == Kind::CosPower; }
  bool is_hypothetical() const { return kind_ == Kind::Hypothetical; }
  double cos_exponent() const { return m_; }
  const std::string& describe() const { return descriptor_; }

 private:
  enum class Kind { CosPower, Hypothetical, Tabulated };

  RadiationPattern() = default;

  double interpolate(double theta_deg, double phi_deg) const;

  Kind kind_ = Kind::Hypothetical;
  double m_ = 0.0;
  std::string descriptor_ = "hypothetical";
  // tabulated storage: theta ascending, phi ascending in [0, 360), gains
  // theta-major with phi wraparound at lookup.
  std::vector<double> theta_deg_, phi_deg_, gain_;
};

}  // namespace wavedof
