// SPDX-License-Identifier: Apache-2.0
#include "wavedof/coupling.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "wavedof/errors.hpp"
#include "wavedof/quadrature.hpp"

namespace wavedof {

double CouplingSpectrum::total() const {
  double sum = 0.0, c = 0.0;
  for (double v : values) {  // Kahan, order-stable
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

void CouplingSpectrum::validate() const {
  if (values.size() != grid.size())
    throw ValidationError("coupling spectrum not aligned with its grid");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ValidationError("coupling spectrum values must be finite and >= 0");
}

namespace {

// \iint_{cell ∩ disk} g(kx, ky) (1 - kx^2 - ky^2)^{(m-1)/2} dkx dky.
// Inner ky integral via ky = s*sin(t), s = sqrt(1 - kx^2), which turns the
// integrand into s^m cos^m(t) g(kx, s*sin t): smooth up to the rim.
double cell_disk_integral(const Cell& cell, double m,
                          const std::function<double(double, double)>* gain,
                          double tol) {
  const double x0 = std::max(cell.x0, -1.0);
  const double x1 = std::min(cell.x1, 1.0);
  if (!(x1 > x0)) return 0.0;

  const double inner_tol = 0.1 * tol / (x1 - x0);
  auto outer = [&](double x) {
    const double s2 = 1.0 - x * x;
    if (s2 <= 0.0) return 0.0;
    const double s = std::sqrt(s2);
    const double ylo = std::max(cell.y0, -s);
    const double yhi = std::min(cell.y1, s);
    if (!(yhi > ylo)) return 0.0;
    const double t0 = std::asin(std::clamp(ylo / s, -1.0, 1.0));
    const double t1 = std::asin(std::clamp(yhi / s, -1.0, 1.0));
    const double sm = m == 0.0 ? 1.0 : std::pow(s, m);
    auto inner = [&](double t) {
      const double c = std::cos(t);
      double v = m == 0.0 ? 1.0 : std::pow(c, m);
      if (gain) v *= (*gain)(x, s * std::sin(t));
      return v;
    };
    return sm * integrate_adaptive(inner, t0, t1, inner_tol);
  };
  return integrate_adaptive(outer, x0, x1, 0.9 * tol);
}

CouplingSpectrum integrate_spectrum(const WavenumberGrid& grid, double m,
                                    const std::function<double(double, double)>* gain,
                                    double tol, std::string descriptor) {
  if (!(tol > 0.0)) throw ValidationError("quadrature tolerance must be positive");
  CouplingSpectrum spec;
  spec.grid = grid;
  spec.pattern = std::move(descriptor);
  spec.tol = tol;
  spec.values.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      spec.values.push_back(cell_disk_integral(grid.cells[i], m, gain, tol) /
                            (2.0 * M_PI));
    } catch (const NumericError& e) {
      throw NumericError("coupling quadrature failed at cell (" +
                         std::to_string(grid.indices[i][0]) + ", " +
                         std::to_string(grid.indices[i][1]) + "): " + e.what());
    }
  }
  return spec;
}

}  // namespace

CouplingSpectrum coupling_cos_power(const WavenumberGrid& grid, double m, double tol) {
  if (!(m >= 0.0)) throw ValidationError("directivity exponent m must be >= 0");
  std::ostringstream d;
  d << "cos:" << m;
  return integrate_spectrum(grid, m, nullptr, tol, d.str());
}

CouplingSpectrum coupling_general(const WavenumberGrid& grid,
                                  const RadiationPattern& pat, double tol) {
  std::function<double(double, double)> gain = [&pat](double kx, double ky) {
    return pat.gain_wavenumber(kx, ky);
  };
  return integrate_spectrum(grid, 0.0, &gain, tol, pat.describe());
}

}  // namespace wavedof
