// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "wavedof/grid.hpp"
#include "wavedof/pattern.hpp"

namespace wavedof {

/// Per-index wavenumber-domain coupling coefficients sigma^2 for one side of
/// the link, aligned 1:1 with grid.indices.
struct CouplingSpectrum {
  WavenumberGrid grid;
  std::vector<double> values;
  std::string pattern;  // descriptor of the pattern that produced it
  double tol = 0.0;

  double total() const;
  void validate() const;
};

/// Closed-form directivity case: per cell,
/// (1/2pi) \iint_cell (1 - kx^2 - ky^2)^{(m-1)/2} dkx dky over cell ∩ disk,
/// to absolute accuracy tol per cell. The integrable rim singularity for
/// m < 1 is removed analytically by the substitution ky = s*sin(t),
/// s = sqrt(1 - kx^2).
CouplingSpectrum coupling_cos_power(const WavenumberGrid& grid, double m, double tol);

/// General pattern: per cell, (1/2pi) \iint_cell G(kx, ky)
/// (1 - kx^2 - ky^2)^{-1/2} dkx dky over cell ∩ disk.
CouplingSpectrum coupling_general(const WavenumberGrid& grid,
                                  const RadiationPattern& pat, double tol);

inline constexpr double kDefaultCouplingTol = 1e-9;

}  // namespace wavedof
