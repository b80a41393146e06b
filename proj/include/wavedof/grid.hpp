// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace wavedof {

/// Rectangular aperture, both side lengths in wavelengths.
struct Aperture {
  double len_x = 0.0;
  double len_y = 0.0;

  void validate() const;
  bool operator==(const Aperture&) const = default;
};

/// Axis-aligned integration cell in normalized wavenumber coordinates.
/// The rectangle is the raw [m_x/L_x, (m_x+1)/L_x] x [m_y/L_y, (m_y+1)/L_y]
/// span; `clipped` marks cells not fully inside the closed unit disk. The
/// disk constraint itself is applied analytically at quadrature time.
struct Cell {
  double x0, x1, y0, y1;
  bool clipped;
};

/// Discrete wavenumber-domain sampling lattice for one aperture: every
/// integer pair whose anchor (m_x/L_x, m_y/L_y) lies in the closed unit
/// disk, in lexicographic (m_x, m_y) order, with its integration cell.
struct WavenumberGrid {
  Aperture aperture;
  std::vector<std::array<int, 2>> indices;
  std::vector<Cell> cells;

  std::size_t size() const { return indices.size(); }
};

WavenumberGrid build_grid(const Aperture& aperture);

/// min(floor(pi Lx Ly)) over the two apertures; hard cap on EDoF.
int eta_upper_bound(const Aperture& tx, const Aperture& rx);

}  // namespace wavedof
