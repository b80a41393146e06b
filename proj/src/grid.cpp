// SPDX-License-Identifier: Apache-2.0
#include "wavedof/grid.hpp"

#include <cmath>
#include <string>

#include "wavedof/errors.hpp"

namespace wavedof {

void Aperture::validate() const {
  if (!(len_x > 0.0) || !(len_y > 0.0)) {
    throw ValidationError("aperture lengths must be positive, got " +
                          std::to_string(len_x) + " x " + std::to_string(len_y));
  }
}

WavenumberGrid build_grid(const Aperture& aperture) {
  aperture.validate();
  WavenumberGrid grid;
  grid.aperture = aperture;

  const int mx_max = static_cast<int>(std::floor(aperture.len_x));
  const int my_max = static_cast<int>(std::floor(aperture.len_y));
  for (int mx = -mx_max; mx <= mx_max; ++mx) {
    const double ax = mx / aperture.len_x;
    for (int my = -my_max; my <= my_max; ++my) {
      const double ay = my / aperture.len_y;
      if (ax * ax + ay * ay > 1.0) continue;
      Cell c;
      c.x0 = mx / aperture.len_x;
      c.x1 = (mx + 1) / aperture.len_x;
      c.y0 = my / aperture.len_y;
      c.y1 = (my + 1) / aperture.len_y;
      const double cx = std::max(std::abs(c.x0), std::abs(c.x1));
      const double cy = std::max(std::abs(c.y0), std::abs(c.y1));
      c.clipped = cx * cx + cy * cy > 1.0;
      grid.indices.push_back({mx, my});
      grid.cells.push_back(c);
    }
  }
  return grid;
}

int eta_upper_bound(const Aperture& tx, const Aperture& rx) {
  tx.validate();
  rx.validate();
  const double t = std::floor(M_PI * tx.len_x * tx.len_y);
  const double r = std::floor(M_PI * rx.len_x * rx.len_y);
  return static_cast<int>(std::min(t, r));
}

}  // namespace wavedof
