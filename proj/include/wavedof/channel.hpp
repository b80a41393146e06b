// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wavedof/coupling.hpp"
#include "wavedof/grid.hpp"
#include "wavedof/pattern.hpp"
#include "wavedof/rng.hpp"

namespace wavedof {

/// Uniform rectangular element lattice centered on the aperture center,
/// z = 0 in the array-local frame; positions in wavelengths.
struct ArrayGeometry {
  Aperture aperture;
  double spacing = 0.0;
  std::vector<std::array<double, 2>> positions;

  static ArrayGeometry uniform(const Aperture& aperture, double spacing);
  std::size_t count() const { return positions.size(); }
};

/// Set of random channel realizations plus the seed that produced them.
struct ChannelEnsemble {
  std::vector<Eigen::MatrixXcd> realizations;
  std::uint64_t seed = 0;
  std::string producer;
};

/// Phi matrix of the spatial -> wavenumber map: entry (i; m) =
/// exp(-j 2pi (kx x_i + ky y_i)) / sqrt(N) with (kx, ky) the grid anchor.
/// The kz term vanishes because z = 0 in the local frame.
Eigen::MatrixXcd transform_matrix(const ArrayGeometry& geom, const WavenumberGrid& grid);

/// H_a = diag(sigma_R) H_w diag(sigma_T), sigma the positive square roots of
/// the spectrum values, H_w i.i.d. CN(0,1). Realization k uses RNG substream
/// (seed, k), so the ensemble is independent of evaluation order.
ChannelEnsemble draw_wavenumber_channel(const CouplingSpectrum& tx,
                                        const CouplingSpectrum& rx,
                                        int count, std::uint64_t seed);

/// H = sqrt(N_T N_R) Phi_R H_a Phi_T^H.
Eigen::MatrixXcd assemble_spatial_channel(const Eigen::MatrixXcd& ha,
                                          const Eigen::MatrixXcd& phi_t,
                                          const Eigen::MatrixXcd& phi_r);

struct PathDirection {
  double theta, phi;
};

/// I.i.d. draws from the hemispherical density: theta = arccos(1 - u),
/// phi uniform on [0, 2pi).
std::vector<PathDirection> sample_multipath(int count, Rng& rng);
std::vector<PathDirection> sample_multipath(int count, std::uint64_t seed);

/// Per-element multipath channel h_i = (1/sqrt(S)) sum_s sqrt(G) e^{j psi_s}
/// e^{j 2pi k_s . x_i}. Each path carries an i.i.d. uniform phase psi_s so
/// the channel is zero-mean and wide-sense stationary.
Eigen::VectorXcd multipath_spatial_channel(const ArrayGeometry& geom,
                                           const RadiationPattern& pat,
                                           int paths, Rng& rng);

}  // namespace wavedof
