// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wavedof/channel.hpp"
#include "wavedof/coupling.hpp"

namespace wavedof {

struct EmccConfig {
  int paths = 200;           // multipaths S per realization
  int realizations = 5000;   // I
  std::uint64_t seed = 0;
  double ls_regularization = 0.0;
  bool normal_equations = false;  // explicit (E^H E)^{-1} E^H route

  void validate() const;
};

/// Fourier basis E(i; m) = exp(j 2pi (x_i m_x / L_x + y_i m_y / L_y)).
/// Requires N > n (d <= lambda/2) so the LS system is overdetermined.
Eigen::MatrixXcd basis_matrix(const ArrayGeometry& geom, const WavenumberGrid& grid);

/// Least-squares projection min ||E h~ - h||_2. Default route is a complete
/// orthogonal decomposition; rank deficiency without regularization is a
/// numeric error. With regularization > 0 solves the ridge normal equations.
Eigen::VectorXcd ls_project(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& h,
                            double regularization = 0.0, bool normal_equations = false,
                            double* residual = nullptr);

struct EmccEstimate {
  CouplingSpectrum spectrum;
  std::vector<double> ci_half_width;  // 95%, per index
  EmccConfig config;
};

/// The EM-simulation-based coupling estimator: I multipath channel
/// realizations, LS-projected onto the wavenumber basis; sigma^2 per index
/// is the mean squared coefficient magnitude (ML for zero-mean complex
/// Gaussian coefficients).
EmccEstimate estimate_coupling(const ArrayGeometry& geom, const WavenumberGrid& grid,
                               const RadiationPattern& pat, const EmccConfig& cfg);

}  // namespace wavedof
