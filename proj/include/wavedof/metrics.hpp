// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wavedof/coupling.hpp"

namespace wavedof {

struct EdofResult {
  int eta_e_tx = 0;
  int eta_e_rx = 0;
  int eta_e = 0;
  double gamma = 0.0;
  int eta_u = 0;
};

struct CapacityResult {
  double mean_bits = 0.0;      // ergodic capacity, bits/s/Hz
  double ci_half_width = 0.0;  // 95%
  int trials = 0;
  double snr = 0.0;            // linear, 1/mu^2
};

/// Statistical EDoF: per side, the shortest descending-sorted prefix of the
/// coupling spectrum capturing fraction gamma of its total; eta_e is the
/// minimum of the two sides.
EdofResult edof_statistical(const CouplingSpectrum& tx, const CouplingSpectrum& rx,
                            double gamma);

/// Smallest prefix of a descending energy spectrum reaching gamma of the total.
int energy_prefix_count(std::vector<double> energies, double gamma);

/// Deterministic EDoF: eigenvalue spectrum of the ensemble-averaged Gram
/// matrix H^H H (the channel correlation), thresholded at gamma.
int edof_deterministic(const std::vector<Eigen::MatrixXcd>& spatial_realizations,
                       double gamma);

/// Monte-Carlo ergodic capacity: per trial, eigenvalues of
/// Hw diag(sigma_T^2) Hw^H diag(sigma_R^2) via the similar Hermitian product
/// D_R^{1/2} Hw D_T Hw^H D_R^{1/2}; the eta_u largest terms are summed with
/// per-stream gain N_T N_R / (n_T mu^2). Total transmit power is 1 (uniform
/// allocation); snr = 1/mu^2.
CapacityResult ergodic_capacity(const CouplingSpectrum& tx, const CouplingSpectrum& rx,
                                int n_elems_tx, int n_elems_rx, double snr,
                                int trials, std::uint64_t seed);

/// As ergodic_capacity but summing only the eta_e largest eigenvalue terms.
CapacityResult capacity_with_edof_truncation(const CouplingSpectrum& tx,
                                             const CouplingSpectrum& rx,
                                             int n_elems_tx, int n_elems_rx,
                                             double snr, int trials,
                                             std::uint64_t seed, int eta_e);

}  // namespace wavedof
