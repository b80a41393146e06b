// SPDX-License-Identifier: Apache-2.0
#include "wavedof/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wavedof/errors.hpp"
#include "wavedof/rng.hpp"

namespace wavedof {

int energy_prefix_count(std::vector<double> energies, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw ValidationError("gamma must lie in (0, 1)");
  std::sort(energies.begin(), energies.end(), std::greater<>());
  double total = 0.0;
  for (double e : energies) {
    if (!(e >= 0.0)) throw ValidationError("energy spectrum must be non-negative");
    total += e;
  }
  if (!(total > 0.0)) throw ValidationError("energy spectrum is all zero");
  const double target = gamma * total;
  double prefix = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    prefix += energies[i];
    if (prefix >= target) return static_cast<int>(i + 1);
  }
  return static_cast<int>(energies.size());
}

EdofResult edof_statistical(const CouplingSpectrum& tx, const CouplingSpectrum& rx,
                            double gamma) {
  tx.validate();
  rx.validate();
  EdofResult r;
  r.gamma = gamma;
  r.eta_e_tx = energy_prefix_count(tx.values, gamma);
  r.eta_e_rx = energy_prefix_count(rx.values, gamma);
  r.eta_e = std::min(r.eta_e_tx, r.eta_e_rx);
  r.eta_u = eta_upper_bound(tx.grid.aperture, rx.grid.aperture);
  return r;
}

int edof_deterministic(const std::vector<Eigen::MatrixXcd>& spatial_realizations,
                       double gamma) {
  if (spatial_realizations.empty())
    throw ValidationError("edof_deterministic: empty ensemble");
  const Eigen::Index cols = spatial_realizations.front().cols();
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(cols, cols);
  for (const auto& h : spatial_realizations) {
    if (h.cols() != cols)
      throw ValidationError("edof_deterministic: inconsistent realization dimensions");
    gram.selfadjointView<Eigen::Lower>().rankUpdate(h.adjoint());
  }
  gram /= static_cast<double>(spatial_realizations.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("edof_deterministic: eigendecomposition failed");
  std::vector<double> energies(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
  for (double& e : energies) e = std::max(e, 0.0);  // clip eigensolver noise
  return energy_prefix_count(std::move(energies), gamma);
}

namespace {

CapacityResult capacity_impl(const CouplingSpectrum& tx, const CouplingSpectrum& rx,
                             int n_elems_tx, int n_elems_rx, double snr, int trials,
                             std::uint64_t seed, int eta_terms) {
  tx.validate();
  rx.validate();
  if (!(snr > 0.0)) throw ValidationError("snr must be positive");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (n_elems_tx < 1 || n_elems_rx < 1)
    throw ValidationError("element counts must be >= 1");
  const auto nt = static_cast<Eigen::Index>(tx.values.size());
  const auto nr = static_cast<Eigen::Index>(rx.values.size());
  if (eta_terms < 1 || eta_terms > std::min(nt, nr))
    throw ValidationError("eigenvalue term count must lie in [1, min(n_T, n_R)]");

  Eigen::VectorXd st(nt), sr(nr);  // D^{1/2} diagonals
  for (Eigen::Index i = 0; i < nt; ++i) st(i) = std::sqrt(tx.values[i]);
  for (Eigen::Index i = 0; i < nr; ++i) sr(i) = std::sqrt(rx.values[i]);

  // Per-stream gain: N_T N_R / (n_T mu^2) with mu^2 = 1/snr.
  const double gain = static_cast<double>(n_elems_tx) * static_cast<double>(n_elems_rx) /
                      static_cast<double>(nt) * snr;

  std::vector<double> per_trial(trials);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
    Eigen::MatrixXcd x(nr, nt);
    for (Eigen::Index r = 0; r < nr; ++r)
      for (Eigen::Index c = 0; c < nt; ++c) x(r, c) = sr(r) * rng.cnormal() * st(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x * x.adjoint(),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw NumericError("ergodic_capacity: eigendecomposition failed at trial " +
                         std::to_string(t));
    const auto& ev = es.eigenvalues();  // ascending
    double bits = 0.0;
    for (int i = 0; i < eta_terms; ++i) {
      const double tau = std::max(ev(nr - 1 - i), 0.0);
      bits += std::log2(1.0 + gain * tau);
    }
    per_trial[t] = bits;
  }

  double mean = 0.0, c = 0.0;
  for (double b : per_trial) {  // compensated, order-fixed
    const double y = b - c;
    const double s = mean + y;
    c = (s - mean) - y;
    mean = s;
  }
  mean /= trials;
  double var = 0.0;
  for (double b : per_trial) var += (b - mean) * (b - mean);
  var = trials > 1 ? var / (trials - 1) : 0.0;

  CapacityResult res;
  res.mean_bits = mean;
  res.ci_half_width = 1.959963984540054 * std::sqrt(var / trials);
  res.trials = trials;
  res.snr = snr;
  return res;
}

}  // namespace

CapacityResult ergodic_capacity(const CouplingSpectrum& tx, const CouplingSpectrum& rx,
                                int n_elems_tx, int n_elems_rx, double snr,
                                int trials, std::uint64_t seed) {
  const int eta_u = eta_upper_bound(tx.grid.aperture, rx.grid.aperture);
  const int terms = std::min<int>(eta_u, static_cast<int>(std::min(tx.values.size(),
                                                                   rx.values.size())));
  return capacity_impl(tx, rx, n_elems_tx, n_elems_rx, snr, trials, seed, terms);
}

CapacityResult capacity_with_edof_truncation(const CouplingSpectrum& tx,
                                             const CouplingSpectrum& rx,
                                             int n_elems_tx, int n_elems_rx,
                                             double snr, int trials,
                                             std::uint64_t seed, int eta_e) {
  return capacity_impl(tx, rx, n_elems_tx, n_elems_rx, snr, trials, seed, eta_e);
}

}  // namespace wavedof
