// SPDX-License-Identifier: Apache-2.0
#include "wavedof/emcc.hpp"

#include <cmath>

#include "wavedof/errors.hpp"

namespace wavedof {

void EmccConfig::validate() const {
  if (paths < 1) throw ValidationError("emcc: multipath count S must be >= 1");
  if (realizations < 2)
    throw ValidationError("emcc: need at least 2 realizations to fit a variance");
  if (!(ls_regularization >= 0.0))
    throw ValidationError("emcc: ls_regularization must be >= 0");
}

Eigen::MatrixXcd basis_matrix(const ArrayGeometry& geom, const WavenumberGrid& grid) {
  if (!(geom.aperture == grid.aperture))
    throw ValidationError("basis_matrix: grid was not built from this geometry's aperture");
  const auto N = static_cast<Eigen::Index>(geom.count());
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (N <= n)
    throw ValidationError("basis_matrix: LS system underdetermined (N = " +
                          std::to_string(N) + " <= n = " + std::to_string(n) +
                          "); decrease element spacing");
  Eigen::MatrixXcd basis(N, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double fx = grid.indices[c][0] / grid.aperture.len_x;
    const double fy = grid.indices[c][1] / grid.aperture.len_y;
    for (Eigen::Index i = 0; i < N; ++i) {
      const double phase = 2.0 * M_PI * (fx * geom.positions[i][0] + fy * geom.positions[i][1]);
      basis(i, c) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return basis;
}

namespace {

Eigen::VectorXcd ridge_solve(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& h,
                             double reg) {
  Eigen::MatrixXcd gram = basis.adjoint() * basis;
  gram.diagonal().array() += reg;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
  if (ldlt.info() != Eigen::Success)
    throw NumericError("emcc: normal-equations factorization failed");
  return ldlt.solve(basis.adjoint() * h);
}

}  // namespace

Eigen::VectorXcd ls_project(const Eigen::MatrixXcd& basis, const Eigen::VectorXcd& h,
                            double regularization, bool normal_equations,
                            double* residual) {
  if (basis.rows() != h.size())
    throw ValidationError("ls_project: channel vector length does not match basis rows");
  Eigen::VectorXcd sol;
  if (normal_equations || regularization > 0.0) {
    sol = ridge_solve(basis, h, regularization);
  } else {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(basis);
    if (cod.rank() < basis.cols())
      throw NumericError(
          "ls_project: basis is rank deficient (rank " + std::to_string(cod.rank()) +
          " < " + std::to_string(basis.cols()) +
          "); use a smaller grid, more elements, or a positive regularization");
    sol = cod.solve(h);
  }
  if (residual) *residual = (basis * sol - h).norm();
  return sol;
}

EmccEstimate estimate_coupling(const ArrayGeometry& geom, const WavenumberGrid& grid,
                               const RadiationPattern& pat, const EmccConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXcd basis = basis_matrix(geom, grid);
  const auto n = static_cast<Eigen::Index>(grid.size());

  // Factor once, reuse for every realization.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt;
  const bool ridge = cfg.normal_equations || cfg.ls_regularization > 0.0;
  if (ridge) {
    Eigen::MatrixXcd gram = basis.adjoint() * basis;
    gram.diagonal().array() += cfg.ls_regularization;
    ldlt.compute(gram);
    if (ldlt.info() != Eigen::Success)
      throw NumericError("emcc: normal-equations factorization failed");
  } else {
    cod.compute(basis);
    if (cod.rank() < n)
      throw NumericError(
          "estimate_coupling: basis is rank deficient at this spacing; use a "
          "positive ls_regularization or a different spacing");
  }

  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < cfg.realizations; ++i) {
    Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(i));
    const Eigen::VectorXcd h = multipath_spatial_channel(geom, pat, cfg.paths, rng);
    const Eigen::VectorXcd coeff =
        ridge ? ldlt.solve(basis.adjoint() * h).eval() : cod.solve(h).eval();
    sum_sq += coeff.cwiseAbs2();
  }

  EmccEstimate est;
  est.config = cfg;
  est.spectrum.grid = grid;
  est.spectrum.pattern = pat.describe();
  est.spectrum.tol = 0.0;
  est.spectrum.values.resize(n);
  est.ci_half_width.resize(n);
  const double inv_i = 1.0 / cfg.realizations;
  // Mean squared magnitude is Gamma(I, sigma^2/I); at these I the normal
  // approximation of the 95% interval is within a fraction of a percent.
  const double rel_hw = 1.959963984540054 / std::sqrt(static_cast<double>(cfg.realizations));
  for (Eigen::Index k = 0; k < n; ++k) {
    est.spectrum.values[k] = sum_sq(k) * inv_i;
    est.ci_half_width[k] = est.spectrum.values[k] * rel_hw;
  }
  return est;
}

}  // namespace wavedof
