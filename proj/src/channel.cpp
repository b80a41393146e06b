// SPDX-License-Identifier: Apache-2.0
#include "wavedof/channel.hpp"

#include <cmath>

#include "wavedof/errors.hpp"

namespace wavedof {

ArrayGeometry ArrayGeometry::uniform(const Aperture& aperture, double spacing) {
  aperture.validate();
  if (!(spacing > 0.0) || spacing > 0.5)
    throw ValidationError("element spacing must satisfy 0 < d <= 0.5 wavelengths");
  const int nx = static_cast<int>(std::floor(aperture.len_x / spacing)) + 1;
  const int ny = static_cast<int>(std::floor(aperture.len_y / spacing)) + 1;
  ArrayGeometry g;
  g.aperture = aperture;
  g.spacing = spacing;
  g.positions.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    const double x = (i - 0.5 * (nx - 1)) * spacing;
    for (int j = 0; j < ny; ++j) {
      const double y = (j - 0.5 * (ny - 1)) * spacing;
      g.positions.push_back({x, y});
    }
  }
  return g;
}

Eigen::MatrixXcd transform_matrix(const ArrayGeometry& geom, const WavenumberGrid& grid) {
  if (!(geom.aperture == grid.aperture))
    throw ValidationError("transform_matrix: grid was not built from this geometry's aperture");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto N = static_cast<Eigen::Index>(geom.count());
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  Eigen::MatrixXcd phi(N, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double kx = grid.indices[c][0] / grid.aperture.len_x;
    const double ky = grid.indices[c][1] / grid.aperture.len_y;
    for (Eigen::Index i = 0; i < N; ++i) {
      const double phase = -2.0 * M_PI * (kx * geom.positions[i][0] + ky * geom.positions[i][1]);
      phi(i, c) = scale * std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return phi;
}

ChannelEnsemble draw_wavenumber_channel(const CouplingSpectrum& tx,
                                        const CouplingSpectrum& rx,
                                        int count, std::uint64_t seed) {
  tx.validate();
  rx.validate();
  if (count < 1) throw ValidationError("ensemble size must be >= 1");
  const auto nt = static_cast<Eigen::Index>(tx.values.size());
  const auto nr = static_cast<Eigen::Index>(rx.values.size());
  Eigen::VectorXd st(nt), sr(nr);
  for (Eigen::Index i = 0; i < nt; ++i) st(i) = std::sqrt(tx.values[i]);
  for (Eigen::Index i = 0; i < nr; ++i) sr(i) = std::sqrt(rx.values[i]);

  ChannelEnsemble ens;
  ens.seed = seed;
  ens.producer = "wavenumber";
  ens.realizations.reserve(count);
  for (int k = 0; k < count; ++k) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(k));
    Eigen::MatrixXcd ha(nr, nt);
    for (Eigen::Index r = 0; r < nr; ++r)
      for (Eigen::Index c = 0; c < nt; ++c) ha(r, c) = sr(r) * rng.cnormal() * st(c);
    ens.realizations.push_back(std::move(ha));
  }
  return ens;
}

Eigen::MatrixXcd assemble_spatial_channel(const Eigen::MatrixXcd& ha,
                                          const Eigen::MatrixXcd& phi_t,
                                          const Eigen::MatrixXcd& phi_r) {
  if (phi_r.cols() != ha.rows() || phi_t.cols() != ha.cols())
    throw ValidationError("assemble_spatial_channel: dimension mismatch");
  const double scale =
      std::sqrt(static_cast<double>(phi_t.rows()) * static_cast<double>(phi_r.rows()));
  return scale * (phi_r * ha * phi_t.adjoint());
}

std::vector<PathDirection> sample_multipath(int count, Rng& rng) {
  if (count < 1) throw ValidationError("multipath count must be >= 1");
  std::vector<PathDirection> dirs;
  dirs.reserve(count);
  for (int s = 0; s < count; ++s) {
    const double u = rng.uniform();
    const double theta = std::acos(1.0 - u);
    const double phi = 2.0 * M_PI * rng.uniform();
    dirs.push_back({theta, phi});
  }
  return dirs;
}

std::vector<PathDirection> sample_multipath(int count, std::uint64_t seed) {
  Rng rng(seed);
  return sample_multipath(count, rng);
}

Eigen::VectorXcd multipath_spatial_channel(const ArrayGeometry& geom,
                                           const RadiationPattern& pat,
                                           int paths, Rng& rng) {
  const auto N = static_cast<Eigen::Index>(geom.count());
  Eigen::ArrayXd xs(N), ys(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    xs(i) = geom.positions[i][0];
    ys(i) = geom.positions[i][1];
  }
  Eigen::VectorXcd h = Eigen::VectorXcd::Zero(N);
  const auto dirs = sample_multipath(paths, rng);
  for (const auto& d : dirs) {
    const double amp = std::sqrt(pat.gain_angular(d.theta, d.phi));
    const double psi = 2.0 * M_PI * rng.uniform();
    const double kx = std::sin(d.theta) * std::cos(d.phi);
    const double ky = std::sin(d.theta) * std::sin(d.phi);
    const Eigen::ArrayXd phase = 2.0 * M_PI * (kx * xs + ky * ys) + psi;
    h.array() += amp * phase.unaryExpr([](double p) {
      return std::complex<double>(std::cos(p), std::sin(p));
    });
  }
  return h / std::sqrt(static_cast<double>(paths));
}

}  // namespace wavedof
