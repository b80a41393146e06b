// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "wavedof/channel.hpp"
#include "wavedof/coupling.hpp"
#include "wavedof/errors.hpp"
#include "wavedof/grid.hpp"
#include "wavedof/pattern.hpp"
#include "wavedof/rng.hpp"

using namespace wavedof;

TEST_CASE("geometry: element count and centering") {
  const auto g = ArrayGeometry::uniform({10.0, 10.0}, 0.5);
  CHECK(g.count() == 441);  // 21 x 21
  double sx = 0.0, sy = 0.0;
  for (const auto& p : g.positions) {
    sx += p[0];
    sy += p[1];
    CHECK(std::abs(p[0]) <= 5.0 + 1e-12);
    CHECK(std::abs(p[1]) <= 5.0 + 1e-12);
  }
  CHECK(std::abs(sx) < 1e-9);
  CHECK(std::abs(sy) < 1e-9);
  CHECK(ArrayGeometry::uniform({2.0, 3.0}, 0.25).count() == 9 * 13);
}

TEST_CASE("geometry: spacing validation") {
  CHECK_THROWS_AS(ArrayGeometry::uniform({10, 10}, 0.0), ValidationError);
  CHECK_THROWS_AS(ArrayGeometry::uniform({10, 10}, -0.1), ValidationError);
  CHECK_THROWS_AS(ArrayGeometry::uniform({10, 10}, 0.6), ValidationError);
  CHECK_NOTHROW(ArrayGeometry::uniform({10, 10}, 0.5));
}

TEST_CASE("transform: shape and unit column norms") {
  const auto geom = ArrayGeometry::uniform({10.0, 10.0}, 0.5);
  const auto grid = build_grid({10.0, 10.0});
  const auto phi = transform_matrix(geom, grid);
  REQUIRE(phi.rows() == 441);
  REQUIRE(phi.cols() == 317);
  for (Eigen::Index c = 0; c < phi.cols(); ++c)
    CHECK(phi.col(c).norm() == doctest::Approx(1.0).epsilon(1e-12));
  // the element at the array center sees phase 0 for every mode
  const auto it = std::find(geom.positions.begin(), geom.positions.end(),
                            std::array<double, 2>{0.0, 0.0});
  REQUIRE(it != geom.positions.end());
  const Eigen::Index row = it - geom.positions.begin();
  for (Eigen::Index c = 0; c < phi.cols(); ++c) {
    CHECK(phi(row, c).real() == doctest::Approx(1.0 / std::sqrt(441.0)).epsilon(1e-12));
    CHECK(std::abs(phi(row, c).imag()) < 1e-12);
  }
  CHECK_THROWS_AS(transform_matrix(geom, build_grid({4.0, 4.0})), ValidationError);
}

TEST_CASE("wavenumber channel: determinism and moments") {
  const auto grid = build_grid({2.0, 2.0});
  auto spec = coupling_cos_power(grid, 1.0, 1e-9);
  const auto a = draw_wavenumber_channel(spec, spec, 4000, 42);
  const auto b = draw_wavenumber_channel(spec, spec, 4000, 42);
  REQUIRE(a.realizations.size() == 4000);
  for (int k : {0, 7, 3999})
    CHECK((a.realizations[k] - b.realizations[k]).norm() == 0.0);

  const auto n = static_cast<Eigen::Index>(grid.size());
  // E |H_a(r,c)|^2 = sigma_r^2 sigma_c^2; check a few entries plus the mean
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
  std::complex<double> mean01 = 0.0;
  for (const auto& h : a.realizations) {
    second += h.cwiseAbs2();
    mean01 += h(0, 1);
  }
  second /= static_cast<double>(a.realizations.size());
  mean01 /= static_cast<double>(a.realizations.size());
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      CHECK(second(r, c) ==
            doctest::Approx(spec.values[r] * spec.values[c]).epsilon(0.1));
  CHECK(std::abs(mean01) < 0.05 * std::sqrt(spec.values[0] * spec.values[1]) * 3);
}

TEST_CASE("wavenumber channel: different seeds decorrelate") {
  const auto grid = build_grid({1.0, 1.0});
  auto spec = coupling_cos_power(grid, 1.0, 1e-9);
  const auto a = draw_wavenumber_channel(spec, spec, 1, 1);
  const auto b = draw_wavenumber_channel(spec, spec, 1, 2);
  CHECK((a.realizations[0] - b.realizations[0]).norm() > 0.0);
}

TEST_CASE("spatial assembly: scaling and zero propagation") {
  const auto grid = build_grid({2.0, 2.0});
  const auto spec = coupling_cos_power(grid, 1.0, 1e-9);
  const auto geom = ArrayGeometry::uniform({2.0, 2.0}, 0.5);
  const auto phi = transform_matrix(geom, grid);
  const auto n = static_cast<Eigen::Index>(grid.size());

  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(n, n);
  CHECK(assemble_spatial_channel(zero, phi, phi).norm() == 0.0);

  // ||H||_F^2 = N_T N_R ||Phi_R Ha Phi_T^H||_F^2; with unitary-column Phi of
  // full mode rank the Frobenius norm of Ha passes through the isometry up to
  // the non-orthogonality of Phi columns; check the ensemble energy instead:
  // E ||H||_F^2 / (N_T N_R) should be close to E ||Ha||_F^2 for d = 1/4.
  const auto geom_f = ArrayGeometry::uniform({2.0, 2.0}, 0.25);
  const auto phi_f = transform_matrix(geom_f, grid);
  const auto ens = draw_wavenumber_channel(spec, spec, 500, 9);
  double num = 0.0, den = 0.0;
  for (const auto& ha : ens.realizations) {
    num += assemble_spatial_channel(ha, phi_f, phi_f).squaredNorm();
    den += ha.squaredNorm();
  }
  const double nt = static_cast<double>(geom_f.count());
  CHECK(num / (nt * nt) == doctest::Approx(den).epsilon(0.15));
}

TEST_CASE("multipath directions: distribution") {
  Rng rng = Rng::substream(5, 0);
  const int n = 100000;
  const auto dirs = sample_multipath(n, rng);
  double mean_cos = 0.0;
  std::vector<double> phis;
  phis.reserve(n);
  for (const auto& d : dirs) {
    CHECK(d.theta >= 0.0);
    CHECK(d.theta <= M_PI / 2 + 1e-12);
    CHECK(d.phi >= 0.0);
    CHECK(d.phi < 2 * M_PI);
    mean_cos += std::cos(d.theta);
    phis.push_back(d.phi);
  }
  mean_cos /= n;
  // E cos(theta) = 1/2 for the sin(theta)/(2 pi) density
  CHECK(mean_cos == doctest::Approx(0.5).epsilon(0.01));
  // KS statistic of phi against uniform[0, 2 pi); reject only below p ~ 1e-3
  std::sort(phis.begin(), phis.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = phis[i] / (2 * M_PI);
    ks = std::max({ks, std::abs(f - i / double(n)), std::abs(f - (i + 1) / double(n))});
  }
  CHECK(ks * std::sqrt(double(n)) < 1.95);
  CHECK_THROWS_AS(sample_multipath(0, rng), ValidationError);
}

TEST_CASE("multipath channel: single path has constant element envelope") {
  const auto geom = ArrayGeometry::uniform({4.0, 4.0}, 0.5);
  Rng rng = Rng::substream(11, 0);
  const auto h = multipath_spatial_channel(geom, RadiationPattern::hypothetical(), 1, rng);
  REQUIRE(h.size() == static_cast<Eigen::Index>(geom.count()));
  const double mag = std::abs(h(0));
  for (Eigen::Index i = 0; i < h.size(); ++i)
    CHECK(std::abs(h(i)) == doctest::Approx(mag).epsilon(1e-12));
}

TEST_CASE("multipath channel: energy matches the mean pattern gain") {
  // E |h_i|^2 = E G(theta) = 1 for hypothetical, 1/2 for cos with m = 1.
  const auto geom = ArrayGeometry::uniform({2.0, 2.0}, 0.5);
  for (auto [pat, want] :
       {std::pair{RadiationPattern::hypothetical(), 1.0},
        std::pair{RadiationPattern::cos_power(1.0), 0.5}}) {
    Rng rng = Rng::substream(17, 0);
    double acc = 0.0;
    const int iters = 8000;
    for (int i = 0; i < iters; ++i) {
      const auto h = multipath_spatial_channel(geom, pat, 20, rng);
      acc += h.squaredNorm() / static_cast<double>(h.size());
    }
    CHECK(acc / iters == doctest::Approx(want).epsilon(0.04));
  }
}

TEST_CASE("multipath channel: zero mean and stationarity in displacement") {
  const auto geom = ArrayGeometry::uniform({1.0, 1.0}, 0.25);  // 5x5 elements
  const auto at = [&](double x, double y) {
    for (std::size_t i = 0; i < geom.count(); ++i)
      if (std::abs(geom.positions[i][0] - x) < 1e-12 &&
          std::abs(geom.positions[i][1] - y) < 1e-12)
        return static_cast<Eigen::Index>(i);
    FAIL("position not found");
    return Eigen::Index{0};
  };
  // two element pairs with the same displacement (0.25, 0)
  const auto p0 = at(0.0, 0.0), p1 = at(0.25, 0.0);
  const auto q0 = at(-0.25, 0.25), q1 = at(0.0, 0.25);

  Rng rng = Rng::substream(23, 0);
  const int iters = 20000;
  Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(25);
  std::complex<double> corr_a = 0.0, corr_b = 0.0;
  for (int i = 0; i < iters; ++i) {
    const auto h = multipath_spatial_channel(geom, RadiationPattern::hypothetical(), 30, rng);
    mean += h;
    corr_a += h(p1) * std::conj(h(p0));
    corr_b += h(q1) * std::conj(h(q0));
  }
  mean /= double(iters);
  corr_a /= double(iters);
  corr_b /= double(iters);
  CHECK(mean.cwiseAbs().maxCoeff() < 0.035);
  CHECK(std::abs(corr_a - corr_b) < 0.05);
  // quarter-wavelength spacing keeps neighbors strongly correlated:
  // E e^{j pi x / 2} with x uniform on [-1, 1] is 2 / pi
  CHECK(std::abs(corr_a) == doctest::Approx(2.0 / M_PI).epsilon(0.05));
}
