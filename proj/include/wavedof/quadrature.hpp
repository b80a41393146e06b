// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wavedof/errors.hpp"

namespace wavedof {

// 15-point Gauss-Kronrod pair on [-1, 1]; the embedded 7-point Gauss rule
// supplies the error estimate.
namespace gk15 {
inline constexpr std::array<double, 15> nodes = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr std::array<double, 15> wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr std::array<double, 7> wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};
}  // namespace gk15

template <class F>
std::pair<double, double> gauss_kronrod(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0, gauss = 0.0;
  for (std::size_t i = 0; i < 15; ++i) {
    const double v = f(mid + half * gk15::nodes[i]);
    kronrod += gk15::wk[i] * v;
    if (i % 2 == 1) gauss += gk15::wg[i / 2] * v;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

/// Adaptive bisection to an absolute tolerance. Throws NumericError when the
/// interval budget runs out before the error bound is met.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          std::size_t max_intervals = 20000) {
  if (!(b > a)) return 0.0;
  struct Seg {
    double a, b, value, error;
  };
  auto [v0, e0] = gauss_kronrod(f, a, b);
  std::vector<Seg> segs{{a, b, v0, e0}};
  std::size_t splits = 0;
  while (true) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total_err += segs[i].error;
      if (segs[i].error > segs[worst].error) worst = i;
    }
    if (total_err <= abs_tol) break;
    if (++splits > max_intervals) {
      throw NumericError("adaptive quadrature failed to reach tolerance " +
                         std::to_string(abs_tol));
    }
    const Seg s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    auto [vl, el] = gauss_kronrod(f, s.a, mid);
    auto [vr, er] = gauss_kronrod(f, mid, s.b);
    segs[worst] = {s.a, mid, vl, el};
    segs.push_back({mid, s.b, vr, er});
  }
  double total = 0.0;
  for (const auto& s : segs) total += s.value;
  return total;
}

}  // namespace wavedof
