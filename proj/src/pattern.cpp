// SPDX-License-Identifier: Apache-2.0
#include "wavedof/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "wavedof/errors.hpp"

namespace wavedof {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

bool near(double a, double b, double eps = 1e-9) { return std::abs(a - b) <= eps; }

}  // namespace

RadiationPattern RadiationPattern::cos_power(double m) {
  if (!(m >= 0.0)) throw ValidationError("cos_power exponent must be >= 0");
  RadiationPattern p;
  p.kind_ = Kind::CosPower;
  p.m_ = m;
  std::ostringstream d;
  d << "cos:" << m;
  p.descriptor_ = d.str();
  return p;
}

RadiationPattern RadiationPattern::hypothetical() {
  RadiationPattern p;
  p.kind_ = Kind::Hypothetical;
  p.descriptor_ = "hypothetical";
  return p;
}

RadiationPattern RadiationPattern::tabulated(std::vector<double> theta_deg,
                                             std::vector<double> phi_deg,
                                             std::vector<double> gain) {
  if (theta_deg.size() < 2 || phi_deg.size() < 2)
    throw ValidationError("tabulated pattern needs at least a 2x2 grid");
  if (gain.size() != theta_deg.size() * phi_deg.size())
    throw ValidationError("tabulated pattern gain count does not match grid");
  if (!near(theta_deg.front(), 0.0, 1e-6) || !near(theta_deg.back(), 90.0, 1e-6))
    throw ValidationError("tabulated pattern must cover theta from 0 to 90 deg");
  for (double g : gain)
    if (!(g >= 0.0) || !std::isfinite(g))
      throw ValidationError("tabulated pattern gains must be finite and >= 0");
  RadiationPattern p;
  p.kind_ = Kind::Tabulated;
  p.theta_deg_ = std::move(theta_deg);
  p.phi_deg_ = std::move(phi_deg);
  p.gain_ = std::move(gain);
  p.descriptor_ = "tabulated";
  return p;
}

RadiationPattern RadiationPattern::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pattern file: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ValidationError("pattern file is empty: " + path.string());
  auto header = split_csv(line);
  bool db = false;
  if (header == std::vector<std::string>{"theta_deg", "phi_deg", "gain"}) {
    db = false;
  } else if (header == std::vector<std::string>{"theta_deg", "phi_deg", "gain_db"}) {
    db = true;
  } else {
    throw ValidationError("pattern file " + path.string() +
                          " line 1: header must be theta_deg,phi_deg,gain or "
                          "theta_deg,phi_deg,gain_db");
  }

  std::map<std::pair<long long, long long>, double> samples;
  std::vector<double> thetas, phis;
  auto key_of = [](double deg) { return std::llround(deg * 1e6); };
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 3)
      throw ValidationError("pattern file " + path.string() + " line " +
                            std::to_string(lineno) + ": expected 3 fields");
    double th, ph, g;
    try {
      th = std::stod(fields[0]);
      ph = std::stod(fields[1]);
      g = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ValidationError("pattern file " + path.string() + " line " +
                            std::to_string(lineno) + ": malformed number");
    }
    if (db) g = std::pow(10.0, g / 10.0);
    if (!(g >= 0.0) || !std::isfinite(g))
      throw ValidationError("pattern file " + path.string() + " line " +
                            std::to_string(lineno) + ": gain must be finite and >= 0");
    if (th < -1e-9 || th > 90.0 + 1e-9 || ph < -1e-9 || ph > 360.0 + 1e-9)
      throw ValidationError("pattern file " + path.string() + " line " +
                            std::to_string(lineno) + ": angle out of range");
    auto k = std::make_pair(key_of(th), key_of(ph));
    if (!samples.emplace(k, g).second)
      throw ValidationError("pattern file " + path.string() + " line " +
                            std::to_string(lineno) + ": duplicate grid point");
    thetas.push_back(th);
    phis.push_back(ph);
  }
  if (samples.empty()) throw ValidationError("pattern file has no data rows: " + path.string());

  auto uniq = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return near(a, b, 1e-6); }),
            v.end());
    return v;
  };
  std::vector<double> tg = uniq(thetas);
  std::vector<double> pg = uniq(phis);

  if (!near(tg.front(), 0.0, 1e-6) || !near(tg.back(), 90.0, 1e-6))
    throw ValidationError("pattern file " + path.string() +
                          ": hemisphere not covered (theta must span 0..90 deg, got " +
                          std::to_string(tg.front()) + ".." + std::to_string(tg.back()) + ")");

  // A trailing phi = 360 column duplicates phi = 0; validate and drop it.
  bool has_wrap_col = near(pg.back(), 360.0, 1e-6);
  std::vector<double> pg_eff = pg;
  if (has_wrap_col) pg_eff.pop_back();
  if (pg_eff.empty() || !near(pg_eff.front(), 0.0, 1e-6))
    throw ValidationError("pattern file " + path.string() + ": phi grid must start at 0");

  auto check_uniform = [&](const std::vector<double>& v, const char* name) {
    const double step = v[1] - v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!near(v[i] - v[i - 1], step, 1e-6))
        throw ValidationError("pattern file " + path.string() + ": irregular " +
                              name + " grid spacing");
    return step;
  };
  check_uniform(tg, "theta");
  const double pstep = pg_eff.size() > 1 ? check_uniform(pg_eff, "phi") : 360.0;
  if (!near(pg_eff.back() + pstep, 360.0, 1e-6))
    throw ValidationError("pattern file " + path.string() +
                          ": phi grid must cover the full circle");

  std::vector<double> gains(tg.size() * pg_eff.size());
  for (std::size_t i = 0; i < tg.size(); ++i) {
    for (std::size_t j = 0; j < pg_eff.size(); ++j) {
      auto it = samples.find({key_of(tg[i]), key_of(pg_eff[j])});
      if (it == samples.end())
        throw ValidationError("pattern file " + path.string() +
                              ": incomplete grid, missing theta=" + std::to_string(tg[i]) +
                              " phi=" + std::to_string(pg_eff[j]));
      gains[i * pg_eff.size() + j] = it->second;
    }
    if (has_wrap_col) {
      auto it = samples.find({key_of(tg[i]), key_of(360.0)});
      if (it == samples.end())
        throw ValidationError("pattern file " + path.string() +
                              ": incomplete grid at phi=360, theta=" + std::to_string(tg[i]));
    }
  }

  auto p = tabulated(std::move(tg), std::move(pg_eff), std::move(gains));
  p.descriptor_ = "file:" + path.string();
  return p;
}

double RadiationPattern::interpolate(double theta_deg, double phi_deg) const {
  theta_deg = std::clamp(theta_deg, theta_deg_.front(), theta_deg_.back());
  phi_deg = std::fmod(phi_deg, 360.0);
  if (phi_deg < 0.0) phi_deg += 360.0;

  const std::size_t nphi = phi_deg_.size();
  const double tstep = (theta_deg_.back() - theta_deg_.front()) / (theta_deg_.size() - 1);
  const double pstep = 360.0 / static_cast<double>(nphi);

  double tf = (theta_deg - theta_deg_.front()) / tstep;
  std::size_t ti = std::min(static_cast<std::size_t>(tf), theta_deg_.size() - 2);
  const double ta = tf - ti;

  double pf = phi_deg / pstep;
  std::size_t pi = std::min(static_cast<std::size_t>(pf), nphi - 1);
  const double pa = pf - pi;
  const std::size_t pj = (pi + 1) % nphi;  // phi wraparound

  const double g00 = gain_[ti * nphi + pi];
  const double g01 = gain_[ti * nphi + pj];
  const double g10 = gain_[(ti + 1) * nphi + pi];
  const double g11 = gain_[(ti + 1) * nphi + pj];
  return (1 - ta) * ((1 - pa) * g00 + pa * g01) + ta * ((1 - pa) * g10 + pa * g11);
}

double RadiationPattern::gain_angular(double theta, double phi) const {
  switch (kind_) {
    case Kind::CosPower:
      if (theta > M_PI / 2 || theta < 0.0) return 0.0;
      return m_ == 0.0 ? 1.0 : std::pow(std::cos(theta), m_);
    case Kind::Hypothetical:
      return (theta >= 0.0 && theta <= M_PI / 2) ? 1.0 : 0.0;
    case Kind::Tabulated: {
      const double td = theta * 180.0 / M_PI;
      if (td < -1e-9 || td > 90.0 + 1e-9)
        throw ValidationError("tabulated pattern query outside hemisphere coverage");
      return interpolate(td, phi * 180.0 / M_PI);
    }
  }
  return 0.0;
}

double RadiationPattern::gain_wavenumber(double kx, double ky) const {
  const double r2 = kx * kx + ky * ky;
  if (r2 > 1.0 + 1e-12)
    throw ValidationError("wavenumber point outside the unit disk");
  if (kind_ == Kind::CosPower) {
    const double base = std::max(0.0, 1.0 - r2);
    return m_ == 0.0 ? 1.0 : std::pow(base, 0.5 * m_);
  }
  if (kind_ == Kind::Hypothetical) return 1.0;
  const double r = std::min(1.0, std::sqrt(r2));
  return gain_angular(std::asin(r), std::atan2(ky, kx));
}

}  // namespace wavedof
