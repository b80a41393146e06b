// SPDX-License-Identifier: Apache-2.0
#include "wavedof/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <iomanip>

#include "wavedof/errors.hpp"

namespace wavedof {

std::string settings_hash(const std::map<std::string, std::string>& settings) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
  };
  for (const auto& [k, v] : settings) {
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

namespace {

void write_settings_comments(std::ostream& out,
                             const std::map<std::string, std::string>& settings) {
  for (const auto& [k, v] : settings) out << "# " << k << "=" << v << "\n";
  out << "# settings_hash=" << settings_hash(settings) << "\n";
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const CouplingSpectrum& spec,
                        const std::map<std::string, std::string>& settings,
                        const std::vector<double>* ci_half_width,
                        const CouplingSpectrum* reference) {
  spec.validate();
  if (ci_half_width && ci_half_width->size() != spec.values.size())
    throw ValidationError("spectrum CSV: ci column length mismatch");
  if (reference && reference->values.size() != spec.values.size())
    throw ValidationError("spectrum CSV: reference spectrum length mismatch");

  write_settings_comments(out, settings);
  out << "m_x,m_y,sigma_sq";
  if (ci_half_width) out << ",ci_half_width";
  if (reference) out << ",ref_sigma_sq,rel_err";
  out << "\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    out << spec.grid.indices[i][0] << "," << spec.grid.indices[i][1] << ","
        << spec.values[i];
    if (ci_half_width) out << "," << (*ci_half_width)[i];
    if (reference) {
      const double ref = reference->values[i];
      const double rel = ref != 0.0 ? std::abs(spec.values[i] - ref) / ref
                                    : std::abs(spec.values[i]);
      out << "," << ref << "," << rel;
    }
    out << "\n";
  }
}

nlohmann::json spectrum_to_json(const CouplingSpectrum& spec,
                                const std::map<std::string, std::string>& settings,
                                const std::vector<double>* ci_half_width,
                                const CouplingSpectrum* reference) {
  spec.validate();
  nlohmann::json j;
  j["grid"] = {{"len_x", spec.grid.aperture.len_x},
               {"len_y", spec.grid.aperture.len_y},
               {"n", spec.grid.size()}};
  j["pattern"] = spec.pattern;
  if (spec.tol > 0.0) j["tol"] = spec.tol;
  j["settings"] = settings;
  j["settings_hash"] = settings_hash(settings);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    nlohmann::json row = {{"m_x", spec.grid.indices[i][0]},
                          {"m_y", spec.grid.indices[i][1]},
                          {"sigma_sq", spec.values[i]}};
    if (ci_half_width) row["ci_half_width"] = (*ci_half_width)[i];
    if (reference) {
      const double ref = reference->values[i];
      row["ref_sigma_sq"] = ref;
      row["rel_err"] = ref != 0.0 ? std::abs(spec.values[i] - ref) / ref
                                  : std::abs(spec.values[i]);
    }
    rows.push_back(std::move(row));
  }
  j["values"] = std::move(rows);
  return j;
}

}  // namespace wavedof
