// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end: coupling spectra, EMCC estimates, EDoF and ergodic
// capacity, and element-spacing sweeps, emitted as CSV/JSON for external
// plotting.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <semaphore>
#include <sstream>
#include <string>
#include <vector>

#include "wavedof/channel.hpp"
#include "wavedof/coupling.hpp"
#include "wavedof/emcc.hpp"
#include "wavedof/errors.hpp"
#include "wavedof/grid.hpp"
#include "wavedof/io.hpp"
#include "wavedof/metrics.hpp"
#include "wavedof/pattern.hpp"

namespace {

using json = nlohmann::json;
using namespace wavedof;

Aperture parse_aperture(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos)
    throw ValidationError("aperture must be AxB in wavelengths, got '" + s + "'");
  try {
    Aperture a{std::stod(s.substr(0, x)), std::stod(s.substr(x + 1))};
    a.validate();
    return a;
  } catch (const std::invalid_argument& e) {
    throw ValidationError("bad aperture '" + s + "': " + e.what());
  }
}

RadiationPattern parse_pattern(const std::string& s) {
  if (s == "hypothetical") return RadiationPattern::hypothetical();
  if (s.rfind("cos:", 0) == 0) {
    try {
      return RadiationPattern::cos_power(std::stod(s.substr(4)));
    } catch (const std::invalid_argument&) {
      throw ValidationError("bad cos pattern '" + s + "'");
    }
  }
  if (s.rfind("file:", 0) == 0) return RadiationPattern::load(s.substr(5));
  throw ValidationError("pattern must be cos:M, hypothetical, or file:PATH, got '" + s + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

struct CommonOpts {
  std::string aperture = "10x10";
  std::string pattern = "hypothetical";
  double tol = kDefaultCouplingTol;
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
};

// ---- coupling ----

void run_coupling(const CommonOpts& o) {
  const Aperture ap = parse_aperture(o.aperture);
  const auto grid = build_grid(ap);
  const auto pat = parse_pattern(o.pattern);
  const CouplingSpectrum spec =
      pat.is_cos_power() ? coupling_cos_power(grid, pat.cos_exponent(), o.tol)
                         : coupling_general(grid, pat, o.tol);
  std::map<std::string, std::string> settings = {{"command", "coupling"},
                                                 {"aperture", o.aperture},
                                                 {"pattern", o.pattern},
                                                 {"tol", fmt(o.tol)}};
  if (o.format == "json") {
    write_output(o.out, spectrum_to_json(spec, settings).dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_spectrum_csv(os, spec, settings);
    write_output(o.out, os.str());
  }
}

// ---- emcc ----

void run_emcc(const CommonOpts& o, double spacing, const EmccConfig& cfg) {
  const Aperture ap = parse_aperture(o.aperture);
  const auto grid = build_grid(ap);
  const auto pat = parse_pattern(o.pattern);
  const auto geom = ArrayGeometry::uniform(ap, spacing);
  const EmccEstimate est = estimate_coupling(geom, grid, pat, cfg);
  // Quadrature reference for the comparison table.
  const CouplingSpectrum ref =
      pat.is_cos_power() ? coupling_cos_power(grid, pat.cos_exponent(), o.tol)
                         : coupling_general(grid, pat, o.tol);
  std::map<std::string, std::string> settings = {
      {"command", "emcc"},           {"aperture", o.aperture},
      {"pattern", o.pattern},        {"spacing", fmt(spacing)},
      {"paths", std::to_string(cfg.paths)},
      {"realizations", std::to_string(cfg.realizations)},
      {"seed", std::to_string(cfg.seed)},
      {"ls_regularization", fmt(cfg.ls_regularization)},
      {"normal_equations", cfg.normal_equations ? "1" : "0"},
      {"tol", fmt(o.tol)}};
  if (o.format == "json") {
    write_output(o.out,
                 spectrum_to_json(est.spectrum, settings, &est.ci_half_width, &ref)
                         .dump(2) +
                     "\n");
  } else {
    std::ostringstream os;
    write_spectrum_csv(os, est.spectrum, settings, &est.ci_half_width, &ref);
    write_output(o.out, os.str());
  }
}

// ---- metrics report ----

json metrics_report(const CouplingSpectrum& spec, double gamma,
                    std::optional<int> edof_det,
                    const std::optional<CapacityResult>& cap, double snr_db,
                    const std::map<std::string, std::string>& settings,
                    std::uint64_t seed) {
  const EdofResult e = edof_statistical(spec, spec, gamma);
  json j = {{"gamma", gamma},
            {"eta_u", e.eta_u},
            {"eta_e_tx", e.eta_e_tx},
            {"eta_e_rx", e.eta_e_rx},
            {"eta_e", e.eta_e},
            {"seed", seed},
            {"settings", settings},
            {"settings_hash", settings_hash(settings)}};
  if (edof_det) j["edof_deterministic"] = *edof_det;
  if (cap) {
    j["capacity_bits"] = cap->mean_bits;
    j["ci"] = cap->ci_half_width;
    j["snr_db"] = snr_db;
    j["trials"] = cap->trials;
  }
  return j;
}

int deterministic_edof(const Aperture& ap, const CouplingSpectrum& spec,
                       double spacing, double gamma, int realizations,
                       std::uint64_t seed) {
  const auto geom = ArrayGeometry::uniform(ap, spacing);
  const auto grid = spec.grid;
  const auto phi = transform_matrix(geom, grid);
  auto ens = draw_wavenumber_channel(spec, spec, realizations, seed);
  std::vector<Eigen::MatrixXcd> spatial;
  spatial.reserve(ens.realizations.size());
  for (const auto& ha : ens.realizations)
    spatial.push_back(assemble_spatial_channel(ha, phi, phi));
  return edof_deterministic(spatial, gamma);
}

void run_edof(const CommonOpts& o, double gamma, double spacing, int det_realizations) {
  const Aperture ap = parse_aperture(o.aperture);
  const auto grid = build_grid(ap);
  const auto pat = parse_pattern(o.pattern);
  const CouplingSpectrum spec =
      pat.is_cos_power() ? coupling_cos_power(grid, pat.cos_exponent(), o.tol)
                         : coupling_general(grid, pat, o.tol);
  std::map<std::string, std::string> settings = {
      {"command", "edof"},     {"aperture", o.aperture}, {"pattern", o.pattern},
      {"gamma", fmt(gamma)},   {"tol", fmt(o.tol)},      {"seed", std::to_string(o.seed)},
      {"spacing", fmt(spacing)},
      {"det_realizations", std::to_string(det_realizations)}};
  std::optional<int> det;
  if (det_realizations > 0)
    det = deterministic_edof(ap, spec, spacing, gamma, det_realizations, o.seed);
  write_output(o.out,
               metrics_report(spec, gamma, det, std::nullopt, 0.0, settings, o.seed)
                       .dump(2) +
                   "\n");
}

void run_capacity(const CommonOpts& o, double gamma, double spacing,
                  const std::vector<double>& snr_db, int trials) {
  const Aperture ap = parse_aperture(o.aperture);
  const auto grid = build_grid(ap);
  const auto pat = parse_pattern(o.pattern);
  const CouplingSpectrum spec =
      pat.is_cos_power() ? coupling_cos_power(grid, pat.cos_exponent(), o.tol)
                         : coupling_general(grid, pat, o.tol);
  const auto geom = ArrayGeometry::uniform(ap, spacing);
  const int n_elems = static_cast<int>(geom.count());
  json reports = json::array();
  for (double db : snr_db) {
    const double snr = std::pow(10.0, db / 10.0);
    const CapacityResult cap =
        ergodic_capacity(spec, spec, n_elems, n_elems, snr, trials, o.seed);
    std::map<std::string, std::string> settings = {
        {"command", "capacity"}, {"aperture", o.aperture}, {"pattern", o.pattern},
        {"gamma", fmt(gamma)},   {"spacing", fmt(spacing)}, {"snr_db", fmt(db)},
        {"trials", std::to_string(trials)}, {"seed", std::to_string(o.seed)},
        {"tol", fmt(o.tol)}};
    reports.push_back(metrics_report(spec, gamma, std::nullopt, cap, db, settings, o.seed));
  }
  write_output(o.out, (reports.size() == 1 ? reports[0] : reports).dump(2) + "\n");
}

// ---- sweep ----

struct SweepRow {
  double spacing, snr_db;
  std::string pattern;
  EdofResult edof;
  std::optional<int> edof_det;
  CapacityResult cap;
  int n_elems = 0;
  std::size_t n_modes = 0;
};

void run_sweep(const CommonOpts& o, double gamma, std::vector<double> spacings,
               std::vector<std::string> patterns, const std::vector<double>& snr_db,
               int trials, int det_realizations, int workers) {
  const Aperture ap = parse_aperture(o.aperture);
  if (spacings.empty()) throw ValidationError("sweep: need at least one spacing");
  for (double d : spacings)
    if (!(d > 0.0) || d > 0.5)
      throw ValidationError("sweep: spacing " + fmt(d) +
                            " out of range; 0 < d <= 0.5 required");
  if (patterns.size() == 1) patterns.assign(spacings.size(), patterns.front());
  if (patterns.size() != spacings.size())
    throw ValidationError("sweep: give one pattern, or one per spacing value");
  if (workers < 1) throw ValidationError("sweep: workers must be >= 1");

  const auto grid = build_grid(ap);
  std::vector<SweepRow> rows(spacings.size() * snr_db.size());
  std::counting_semaphore<> slots(workers);
  std::vector<std::future<void>> jobs;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      slots.acquire();
      try {
        const double d = spacings[i];
        const auto pat = parse_pattern(patterns[i]);
        const CouplingSpectrum spec =
            pat.is_cos_power() ? coupling_cos_power(grid, pat.cos_exponent(), o.tol)
                               : coupling_general(grid, pat, o.tol);
        const auto geom = ArrayGeometry::uniform(ap, d);
        const EdofResult e = edof_statistical(spec, spec, gamma);
        std::optional<int> det;
        if (det_realizations > 0)
          det = deterministic_edof(ap, spec, d, gamma, det_realizations, o.seed);
        for (std::size_t s = 0; s < snr_db.size(); ++s) {
          SweepRow& row = rows[i * snr_db.size() + s];
          row.spacing = d;
          row.snr_db = snr_db[s];
          row.pattern = patterns[i];
          row.edof = e;
          row.edof_det = det;
          row.n_elems = static_cast<int>(geom.count());
          row.n_modes = grid.size();
          row.cap = ergodic_capacity(spec, spec, row.n_elems, row.n_elems,
                                     std::pow(10.0, snr_db[s] / 10.0), trials, o.seed);
        }
      } catch (...) {
        slots.release();
        throw;
      }
      slots.release();
    }));
  }
  for (auto& j : jobs) j.get();

  std::map<std::string, std::string> settings = {
      {"command", "sweep"},   {"aperture", o.aperture},
      {"gamma", fmt(gamma)},  {"trials", std::to_string(trials)},
      {"seed", std::to_string(o.seed)}, {"tol", fmt(o.tol)},
      {"det_realizations", std::to_string(det_realizations)}};
  for (std::size_t i = 0; i < patterns.size(); ++i)
    settings["pattern." + std::to_string(i)] = patterns[i];
  for (std::size_t i = 0; i < spacings.size(); ++i)
    settings["spacing." + std::to_string(i)] = fmt(spacings[i]);

  if (o.format == "json") {
    json j;
    j["settings"] = settings;
    j["settings_hash"] = settings_hash(settings);
    j["rows"] = json::array();
    for (const auto& r : rows) {
      json row = {{"spacing", r.spacing},     {"pattern", r.pattern},
                  {"snr_db", r.snr_db},       {"gamma", gamma},
                  {"n_modes", r.n_modes},     {"elements", r.n_elems},
                  {"eta_u", r.edof.eta_u},    {"eta_e_tx", r.edof.eta_e_tx},
                  {"eta_e_rx", r.edof.eta_e_rx}, {"eta_e", r.edof.eta_e},
                  {"capacity_bits", r.cap.mean_bits},
                  {"ci_half_width", r.cap.ci_half_width},
                  {"trials", r.cap.trials},   {"seed", o.seed}};
      if (r.edof_det) row["edof_deterministic"] = *r.edof_det;
      j["rows"].push_back(std::move(row));
    }
    write_output(o.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& [k, v] : settings) os << "# " << k << "=" << v << "\n";
    os << "# settings_hash=" << settings_hash(settings) << "\n";
    os << "spacing,pattern,snr_db,gamma,n_modes,elements,eta_u,eta_e_tx,eta_e_rx,"
          "eta_e,edof_deterministic,capacity_bits,ci_half_width,trials,seed\n";
    os.precision(17);
    for (const auto& r : rows) {
      os << r.spacing << "," << r.pattern << "," << r.snr_db << "," << gamma << ","
         << r.n_modes << "," << r.n_elems << "," << r.edof.eta_u << ","
         << r.edof.eta_e_tx << "," << r.edof.eta_e_rx << "," << r.edof.eta_e << ",";
      if (r.edof_det) os << *r.edof_det;
      os << "," << r.cap.mean_bits << "," << r.cap.ci_half_width << ","
         << r.cap.trials << "," << o.seed << "\n";
    }
    write_output(o.out, os.str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavenumber-domain coupling, EDoF, and capacity analysis for "
               "XL-MIMO planar arrays"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Declarative config file (INI sections; flags override)");

  CommonOpts o;
  double gamma = 0.95;
  double spacing = 0.5;
  std::vector<double> spacings;
  std::vector<std::string> patterns;
  std::vector<double> snr_db = {10.0};
  int trials = 500;
  int det_realizations = 0;
  int sweep_det_realizations = 100;
  int workers = 1;
  EmccConfig emcc_cfg;

  auto add_common = [&](CLI::App* cmd, bool with_pattern = true) {
    cmd->add_option("--aperture", o.aperture, "Aperture AxB in wavelengths");
    if (with_pattern)
      cmd->add_option("--pattern", patterns, "cos:M | hypothetical | file:PATH")
          ->delimiter(',');
    cmd->add_option("--tol", o.tol, "Per-cell quadrature tolerance");
    cmd->add_option("--out", o.out, "Output path ('-' for stdout)");
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "RNG seed");
  };

  auto* c_coupling = app.add_subcommand("coupling", "Quadrature coupling spectrum");
  add_common(c_coupling);

  auto* c_emcc = app.add_subcommand("emcc", "Simulation-based coupling estimate vs quadrature");
  add_common(c_emcc);
  c_emcc->add_option("--spacing", spacing, "Element spacing d in wavelengths");
  c_emcc->add_option("--paths", emcc_cfg.paths, "Multipaths S per realization");
  c_emcc->add_option("--realizations", emcc_cfg.realizations, "Realization count I");
  c_emcc->add_option("--ls-reg", emcc_cfg.ls_regularization, "Ridge regularization");
  c_emcc->add_flag("--normal-equations", emcc_cfg.normal_equations,
                   "Use the explicit normal-equations route");

  auto* c_edof = app.add_subcommand("edof", "Statistical (and optional deterministic) EDoF");
  add_common(c_edof);
  c_edof->add_option("--gamma", gamma, "Dominant-energy threshold in (0,1)");
  c_edof->add_option("--spacing", spacing, "Element spacing (deterministic EDoF)");
  c_edof->add_option("--det-realizations", det_realizations,
                     "SVD ensemble size for deterministic EDoF (0 = skip)");

  auto* c_cap = app.add_subcommand("capacity", "Monte-Carlo ergodic capacity");
  add_common(c_cap);
  c_cap->add_option("--gamma", gamma, "Dominant-energy threshold in (0,1)");
  c_cap->add_option("--spacing", spacing, "Element spacing d");
  c_cap->add_option("--snr-db", snr_db, "SNR list in dB")->delimiter(',');
  c_cap->add_option("--trials", trials, "Monte-Carlo trials");

  auto* c_sweep = app.add_subcommand("sweep", "Long-format sweep over spacing and SNR");
  add_common(c_sweep);
  c_sweep->add_option("--spacing", spacings, "Spacing list d[,d...]")->delimiter(',');
  c_sweep->add_option("--gamma", gamma, "Dominant-energy threshold in (0,1)");
  c_sweep->add_option("--snr-db", snr_db, "SNR list in dB")->delimiter(',');
  c_sweep->add_option("--trials", trials, "Monte-Carlo trials");
  c_sweep->add_option("--det-realizations", sweep_det_realizations,
                      "Ensemble size for deterministic EDoF (0 = skip)");
  c_sweep->add_option("--workers", workers, "Concurrent sweep points");

  CLI11_PARSE(app, argc, argv);

  auto pattern_single = [&]() -> std::string {
    if (patterns.empty()) return "hypothetical";
    if (patterns.size() > 1)
      throw ValidationError("this subcommand takes a single --pattern");
    return patterns.front();
  };

  try {
    if (c_coupling->parsed()) {
      o.pattern = pattern_single();
      run_coupling(o);
    } else if (c_emcc->parsed()) {
      o.pattern = pattern_single();
      emcc_cfg.seed = o.seed;
      run_emcc(o, spacing, emcc_cfg);
    } else if (c_edof->parsed()) {
      o.pattern = pattern_single();
      run_edof(o, gamma, spacing, det_realizations);
    } else if (c_cap->parsed()) {
      o.pattern = pattern_single();
      run_capacity(o, gamma, spacing, snr_db, trials);
    } else if (c_sweep->parsed()) {
      if (patterns.empty()) patterns = {"hypothetical"};
      run_sweep(o, gamma, spacings, patterns, snr_db, trials,
                sweep_det_realizations, workers);
    }
  } catch (const ValidationError& e) {
    std::cerr << json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << json{{"error", {{"type", "numeric"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << json{{"error", {{"type", "io"}, {"message", e.what()}}}}.dump() << "\n";
    return 4;
  }
  return 0;
}
