// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("WAVEDOF_CLI");
  REQUIRE_MESSAGE(p != nullptr, "WAVEDOF_CLI must point at the CLI binary");
  return p;
}

struct RunResult {
  int exit_code;
  std::string output;  // combined stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("cli: coupling CSV output") {
  const auto out = tmp("wavedof_cli_coupling.csv");
  const auto r = run("coupling --aperture 10x10 --pattern cos:1 --out " + out.string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const std::string text = slurp(out);
  CHECK(text.find("# aperture=10x10") != std::string::npos);
  CHECK(text.find("# settings_hash=") != std::string::npos);
  const auto rows = csv_rows(text);
  REQUIRE(rows.size() == 318);  // header + 317 modes
  CHECK(rows[0] == std::vector<std::string>{"m_x", "m_y", "sigma_sq"});
  // interior value 1 / (200 pi)
  bool found = false;
  for (const auto& row : rows)
    if (row.size() == 3 && row[0] == "0" && row[1] == "0") {
      CHECK(std::stod(row[2]) == doctest::Approx(1.0 / (200.0 * M_PI)).epsilon(1e-8));
      found = true;
    }
  CHECK(found);
  std::filesystem::remove(out);
}

TEST_CASE("cli: identical settings give byte-identical output") {
  const auto o1 = tmp("wavedof_cli_det1.csv"), o2 = tmp("wavedof_cli_det2.csv");
  REQUIRE(run("coupling --aperture 3x3 --pattern cos:2 --out " + o1.string()).exit_code == 0);
  REQUIRE(run("coupling --aperture 3x3 --pattern cos:2 --out " + o2.string()).exit_code == 0);
  CHECK(slurp(o1) == slurp(o2));
  std::filesystem::remove(o1);
  std::filesystem::remove(o2);
}

TEST_CASE("cli: JSON format") {
  const auto r = run("coupling --aperture 1x1 --pattern hypothetical --format json");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const auto j = json::parse(r.output);
  CHECK(j.at("grid").at("n") == 5);
  CHECK(j.at("values").size() == 5);
  CHECK(j.at("pattern") == "hypothetical");
}

TEST_CASE("cli: validation errors exit 2 with a JSON report") {
  for (const std::string args : {
           std::string("coupling --aperture 0x10"),
           std::string("coupling --aperture banana"),
           std::string("coupling --aperture 2x2 --pattern cos:-1"),
           std::string("emcc --aperture 2x2 --spacing 0.7"),
           std::string("emcc --aperture 2x2 --spacing 0.4 --realizations 1"),
           std::string("sweep --spacing 0.6 --aperture 2x2"),
           std::string("edof --aperture 2x2 --gamma 1.5"),
       }) {
    const auto r = run(args);
    const std::string context = args + " -> " + r.output;
    CHECK_MESSAGE(r.exit_code == 2, context);
    const auto j = json::parse(r.output, nullptr, false);
    REQUIRE_MESSAGE(!j.is_discarded(), r.output);
    CHECK(j.at("error").at("type") == "validation");
    CHECK(j.at("error").at("message").is_string());
  }
}

TEST_CASE("cli: missing pattern file exits 4") {
  const auto r = run("coupling --aperture 2x2 --pattern file:/does/not/exist.csv");
  CHECK(r.exit_code == 4);
  const auto j = json::parse(r.output);
  CHECK(j.at("error").at("type") == "io");
}

TEST_CASE("cli: emcc comparison table") {
  const auto r = run("emcc --aperture 2x2 --spacing 0.45 --pattern hypothetical"
                     " --paths 50 --realizations 100 --seed 1 --format json");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const auto j = json::parse(r.output);
  REQUIRE(j.at("values").size() == 13);
  for (const auto& row : j.at("values")) {
    CHECK(row.contains("sigma_sq"));
    CHECK(row.contains("ci_half_width"));
    CHECK(row.contains("ref_sigma_sq"));
    CHECK(row.contains("rel_err"));
  }
}

TEST_CASE("cli: edof report") {
  const auto r = run("edof --aperture 10x10 --pattern hypothetical --gamma 0.95");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const auto j = json::parse(r.output);
  CHECK(j.at("eta_u") == 314);
  CHECK(j.at("gamma") == 0.95);
  CHECK(j.at("eta_e") == j.at("eta_e_tx"));
  CHECK(j.at("eta_e").get<int>() >= 1);
  CHECK(j.at("eta_e").get<int>() <= 317);
  CHECK(j.contains("settings_hash"));
}

TEST_CASE("cli: capacity report") {
  const auto r = run("capacity --aperture 2x2 --pattern cos:1 --spacing 0.5"
                     " --snr-db 10 --trials 50 --seed 3");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const auto j = json::parse(r.output);
  CHECK(j.at("capacity_bits").get<double>() > 0.0);
  CHECK(j.at("ci").get<double>() > 0.0);
  CHECK(j.at("snr_db") == 10.0);
  CHECK(j.at("trials") == 50);
}

TEST_CASE("cli: sweep long-format CSV, ordering, and capacity trend") {
  const auto out = tmp("wavedof_cli_sweep.csv");
  const auto r = run("sweep --aperture 2x2 --pattern hypothetical"
                     " --spacing 0.5,0.25,0.125 --snr-db 0,10 --trials 100"
                     " --seed 7 --workers 2 --out " + out.string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const auto rows = csv_rows(slurp(out));
  REQUIRE(rows.size() == 7);  // header + 3 spacings x 2 SNRs
  REQUIRE(rows[0][0] == "spacing");
  // deterministic row order: spacing values in the order given, SNR inner
  CHECK(std::stod(rows[1][0]) == 0.5);
  CHECK(std::stod(rows[2][0]) == 0.5);
  CHECK(std::stod(rows[3][0]) == 0.25);
  CHECK(std::stod(rows[5][0]) == 0.125);
  CHECK(std::stod(rows[1][2]) == 0.0);
  CHECK(std::stod(rows[2][2]) == 10.0);
  // capacity at 10 dB grows as the array densifies
  const double c_05 = std::stod(rows[2][11]);
  const double c_0125 = std::stod(rows[6][11]);
  CHECK(c_0125 > c_05);
  // eta_e is a pure aperture/pattern property, constant across spacing
  CHECK(rows[1][9] == rows[3][9]);
  CHECK(rows[1][9] == rows[5][9]);
  // deterministic EDoF rides along by default
  CHECK(std::stoi(rows[1][10]) >= 1);

  // rerun is byte-identical
  const auto out2 = tmp("wavedof_cli_sweep2.csv");
  const auto r2 = run("sweep --aperture 2x2 --pattern hypothetical"
                      " --spacing 0.5,0.25,0.125 --snr-db 0,10 --trials 100"
                      " --seed 7 --workers 2 --out " + out2.string());
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(out) == slurp(out2));
  std::filesystem::remove(out);
  std::filesystem::remove(out2);
}

TEST_CASE("cli: config file supplies defaults") {
  const auto cfg = tmp("wavedof_cli.ini");
  {
    std::ofstream f(cfg);
    f << "[coupling]\naperture=1x1\npattern=cos:2\nformat=json\n";
  }
  const auto r = run("--config " + cfg.string() + " coupling");
  REQUIRE_MESSAGE(r.exit_code == 0, r.output);
  const auto j = json::parse(r.output);
  CHECK(j.at("grid").at("n") == 5);
  CHECK(j.at("pattern") == "cos:2");
  std::filesystem::remove(cfg);
}
