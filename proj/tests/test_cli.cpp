#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int status = -1;
  std::string output;  // stdout + stderr
};

CmdResult run_cmd(const std::string& args) {
  const std::string cmd = std::string(SRSIM_BINARY) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe))
    r.output.append(buf, n);
  r.status = pclose(pipe);
  return r;
}

fs::path temp_dir() {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("srsim_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kQuickRun = R"({
  "name": "quick",
  "mode": "twobody",
  "j_twice": 1,
  "C": 10,
  "rho_size": 10,
  "t_end": 1.0,
  "n_out": 20
})";

}  // namespace

TEST_CASE("presets list and show") {
  const auto list = run_cmd("presets list");
  CHECK(list.status == 0);
  CHECK(list.output.find("fig3a") != std::string::npos);
  CHECK(list.output.find("lics") != std::string::npos);

  const auto show = run_cmd("presets show fig3a");
  CHECK(show.status == 0);
  CHECK(show.output.find("\"kind\"") != std::string::npos);

  CHECK(run_cmd("presets show nope").status != 0);
}

TEST_CASE("run produces deterministic summary and series") {
  const fs::path dir = temp_dir();
  write(dir / "s.json", kQuickRun);
  const std::string args =
      "run --config " + (dir / "s.json").string() + " --out ";

  CHECK(run_cmd(args + (dir / "a").string()).status == 0);
  CHECK(run_cmd(args + (dir / "b").string()).status == 0);
  CHECK(slurp(dir / "a/quick_summary.json") ==
        slurp(dir / "b/quick_summary.json"));
  CHECK(slurp(dir / "a/quick_series.csv") == slurp(dir / "b/quick_series.csv"));

  const std::string csv = slurp(dir / "a/quick_series.csv");
  CHECK(csv.rfind("t,I_em,Gamma,Gamma_bar,A,V,Y\n", 0) == 0);
  const std::string summary = slurp(dir / "a/quick_summary.json");
  CHECK(summary.find("scenario_hash") != std::string::npos);
  CHECK(summary.find("version") != std::string::npos);
}

TEST_CASE("malformed config exits nonzero naming the field") {
  const fs::path dir = temp_dir();
  write(dir / "bad.json", R"({"mode": "twobody", "C": -3})");
  const auto r =
      run_cmd("run --config " + (dir / "bad.json").string() + " --out " +
              dir.string());
  CHECK(r.status != 0);
  CHECK(r.output.find("C") != std::string::npos);

  write(dir / "notjson.json", "{{{");
  CHECK(run_cmd("run --config " + (dir / "notjson.json").string()).status != 0);
}

TEST_CASE("2x2 sweep produces 4 rows in documented order") {
  const fs::path dir = temp_dir();
  write(dir / "sweep.json", R"({
    "kind": "sweep",
    "name": "grid",
    "base": {"name": "g", "mode": "twobody", "j_twice": 1, "t_end": 0.5,
             "n_out": 5},
    "cells": [
      {"C": 5,  "rho_size": 5},
      {"C": 5,  "rho_size": 10},
      {"C": 10, "rho_size": 5},
      {"C": 10, "rho_size": 10}
    ]
  })");
  const auto r = run_cmd("sweep --config " + (dir / "sweep.json").string() +
                         " --out " + dir.string());
  CHECK(r.status == 0);
  const std::string csv = slurp(dir / "grid_sweep.csv");
  std::istringstream lines(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line))
    if (!line.empty()) rows.push_back(line);
  REQUIRE(rows.size() == 5);  // header + 4 cells
  CHECK(rows[0].rfind("name,C,rho_size,", 0) == 0);
  CHECK(rows[1].find("g_C=5_rho_size=5,") == 0);
  CHECK(rows[4].find("g_C=10_rho_size=10,") == 0);

  // parallel workers keep the deterministic ordering and bytes
  const fs::path dir2 = temp_dir();
  const auto r2 = run_cmd("sweep --config " + (dir / "sweep.json").string() +
                          " --workers 3 --out " + dir2.string());
  CHECK(r2.status == 0);
  CHECK(slurp(dir2 / "grid_sweep.csv") == csv);
}

TEST_CASE("empty sweep yields header-only CSV") {
  const fs::path dir = temp_dir();
  write(dir / "empty.json", R"({
    "kind": "sweep", "name": "none",
    "base": {"mode": "twobody", "j_twice": 1},
    "field": "C", "values": []
  })");
  const auto r = run_cmd("sweep --config " + (dir / "empty.json").string() +
                         " --out " + dir.string());
  CHECK(r.status == 0);
  const std::string csv = slurp(dir / "none_sweep.csv");
  CHECK(csv == "name,C,I0,peak_I,t_max,Gamma0,error\n");
}

TEST_CASE("per-cell failures land in the error column") {
  const fs::path dir = temp_dir();
  write(dir / "mixed.json", R"({
    "kind": "sweep", "name": "mixed",
    "base": {"mode": "twobody", "j_twice": 1, "t_end": 0.5, "n_out": 5},
    "field": "rho_size", "values": [10, -1]
  })");
  const auto r = run_cmd("sweep --config " + (dir / "mixed.json").string() +
                         " --out " + dir.string());
  CHECK(r.status == 0);  // sweep continues past cell failures
  const std::string csv = slurp(dir / "mixed_sweep.csv");
  CHECK(csv.find("rho_size: must be > 0") != std::string::npos);
}

TEST_CASE("fit recovers a quadratic power law") {
  const fs::path dir = temp_dir();
  write(dir / "points.csv", "C,Delta_m\n5,75\n7,147\n10,300\n20,1200\n");
  const auto r = run_cmd("fit --config " + (dir / "points.csv").string());
  CHECK(r.status == 0);
  const auto pos = r.output.find("\"exponent\":");
  REQUIRE(pos != std::string::npos);
  const double exponent = std::stod(r.output.substr(pos + 11));
  CHECK(exponent == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("SRSIM_OUT_DIR provides the default output directory") {
  const fs::path dir = temp_dir();
  write(dir / "s.json", kQuickRun);
  const std::string cmd = "SRSIM_OUT_DIR=" + (dir / "env_out").string() + " " +
                          std::string(SRSIM_BINARY) + " run --config " +
                          (dir / "s.json").string() + " 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "env_out/quick_summary.json"));
}
