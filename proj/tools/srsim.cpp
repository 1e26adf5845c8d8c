// srsim: multi-level superradiance simulator CLI.
//
// Subcommands: run, sweep, marginal-width, fit, presets.
// Configs are JSON job documents; see README.md for the schema. All outputs
// are deterministic: summary JSON and CSV files are bit-identical across
// repeated runs (wall times go to stderr only).

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sr/doppler.hpp"
#include "sr/halfint.hpp"
#include "sr/runner.hpp"
#include "sr/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

fs::path default_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("SRSIM_OUT_DIR")) return env;
  return ".";
}

void apply_tol_override(sr::Scenario& s, double tol) {
  if (tol > 0) {
    s.integrator.rel_tol = tol;
    s.integrator.abs_tol = tol * 1e-3;
  }
}

std::string sanitize(std::string name) {
  for (char& c : name)
    if (c == '/' || c == ' ') c = '_';
  return name;
}

json job_from_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw std::runtime_error("config: top level must be an object");
  // A bare scenario (no "kind") is treated as {"kind": "run", "scenario": it}.
  if (!doc.contains("kind")) doc = json{{"kind", "run"}, {"scenario", doc}};
  return doc;
}

sr::Scenario scenario_from_doc(const json& doc) {
  return sr::scenario_from_text(doc.dump());
}

// ---- output writers ---------------------------------------------------

struct RunArtifacts {
  json summary;
  std::string series_csv;
};

json diagnostics_json(const sr::Diagnostics& d) {
  return json{{"max_trace_drift", d.max_trace_drift},
              {"max_herm_residual", d.max_herm_residual},
              {"min_eigenvalue", d.min_eigenvalue},
              {"energy_balance_rel", d.energy_balance_rel},
              {"max_interchange_asym", d.max_interchange_asym}};
}

char hash_hex_buf[32];
std::string hash_hex(std::uint64_t h) {
  std::snprintf(hash_hex_buf, sizeof(hash_hex_buf), "%016llx",
                static_cast<unsigned long long>(h));
  return hash_hex_buf;
}

RunArtifacts execute(const sr::Scenario& s) {
  RunArtifacts art;
  json& sum = art.summary;
  sum["name"] = s.name;
  sum["scenario_hash"] = hash_hex(sr::scenario_hash(s));
  sum["version"] = kVersion;

  std::ostringstream csv;
  if (s.mode == sr::Mode::Dicke) {
    const sr::DickeResult r = sr::run_dicke(s);
    const sr::HalfInt J = sr::HalfInt::from_twice(s.j.twice() * s.N);
    csv << "t,I_em";
    for (int k = 0; k < multiplicity(J); ++k)
      csv << ",rho_M=" << projection_at(J, k).str();
    csv << "\n";
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      csv << fmt(r.t[i]) << ',' << fmt(r.I_em[i]);
      for (int k = 0; k < r.rho[i].size(); ++k) csv << ',' << fmt(r.rho[i][k]);
      csv << "\n";
    }
    sum["I0"] = r.summary.I0;
    sum["peak_I"] = r.summary.peak_I;
    sum["t_max"] = r.summary.t_max;
    std::cerr << s.name << ": wall " << r.summary.wall_time_s << " s\n";
  } else {
    const sr::TwoBodyResult r = sr::run_twobody(s);
    csv << "t,I_em,Gamma,Gamma_bar,A,V,Y\n";
    double Gamma_max = 0.0;
    for (const auto& p : r.series) {
      csv << fmt(p.t) << ',' << fmt(p.I_em) << ',' << fmt(p.Gamma) << ','
          << fmt(p.GammaBar) << ',' << fmt(p.A) << ',' << fmt(p.V) << ','
          << fmt(p.Y) << "\n";
      Gamma_max = std::max(Gamma_max, p.Gamma);
    }
    sum["I0"] = r.summary.I0;
    sum["peak_I"] = r.summary.peak_I;
    sum["t_max"] = r.summary.t_max;
    sum["Gamma0"] = r.summary.Gamma0;
    sum["Gamma_max"] = Gamma_max;
    sum["burst"] = r.burst;
    sum["stopped_early"] = r.summary.stopped_early;
    sum["diagnostics"] = diagnostics_json(r.diagnostics);
    if (s.gamma_SI) {
      sum["gamma_SI"] = *s.gamma_SI;
      sum["t_max_seconds"] = r.summary.t_max / *s.gamma_SI;
      sum["Gamma_max_SI"] = Gamma_max * *s.gamma_SI;
    }
    if (s.omega0_SI) sum["omega0_SI"] = *s.omega0_SI;
    std::cerr << s.name << ": wall " << r.summary.wall_time_s << " s\n";
  }
  art.series_csv = csv.str();
  return art;
}

// ---- sweep ------------------------------------------------------------

struct SweepCell {
  json patch;  // fields overriding the base scenario
  json doc;    // merged scenario document; parsed (and validated) per cell
  std::string name;
};

std::vector<SweepCell> expand_cells(const json& job) {
  if (!job.contains("base"))
    throw std::runtime_error("config: sweep needs a \"base\" scenario");
  const json& base = job.at("base");
  std::vector<json> patches;
  if (job.contains("cells")) {
    for (const json& c : job.at("cells")) patches.push_back(c);
  } else if (job.contains("field")) {
    const std::string field = job.at("field").get<std::string>();
    for (const json& v : job.at("values")) patches.push_back(json{{field, v}});
  } else {
    throw std::runtime_error(
        "config: sweep needs \"cells\" or \"field\"+\"values\"");
  }
  std::vector<SweepCell> cells;
  for (const json& patch : patches) {
    json doc = base;
    doc.merge_patch(patch);
    std::string suffix;
    for (auto it = patch.begin(); it != patch.end(); ++it) {
      suffix += "_" + it.key() + "=" +
                (it.value().is_string() ? it.value().get<std::string>()
                                        : it.value().dump());
    }
    SweepCell cell{patch, doc,
                   sanitize(base.value("name", std::string("sweep")) + suffix)};
    cell.doc["name"] = cell.name;
    cells.push_back(std::move(cell));
  }
  return cells;
}

/// Run fn(i) for i in [0, n) on `workers` threads; any scheduling order,
/// results must be stored by index so output order stays deterministic.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

int cmd_sweep(const std::string& config, const std::string& out_flag,
              int workers, double tol) {
  const json job = job_from_config(config);
  std::vector<SweepCell> cells = expand_cells(job);
  const fs::path out = default_out_dir(out_flag);
  const std::string sweep_name =
      sanitize(job.value("name", job.at("base").value("name", "sweep")));

  // Union of patched fields, in first-appearance order, for the row header.
  // The declared sweep field shows up even when the value list is empty.
  std::vector<std::string> fields;
  if (job.contains("field")) fields.push_back(job.at("field").get<std::string>());
  for (const auto& c : cells)
    for (auto it = c.patch.begin(); it != c.patch.end(); ++it)
      if (std::find(fields.begin(), fields.end(), it.key()) == fields.end())
        fields.push_back(it.key());

  struct Row {
    json summary;
    std::string error;
  };
  std::vector<Row> rows(cells.size());
  parallel_for(static_cast<int>(cells.size()), workers, [&](int i) {
    try {
      sr::Scenario s = scenario_from_doc(cells[i].doc);
      apply_tol_override(s, tol);
      const RunArtifacts art = execute(s);
      write_file(out / (cells[i].name + "_series.csv"), art.series_csv);
      write_file(out / (cells[i].name + "_summary.json"),
                 art.summary.dump(2) + "\n");
      rows[i].summary = art.summary;
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });

  std::ostringstream csv;
  csv << "name";
  for (const auto& f : fields) csv << ',' << f;
  csv << ",I0,peak_I,t_max,Gamma0,error\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    csv << cells[i].name;
    for (const auto& f : fields) {
      csv << ',';
      if (cells[i].patch.contains(f)) {
        const json& v = cells[i].patch.at(f);
        csv << (v.is_string() ? v.get<std::string>()
                              : (v.is_number() ? fmt(v.get<double>())
                                               : v.dump()));
      }
    }
    const json& s = rows[i].summary;
    auto num = [&](const char* k) {
      return s.contains(k) ? fmt(s.at(k).get<double>()) : std::string();
    };
    csv << ',' << num("I0") << ',' << num("peak_I") << ',' << num("t_max")
        << ',' << num("Gamma0") << ',' << rows[i].error << "\n";
  }
  write_file(out / (sweep_name + "_sweep.csv"), csv.str());
  std::cout << (out / (sweep_name + "_sweep.csv")).string() << "\n";
  return 0;
}

// ---- marginal width ---------------------------------------------------

int cmd_marginal(const std::string& config, const std::string& out_flag,
                 int workers, double tol) {
  const json job = job_from_config(config);
  const std::string kind = job.value("kind", "marginal");
  if (!job.contains("base"))
    throw std::runtime_error("config: marginal-width needs a \"base\" scenario");
  sr::Scenario base = scenario_from_doc(job.at("base"));
  apply_tol_override(base, tol);
  const fs::path out = default_out_dir(out_flag);
  const std::string name =
      sanitize(job.value("name", base.name + "_marginal"));

  if (kind == "marginal") {
    const sr::MarginalResult r = sr::marginal_width(base);
    json sum{{"name", name},
             {"scenario_hash", hash_hex(sr::scenario_hash(base))},
             {"version", kVersion},
             {"Delta_m", r.Delta_m},
             {"evaluations", r.evaluations}};
    write_file(out / (name + "_summary.json"), sum.dump(2) + "\n");
    std::cout << fmt(r.Delta_m) << "\n";
    return 0;
  }
  if (kind != "marginal-sweep")
    throw std::runtime_error("config: kind must be marginal or marginal-sweep");

  const std::string field = job.at("field").get<std::string>();
  std::vector<json> values;
  for (const json& v : job.at("values")) values.push_back(v);
  std::vector<double> widths(values.size());
  std::vector<std::string> errors(values.size());
  parallel_for(static_cast<int>(values.size()), workers, [&](int i) {
    try {
      json doc = job.at("base");
      doc.merge_patch(json{{field, values[i]}});
      sr::Scenario s = scenario_from_doc(doc);
      apply_tol_override(s, tol);
      widths[i] = sr::marginal_width(s).Delta_m;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::ostringstream csv;
  csv << field << ",Delta_m\n";
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!errors[i].empty())
      throw std::runtime_error(field + "=" + values[i].dump() + ": " +
                               errors[i]);
    csv << fmt(values[i].get<double>()) << ',' << fmt(widths[i]) << "\n";
    points.emplace_back(values[i].get<double>(), widths[i]);
  }
  write_file(out / (name + ".csv"), csv.str());

  const sr::PowerLawFit fit = sr::fit_power_law(points);
  json sum{{"name", name},
           {"version", kVersion},
           {"field", field},
           {"exponent", fit.exponent},
           {"prefactor", fit.prefactor},
           {"r_squared", fit.r_squared}};
  write_file(out / (name + "_summary.json"), sum.dump(2) + "\n");
  std::cout << (out / (name + ".csv")).string() << "\n";
  return 0;
}

// ---- fit ----------------------------------------------------------------

int cmd_fit(const std::string& csv_path, const std::string& xcol,
            const std::string& ycol, const std::string& out_flag) {
  std::istringstream in(read_file(csv_path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("fit: empty CSV");
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  auto col_index = [&](const std::string& want, int fallback) -> int {
    if (want.empty()) return fallback;
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == want) return static_cast<int>(i);
    throw std::runtime_error("fit: no column named '" + want + "'");
  };
  const int xi = col_index(xcol, 0);
  const int yi = col_index(ycol, 1);

  std::vector<std::pair<double, double>> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) <= std::max(xi, yi)) continue;
    points.emplace_back(std::stod(cells[xi]), std::stod(cells[yi]));
  }
  const sr::PowerLawFit fit = sr::fit_power_law(points);
  json sum{{"input", csv_path},
           {"x", header[xi]},
           {"y", header[yi]},
           {"n_points", points.size()},
           {"exponent", fit.exponent},
           {"prefactor", fit.prefactor},
           {"r_squared", fit.r_squared}};
  const std::string text = sum.dump(2) + "\n";
  if (!out_flag.empty())
    write_file(default_out_dir(out_flag) / "fit_summary.json", text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-level superradiance simulator"};
  app.require_subcommand(1);

  std::string config, out_dir, xcol, ycol, csv_path, preset_name;
  int workers = 1;
  double tol = 0.0;

  auto add_common = [&](CLI::App* sub, bool with_workers) {
    sub->add_option("--config", config, "job config JSON file")->required();
    sub->add_option("--out", out_dir,
                    "output directory (default $SRSIM_OUT_DIR or .)");
    sub->add_option("--tol-override", tol,
                    "override integrator rel_tol (abs_tol = rel_tol/1000)");
    if (with_workers)
      sub->add_option("--workers", workers, "worker threads for sweep cells");
  };

  CLI::App* run = app.add_subcommand("run", "single scenario run");
  add_common(run, false);
  CLI::App* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep");
  add_common(sweep, true);
  CLI::App* marg = app.add_subcommand(
      "marginal-width", "marginal Doppler width search (or sweep + fit)");
  add_common(marg, true);

  CLI::App* fit = app.add_subcommand("fit", "power-law fit of a sweep CSV");
  fit->add_option("--config", csv_path, "input CSV file")->required();
  fit->add_option("--xcol", xcol, "x column name (default: first)");
  fit->add_option("--ycol", ycol, "y column name (default: second)");
  fit->add_option("--out", out_dir, "also write fit_summary.json here");

  CLI::App* presets = app.add_subcommand("presets", "built-in scenarios");
  CLI::App* plist = presets->add_subcommand("list", "list preset names");
  CLI::App* pshow = presets->add_subcommand("show", "print a preset config");
  pshow->add_option("name", preset_name, "preset name")->required();
  presets->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const json job = job_from_config(config);
      if (job.value("kind", "run") != "run")
        throw std::runtime_error("config: kind must be run (got " +
                                 job.value("kind", "run") + ")");
      sr::Scenario s = scenario_from_doc(
          job.contains("scenario") ? job.at("scenario") : job);
      apply_tol_override(s, tol);
      const RunArtifacts art = execute(s);
      const fs::path out = default_out_dir(out_dir);
      write_file(out / (sanitize(s.name) + "_series.csv"), art.series_csv);
      write_file(out / (sanitize(s.name) + "_summary.json"),
                 art.summary.dump(2) + "\n");
      std::cout << (out / (sanitize(s.name) + "_summary.json")).string()
                << "\n";
      return 0;
    }
    if (sweep->parsed()) return cmd_sweep(config, out_dir, workers, tol);
    if (marg->parsed()) return cmd_marginal(config, out_dir, workers, tol);
    if (fit->parsed()) return cmd_fit(csv_path, xcol, ycol, out_dir);
    if (plist->parsed()) {
      for (const auto& name : sr::preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (pshow->parsed()) {
      std::cout << sr::preset_text(preset_name);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
