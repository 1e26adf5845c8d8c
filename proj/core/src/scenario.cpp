#include "sr/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sr/ablation.hpp"

namespace sr {

using nlohmann::json;

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Dicke: return "dicke";
    case Mode::TwoBody: return "twobody";
    case Mode::Doppler: return "doppler";
  }
  throw std::logic_error("unreachable mode");
}

Mode mode_from_name(const std::string& name) {
  if (name == "dicke") return Mode::Dicke;
  if (name == "twobody") return Mode::TwoBody;
  if (name == "doppler") return Mode::Doppler;
  throw std::invalid_argument("mode: unknown value '" + name +
                              "' (expected dicke, twobody, or doppler)");
}

bool Scenario::operator==(const Scenario& other) const {
  auto key = [](const Scenario& s) {
    return std::tuple(s.name, s.mode, s.j.twice(), s.N, s.C, s.rho_size,
                      s.Delta_D, s.quad_order, s.ablation_preset, s.t_end,
                      s.eps_stop, s.n_out, s.integrator.rel_tol,
                      s.integrator.abs_tol, s.integrator.dt_init,
                      s.integrator.dt_max, s.integrator.rate_change_cap,
                      s.gamma_SI, s.omega0_SI);
  };
  return key(*this) == key(other);
}

void validate(const Scenario& s) {
  if (s.j.twice() <= 0) throw std::invalid_argument("j_twice: must be >= 1");
  if (s.C < 0) throw std::invalid_argument("C: must be >= 0");
  if (s.rho_size <= 0) throw std::invalid_argument("rho_size: must be > 0");
  if (s.Delta_D < 0) throw std::invalid_argument("Delta_D: must be >= 0");
  if (s.mode == Mode::Doppler && s.Delta_D <= 0)
    throw std::invalid_argument("Delta_D: must be > 0 in doppler mode");
  if (s.mode == Mode::Dicke && s.N < 1)
    throw std::invalid_argument("N: must be >= 1 in dicke mode");
  if (s.quad_order < 1) throw std::invalid_argument("quad_order: must be >= 1");
  if (s.t_end <= 0) throw std::invalid_argument("t_end: must be > 0");
  if (s.eps_stop < 0) throw std::invalid_argument("eps_stop: must be >= 0");
  if (s.n_out < 2) throw std::invalid_argument("n_out: must be >= 2");
  if (s.integrator.rel_tol <= 0)
    throw std::invalid_argument("integrator.rel_tol: must be > 0");
  if (s.integrator.abs_tol <= 0)
    throw std::invalid_argument("integrator.abs_tol: must be > 0");
  if (s.integrator.dt_init <= 0)
    throw std::invalid_argument("integrator.dt_init: must be > 0");
  if (s.integrator.dt_max <= 0)
    throw std::invalid_argument("integrator.dt_max: must be > 0");
  if (s.integrator.rate_change_cap <= 0)
    throw std::invalid_argument("integrator.rate_change_cap: must be > 0");
  if (s.gamma_SI && *s.gamma_SI <= 0)
    throw std::invalid_argument("gamma_SI: must be > 0");
  if (s.omega0_SI && *s.omega0_SI <= 0)
    throw std::invalid_argument("omega0_SI: must be > 0");
  // Validates the preset name.
  (void)CoherenceMask::from_preset(s.ablation_preset);
}

namespace {

double get_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw std::invalid_argument(key + ": must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw std::invalid_argument(key + ": must be an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw std::invalid_argument(key + ": must be a string");
  return v.get<std::string>();
}

void check_known_keys(const json& obj, const std::set<std::string>& known,
                      const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key()))
      throw std::invalid_argument(where + it.key() + ": unknown field");
  }
}

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("scenario: top level must be an object");
  check_known_keys(doc,
                   {"name", "mode", "j_twice", "N", "C", "rho_size", "Delta_D",
                    "quad_order", "ablation_preset", "t_end", "eps_stop",
                    "n_out", "integrator", "gamma_SI", "omega0_SI"},
                   "");
  Scenario s;
  s.name = get_string(doc, "name", s.name);
  s.mode = mode_from_name(get_string(doc, "mode", mode_name(s.mode)));
  s.j = HalfInt::from_twice(get_int(doc, "j_twice", s.j.twice()));
  s.N = get_int(doc, "N", s.N);
  s.C = get_number(doc, "C", s.C);
  s.rho_size = get_number(doc, "rho_size", s.rho_size);
  s.Delta_D = get_number(doc, "Delta_D", s.Delta_D);
  s.quad_order = get_int(doc, "quad_order", s.quad_order);
  s.ablation_preset = get_string(doc, "ablation_preset", s.ablation_preset);
  s.t_end = get_number(doc, "t_end", s.t_end);
  s.eps_stop = get_number(doc, "eps_stop", s.eps_stop);
  s.n_out = get_int(doc, "n_out", s.n_out);
  if (doc.contains("integrator")) {
    const json& it = doc.at("integrator");
    if (!it.is_object())
      throw std::invalid_argument("integrator: must be an object");
    check_known_keys(
        it, {"rel_tol", "abs_tol", "dt_init", "dt_max", "rate_change_cap"},
        "integrator.");
    s.integrator.rel_tol = get_number(it, "rel_tol", s.integrator.rel_tol);
    s.integrator.abs_tol = get_number(it, "abs_tol", s.integrator.abs_tol);
    s.integrator.dt_init = get_number(it, "dt_init", s.integrator.dt_init);
    s.integrator.dt_max = get_number(it, "dt_max", s.integrator.dt_max);
    s.integrator.rate_change_cap =
        get_number(it, "rate_change_cap", s.integrator.rate_change_cap);
  }
  if (doc.contains("gamma_SI")) s.gamma_SI = get_number(doc, "gamma_SI", 0);
  if (doc.contains("omega0_SI")) s.omega0_SI = get_number(doc, "omega0_SI", 0);
  validate(s);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["mode"] = mode_name(s.mode);
  doc["j_twice"] = s.j.twice();
  if (s.mode == Mode::Dicke) doc["N"] = s.N;
  doc["C"] = s.C;
  doc["rho_size"] = s.rho_size;
  doc["Delta_D"] = s.Delta_D;
  doc["quad_order"] = s.quad_order;
  doc["ablation_preset"] = s.ablation_preset;
  doc["t_end"] = s.t_end;
  doc["eps_stop"] = s.eps_stop;
  doc["n_out"] = s.n_out;
  doc["integrator"] = {{"rel_tol", s.integrator.rel_tol},
                       {"abs_tol", s.integrator.abs_tol},
                       {"dt_init", s.integrator.dt_init},
                       {"dt_max", s.integrator.dt_max},
                       {"rate_change_cap", s.integrator.rate_change_cap}};
  if (s.gamma_SI) doc["gamma_SI"] = *s.gamma_SI;
  if (s.omega0_SI) doc["omega0_SI"] = *s.omega0_SI;
  return doc;
}

}  // namespace

Scenario scenario_from_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  return scenario_from_json(doc);
}

std::string scenario_to_text(const Scenario& s) {
  return scenario_to_json(s).dump(2) + "\n";
}

std::uint64_t scenario_hash(const Scenario& s) {
  const std::string canon = scenario_to_json(s).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

json base_twobody(int j_twice, double C, double rho, double t_end) {
  return json{{"mode", "twobody"}, {"j_twice", j_twice}, {"C", C},
              {"rho_size", rho},   {"t_end", t_end}};
}

// Preset catalogue. "kind" selects the pipeline:
//   run            -> one scenario, time-series CSV + summary JSON
//   sweep          -> Cartesian sweep with summary row per cell
//   marginal       -> bisection for the marginal Doppler width of one base
//   marginal-sweep -> marginal width per value of a swept field (+ fit)
const std::map<std::string, json> kPresets = [] {
  std::map<std::string, json> p;

  // Per-particle Dicke cascade, N = 10, increasing spin.
  {
    json base{{"mode", "dicke"}, {"N", 10}, {"j_twice", 1}, {"t_end", 3.0}};
    p["fig2b"] = json{{"kind", "sweep"},
                      {"base", base},
                      {"field", "j_twice"},
                      {"values", {1, 2, 3, 4, 5, 6, 7, 8, 9}}};
  }

  // Fixed total spin J = 15 split across different (j, N).
  {
    json base{{"mode", "dicke"}, {"N", 30}, {"j_twice", 1}, {"t_end", 3.0}};
    json cells = json::array();
    cells.push_back(json{{"j_twice", 1}, {"N", 30}});
    cells.push_back(json{{"j_twice", 3}, {"N", 10}});
    cells.push_back(json{{"j_twice", 15}, {"N", 2}});
    p["fig2c"] = json{{"kind", "sweep"}, {"base", base}, {"cells", cells}};
  }

  // Two-body superradiant burst vs spin at C = 10, rho = 10.
  p["fig3a"] = json{{"kind", "sweep"},
                    {"base", base_twobody(1, 10.0, 10.0, 5.0)},
                    {"field", "j_twice"},
                    {"values", {1, 2, 3, 4, 5, 6, 7, 8, 9}}};

  // Coherence ablation at j = 9/2.
  {
    json base = base_twobody(9, 10.0, 10.0, 5.0);
    p["fig4"] = json{{"kind", "sweep"},
                     {"base", base},
                     {"field", "ablation_preset"},
                     {"values",
                      {"full", "no-offdiag", "same-level", "same+cross",
                       "same+cross+higher"}}};
  }

  // Marginal Doppler width vs cooperativity, j = 1/2 (power-law fit input).
  {
    json base = base_twobody(1, 10.0, 10.0, 8.0);
    base["mode"] = "doppler";
    base["Delta_D"] = 1.0;  // placeholder; the search sets it
    p["fig5"] = json{{"kind", "marginal-sweep"},
                     {"base", base},
                     {"field", "C"},
                     {"values", {5.0, 7.0, 10.0, 14.0, 20.0}}};
  }

  // Marginal Doppler width at C = 10, rho = 10.
  for (auto [name, jt] : {std::pair{"fig6a", 1}, std::pair{"fig6b", 9}}) {
    json base = base_twobody(jt, 10.0, 10.0, 8.0);
    base["mode"] = "doppler";
    base["Delta_D"] = 1.0;
    p[name] = json{{"kind", "marginal"}, {"base", base}};
  }

  // LiCs vibrational ladder estimate: gamma ~ 1 s^-1, C = 20, five-level
  // manifold (j = 2). rho_size = 10 is an assumed sample-size parameter,
  // not a measured value: with omega0 = 2*pi*5 THz, rho = omega d/(2c) = 10
  // corresponds to d ~ 0.2 mm, a plausible cold-sample extent.
  {
    json base = base_twobody(4, 20.0, 10.0, 8.0);
    base["name"] = "lics";
    base["gamma_SI"] = 1.0;
    base["omega0_SI"] = 2 * M_PI * 5e12;
    p["lics"] = json{{"kind", "run"}, {"scenario", base}};
  }
  return p;
}();

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, doc] : kPresets) names.push_back(name);
  return names;
}

std::string preset_text(const std::string& name) {
  auto it = kPresets.find(name);
  if (it == kPresets.end())
    throw std::invalid_argument("preset: unknown name '" + name + "'");
  return it->second.dump(2) + "\n";
}

}  // namespace sr
