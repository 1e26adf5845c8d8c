#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sr/halfint.hpp"
#include "sr/integrate.hpp"

namespace sr {

enum class Mode { Dicke, TwoBody, Doppler };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);

/// Full run configuration. Internal units are gamma = 1, hbar omega0 = 1;
/// the optional SI fields only rescale outputs on write.
struct Scenario {
  std::string name = "run";
  Mode mode = Mode::TwoBody;
  HalfInt j{1};            // spin (j_twice in the config file)
  int N = 10;              // atom count, dicke mode only
  double C = 10.0;         // cooperativity
  double rho_size = 10.0;  // omega d / (2c)
  double Delta_D = 0.0;    // Doppler width (units gamma); > 0 in doppler mode
  int quad_order = 40;     // Gauss-Hermite nodes for the thermal average
  std::string ablation_preset = "full";
  double t_end = 5.0;      // units 1/gamma
  double eps_stop = 1e-6;  // stop when the excited population falls below
  int n_out = 400;         // output grid points
  StepperConfig integrator;
  std::optional<double> gamma_SI;   // s^-1
  std::optional<double> omega0_SI;  // rad/s

  bool operator==(const Scenario& other) const;
};

/// Parse a scenario from JSON text; unknown fields and schema violations
/// throw with the offending field named.
Scenario scenario_from_text(const std::string& json_text);
std::string scenario_to_text(const Scenario& s);

void validate(const Scenario& s);

/// FNV-1a hash of the canonical serialized form; identical scenarios hash
/// identically across runs.
std::uint64_t scenario_hash(const Scenario& s);

/// Built-in presets reproducing the reference figures. Each preset is a JSON
/// job document: {"kind": "run"|"sweep"|"marginal"|"marginal-sweep", ...}.
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);

}  // namespace sr
