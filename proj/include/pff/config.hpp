#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pff/driving_forces.hpp"
#include "pff/fem.hpp"
#include "pff/phasefield.hpp"

namespace pff {

enum class ScenarioKind { mode_I, mode_II, brazilian, conchoidal, bar_1d };

std::string to_string(ScenarioKind k);

struct RefineBox {
  bool enabled = false;
  double h_mm = 0.0;
  double x_min_mm = 0.0, x_max_mm = 0.0;
  double y_min_mm = 0.0, y_max_mm = 0.0;
};

struct GeometryConfig {
  // plate scenarios
  double width_mm = 100.0;
  double height_mm = 100.0;
  int nx = 50;
  int ny = 50;
  double slit_length_mm = 50.0;
  RefineBox refine;
  // disc
  double diameter_mm = 50.0;
  int rings = 24;
  double arc_width_mm = 5.0;
  bool induced_crack = false;  // not used by the default setups
  // block
  double length_mm = 2000.0;
  double depth_mm = 2000.0;
  double block_height_mm = 1000.0;
  int nz = 10;
  double patch_mm = 500.0;
  // bar
  double half_length_mm = 10.0;
  int elements = 200;

  /// Element size that resolves the crack path.
  double crack_h(ScenarioKind kind) const;
};

struct MaterialConfig {
  std::string model = "linear";  // linear | neo_hooke | mooney_rivlin
  double E_MPa = 50400.0;
  double nu = 0.2;
  PlaneMode plane_mode = PlaneMode::plane_stress;
  std::string stress_split = "auto";  // auto | none | KG | lambda_mu
  FiniteSplit finite_split = FiniteSplit::none;
  double residual_stiffness = 1e-5;
  double thickness_mm = 1.0;
  double k = 0.0;  // Mooney-Rivlin ratio
};

struct DriveConfig {
  DriveKind model = DriveKind::griffith;
  std::optional<double> sigma_c_MPa;  // defaults to sqrt(E Gc / (3 lc))
  std::optional<double> tau_c_MPa;
  std::optional<double> Rm_t_MPa;
  std::optional<double> Rm_c_MPa;
  std::optional<double> m;
  std::optional<double> eps_c;  // defaults to sigma_c / E
  std::optional<double> lambda_c;
  TrescaForm tresca_form = TrescaForm::principal;
  DriveStress stress = DriveStress::effective;
};

struct EvolutionConfig {
  double lc_mm = 1.0;
  double Gc_N_per_mm = 0.075;
  double c_rule = 1.0;
  double dt_s = 1.0;
  double du_mm = 5e-5;
  int steps = 1000;
  bool stop_on_failure = true;
  double newton_tol = 1e-11;
};

struct OutputConfig {
  std::string dir = "run";
  int vtk_every = 0;  // 0 writes the final state only
};

struct ScenarioConfig {
  std::string name;
  ScenarioKind scenario = ScenarioKind::mode_I;
  GeometryConfig geometry;
  MaterialConfig material;
  DriveConfig drive;
  EvolutionConfig evolution;
  OutputConfig output;

  /// Threshold set with defaults resolved.
  DrivingForceSpec driving_force_spec() const;
  MaterialModel material_model() const;
  EvolutionParams evolution_params() const;
  /// Stress split used by equilibrium; "auto" follows the driving force.
  EnergySplit mechanical_split() const;
  /// Resolved configuration in the input format (unit-suffixed keys).
  nlohmann::ordered_json to_json() const;
};

/// Parses and validates. ParseError carries line and key; ValidationError lists every violation.
ScenarioConfig parse_config_string(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);
/// Throws ValidationError when any invariant is violated.
void validate(const ScenarioConfig& cfg);

}  // namespace pff
