#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pff/config.hpp"
#include "pff/mesh.hpp"
#include "pff/postprocess.hpp"
#include "pff/staggered.hpp"

namespace pff {

/// Mesh and boundary conditions of one benchmark.
struct ScenarioSetup {
  Mesh mesh;
  LoadCase load;
  std::optional<std::array<double, 3>> tip;  // notch tip of the plate scenarios
};
ScenarioSetup build_setup(const ScenarioConfig& cfg);

struct ScenarioRun {
  ScenarioConfig config;
  Mesh mesh;
  RunResult run;
  std::optional<std::array<double, 3>> tip;
  std::optional<KinkResult> kink;
  std::string kink_error;
  Locus locus = Locus::none;
  std::array<double, 3> locus_point{};
  double locus_u = 0.0;
  double locus_radius_fraction = 0.0;  // disc only
  std::optional<double> profile_error;  // bar_1d only
  double wall_seconds = 0.0;
  std::uint64_t clamp_events = 0;  // invariant-split clamps during this run

  nlohmann::ordered_json summary() const;
};

struct RunOptions {
  bool write_outputs = true;
  std::function<void(const StepRecord&)> progress;
};

/// Runs the staggered loop (or the pure phase-field relaxation for bar_1d) and writes
/// curve.csv, manifest.json, summary.json and VTK fields into cfg.output.dir.
/// Solver failures end the run early with partial outputs; check run.solver_failed.
ScenarioRun run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {});

/// Maps axis shorthands (lc, c_rule, tau, E) to a dotted config path; dotted paths pass through.
std::string axis_path(const std::string& axis);

/// Template text with one numeric override applied at a dotted path. The run name and
/// output directory get a suffix so sweep members do not collide.
ScenarioConfig config_with_override(const std::string& template_text, const std::string& axis, double value);

struct SweepOptions {
  int jobs = 1;
  std::function<void(const ScenarioRun&)> on_done;
};
/// Runs every member, writes sweep.csv next to the member directories and returns the rows.
std::vector<SweepRow> run_sweep(const std::string& template_text, const std::string& axis,
                                const std::vector<double>& values, const SweepOptions& opt = {});

}  // namespace pff
