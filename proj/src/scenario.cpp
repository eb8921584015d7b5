#include "pff/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "pff/errors.hpp"
#include "pff/fem.hpp"
#include "pff/finite_material.hpp"
#include "pff/output.hpp"

namespace pff {

namespace {

void add_dofs(LoadCase& lc, const std::vector<int>& nodes, int dim, int comp, double scale) {
  for (int n : nodes) {
    lc.dofs.push_back(n * dim + comp);
    lc.scale.push_back(scale);
  }
}

std::vector<int> component_dofs(const std::vector<int>& nodes, int dim, int comp) {
  std::vector<int> out;
  out.reserve(nodes.size());
  for (int n : nodes) out.push_back(n * dim + comp);
  return out;
}

std::vector<double> plate_lines(double extent, int n, const RefineBox& r, bool x_axis) {
  if (!r.enabled) return uniform_lines(0.0, extent, n);
  return x_axis ? graded_lines(0.0, extent, extent / n, r.h_mm, r.x_min_mm, r.x_max_mm)
                : graded_lines(0.0, extent, extent / n, r.h_mm, r.y_min_mm, r.y_max_mm);
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void set_path(nlohmann::json& root, const std::string& path, double value) {
  nlohmann::json* cur = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (dot == std::string::npos) {
      static const char* integer_keys[] = {"nx", "ny", "nz", "rings", "elements", "steps", "vtk_every"};
      bool as_int = cur->contains(key) && (*cur)[key].is_number_integer();
      for (const char* k : integer_keys) as_int = as_int || key == k;
      if (as_int && std::floor(value) == value)
        (*cur)[key] = static_cast<long long>(value);
      else
        (*cur)[key] = value;
      return;
    }
    if (!cur->contains(key)) (*cur)[key] = nlohmann::json::object();
    cur = &(*cur)[key];
    start = dot + 1;
  }
}

ScenarioRun run_bar(const ScenarioConfig& cfg, ScenarioRun out, const RunOptions& opt) {
  const auto& G = cfg.geometry;
  const double lc = cfg.evolution.lc_mm;
  out.mesh = generate_line(G.elements, -G.half_length_mm, G.half_length_mm);
  Fem fem(out.mesh, cfg.material_model());
  PhaseOperators ops = fem.phase_operators();
  ops.fixed.assign(static_cast<std::size_t>(out.mesh.num_nodes()), 0);

  // Point source of strength 2 lc at the center: the steady solution is exp(-|x|/lc).
  NodalDrive drive;
  drive.constant = Eigen::VectorXd::Zero(out.mesh.num_nodes());
  drive.constant[out.mesh.set("center").front()] = 2.0 * lc;

  const EvolutionParams evo = cfg.evolution_params();
  RunResult& res = out.run;
  res.u = Eigen::VectorXd();
  res.z = Eigen::VectorXd::Zero(out.mesh.num_nodes());
  for (int step = 1; step <= cfg.evolution.steps; ++step) {
    const auto t0 = std::chrono::steady_clock::now();
    const Eigen::VectorXd prev = res.z;
    const PhaseStepReport rep = step_phase_field(res.z, drive, ops, evo, out.mesh.h_nominal, 1);
    for (Eigen::Index i = 0; i < res.z.size(); ++i) {
      if (res.z[i] < prev[i]) res.invariants.z_monotone = false;
      if (!(res.z[i] >= 0.0 && res.z[i] <= 1.0)) res.invariants.z_bounded = false;
    }
    ++res.invariants.checked_steps;
    StepRecord rec;
    rec.step = step;
    rec.max_z = res.z.maxCoeff();
    rec.substeps = rep.substeps;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.records.push_back(rec);
    if (opt.progress) opt.progress(rec);
    if (rep.max_increment < 1e-13) break;
  }
  out.profile_error = profile_l2_error(out.mesh, res.z, lc);
  return out;
}

}  // namespace

ScenarioSetup build_setup(const ScenarioConfig& cfg) {
  ScenarioSetup s;
  const auto& G = cfg.geometry;
  switch (cfg.scenario) {
    case ScenarioKind::mode_I:
    case ScenarioKind::mode_II: {
      SlitSpec slit{true, 0.5 * G.height_mm, 0.0, G.slit_length_mm};
      s.mesh = generate_plate(plate_lines(G.width_mm, G.nx, G.refine, true),
                              plate_lines(G.height_mm, G.ny, G.refine, false), slit);
      s.tip = std::array<double, 3>{G.slit_length_mm, 0.5 * G.height_mm, 0.0};
      const auto& bottom = s.mesh.set("bottom");
      const auto& top = s.mesh.set("top");
      add_dofs(s.load, bottom, 2, 0, 0.0);
      add_dofs(s.load, bottom, 2, 1, 0.0);
      // Mode I pulls the top edge up; mode II shears it to the right with vertical motion held.
      const int pull = cfg.scenario == ScenarioKind::mode_I ? 1 : 0;
      add_dofs(s.load, top, 2, pull, 1.0);
      add_dofs(s.load, top, 2, 1 - pull, 0.0);
      s.load.reaction_dofs = component_dofs(top, 2, pull);
      s.load.opposite_dofs = component_dofs(bottom, 2, pull);
      s.load.reaction_sign = 1.0;
      break;
    }
    case ScenarioKind::brazilian: {
      const double R = 0.5 * G.diameter_mm;
      s.mesh = generate_disc(R, G.rings, G.arc_width_mm);
      const auto& top = s.mesh.set("top_arc");
      const auto& bottom = s.mesh.set("bottom_arc");
      add_dofs(s.load, top, 2, 1, -0.5);
      add_dofs(s.load, bottom, 2, 1, 0.5);
      add_dofs(s.load, s.mesh.set("top_center"), 2, 0, 0.0);
      add_dofs(s.load, s.mesh.set("bottom_center"), 2, 0, 0.0);
      s.load.reaction_dofs = component_dofs(top, 2, 1);
      s.load.opposite_dofs = component_dofs(bottom, 2, 1);
      s.load.reaction_sign = -1.0;
      break;
    }
    case ScenarioKind::conchoidal: {
      s.mesh = generate_block(G.nx, G.ny, G.nz, G.length_mm, G.depth_mm, G.block_height_mm, G.patch_mm);
      const auto& bottom = s.mesh.set("bottom");
      const auto& patch = s.mesh.set("patch");
      for (int c = 0; c < 3; ++c) add_dofs(s.load, bottom, 3, c, 0.0);
      add_dofs(s.load, patch, 3, 2, -1.0);
      s.load.reaction_dofs = component_dofs(patch, 3, 2);
      s.load.opposite_dofs = component_dofs(bottom, 3, 2);
      s.load.reaction_sign = -1.0;
      s.load.fixed_phase_nodes = bottom;
      break;
    }
    case ScenarioKind::bar_1d:
      s.mesh = generate_line(G.elements, -G.half_length_mm, G.half_length_mm);
      break;
  }
  return s;
}

nlohmann::ordered_json ScenarioRun::summary() const {
  nlohmann::ordered_json j;
  j["name"] = config.name;
  j["scenario"] = to_string(config.scenario);
  j["nodes"] = mesh.num_nodes();
  j["elements"] = mesh.num_elements();
  j["steps"] = run.records.size();
  j["solver_failed"] = run.solver_failed;
  if (run.solver_failed) j["failure"] = run.failure;
  j["F_max_N"] = run.F_max;
  j["u_at_F_max_mm"] = run.u_at_F_max;
  j["peak_step"] = run.peak_step;
  if (run.first_damage_node >= 0) {
    j["first_damage"] = {{"node", run.first_damage_node},
                         {"step", run.first_damage_step},
                         {"u_mm", locus_u},
                         {"position_mm", locus_point},
                         {"locus", to_string(locus)}};
    if (config.scenario == ScenarioKind::brazilian) j["first_damage"]["radius_fraction"] = locus_radius_fraction;
  }
  if (tip) j["tip_mm"] = *tip;
  if (kink)
    j["kink"] = {{"alpha_deg", kink->alpha_deg}, {"deviation_deg", kink->deviation_deg}, {"points", kink->points}};
  else if (!kink_error.empty())
    j["kink_error"] = kink_error;
  if (profile_error) j["profile_l2_error"] = *profile_error;
  j["invariants"] = {{"z_monotone", run.invariants.z_monotone},
                     {"z_bounded", run.invariants.z_bounded},
                     {"max_balance_error", run.invariants.max_balance_error},
                     {"checked_steps", run.invariants.checked_steps}};
  j["invariant_clamp_events"] = clamp_events;
  j["wall_seconds"] = wall_seconds;
  return j;
}

ScenarioRun run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t clamps0 = invariant_clamp_events();
  ScenarioRun out;
  out.config = cfg;
  const std::string dir = cfg.output.dir;
  if (opt.write_outputs) {
    ensure_directory(dir);
    write_json(dir + "/manifest.json", cfg.to_json());
  }

  if (cfg.scenario == ScenarioKind::bar_1d) {
    out = run_bar(cfg, std::move(out), opt);
  } else {
    ScenarioSetup setup = build_setup(cfg);
    out.mesh = std::move(setup.mesh);
    out.tip = setup.tip;
    Fem fem(out.mesh, cfg.material_model());
    StaggeredOptions so;
    so.du = cfg.evolution.du_mm;
    so.steps = cfg.evolution.steps;
    so.stop_on_failure = cfg.evolution.stop_on_failure;
    so.newton_tol = cfg.evolution.newton_tol;
    so.drive_stress = cfg.drive.stress;
    StaggeredSolver solver(fem, std::move(setup.load), cfg.driving_force_spec(), cfg.evolution_params(), so);
    const int every = cfg.output.vtk_every;
    out.run = solver.run([&](const StepRecord& rec, const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
      if (opt.write_outputs && every > 0 && rec.step % every == 0) {
        char name[32];
        std::snprintf(name, sizeof name, "/fields_%05d.vtk", rec.step);
        write_vtk(dir + name, out.mesh, u, z);
      }
      if (opt.progress) opt.progress(rec);
    });

    const RunResult& r = out.run;
    if (r.first_damage_node >= 0) {
      out.locus_point = out.mesh.nodes[r.first_damage_node];
      out.locus_u = r.records[r.first_damage_step - 1].u;
      if (cfg.scenario == ScenarioKind::brazilian) {
        const double R = 0.5 * cfg.geometry.diameter_mm;
        out.locus = classify_disc_locus(out.locus_point, R);
        out.locus_radius_fraction = std::hypot(out.locus_point[0], out.locus_point[1]) / R;
      } else if (cfg.scenario == ScenarioKind::conchoidal) {
        const auto& G = cfg.geometry;
        out.locus = classify_block_locus(out.locus_point, {G.length_mm, G.depth_mm, G.block_height_mm});
      }
    }
    if (out.tip && r.z.size() > 0 && r.z.maxCoeff() > 0.9) {
      try {
        out.kink = measure_kink_angle(out.mesh, r.z, *out.tip);
      } catch (const NoCrackFound& e) {
        out.kink_error = e.what();
      }
    }
  }

  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.clamp_events = invariant_clamp_events() - clamps0;
  if (opt.write_outputs) {
    write_curve_csv(dir + "/curve.csv", out.run.records);
    write_vtk(dir + "/fields_final.vtk", out.mesh, out.run.u, out.run.z);
    write_json(dir + "/summary.json", out.summary());
  }
  return out;
}

std::string axis_path(const std::string& axis) {
  if (axis == "lc") return "evolution.lc_mm";
  if (axis == "c_rule") return "evolution.c_rule";
  if (axis == "tau") return "evolution.c_rule";
  if (axis == "E") return "material.E_MPa";
  if (axis.find('.') == std::string::npos) throw ParseError("unknown sweep axis", 0, axis);
  return axis;
}

ScenarioConfig config_with_override(const std::string& template_text, const std::string& axis, double value) {
  const ScenarioConfig base = parse_config_string(template_text);
  nlohmann::json j = nlohmann::json::parse(template_text);
  const std::string path = axis_path(axis);
  // tau is given in seconds; the config stores tau / dt.
  set_path(j, path, axis == "tau" ? value / base.evolution.dt_s : value);
  std::string tag = axis;
  for (char& c : tag)
    if (c == '.') c = '_';
  tag += "_" + format_value(value);
  j["name"] = base.name + "_" + tag;
  j["output"]["dir"] = base.output.dir + "/" + tag;
  return parse_config_string(j.dump(2));
}

std::vector<SweepRow> run_sweep(const std::string& template_text, const std::string& axis,
                                const std::vector<double>& values, const SweepOptions& opt) {
  const ScenarioConfig base = parse_config_string(template_text);
  std::vector<ScenarioConfig> members;
  for (double v : values) members.push_back(config_with_override(template_text, axis, v));

  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  std::mutex report;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < members.size(); i = next++) {
      try {
        ScenarioRun run = run_scenario(members[i]);
        rows[i] = {values[i], run.run.F_max, run.run.u_at_F_max, 0.0};
        std::lock_guard<std::mutex> lock(report);
        if (opt.on_done) opt.on_done(run);
      } catch (...) {
        std::lock_guard<std::mutex> lock(report);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(members.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  ensure_directory(base.output.dir);
  write_sweep_summary(base.output.dir + "/sweep.csv", axis, rows);
  return rows;
}

}  // namespace pff
