// Command-line driver: run, sweep, validate, postprocess.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pff/config.hpp"
#include "pff/errors.hpp"
#include "pff/output.hpp"
#include "pff/postprocess.hpp"
#include "pff/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kOtherError = 1;
constexpr int kInvalid = 2;
constexpr int kSolverFailure = 3;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pff::IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_run(const pff::ScenarioRun& r) {
  std::printf("%s: %zu steps, F_max = %.6g N at u = %.6g mm", r.config.name.c_str(), r.run.records.size(),
              r.run.F_max, r.run.u_at_F_max);
  if (r.kink) std::printf(", kink %.1f deg", r.kink->alpha_deg);
  if (r.run.first_damage_node >= 0 && r.locus != pff::Locus::none)
    std::printf(", first damage %s", pff::to_string(r.locus).c_str());
  if (r.profile_error) std::printf(", profile L2 error %.3g", *r.profile_error);
  std::printf(" (%.1f s)\n", r.wall_seconds);
  if (r.run.solver_failed) std::printf("  solver failure: %s\n", r.run.failure.c_str());
}

int cmd_run(const std::string& path, const std::string& out_dir, int progress) {
  pff::ScenarioConfig cfg = pff::parse_config_file(path);
  if (!out_dir.empty()) cfg.output.dir = out_dir;
  pff::RunOptions opt;
  if (progress > 0)
    opt.progress = [progress](const pff::StepRecord& r) {
      if (r.step % progress == 0)
        std::printf("step %5d  u = %.6g mm  F = %.6g N  max z = %.4f  iters %d\n", r.step, r.u, r.F, r.max_z, r.iters);
    };
  const pff::ScenarioRun run = pff::run_scenario(cfg, opt);
  print_run(run);
  std::printf("outputs in %s\n", cfg.output.dir.c_str());
  return run.run.solver_failed ? kSolverFailure : kOk;
}

int cmd_sweep(const std::string& path, const std::string& axis, const std::vector<double>& values, int jobs) {
  const std::string text = read_text(path);
  pff::SweepOptions opt;
  opt.jobs = jobs;
  bool failed = false;
  opt.on_done = [&failed](const pff::ScenarioRun& r) {
    print_run(r);
    failed = failed || r.run.solver_failed;
  };
  const auto rows = pff::run_sweep(text, axis, values, opt);
  std::printf("%-12s %14s %14s %10s\n", axis.c_str(), "F_max_N", "u_at_F_max_mm", "ratio");
  for (const auto& r : rows) std::printf("%-12g %14.6g %14.6g %10.4f\n", r.value, r.F_max, r.u_at_F_max, r.ratio);
  std::printf("summary in %s/sweep.csv\n", pff::parse_config_string(text).output.dir.c_str());
  return failed ? kSolverFailure : kOk;
}

int cmd_validate(const std::string& path) {
  const pff::ScenarioConfig cfg = pff::parse_config_file(path);
  std::cout << cfg.to_json().dump(2) << '\n';
  return kOk;
}

int cmd_kink(const std::string& dir, double r_max) {
  const pff::VtkData d = pff::read_vtk(dir + "/fields_final.vtk");
  const auto summary = pff::read_json(dir + "/summary.json");
  if (!summary.contains("tip_mm")) throw pff::NoCrackFound("run has no notch tip");
  const auto tip = summary["tip_mm"].get<std::array<double, 3>>();
  pff::KinkOptions opt;
  opt.r_max = r_max;
  const pff::KinkResult k = pff::measure_kink_angle(d.mesh, d.z, tip, opt);
  std::printf("alpha_deg=%.4f deviation_deg=%.4f points=%d\n", k.alpha_deg, k.deviation_deg, k.points);
  return kOk;
}

int cmd_fmax(const std::string& dir) {
  const pff::PeakLoad p = pff::peak_load(pff::read_curve_csv(dir + "/curve.csv"));
  std::printf("F_max_N=%.17g u_at_F_max_mm=%.17g step=%d\n", p.F_max, p.u_at_F_max, p.step);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-field fracture simulator"};
  app.require_subcommand(1);

  std::string config, out_dir, axis, run_dir;
  std::vector<double> values;
  int progress = 0, jobs = 1;
  double r_max = 25.0;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config, "Scenario file")->required();
  run->add_option("--out", out_dir, "Override the output directory");
  run->add_option("--progress", progress, "Print every N-th step");

  auto* sweep = app.add_subcommand("sweep", "Run a template across one parameter");
  sweep->add_option("template", config, "Scenario file")->required();
  sweep->add_option("--axis", axis, "lc, c_rule, tau, E or a dotted key path")->required();
  sweep->add_option("--values", values, "Parameter values")->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  auto* val = app.add_subcommand("validate", "Parse and validate a scenario file");
  val->add_option("config", config, "Scenario file")->required();

  auto* post = app.add_subcommand("postprocess", "Evaluate a finished run");
  post->require_subcommand(1);
  auto* kink = post->add_subcommand("kink", "Kink angle of the crack ahead of the notch");
  kink->add_option("run_dir", run_dir)->required();
  kink->add_option("--r-max", r_max, "Radius window around the tip, mm");
  auto* fmax = post->add_subcommand("fmax", "Peak load of the load-displacement curve");
  fmax->add_option("run_dir", run_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, out_dir, progress);
    if (*sweep) return cmd_sweep(config, axis, values, jobs);
    if (*val) return cmd_validate(config);
    if (*kink) return cmd_kink(run_dir, r_max);
    if (*fmax) return cmd_fmax(run_dir);
  } catch (const pff::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  } catch (const pff::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  } catch (const pff::NewtonDiverged& e) {
    std::cerr << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOtherError;
  }
  return kOk;
}
