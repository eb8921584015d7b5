#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "pff/config.hpp"
#include "pff/errors.hpp"
#include "pff/mesh.hpp"
#include "pff/output.hpp"
#include "pff/postprocess.hpp"
#include "pff/scenario.hpp"
#include "support.hpp"

using namespace pff;
namespace fs = std::filesystem;

namespace {

const char* kDesk = R"({
  "scenario": "mode_I",
  "name": "desk",
  "geometry": {"width_mm": 100.0, "height_mm": 100.0, "nx": 50, "ny": 50, "slit_length_mm": 50.0},
  "material": {"E_MPa": 50400.0, "nu": 0.2, "plane_mode": "plane_stress"},
  "driving_force": {"model": "rankine"},
  "evolution": {"lc_mm": 4.0, "Gc_N_per_mm": 0.075, "du_mm": 2e-4, "steps": 10},
  "output": {"dir": "runs/desk"}
})";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pff_test_" + name);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Config, ParsesReferenceSetup) {
  const ScenarioConfig c = parse_config_string(kDesk);
  EXPECT_EQ(c.scenario, ScenarioKind::mode_I);
  EXPECT_EQ(c.drive.model, DriveKind::rankine);
  EXPECT_DOUBLE_EQ(c.evolution.lc_mm, 4.0);
  EXPECT_EQ(c.evolution.steps, 10);
  EXPECT_EQ(c.output.dir, "runs/desk");
}

TEST(Config, CriticalStressDefaultAtReferenceLength) {
  const ScenarioConfig c = parse_config_string(kDesk);
  // sqrt(E Gc / (3 lc)) at lc = 1 mm is 35.5 MPa; here lc = 4.
  EXPECT_NEAR(c.driving_force_spec().sigma_c, std::sqrt(50400.0 * 0.075 / 12.0), 1e-12);
  ScenarioConfig ref = c;
  ref.evolution.lc_mm = 1.0;
  EXPECT_NEAR(ref.driving_force_spec().sigma_c, 35.5, 0.05);
}

TEST(Config, EmptyAndMalformedInputs) {
  EXPECT_THROW(parse_config_string(""), ParseError);
  EXPECT_THROW(parse_config_string("{\"scenario\": "), ParseError);
  EXPECT_THROW(parse_config_string("[1, 2]"), ParseError);
}

TEST(Config, UnknownKeyReportsKeyAndLine) {
  const std::string text = "{\n  \"scenario\": \"mode_I\",\n  \"evolution\": {\"lc_mm\": 4.0, \"lcmm\": 1.0}\n}";
  try {
    parse_config_string(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(e.key().find("lcmm"), std::string::npos);
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Config, GcPerMetreIsConverted) {
  std::string text = kDesk;
  text.replace(text.find("\"Gc_N_per_mm\": 0.075"), 20, "\"Gc_N_per_m\": 75.0");
  EXPECT_DOUBLE_EQ(parse_config_string(text).evolution.Gc_N_per_mm, 0.075);
  std::string both = kDesk;
  both.replace(both.find("\"Gc_N_per_mm\": 0.075"), 20, "\"Gc_N_per_mm\": 0.075, \"Gc_N_per_m\": 75.0");
  EXPECT_THROW(parse_config_string(both), ParseError);
}

TEST(Config, UnresolvedLengthScaleIsRejected) {
  std::string text = kDesk;
  text.replace(text.find("\"lc_mm\": 4.0"), 12, "\"lc_mm\": 3.0");  // h = 2 mm
  try {
    parse_config_string(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_NE(e.violations()[0].find("lc_mm"), std::string::npos);
  }
}

TEST(Config, ValidationCollectsEveryViolation) {
  ScenarioConfig c = parse_config_string(kDesk);
  c.material.E_MPa = -1.0;
  c.material.nu = 0.5;
  c.evolution.dt_s = 0.0;
  try {
    validate(c);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_GE(e.violations().size(), 3u);
  }
}

TEST(Config, ResolvedJsonRoundTrips) {
  const ScenarioConfig c = parse_config_string(kDesk);
  const ScenarioConfig again = parse_config_string(c.to_json().dump(2));
  EXPECT_EQ(again.to_json().dump(), c.to_json().dump());
}

TEST(Sweep, AxisShorthandsAndOverride) {
  EXPECT_EQ(axis_path("lc"), "evolution.lc_mm");
  EXPECT_EQ(axis_path("material.nu"), "material.nu");
  EXPECT_THROW(axis_path("bogus"), ParseError);
  const ScenarioConfig c = config_with_override(kDesk, "lc", 5.0);
  EXPECT_DOUBLE_EQ(c.evolution.lc_mm, 5.0);
  EXPECT_EQ(c.name, "desk_lc_5");
  EXPECT_EQ(c.output.dir, "runs/desk/lc_5");
  // tau is given in seconds; dt = 1 s here.
  EXPECT_DOUBLE_EQ(config_with_override(kDesk, "tau", 0.1).evolution.c_rule, 0.1);
}

TEST(Output, CurveCsvRoundTrip) {
  const fs::path dir = scratch("csv");
  std::vector<StepRecord> recs;
  for (int i = 1; i <= 5; ++i) {
    StepRecord r;
    r.step = i;
    r.u = 2e-4 * i;
    r.F = 59.79283 * i + 1.0 / 3.0;
    r.max_z = 0.1 * i;
    r.iters = i % 3 + 1;
    r.seconds = 0.25 * i;
    recs.push_back(r);
  }
  const std::string path = (dir / "curve.csv").string();
  write_curve_csv(path, recs);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kCurveHeader);
  const auto back = read_curve_csv(path);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].step, recs[i].step);
    EXPECT_EQ(back[i].u, recs[i].u);
    EXPECT_EQ(back[i].F, recs[i].F);
    EXPECT_EQ(back[i].max_z, recs[i].max_z);
    EXPECT_EQ(back[i].iters, recs[i].iters);
  }
  write_curve_csv(path, {});
  EXPECT_TRUE(read_curve_csv(path).empty());
  EXPECT_THROW(write_curve_csv((dir / "missing" / "x" / "curve.csv").string() + "/", recs), IoError);
}

TEST(Output, VtkRoundTripIsBitExact) {
  const fs::path dir = scratch("vtk");
  const Mesh m = generate_structured_plate(5, 4, 1.0, 0.8, {true, 0.4, 0.0, 0.6});
  Eigen::VectorXd u(2 * m.num_nodes()), z(m.num_nodes());
  for (int i = 0; i < u.size(); ++i) u[i] = test::uniform(-1.0, 1.0) * 1e-3;
  for (int i = 0; i < z.size(); ++i) z[i] = test::uniform(0.0, 1.0);
  const std::string path = (dir / "state.vtk").string();
  write_vtk(path, m, u, z);
  const VtkData d = read_vtk(path);
  ASSERT_EQ(d.mesh.num_nodes(), m.num_nodes());
  EXPECT_EQ(d.mesh.conn, m.conn);
  for (int n = 0; n < m.num_nodes(); ++n) {
    EXPECT_EQ(d.mesh.nodes[n], m.nodes[n]);
    EXPECT_EQ(d.z[n], z[n]);
    EXPECT_EQ(d.displacement[n][0], u[2 * n]);
    EXPECT_EQ(d.displacement[n][1], u[2 * n + 1]);
    EXPECT_EQ(d.displacement[n][2], 0.0);
  }
  EXPECT_THROW(read_vtk((dir / "nope.vtk").string()), IoError);
}

TEST(Postprocess, PeakLoad) {
  std::vector<StepRecord> recs(4);
  const double F[] = {1.0, 3.0, 2.5, 3.0};
  for (int i = 0; i < 4; ++i) {
    recs[i].step = i + 1;
    recs[i].u = 0.1 * (i + 1);
    recs[i].F = F[i];
  }
  const PeakLoad p = peak_load(recs);
  EXPECT_EQ(p.F_max, 3.0);
  EXPECT_EQ(p.step, 2);  // first occurrence
  EXPECT_DOUBLE_EQ(p.u_at_F_max, 0.2);
  EXPECT_EQ(peak_load({}).step, -1);
}

namespace {
// Damage band of half-width w along a ray from the tip at angle phi (degrees from +x).
Eigen::VectorXd band(const Mesh& m, const std::array<double, 3>& tip, double phi_deg, double w) {
  const double phi = phi_deg * M_PI / 180.0;
  const double dx = std::cos(phi), dy = std::sin(phi);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m.num_nodes());
  for (int n = 0; n < m.num_nodes(); ++n) {
    const double rx = m.nodes[n][0] - tip[0], ry = m.nodes[n][1] - tip[1];
    const double along = rx * dx + ry * dy, across = std::abs(-rx * dy + ry * dx);
    if (along >= 0.0 && across <= w) z[n] = 1.0;
  }
  return z;
}
}  // namespace

TEST(Postprocess, KinkAngleOfSyntheticBands) {
  const Mesh m = generate_structured_plate(100, 100, 100.0, 100.0);
  const std::array<double, 3> tip{50.0, 50.0, 0.0};
  const KinkResult straight = measure_kink_angle(m, band(m, tip, 0.0, 1.5), tip);
  EXPECT_NEAR(straight.alpha_deg, 180.0, 1.0);
  for (double phi : {58.0, -58.0, 30.0}) {
    const KinkResult k = measure_kink_angle(m, band(m, tip, phi, 1.5), tip);
    EXPECT_NEAR(k.alpha_deg, 180.0 - std::abs(phi), 2.0) << phi;
    EXPECT_NEAR(k.deviation_deg, phi, 2.0) << phi;
    EXPECT_GE(k.points, 3);
  }
  EXPECT_THROW(measure_kink_angle(m, Eigen::VectorXd::Zero(m.num_nodes()), tip), NoCrackFound);
}

TEST(Postprocess, LocusClassification) {
  EXPECT_EQ(classify_disc_locus({0.0, 1.0, 0.0}, 25.0), Locus::central);
  EXPECT_EQ(classify_disc_locus({0.0, 24.0, 0.0}, 25.0), Locus::outer);
  EXPECT_EQ(classify_disc_locus({10.0, 0.0, 0.0}, 25.0), Locus::intermediate);
  EXPECT_EQ(classify_block_locus({1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}), Locus::interior);
  EXPECT_EQ(classify_block_locus({1.0, 1.0, 2.0}, {2.0, 2.0, 2.0}), Locus::surface);
}

TEST(Postprocess, ProfileErrorOfNodalInterpolant) {
  // Only the interpolation error of the exact profile remains; it is second order in h.
  auto err = [](int n) {
    const Mesh line = generate_line(n, -10.0, 10.0);
    Eigen::VectorXd z(line.num_nodes());
    for (int i = 0; i < line.num_nodes(); ++i) z[i] = std::exp(-std::abs(line.nodes[i][0]) / 2.0);
    return profile_l2_error(line, z, 2.0);
  };
  const double e1 = err(100), e2 = err(200);
  EXPECT_LT(e1, 2e-3);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
  const Mesh line = generate_line(100, -10.0, 10.0);
  EXPECT_NEAR(profile_l2_error(line, Eigen::VectorXd::Zero(line.num_nodes()), 2.0), 1.0, 1e-6);
}

TEST(Scenario, BarRunsAreDeterministic) {
  const char* text = R"({
    "scenario": "bar_1d",
    "geometry": {"half_length_mm": 10.0, "elements": 100},
    "evolution": {"lc_mm": 1.0, "Gc_N_per_mm": 0.075, "dt_s": 1.0, "steps": 50}
  })";
  RunOptions opt;
  opt.write_outputs = false;
  const ScenarioRun a = run_scenario(parse_config_string(text), opt);
  const ScenarioRun b = run_scenario(parse_config_string(text), opt);
  ASSERT_EQ(a.run.z.size(), b.run.z.size());
  EXPECT_EQ((a.run.z - b.run.z).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(a.run.invariants.z_monotone);
  EXPECT_TRUE(a.run.invariants.z_bounded);
}

TEST(Scenario, ShortDeskRunWritesOutputs) {
  const fs::path dir = scratch("desk_run");
  ScenarioConfig c = parse_config_string(kDesk);
  c.output.dir = (dir / "out").string();
  c.evolution.steps = 3;
  const ScenarioRun r = run_scenario(c);
  ASSERT_FALSE(r.run.solver_failed) << r.run.failure;
  ASSERT_EQ(r.run.records.size(), 3u);
  // Linear response before damage: F grows in proportion to u.
  EXPECT_NEAR(r.run.records[2].F / r.run.records[0].F, 3.0, 1e-9);
  EXPECT_LT(r.run.invariants.max_balance_error, 1e-8);
  EXPECT_TRUE(fs::exists(dir / "out" / "curve.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "manifest.json"));
  const auto back = read_curve_csv((dir / "out" / "curve.csv").string());
  EXPECT_EQ(back.size(), 3u);
}
