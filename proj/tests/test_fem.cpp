#include <gtest/gtest.h>

#include <set>

#include "pff/errors.hpp"
#include "pff/fem.hpp"
#include "pff/mesh.hpp"
#include "support.hpp"

using namespace pff;

namespace {

MaterialModel linear_model(PlaneMode mode, EnergySplit split = EnergySplit::none, double eps_res = 1e-5) {
  MaterialModel m;
  m.kind = MaterialKind::linear;
  m.linear = LinearElasticParams::make(1000.0, 0.25, mode);
  m.stress_split = split;
  m.deg.eps_res = eps_res;
  return m;
}

MaterialModel hyper_model(FiniteSplit split) {
  MaterialModel m;
  m.kind = MaterialKind::hyperelastic;
  m.linear = LinearElasticParams::make(1000.0, 0.25, PlaneMode::plane_strain);
  m.hyper = HyperelasticParams::from_linear(1000.0, 0.25, 0.5);
  m.finite_split = split;
  return m;
}

struct Constraints {
  std::vector<char> mask;
  Eigen::VectorXd targets;
};

Constraints constrain(const Mesh& mesh, int dim, const std::vector<int>& nodes,
                      const std::function<std::array<double, 3>(const std::array<double, 3>&)>& field) {
  Constraints c;
  c.mask.assign(static_cast<std::size_t>(mesh.num_nodes() * dim), 0);
  c.targets = Eigen::VectorXd::Zero(mesh.num_nodes() * dim);
  for (int n : nodes) {
    const auto v = field(mesh.nodes[n]);
    for (int d = 0; d < dim; ++d) {
      c.mask[n * dim + d] = 1;
      c.targets[n * dim + d] = v[d];
    }
  }
  return c;
}

std::vector<int> union_of(const Mesh& m, std::initializer_list<const char*> names) {
  std::set<int> s;
  for (const char* n : names)
    for (int i : m.set(n)) s.insert(i);
  return {s.begin(), s.end()};
}

}  // namespace

TEST(Mesh, PlateCounts) {
  const Mesh m = generate_structured_plate(2, 2, 1.0, 1.0);
  EXPECT_EQ(m.num_nodes(), 9 + 4);
  EXPECT_EQ(m.num_elements(), 16);
  EXPECT_EQ(m.set("top").size(), 3u);
  const Mesh big = generate_structured_plate(50, 50, 100.0, 100.0);
  EXPECT_EQ(big.num_elements(), 50 * 50 * 4);
}

TEST(Mesh, SlitDuplicatesSeamNodes) {
  const SlitSpec slit{true, 0.5, 0.0, 0.5};
  const Mesh plain = generate_structured_plate(4, 4, 1.0, 1.0);
  const Mesh m = generate_structured_plate(4, 4, 1.0, 1.0, slit);
  EXPECT_EQ(m.num_nodes(), plain.num_nodes() + 2);  // x = 0 and x = 0.25; the tip stays shared
  int coincident = 0;
  for (int i = 0; i < m.num_nodes(); ++i)
    for (int j = i + 1; j < m.num_nodes(); ++j)
      if (m.nodes[i] == m.nodes[j]) ++coincident;
  EXPECT_EQ(coincident, 2);
  EXPECT_THROW(generate_structured_plate(4, 4, 1.0, 1.0, {true, 0.3, 0.0, 0.5}), InvalidSlit);
  EXPECT_THROW(generate_structured_plate(4, 4, 1.0, 1.0, {true, 0.5, 0.0, 0.3}), InvalidSlit);
}

TEST(Mesh, OtherGenerators) {
  const Mesh b = generate_block(3, 4, 5, 3.0, 4.0, 5.0, 1.0);
  EXPECT_EQ(b.num_nodes(), 4 * 5 * 6);
  EXPECT_EQ(b.num_elements(), 60);
  EXPECT_EQ(b.set("bottom").size(), 20u);
  const Mesh d = generate_disc(25.0, 4, 5.0);
  EXPECT_EQ(d.num_nodes(), 1 + 6 * (1 + 2 + 3 + 4));
  EXPECT_FALSE(d.set("top_arc").empty());
  EXPECT_EQ(d.set("top_center").size(), 1u);
  const Mesh l = generate_line(10, -1.0, 1.0);
  EXPECT_EQ(l.num_nodes(), 11);
  EXPECT_NEAR(l.nodes[l.set("center").front()][0], 0.0, 1e-15);
  const auto g = graded_lines(0.0, 10.0, 2.0, 0.5, 4.0, 6.0);
  EXPECT_DOUBLE_EQ(g.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.back(), 10.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_GT(g[i], g[i - 1]);
    EXPECT_LE(g[i] - g[i - 1], 2.0 + 1e-12);
    if (g[i - 1] >= 4.0 - 1e-12 && g[i] <= 6.0 + 1e-12) EXPECT_LE(g[i] - g[i - 1], 0.5 + 1e-12);
  }
}

TEST(Assembly, ZeroStateHasZeroResidual) {
  const Mesh m = generate_structured_plate(3, 3, 1.0, 1.0);
  Fem fem(m, linear_model(PlaneMode::plane_stress, EnergySplit::lambda_mu));
  EXPECT_EQ(fem.internal_force(Eigen::VectorXd::Zero(fem.ndof()), Eigen::VectorXd::Zero(m.num_nodes())).norm(), 0.0);
}

TEST(Assembly, UniaxialStretchHandOracle) {
  const Mesh m = generate_structured_plate(1, 1, 1.0, 1.0);
  Fem fem(m, linear_model(PlaneMode::plane_stress));
  const double e = 1e-3;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(fem.ndof());
  for (int n = 0; n < m.num_nodes(); ++n) u[2 * n] = e * m.nodes[n][0];
  const Eigen::VectorXd f = fem.internal_force(u, Eigen::VectorXd::Zero(m.num_nodes()));
  const auto& p = fem.material().linear;
  const double g0 = 1.0 + fem.material().deg.eps_res;
  const double sxx = g0 * p.E / (1.0 - p.nu * p.nu) * e, syy = p.nu * sxx;
  double fx = 0.0, fy = 0.0;
  for (int n : m.set("right")) fx += f[2 * n];
  for (int n : m.set("top")) fy += f[2 * n + 1];
  EXPECT_NEAR(fx, sxx, 1e-12 * sxx);
  EXPECT_NEAR(fy, syy, 1e-10 * sxx);
}

TEST(Assembly, AffineEnergiesAreExact) {
  const double e[3] = {1e-3, -4e-4, 6e-4};
  {
    const Mesh m = generate_structured_plate(3, 2, 3.0, 2.0);
    Fem fem(m, linear_model(PlaneMode::plane_strain));
    Eigen::VectorXd u(fem.ndof());
    for (int n = 0; n < m.num_nodes(); ++n) {
      u[2 * n] = e[0] * m.nodes[n][0] + 0.5 * e[2] * m.nodes[n][1];
      u[2 * n + 1] = e[1] * m.nodes[n][1] + 0.5 * e[2] * m.nodes[n][0];
    }
    const SymTensor eps = embed_plane(e[0], e[1], e[2], fem.material().linear);
    const double expected = 6.0 * energy_and_stress(eps, fem.material().linear).psi * (1.0 + 1e-5);
    EXPECT_LE(test::rel_diff(fem.elastic_energy(u, Eigen::VectorXd::Zero(m.num_nodes())), expected), 1e-12);
  }
  {
    const Mesh m = generate_block(2, 2, 2, 1.0, 2.0, 3.0, 0.5);
    Fem fem(m, linear_model(PlaneMode::full_3d));
    const SymTensor eps = test::random_sym(1e-3);
    Eigen::VectorXd u(fem.ndof());
    for (int n = 0; n < m.num_nodes(); ++n)
      for (int i = 0; i < 3; ++i) {
        u[3 * n + i] = 0.0;
        for (int j = 0; j < 3; ++j) u[3 * n + i] += eps(i, j) * m.nodes[n][j];
      }
    const double expected = 6.0 * energy_and_stress(eps, fem.material().linear).psi * (1.0 + 1e-5);
    EXPECT_LE(test::rel_diff(fem.elastic_energy(u, Eigen::VectorXd::Zero(m.num_nodes())), expected), 1e-12);
  }
}

TEST(Assembly, LinearTangentIsSymmetric) {
  const Mesh m = generate_structured_plate(4, 3, 2.0, 1.5);
  for (EnergySplit s : {EnergySplit::none, EnergySplit::lambda_mu, EnergySplit::kg}) {
    Fem fem(m, linear_model(PlaneMode::plane_strain, s));
    Eigen::VectorXd u(fem.ndof()), z(m.num_nodes());
    for (int i = 0; i < u.size(); ++i) u[i] = test::uniform(-1e-3, 1e-3);
    for (int i = 0; i < z.size(); ++i) z[i] = test::uniform(0.0, 1.0);
    fem.internal_force(u, z, true);
    const Eigen::SparseMatrix<double> K = fem.tangent();
    const Eigen::SparseMatrix<double> Kt = K.transpose();
    EXPECT_LE((K - Kt).norm(), 1e-10 * K.norm());
  }
}

namespace {
void expect_tangent_matches_fd(Fem& fem, double u_scale) {
  const Mesh& m = fem.mesh();
  Eigen::VectorXd u(fem.ndof()), z(m.num_nodes()), v(fem.ndof());
  for (int i = 0; i < u.size(); ++i) {
    u[i] = test::uniform(-u_scale, u_scale);
    v[i] = test::uniform(-1.0, 1.0);
  }
  for (int i = 0; i < z.size(); ++i) z[i] = test::uniform(0.0, 1.0);
  fem.internal_force(u, z, true);
  const Eigen::VectorXd kv = fem.tangent() * v;
  const double h = 1e-7 * u_scale;
  const Eigen::VectorXd fd = (fem.internal_force(u + h * v, z) - fem.internal_force(u - h * v, z)) / (2.0 * h);
  EXPECT_LE((kv - fd).norm(), 1e-6 * kv.norm());
}
}  // namespace

TEST(Assembly, TangentMatchesFiniteDifferences) {
  const Mesh m = generate_structured_plate(1, 1, 1.0, 1.0);
  for (EnergySplit s : {EnergySplit::none, EnergySplit::lambda_mu, EnergySplit::kg}) {
    for (PlaneMode pm : {PlaneMode::plane_strain, PlaneMode::plane_stress}) {
      Fem fem(m, linear_model(pm, s));
      expect_tangent_matches_fd(fem, 1e-3);
    }
  }
  for (FiniteSplit s : {FiniteSplit::none, FiniteSplit::invariant}) {
    Fem fem(m, hyper_model(s));
    expect_tangent_matches_fd(fem, 0.05);
  }
  const Mesh b = generate_block(1, 1, 1, 1.0, 1.0, 1.0, 0.5);
  Fem fem3(b, linear_model(PlaneMode::full_3d, EnergySplit::lambda_mu));
  expect_tangent_matches_fd(fem3, 1e-3);
}

TEST(Solve, PatchTestTri3) {
  const Mesh m = generate_structured_plate(4, 4, 2.0, 2.0);
  for (EnergySplit s : {EnergySplit::none, EnergySplit::lambda_mu}) {
    Fem fem(m, linear_model(PlaneMode::plane_stress, s));
    auto field = [](const std::array<double, 3>& p) {
      return std::array<double, 3>{1e-3 * p[0] + 2e-4 * p[1] + 1e-4, -3e-4 * p[0] + 5e-4 * p[1], 0.0};
    };
    const Constraints c = constrain(m, 2, union_of(m, {"left", "right", "top", "bottom"}), field);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(fem.ndof());
    const SolveReport rep = fem.solve(u, Eigen::VectorXd::Zero(m.num_nodes()), c.mask, c.targets);
    ASSERT_TRUE(rep.converged) << rep.failure;
    for (int n = 0; n < m.num_nodes(); ++n) {
      const auto v = field(m.nodes[n]);
      EXPECT_NEAR(u[2 * n], v[0], 1e-10 * 2e-3);
      EXPECT_NEAR(u[2 * n + 1], v[1], 1e-10 * 2e-3);
    }
  }
}

TEST(Solve, PatchTestHex8) {
  const Mesh m = generate_block(3, 3, 3, 1.0, 1.0, 1.0, 0.5);
  Fem fem(m, linear_model(PlaneMode::full_3d));
  const SymTensor g = test::random_sym(1e-3);
  auto field = [&](const std::array<double, 3>& p) {
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v[i] += g(i, j) * p[j];
    return v;
  };
  const Constraints c = constrain(m, 3, union_of(m, {"bottom", "top", "sides"}), field);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(fem.ndof());
  ASSERT_TRUE(fem.solve(u, Eigen::VectorXd::Zero(m.num_nodes()), c.mask, c.targets).converged);
  for (int n = 0; n < m.num_nodes(); ++n) {
    const auto v = field(m.nodes[n]);
    for (int d = 0; d < 3; ++d) EXPECT_NEAR(u[3 * n + d], v[d], 1e-12);
  }
}

namespace {
// Strip [0,W]x[0,H]: rollers on left and bottom, top pulled by delta. Returns top and bottom reactions.
std::pair<double, double> strip_reactions(Fem& fem, const Eigen::VectorXd& z, double delta, Eigen::VectorXd* out = nullptr) {
  const Mesh& m = fem.mesh();
  std::vector<char> mask(static_cast<std::size_t>(fem.ndof()), 0);
  Eigen::VectorXd t = Eigen::VectorXd::Zero(fem.ndof());
  for (int n : m.set("left")) mask[2 * n] = 1;
  for (int n : m.set("bottom")) mask[2 * n + 1] = 1;
  for (int n : m.set("top")) {
    mask[2 * n + 1] = 1;
    t[2 * n + 1] = delta;
  }
  Eigen::VectorXd u = Eigen::VectorXd::Zero(fem.ndof());
  const SolveReport rep = fem.solve(u, z, mask, t);
  EXPECT_TRUE(rep.converged) << rep.failure;
  const Eigen::VectorXd f = fem.internal_force(u, z);
  double top = 0.0, bottom = 0.0;
  for (int n : m.set("top")) top += f[2 * n + 1];
  for (int n : m.set("bottom")) bottom += f[2 * n + 1];
  if (out) *out = u;
  return {top, bottom};
}
}  // namespace

TEST(Solve, UniformStripTension) {
  const double W = 10.0, H = 5.0, delta = 5e-3;
  const Mesh m = generate_structured_plate(4, 2, W, H);
  for (EnergySplit s : {EnergySplit::none, EnergySplit::lambda_mu}) {
    Fem fem(m, linear_model(PlaneMode::plane_stress, s, 0.0));
    Eigen::VectorXd u;
    const auto [top, bottom] = strip_reactions(fem, Eigen::VectorXd::Zero(m.num_nodes()), delta, &u);
    const auto& p = fem.material().linear;
    const double F = p.E * delta / H * W;
    EXPECT_NEAR(top, F, 1e-8 * F);
    EXPECT_NEAR(top + bottom, 0.0, 1e-8 * F);
    for (int n : m.set("right")) EXPECT_NEAR(u[2 * n], -p.nu * delta / H * W, 1e-8 * delta);
  }
}

TEST(Solve, ZeroIncrementGivesZeroDisplacement) {
  const Mesh m = generate_structured_plate(4, 2, 10.0, 5.0);
  Fem fem(m, linear_model(PlaneMode::plane_stress, EnergySplit::lambda_mu));
  Eigen::VectorXd u;
  const auto r = strip_reactions(fem, Eigen::VectorXd::Zero(m.num_nodes()), 0.0, &u);
  EXPECT_EQ(u.norm(), 0.0);
  EXPECT_EQ(r.first, 0.0);
}

TEST(Solve, BrokenBandActsAsSeriesSpring) {
  const double W = 2.0, H = 10.0, delta = 1e-2;
  const Mesh m = generate_structured_plate(2, 10, W, H);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m.num_nodes());
  for (int n = 0; n < m.num_nodes(); ++n)
    if (m.nodes[n][1] >= 4.0 - 1e-12 && m.nodes[n][1] <= 6.0 + 1e-12) z[n] = 1.0;
  double F[2];
  const double res[2] = {1e-5, 2e-5};
  for (int k = 0; k < 2; ++k) {
    Fem fem(m, linear_model(PlaneMode::plane_stress, EnergySplit::none, res[k]));
    F[k] = strip_reactions(fem, z, delta).first;
  }
  EXPECT_NEAR(F[1] / F[0], 2.0, 0.02);
  // Intact stiffness would transmit E delta / H * W; the band cuts it by roughly eps_res.
  const double intact = 1000.0 * delta / H * W;
  EXPECT_LT(F[0], 1e-3 * intact);
  EXPECT_GT(F[0], 1e-6 * intact);
}
