#include "pff/phasefield.hpp"

#include <algorithm>
#include <cmath>

#include "pff/errors.hpp"

namespace pff {

void EvolutionParams::validate() const {
  if (!(lc > 0.0)) throw NonPositiveParameter("lc must be positive");
  if (!(Gc > 0.0)) throw NonPositiveParameter("Gc must be positive");
  if (!(dt > 0.0)) throw NonPositiveParameter("dt must be positive");
  if (!(c_rule > 0.0)) throw NonPositiveParameter("c_rule must be positive");
}

Mobility mobility_rule(double dt, double c_rule, double lc, double Gc) {
  EvolutionParams p{lc, Gc, dt, c_rule};
  p.validate();
  return {p.mobility(), p.tau()};
}

double surface_density(double z, const Vec3& g, double lc) {
  return z * z / (2.0 * lc) + 0.5 * lc * (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

double PhaseOperators::gershgorin() const {
  double bound = 0.0;
  for (int i = 0; i < stiffness.outerSize(); ++i) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(stiffness, i); it; ++it) row += std::abs(it.value());
    bound = std::max(bound, row / lumped_mass[i]);
  }
  return bound;
}

Eigen::VectorXd resistance_term(const Eigen::VectorXd& z, const PhaseOperators& ops, double lc) {
  if (z.size() != ops.lumped_mass.size() || z.size() != ops.stiffness.rows())
    throw DimensionMismatch("phase field and operators differ in size");
  Eigen::VectorXd r = -(ops.lumped_mass.cwiseProduct(z) + lc * lc * (ops.stiffness * z));
  return r;
}

PhaseStepReport step_phase_field(Eigen::VectorXd& z, const NodalDrive& drive, const PhaseOperators& ops,
                                 const EvolutionParams& params, double h_min, int dim) {
  const Eigen::Index n = z.size();
  if (ops.lumped_mass.size() != n || (drive.constant.size() != 0 && drive.constant.size() != n) ||
      (drive.linear.size() != 0 && drive.linear.size() != n))
    throw DimensionMismatch("phase step inputs differ in size");

  const double tau = params.tau(), lc = params.lc;
  // Forward Euler on dz/dt = (1/tau)(f - z - lc^2 M^{-1} K z) is stable for
  // dt_sub (1 + lc^2 rho) / tau < 2; keep a 0.4 safety margin on both bounds.
  const double rho = ops.gershgorin();
  double dt_sub = 0.4 * 2.0 * tau / (1.0 + lc * lc * rho);
  if (h_min > 0.0) dt_sub = std::min(dt_sub, 0.4 * tau * h_min * h_min / (2.0 * dim * lc * lc));
  const int substeps = std::max(1, static_cast<int>(std::ceil(params.dt / dt_sub - 1e-12)));
  const double h = params.dt / substeps;

  const Eigen::VectorXd z0 = z;
  Eigen::VectorXd kz(n);
  for (int s = 0; s < substeps; ++s) {
    kz.noalias() = ops.stiffness * z;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!ops.fixed.empty() && ops.fixed[i]) continue;
      double f = -ops.lumped_mass[i] * z[i] - lc * lc * kz[i];
      if (drive.constant.size()) f += drive.constant[i];
      if (drive.linear.size()) f += drive.linear[i] * (1.0 - z[i]);
      const double dz = (h / tau) * pos_part(f) / ops.lumped_mass[i];
      z[i] = std::min(1.0, z[i] + dz);
    }
  }
  return {substeps, (z - z0).cwiseAbs().maxCoeff()};
}

double analytic_profile(double x, double lc) { return std::exp(-std::abs(x) / lc); }

double crack_volume(double lc, double half_length, double scale) {
  if (!(lc > 0.0) || !(half_length > 0.0)) throw NonPositiveParameter("crack volume needs positive lc and length");
  constexpr int n = 2000;  // even
  const double h = half_length / n;
  double s = analytic_profile(0.0, lc) + analytic_profile(half_length, lc);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * analytic_profile(i * h, lc);
  return scale * s * h / 3.0;
}

}  // namespace pff
