#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "pff/tensor.hpp"

namespace pff {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct EvolutionParams {
  double lc = 1.0;      // mm
  double Gc = 1.0;      // N/mm
  double dt = 1.0;      // s
  double c_rule = 1.0;  // tau = c_rule dt

  /// Throws NonPositiveParameter on non-positive entries.
  void validate() const;
  double tau() const noexcept { return c_rule * dt; }
  double mobility() const noexcept { return lc / (tau() * Gc); }
};

struct Mobility {
  double M = 0.0;    // mm^2 / (N s)
  double tau = 0.0;  // s
};
/// tau = c dt, M = lc / (tau Gc).
Mobility mobility_rule(double dt, double c_rule, double lc, double Gc);

/// gamma = z^2/(2 lc) + lc/2 |grad z|^2
double surface_density(double z, const Vec3& grad_z, double lc);

/// Nodal operators of the phase field: lumped mass and gradient stiffness.
struct PhaseOperators {
  Eigen::VectorXd lumped_mass;
  SparseMatrix stiffness;
  std::vector<char> fixed;  // nodes held at their current value
  /// Largest row-sum bound of lumped_mass^{-1} |stiffness|.
  double gershgorin() const;
};

/// r = -(M_L z + lc^2 K z)
Eigen::VectorXd resistance_term(const Eigen::VectorXd& z, const PhaseOperators& ops, double lc);

/// Weak nodal drive f_i(z) = constant_i + linear_i (1 - z_i). Either part may be empty.
struct NodalDrive {
  Eigen::VectorXd constant;
  Eigen::VectorXd linear;
};

struct PhaseStepReport {
  int substeps = 0;
  double max_increment = 0.0;
};

/// Explicit clamped update over one time step dt with sub-cycling.
/// h_min is the smallest element size used by the diffusion bound; dim the spatial dimension.
PhaseStepReport step_phase_field(Eigen::VectorXd& z, const NodalDrive& drive, const PhaseOperators& ops,
                                 const EvolutionParams& params, double h_min, int dim);

/// exp(-|x|/lc)
double analytic_profile(double x, double lc);
/// scale * integral_0^L exp(-x/lc) dx, evaluated by composite Simpson quadrature.
double crack_volume(double lc, double half_length = 1.0, double scale = 200.0);

}  // namespace pff
