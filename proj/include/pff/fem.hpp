#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "pff/driving_forces.hpp"
#include "pff/finite_material.hpp"
#include "pff/linear_material.hpp"
#include "pff/mesh.hpp"
#include "pff/phasefield.hpp"

namespace pff {

enum class MaterialKind { linear, hyperelastic };

/// Which stress the stress-based criteria see: the undamaged (effective) or the degraded one.
enum class DriveStress { effective, degraded };

struct MaterialModel {
  MaterialKind kind = MaterialKind::linear;
  LinearElasticParams linear;
  HyperelasticParams hyper;
  EnergySplit stress_split = EnergySplit::none;
  FiniteSplit finite_split = FiniteSplit::none;
  DegradationParams deg;
  double thickness = 1.0;  // 2D only
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double reference = 0.0;
  double seconds = 0.0;
  std::string failure;
};

class LinearSolver;

/// Displacement problem on a fixed mesh: assembly, equilibrium solves and phase-field coupling.
class Fem {
public:
  Fem(const Mesh& mesh, MaterialModel material);
  ~Fem();
  Fem(const Fem&) = delete;
  Fem& operator=(const Fem&) = delete;

  const Mesh& mesh() const noexcept { return mesh_; }
  const MaterialModel& material() const noexcept { return mat_; }
  int dofs_per_node() const noexcept { return dim_; }
  int ndof() const noexcept { return mesh_.num_nodes() * dim_; }
  int num_points() const noexcept { return static_cast<int>(weight_.size()); }

  /// Internal force vector; with want_tangent the tangent is kept for tangent().
  Eigen::VectorXd internal_force(const Eigen::VectorXd& u, const Eigen::VectorXd& z, bool want_tangent = false);
  const Eigen::SparseMatrix<double>& tangent() const noexcept { return K_; }

  /// Newton iteration at frozen z. Entries of u at constrained dofs are set to targets first.
  SolveReport solve(Eigen::VectorXd& u, const Eigen::VectorXd& z, const std::vector<char>& constrained,
                    const Eigen::VectorXd& targets, double rel_tol = 1e-10, int max_iter = 30);

  PhaseOperators phase_operators() const;
  /// Weak nodal drive from the converged state at the integration points.
  NodalDrive nodal_drive(const Eigen::VectorXd& u, const Eigen::VectorXd& z, const DrivingForceSpec& spec,
                         DriveStress stress) const;
  /// Local states (effective or degraded stress) at every integration point.
  std::vector<PointState> point_states(const Eigen::VectorXd& u, const Eigen::VectorXd& z, DriveStress stress) const;
  /// Stored elastic energy per unit thickness (no crack term).
  double elastic_energy(const Eigen::VectorXd& u, const Eigen::VectorXd& z) const;
  /// Stored elastic energy plus Gc times the regularized crack surface.
  double total_energy(const Eigen::VectorXd& u, const Eigen::VectorXd& z, double Gc, double lc) const;

private:
  void precompute();
  /// Plane stress with a tension/compression split solves sigma_zz = 0 pointwise.
  bool condensed_plane_stress() const noexcept;
  SymTensor point_strain(const Eigen::Matrix3d& H, double zq) const;
  double z_at(int q, const Eigen::VectorXd& z) const;
  void gather(int e, const Eigen::VectorXd& u, double* ue) const;
  double point_energy(int q, const double* ue, double zq) const;

  const Mesh& mesh_;
  MaterialModel mat_;
  int dim_ = 2;
  int npe_ = 3;
  int nq_ = 1;  // points per element
  std::vector<double> weight_;
  std::vector<double> N_;   // [q][a]
  std::vector<double> dN_;  // [q][a][d]
  Eigen::SparseMatrix<double> K_;
  std::vector<int> scatter_;  // [e][i][j] -> value index in K_
  std::unique_ptr<LinearSolver> solver_;
};

/// In-plane stress of a plane-stress or plane-strain embedding: P^T sigma.
Eigen::Vector3d project_plane_stress(const SymTensor& sigma, const LinearElasticParams& p);

}  // namespace pff
