#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pff/driving_forces.hpp"
#include "pff/fem.hpp"
#include "pff/phasefield.hpp"

namespace pff {

/// Prescribed displacements u_d = scale_d * ubar and the dofs whose reactions are reported.
struct LoadCase {
  std::vector<int> dofs;
  std::vector<double> scale;
  std::vector<int> reaction_dofs;
  double reaction_sign = 1.0;
  std::vector<int> opposite_dofs;
  std::vector<int> fixed_phase_nodes;  // z held at its initial value
};

struct StaggeredOptions {
  double du = 1e-4;  // mm per step
  int steps = 100;
  bool stop_on_failure = true;
  double failure_fraction = 0.05;
  double newton_tol = 1e-11;
  int newton_max_iter = 100;
  DriveStress drive_stress = DriveStress::effective;
};

struct StepRecord {
  int step = 0;
  double u = 0.0;
  double F = 0.0;
  double F_opposite = 0.0;
  double max_z = 0.0;
  int iters = 0;
  int substeps = 0;
  double seconds = 0.0;
};

/// Runtime checks of the phase-field and equilibrium invariants.
struct InvariantLog {
  bool z_monotone = true;
  bool z_bounded = true;
  double max_balance_error = 0.0;  // |F + F_opposite| / max(|F|, |F_opposite|)
  int checked_steps = 0;
};

struct RunResult {
  std::vector<StepRecord> records;
  Eigen::VectorXd u;
  Eigen::VectorXd z;
  InvariantLog invariants;
  bool solver_failed = false;
  std::string failure;
  int peak_step = -1;
  double F_max = 0.0;
  double u_at_F_max = 0.0;
  int first_damage_node = -1;  // first node with z > 0.9
  int first_damage_step = -1;
};

class StaggeredSolver {
public:
  using StepCallback = std::function<void(const StepRecord&, const Eigen::VectorXd& u, const Eigen::VectorXd& z)>;

  StaggeredSolver(Fem& fem, LoadCase load, DrivingForceSpec drive, EvolutionParams evo, StaggeredOptions opt);

  void set_initial_phase(const Eigen::VectorXd& z0);
  /// Runs the load steps; solver failures end the run with a partial record.
  RunResult run(const StepCallback& on_step = {});

private:
  Fem& fem_;
  LoadCase load_;
  DrivingForceSpec drive_;
  EvolutionParams evo_;
  StaggeredOptions opt_;
  Eigen::VectorXd z0_;
};

}  // namespace pff
