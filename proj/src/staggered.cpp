#include "pff/staggered.hpp"

#include <chrono>
#include <cmath>

#include "pff/errors.hpp"

namespace pff {

StaggeredSolver::StaggeredSolver(Fem& fem, LoadCase load, DrivingForceSpec drive, EvolutionParams evo,
                                 StaggeredOptions opt)
    : fem_(fem), load_(std::move(load)), drive_(drive), evo_(evo), opt_(opt) {
  if (load_.dofs.size() != load_.scale.size()) throw DimensionMismatch("load case dofs and scales differ in size");
  drive_.validate();
  evo_.validate();
  z0_ = Eigen::VectorXd::Zero(fem_.mesh().num_nodes());
}

void StaggeredSolver::set_initial_phase(const Eigen::VectorXd& z0) {
  if (z0.size() != fem_.mesh().num_nodes()) throw DimensionMismatch("initial phase field has the wrong size");
  for (Eigen::Index i = 0; i < z0.size(); ++i)
    if (!(z0[i] >= 0.0 && z0[i] <= 1.0)) throw OutOfRangeZ(z0[i]);
  z0_ = z0;
}

RunResult StaggeredSolver::run(const StepCallback& on_step) {
  RunResult res;
  const int n = fem_.ndof();
  res.u = Eigen::VectorXd::Zero(n);
  res.z = z0_;

  std::vector<char> constrained(static_cast<std::size_t>(n), 0);
  for (int d : load_.dofs) constrained[d] = 1;
  Eigen::VectorXd targets = Eigen::VectorXd::Zero(n);

  PhaseOperators ops = fem_.phase_operators();
  ops.fixed.assign(static_cast<std::size_t>(fem_.mesh().num_nodes()), 0);
  for (int i : load_.fixed_phase_nodes) ops.fixed[i] = 1;

  bool first_damage_seen = false;
  for (int step = 1; step <= opt_.steps; ++step) {
    const auto t0 = std::chrono::steady_clock::now();
    const double ubar = step * opt_.du;
    for (std::size_t k = 0; k < load_.dofs.size(); ++k) targets[load_.dofs[k]] = load_.scale[k] * ubar;

    SolveReport rep;
    try {
      rep = fem_.solve(res.u, res.z, constrained, targets, opt_.newton_tol, opt_.newton_max_iter);
    } catch (const Error& e) {
      rep.converged = false;
      rep.failure = e.what();
    }
    if (!rep.converged) {
      res.solver_failed = true;
      res.failure = "step " + std::to_string(step) + ": " + rep.failure;
      break;
    }

    // Reactions of the converged state at the current phase field.
    const Eigen::VectorXd f = fem_.internal_force(res.u, res.z, false);
    double fl = 0.0, fo = 0.0;
    for (int d : load_.reaction_dofs) fl += f[d];
    for (int d : load_.opposite_dofs) fo += f[d];

    const NodalDrive drive = fem_.nodal_drive(res.u, res.z, drive_, opt_.drive_stress);
    const Eigen::VectorXd z_prev = res.z;
    const PhaseStepReport prep = step_phase_field(res.z, drive, ops, evo_, fem_.mesh().h_nominal, fem_.mesh().dim());

    InvariantLog& inv = res.invariants;
    for (Eigen::Index i = 0; i < res.z.size(); ++i) {
      if (res.z[i] < z_prev[i]) inv.z_monotone = false;
      if (!(res.z[i] >= 0.0 && res.z[i] <= 1.0)) inv.z_bounded = false;
    }
    const double denom = std::max(std::abs(fl), std::abs(fo));
    if (denom > 0.0) inv.max_balance_error = std::max(inv.max_balance_error, std::abs(fl + fo) / denom);
    ++inv.checked_steps;

    StepRecord rec;
    rec.step = step;
    rec.u = ubar;
    rec.F = load_.reaction_sign * fl;
    rec.F_opposite = -load_.reaction_sign * fo;
    rec.max_z = res.z.maxCoeff();
    rec.iters = rep.iterations;
    rec.substeps = prep.substeps;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.records.push_back(rec);

    if (rec.F > res.F_max) {
      res.F_max = rec.F;
      res.u_at_F_max = rec.u;
      res.peak_step = step;
    }
    if (!first_damage_seen) {
      Eigen::Index idx;
      if (res.z.maxCoeff(&idx) > 0.9) {
        first_damage_seen = true;
        res.first_damage_node = static_cast<int>(idx);
        res.first_damage_step = step;
      }
    }
    if (on_step) on_step(rec, res.u, res.z);

    if (opt_.stop_on_failure && res.peak_step > 0 && step > res.peak_step &&
        rec.F < opt_.failure_fraction * res.F_max)
      break;
  }
  return res;
}

}  // namespace pff
