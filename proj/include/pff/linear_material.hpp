#pragma once

#include "pff/tensor.hpp"

namespace pff {

enum class PlaneMode { plane_stress, plane_strain, full_3d };

/// none = unsplit energy; spectral = energy-orthogonal principal split.
enum class EnergySplit { none, spectral, kg, lambda_mu };

struct LinearElasticParams {
  double E = 1.0;
  double nu = 0.0;
  PlaneMode mode = PlaneMode::full_3d;

  /// Throws NonPositiveParameter on E <= 0 or nu outside (-1, 0.5).
  static LinearElasticParams make(double E, double nu, PlaneMode mode = PlaneMode::full_3d);

  double lambda() const noexcept { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
  double mu() const noexcept { return E / (2.0 * (1.0 + nu)); }
  double bulk() const noexcept { return E / (3.0 * (1.0 - 2.0 * nu)); }
  /// Isotropic stiffness in engineering Voigt form.
  Mat6 stiffness() const;
};

struct DegradationParams {
  double eps_res = 1e-5;
};

struct Degradation {
  double g = 1.0;
  double dg = -2.0;
};

/// g = (1-z)^2 + eps_res, g' = -2(1-z). Throws OutOfRangeZ outside [0,1].
Degradation degradation(double z, const DegradationParams& p);

struct EnergyStress {
  double psi = 0.0;
  SymTensor sigma;
};
EnergyStress energy_and_stress(const SymTensor& eps, const LinearElasticParams& p);

struct SplitEnergy {
  double plus = 0.0;
  double minus = 0.0;
};

/// Tensile and compressive energies. For EnergySplit::none all energy is tensile.
SplitEnergy positive_negative_energy(const SymTensor& eps, EnergySplit method, const LinearElasticParams& p);

struct SplitStress {
  SymTensor plus;
  SymTensor minus;
};
SplitStress split_stress(const SymTensor& eps, EnergySplit method, const LinearElasticParams& p);

/// sigma = g sigma+ + sigma-. The spectral split is rejected here.
SymTensor degraded_stress(const SymTensor& eps, double z, EnergySplit method, const LinearElasticParams& p,
                          const DegradationParams& deg);

/// d sigma / d eps with strain in engineering Voigt order (xx, yy, zz, 2yz, 2xz, 2xy).
Mat6 degraded_tangent(const SymTensor& eps, double z, EnergySplit method, const LinearElasticParams& p,
                      const DegradationParams& deg);

/// Plane stress of a split material: the out-of-plane strain is solved from sigma_zz = 0
/// and the in-plane tangent (xx, yy, 2xy) is statically condensed.
struct PlaneStressPoint {
  SymTensor eps;
  SymTensor sigma;
  Eigen::Matrix3d tangent = Eigen::Matrix3d::Zero();
};
PlaneStressPoint plane_stress_point(double exx, double eyy, double gxy, double z, EnergySplit method,
                                    const LinearElasticParams& p, const DegradationParams& deg, bool want_tangent);

/// sigma_c = sqrt(E Gc / (3 lc)).
double critical_stress(double E, double Gc, double lc);

/// Energy-orthogonal tension/compression strains: eps+ = C^{-1/2} (C^{1/2} eps)+.
TensionCompression split_strain_orthogonal(const SymTensor& eps, const LinearElasticParams& p);

/// Lifts an in-plane strain (exx, eyy, engineering gxy) to 3D using the plane rule of p.
SymTensor embed_plane(double exx, double eyy, double gxy, const LinearElasticParams& p);

/// d eps_zz / d exx (= d eps_zz / d eyy) of the plane embedding.
double plane_out_of_plane_factor(const LinearElasticParams& p);

}  // namespace pff
