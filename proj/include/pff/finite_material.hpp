#pragma once

#include <array>
#include <cstdint>

#include "pff/linear_material.hpp"
#include "pff/tensor.hpp"

namespace pff {

/// none = g times the full energy; invariant and stretch are the two finite-strain splits.
enum class FiniteSplit { none, invariant, stretch };

struct HyperelasticParams {
  double mu = 1.0;
  double k = 0.0;  // mu2 / mu; 0 is Neo-Hooke
  double K = 1.0;

  static HyperelasticParams make(double mu, double k, double K);
  /// Small-strain consistent parameters (mu = E / 2(1+nu), K = E / 3(1-2nu)).
  static HyperelasticParams from_linear(double E, double nu, double k = 0.0);
};

/// U = K/2 (J-1)^2
double volumetric_energy(double J, const HyperelasticParams& p);
/// mu/2 [(I1 - 3) + k (I2^{3/2} - 3 sqrt 3)]
double isochoric_energy(double i1bar, double i2bar, const HyperelasticParams& p);

struct InvariantSplitState {
  double i1_plus = 3.0, i1_minus = 3.0;
  double i2_plus = 3.0, i2_minus = 3.0;
  double j_plus = 1.0, j_minus = 1.0;
};
InvariantSplitState invariant_split(const Tensor2& F);

struct StretchSplitState {
  std::array<double, 3> lambda{1, 1, 1};
  std::array<double, 3> plus{1, 1, 1};
  std::array<double, 3> minus{1, 1, 1};
  std::array<double, 3> elastic{1, 1, 1};
  std::array<double, 3> inelastic{1, 1, 1};
};
StretchSplitState stretch_split(const Tensor2& F, double z);

/// Principal stretches (descending) with referential (N) and spatial (n) directions.
struct PrincipalStretches {
  std::array<double, 3> lambda{1, 1, 1};
  std::array<Vec3, 3> N{};
  std::array<Vec3, 3> n{};
};
PrincipalStretches principal_stretches(const Tensor2& F);

double degraded_energy(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                       const DegradationParams& deg);
Tensor2 piola_stress(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                     const DegradationParams& deg);
/// dP_ij / dF_kl at row 3i+j, column 3k+l.
Mat9 piola_tangent(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                   const DegradationParams& deg);

/// Energy driving damage: -dPsi/dz. For g-based methods this is -g'(z) Psi+.
double damage_drive(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                    const DegradationParams& deg);

/// Number of times a compressive second invariant was clamped at zero (process-wide).
std::uint64_t invariant_clamp_events();

}  // namespace pff
