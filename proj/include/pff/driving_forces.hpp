#pragma once

#include <array>
#include <optional>
#include <string>

#include "pff/linear_material.hpp"
#include "pff/tensor.hpp"

namespace pff {

enum class DriveKind {
  griffith,
  spectral_split,
  lambda_mu_split,
  kg_split,
  tresca,
  rankine,
  compressive_rankine,
  mohr_coulomb,
  beltrami,
  beltrami_stretch,
};

enum class TrescaForm { principal, tau_principal, tau_deviatoric };

struct DrivingForceSpec {
  DriveKind kind = DriveKind::griffith;
  double sigma_c = 0.0;   // MPa
  double tau_c = 0.0;     // MPa
  double rm_t = 0.0;      // MPa, tensile resistance
  double rm_c = 0.0;      // MPa, compressive resistance
  double eps_c = 0.0;     // -
  double lambda_c = 0.0;  // -
  TrescaForm tresca_form = TrescaForm::principal;
  double lc = 1.0;  // mm
  double Gc = 1.0;  // N/mm

  /// Throws NonPositiveParameter when a threshold required by kind is missing.
  void validate() const;
  bool variational() const noexcept;
  /// Energy split that defines the variational drive (none for griffith).
  EnergySplit energy_split() const noexcept;
  /// Compression/tension strength ratio m = Rc / Rt.
  double m() const noexcept { return rm_c / rm_t; }
};

DriveKind parse_drive_kind(const std::string& s);
std::string to_string(DriveKind k);

/// Local mechanical state at an integration point.
struct PointState {
  SymTensor eps;
  SymTensor sigma;  // Cauchy stress used by stress-based criteria
  double z = 0.0;
  std::optional<std::array<double, 3>> stretches;  // principal stretches (finite strain)
};

/// 2 (1-z) (lc/Gc) psi_plus for an already evaluated tensile energy.
double normalized_energy_drive(double psi_plus, double z, const DrivingForceSpec& spec);

double griffith_variational(const PointState& s, const DrivingForceSpec& spec, const LinearElasticParams& p);
double rankine(const PointState& s, const DrivingForceSpec& spec);
double tresca(const PointState& s, const DrivingForceSpec& spec);
double compressive_rankine(const PointState& s, const DrivingForceSpec& spec);
double mohr_coulomb(const PointState& s, const DrivingForceSpec& spec);
/// m sigma_I - sigma_III
double mohr_coulomb_effective_stress(const PointState& s, double m);
double beltrami(const PointState& s, const DrivingForceSpec& spec);
double beltrami_stretch(const PointState& s, const DrivingForceSpec& spec);

/// Dispatch on spec.kind. Variational kinds evaluate the linear energy split from s.eps.
double effective_drive(const PointState& s, const DrivingForceSpec& spec, const LinearElasticParams& p);

}  // namespace pff
