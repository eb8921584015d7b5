#include "pff/driving_forces.hpp"

#include <algorithm>
#include <cmath>

#include "pff/errors.hpp"

namespace pff {

namespace {

std::array<double, 3> principal(const SymTensor& a) { return eig_sym_sorted(a).values; }

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw NonPositiveParameter(std::string("driving force needs positive ") + name);
}

struct KindName {
  DriveKind kind;
  const char* name;
};
constexpr KindName kKindNames[] = {
    {DriveKind::griffith, "griffith"},
    {DriveKind::spectral_split, "spectral_split"},
    {DriveKind::lambda_mu_split, "lambda_mu_split"},
    {DriveKind::kg_split, "KG_split"},
    {DriveKind::tresca, "tresca"},
    {DriveKind::rankine, "rankine"},
    {DriveKind::compressive_rankine, "compressive_rankine"},
    {DriveKind::mohr_coulomb, "mohr_coulomb"},
    {DriveKind::beltrami, "beltrami"},
    {DriveKind::beltrami_stretch, "beltrami_stretch"},
};

}  // namespace

DriveKind parse_drive_kind(const std::string& s) {
  for (const auto& kn : kKindNames)
    if (s == kn.name) return kn.kind;
  throw NonPositiveParameter("unknown driving force '" + s + "'");
}

std::string to_string(DriveKind k) {
  for (const auto& kn : kKindNames)
    if (k == kn.kind) return kn.name;
  return "unknown";
}

void DrivingForceSpec::validate() const {
  require_positive(lc, "lc");
  require_positive(Gc, "Gc");
  switch (kind) {
    case DriveKind::rankine:
    case DriveKind::compressive_rankine:
      require_positive(sigma_c, "sigma_c");
      break;
    case DriveKind::tresca:
      if (tresca_form == TrescaForm::principal)
        require_positive(sigma_c, "sigma_c");
      else
        require_positive(tau_c, "tau_c");
      break;
    case DriveKind::mohr_coulomb:
      require_positive(rm_t, "Rm_t");
      require_positive(rm_c, "Rm_c");
      break;
    case DriveKind::beltrami:
      require_positive(eps_c, "eps_c");
      break;
    case DriveKind::beltrami_stretch:
      if (!(lambda_c > 1.0)) throw NonPositiveParameter("driving force needs lambda_c > 1");
      break;
    default:
      break;
  }
}

bool DrivingForceSpec::variational() const noexcept {
  return kind == DriveKind::griffith || kind == DriveKind::spectral_split || kind == DriveKind::lambda_mu_split ||
         kind == DriveKind::kg_split;
}

EnergySplit DrivingForceSpec::energy_split() const noexcept {
  switch (kind) {
    case DriveKind::spectral_split:
      return EnergySplit::spectral;
    case DriveKind::lambda_mu_split:
      return EnergySplit::lambda_mu;
    case DriveKind::kg_split:
      return EnergySplit::kg;
    default:
      return EnergySplit::none;
  }
}

double normalized_energy_drive(double psi_plus, double z, const DrivingForceSpec& spec) {
  return 2.0 * (1.0 - z) * (spec.lc / spec.Gc) * psi_plus;
}

double griffith_variational(const PointState& s, const DrivingForceSpec& spec, const LinearElasticParams& p) {
  const double psi = positive_negative_energy(s.eps, spec.energy_split(), p).plus;
  return normalized_energy_drive(psi, s.z, spec);
}

double rankine(const PointState& s, const DrivingForceSpec& spec) {
  return pos_part(principal(s.sigma)[0] / spec.sigma_c - 1.0);
}

double tresca(const PointState& s, const DrivingForceSpec& spec) {
  switch (spec.tresca_form) {
    case TrescaForm::principal: {
      const auto ps = principal(s.sigma);
      return pos_part((ps[0] - ps[2]) / spec.sigma_c - 1.0);
    }
    case TrescaForm::tau_principal: {
      const auto ps = principal(s.sigma);
      return pos_part(0.5 * (ps[0] - ps[2]) / spec.tau_c - 1.0);
    }
    case TrescaForm::tau_deviatoric: {
      const SymTensor d = s.sigma.dev();
      return pos_part(std::sqrt(0.375 * d.ddot(d)) / spec.tau_c - 1.0);
    }
  }
  return 0.0;
}

double compressive_rankine(const PointState& s, const DrivingForceSpec& spec) {
  return s.sigma.trace() > 0.0 ? rankine(s, spec) : 0.0;
}

double mohr_coulomb_effective_stress(const PointState& s, double m) {
  const auto ps = principal(s.sigma);
  return m * ps[0] - ps[2];
}

double mohr_coulomb(const PointState& s, const DrivingForceSpec& spec) {
  const auto ps = principal(s.sigma);
  return pos_part(ps[0] / spec.rm_t - ps[2] / spec.rm_c - 1.0);
}

double beltrami(const PointState& s, const DrivingForceSpec& spec) {
  return pos_part(principal(s.eps)[0] / spec.eps_c - 1.0);
}

double beltrami_stretch(const PointState& s, const DrivingForceSpec& spec) {
  const double lmax = s.stretches ? *std::max_element(s.stretches->begin(), s.stretches->end())
                                  : 1.0 + principal(s.eps)[0];
  return pos_part(lmax / spec.lambda_c - 1.0);
}

double effective_drive(const PointState& s, const DrivingForceSpec& spec, const LinearElasticParams& p) {
  switch (spec.kind) {
    case DriveKind::griffith:
    case DriveKind::spectral_split:
    case DriveKind::lambda_mu_split:
    case DriveKind::kg_split:
      return griffith_variational(s, spec, p);
    case DriveKind::tresca:
      return tresca(s, spec);
    case DriveKind::rankine:
      return rankine(s, spec);
    case DriveKind::compressive_rankine:
      return compressive_rankine(s, spec);
    case DriveKind::mohr_coulomb:
      return mohr_coulomb(s, spec);
    case DriveKind::beltrami:
      return beltrami(s, spec);
    case DriveKind::beltrami_stretch:
      return beltrami_stretch(s, spec);
  }
  return 0.0;
}

}  // namespace pff
