#include <gtest/gtest.h>

#include "pff/driving_forces.hpp"
#include "pff/errors.hpp"
#include "support.hpp"

using namespace pff;

namespace {

const LinearElasticParams kMat = LinearElasticParams::make(50400.0, 0.2);

DrivingForceSpec spec_of(DriveKind k) {
  DrivingForceSpec s;
  s.kind = k;
  s.sigma_c = 35.0;
  s.tau_c = 17.5;
  s.rm_t = 35.0;
  s.rm_c = 350.0;
  s.eps_c = 35.0 / 50400.0;
  s.lambda_c = 1.0 + s.eps_c;
  s.lc = 1.0;
  s.Gc = 0.075;
  return s;
}

PointState stress_state(const SymTensor& sigma) {
  PointState s;
  s.sigma = sigma;
  return s;
}

PointState strain_state(const SymTensor& eps) {
  PointState s;
  s.eps = eps;
  s.sigma = energy_and_stress(eps, kMat).sigma;
  return s;
}

const DriveKind kAllKinds[] = {DriveKind::griffith,   DriveKind::spectral_split,      DriveKind::lambda_mu_split,
                               DriveKind::kg_split,   DriveKind::tresca,              DriveKind::rankine,
                               DriveKind::compressive_rankine, DriveKind::mohr_coulomb, DriveKind::beltrami};

}  // namespace

TEST(Griffith, Examples) {
  const DrivingForceSpec s = spec_of(DriveKind::griffith);
  EXPECT_EQ(normalized_energy_drive(123.0, 1.0, s), 0.0);
  EXPECT_DOUBLE_EQ(normalized_energy_drive(s.Gc / (2.0 * s.lc), 0.0, s), 1.0);
  PointState st = strain_state(-1e-3 * SymTensor::identity());
  EXPECT_EQ(griffith_variational(st, spec_of(DriveKind::spectral_split), kMat), 0.0);
  EXPECT_GT(griffith_variational(st, s, kMat), 0.0);
}

TEST(Rankine, Examples) {
  const DrivingForceSpec s = spec_of(DriveKind::rankine);
  EXPECT_EQ(rankine(stress_state(SymTensor::diag(35.0, 0, 0)), s), 0.0);
  EXPECT_DOUBLE_EQ(rankine(stress_state(SymTensor::diag(70.0, 0, 0)), s), 1.0);
  EXPECT_EQ(rankine(stress_state(-50.0 * SymTensor::identity()), s), 0.0);
}

TEST(Tresca, Examples) {
  DrivingForceSpec s = spec_of(DriveKind::tresca);
  EXPECT_DOUBLE_EQ(tresca(stress_state(SymTensor::diag(40.0, 0, -30.0)), s), 1.0);
  for (TrescaForm f : {TrescaForm::principal, TrescaForm::tau_principal, TrescaForm::tau_deviatoric}) {
    s.tresca_form = f;
    EXPECT_EQ(tresca(stress_state(80.0 * SymTensor::identity()), s), 0.0);
  }
  // Uniaxial stress: the deviatoric estimate equals half the principal difference.
  const double sig = 100.0;
  s.tresca_form = TrescaForm::tau_deviatoric;
  const double dev_form = tresca(stress_state(SymTensor::diag(sig, 0, 0)), s);
  s.tresca_form = TrescaForm::tau_principal;
  EXPECT_NEAR(dev_form, tresca(stress_state(SymTensor::diag(sig, 0, 0)), s), 1e-12);
  EXPECT_NEAR(dev_form, (sig / 2.0) / s.tau_c - 1.0, 1e-12);
}

TEST(CompressiveRankine, Examples) {
  const DrivingForceSpec s = spec_of(DriveKind::compressive_rankine);
  EXPECT_EQ(compressive_rankine(stress_state(SymTensor::diag(70.0, -105.0, 0)), s), 0.0);
  EXPECT_DOUBLE_EQ(compressive_rankine(stress_state(SymTensor::diag(70.0, 0, 0)), s), 1.0);
  EXPECT_EQ(compressive_rankine(stress_state(SymTensor::diag(70.0, -70.0, 0)), s), 0.0);
}

TEST(MohrCoulomb, Examples) {
  const DrivingForceSpec s = spec_of(DriveKind::mohr_coulomb);
  EXPECT_NEAR(mohr_coulomb(stress_state(SymTensor::diag(s.rm_t, 0, 0)), s), 0.0, 1e-14);
  EXPECT_NEAR(mohr_coulomb(stress_state(SymTensor::diag(0, 0, -s.rm_c)), s), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(mohr_coulomb_effective_stress(stress_state(SymTensor::diag(1.0, 0, -1.0)), 10.0), 11.0);
  // The two written forms agree when sigma_c = Rc = m Rt.
  for (int i = 0; i < 200; ++i) {
    const PointState st = stress_state(test::random_sym(200.0));
    const double a = mohr_coulomb(st, s);
    const double b = pos_part(mohr_coulomb_effective_stress(st, s.m()) / s.rm_c - 1.0);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, a));
  }
}

TEST(Beltrami, Examples) {
  DrivingForceSpec s = spec_of(DriveKind::beltrami);
  PointState st;
  st.eps = SymTensor::diag(s.eps_c, 0, 0);
  EXPECT_NEAR(beltrami(st, s), 0.0, 1e-14);
  st.eps = -1e-3 * SymTensor::identity();
  EXPECT_EQ(beltrami(st, s), 0.0);
  s.lambda_c = 1.1;
  st.stretches = std::array<double, 3>{1.2, 1.0, 0.9};
  EXPECT_NEAR(beltrami_stretch(st, s), 1.2 / 1.1 - 1.0, 1e-14);
  EXPECT_NEAR(beltrami_stretch(st, s), 0.0909, 1e-4);
}

TEST(DriveProperties, AdHocForcesAreNonnegativeAndVanishBelowThreshold) {
  for (DriveKind k : {DriveKind::tresca, DriveKind::rankine, DriveKind::compressive_rankine, DriveKind::mohr_coulomb,
                      DriveKind::beltrami}) {
    const DrivingForceSpec s = spec_of(k);
    for (int i = 0; i < 500; ++i) {
      const PointState st = strain_state(test::random_sym(2e-3));
      EXPECT_GE(effective_drive(st, s, kMat), 0.0);
    }
    // A small uniaxial strain stays below every threshold.
    EXPECT_EQ(effective_drive(strain_state(SymTensor::diag(1e-5, 0, 0)), s, kMat), 0.0) << to_string(k);
  }
  // The energy drive acts immediately.
  EXPECT_GT(effective_drive(strain_state(SymTensor::diag(1e-5, 0, 0)), spec_of(DriveKind::griffith), kMat), 0.0);
}

TEST(DriveProperties, StressScaleCovariance) {
  for (DriveKind k : {DriveKind::rankine, DriveKind::tresca, DriveKind::compressive_rankine, DriveKind::mohr_coulomb}) {
    const DrivingForceSpec s = spec_of(k);
    for (int i = 0; i < 200; ++i) {
      const SymTensor sig = test::random_sym(100.0);
      // Pre-bracket ratio r from a state at twice the threshold-free scale.
      const double y1 = effective_drive(stress_state(sig), s, kMat);
      for (double c : {0.5, 1.0, 2.0}) {
        const double yc = effective_drive(stress_state(c * sig), s, kMat);
        if (y1 > 0.0) EXPECT_NEAR(yc, pos_part(c * (y1 + 1.0) - 1.0), 1e-12 * std::max(1.0, yc));
        else if (c <= 1.0) EXPECT_EQ(yc, 0.0);
      }
    }
  }
}

TEST(DriveProperties, FrameIndifference) {
  for (DriveKind k : kAllKinds) {
    DrivingForceSpec s = spec_of(k);
    for (int i = 0; i < 200; ++i) {
      const PointState st = strain_state(test::random_sym(3e-3));
      const Eigen::Matrix3d q = test::random_rotation();
      PointState rot = st;
      rot.eps = st.eps.rotated(q);
      rot.sigma = st.sigma.rotated(q);
      const double a = effective_drive(st, s, kMat), b = effective_drive(rot, s, kMat);
      EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, std::abs(a))) << to_string(k);
    }
  }
}

TEST(DriveProperties, RankineAndBeltramiActivateTogetherInUniaxialStress) {
  const DrivingForceSpec r = spec_of(DriveKind::rankine), b = spec_of(DriveKind::beltrami);
  auto onset = [&](const DrivingForceSpec& s) {
    double lo = 0.0, hi = 100.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      PointState st;
      st.sigma = SymTensor::diag(mid, 0, 0);
      st.eps = SymTensor::diag(mid / kMat.E, -kMat.nu * mid / kMat.E, -kMat.nu * mid / kMat.E);
      (effective_drive(st, s, kMat) > 0.0 ? hi : lo) = mid;
    }
    return hi;
  };
  EXPECT_LE(test::rel_diff(onset(r), onset(b)), 0.02);
}

TEST(DrivingForceSpec, ValidationAndNames) {
  DrivingForceSpec s;
  s.kind = DriveKind::rankine;
  EXPECT_THROW(s.validate(), NonPositiveParameter);
  s.sigma_c = 1.0;
  EXPECT_NO_THROW(s.validate());
  for (DriveKind k : kAllKinds) EXPECT_EQ(parse_drive_kind(to_string(k)), k);
  EXPECT_TRUE(spec_of(DriveKind::lambda_mu_split).variational());
  EXPECT_FALSE(spec_of(DriveKind::rankine).variational());
}
