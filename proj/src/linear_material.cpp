#include "pff/linear_material.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pff/errors.hpp"

namespace pff {

LinearElasticParams LinearElasticParams::make(double E, double nu, PlaneMode mode) {
  if (!(E > 0.0)) throw NonPositiveParameter("Young's modulus must be positive");
  if (!(nu > -1.0 && nu < 0.5)) throw NonPositiveParameter("Poisson ratio must lie in (-1, 0.5)");
  return {E, nu, mode};
}

Mat6 LinearElasticParams::stiffness() const {
  const double l = lambda(), m = mu();
  Mat6 c = Mat6::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c(i, j) = l;
    c(i, i) += 2.0 * m;
    c(i + 3, i + 3) = m;
  }
  return c;
}

Degradation degradation(double z, const DegradationParams& p) {
  if (!(z >= 0.0 && z <= 1.0)) throw OutOfRangeZ(z);
  const double d = 1.0 - z;
  return {d * d + p.eps_res, -2.0 * d};
}

EnergyStress energy_and_stress(const SymTensor& eps, const LinearElasticParams& p) {
  const double tr = eps.trace();
  const double l = p.lambda(), m = p.mu();
  return {0.5 * l * tr * tr + m * eps.ddot(eps), l * tr * SymTensor::identity() + 2.0 * m * eps};
}

namespace {

struct RootStiffness {
  double vol;  // sqrt(3K)
  double dev;  // sqrt(2 mu)
};

RootStiffness root_stiffness(const LinearElasticParams& p) {
  return {std::sqrt(3.0 * p.bulk()), std::sqrt(2.0 * p.mu())};
}

// Applies vol * P_vol + dev * P_dev.
SymTensor apply_isotropic(const SymTensor& a, double vol, double dev) {
  const auto [tr, d] = vol_dev_parts(a);
  return (vol * tr / 3.0) * SymTensor::identity() + dev * d;
}

template <class Dir>
Mat6 tangent_from_directional(Dir&& dsigma) {
  Mat6 c;
  for (int k = 0; k < 6; ++k) {
    const SymTensor col = dsigma(SymTensor::voigt_unit(k));
    for (int i = 0; i < 6; ++i) c(i, k) = col[i];
  }
  return c;
}

void require_split_for_fem(EnergySplit method) {
  if (method == EnergySplit::spectral)
    throw NonPositiveParameter("spectral split stress is not available for equilibrium; use KG or lambda_mu");
}

}  // namespace

TensionCompression split_strain_orthogonal(const SymTensor& eps, const LinearElasticParams& p) {
  const auto r = root_stiffness(p);
  const SymTensor scaled = apply_isotropic(eps, r.vol, r.dev);
  const SymTensor scaled_plus = eig_sym_sorted(scaled).apply(pos_part);
  const SymTensor plus = apply_isotropic(scaled_plus, 1.0 / r.vol, 1.0 / r.dev);
  return {plus, eps - plus};
}

SplitEnergy positive_negative_energy(const SymTensor& eps, EnergySplit method, const LinearElasticParams& p) {
  const double tr = eps.trace();
  switch (method) {
    case EnergySplit::none:
      return {energy_and_stress(eps, p).psi, 0.0};
    case EnergySplit::spectral: {
      const auto r = root_stiffness(p);
      const SymTensor scaled = apply_isotropic(eps, r.vol, r.dev);
      const SymTensor sp = eig_sym_sorted(scaled).apply(pos_part);
      const SymTensor sm = scaled - sp;
      return {0.5 * sp.ddot(sp), 0.5 * sm.ddot(sm)};
    }
    case EnergySplit::kg: {
      const SymTensor d = eps.dev();
      const SymTensor dp = eig_sym_sorted(d).apply(pos_part);
      const SymTensor dm = d - dp;
      const double K = p.bulk(), m = p.mu();
      const double tp = pos_part(tr), tm = neg_part(tr);
      return {0.5 * K * tp * tp + m * dp.ddot(dp), 0.5 * K * tm * tm + m * dm.ddot(dm)};
    }
    case EnergySplit::lambda_mu: {
      const auto [ep, em] = split_strain_spectral(eps);
      const double l = p.lambda(), m = p.mu();
      const double tp = pos_part(tr), tm = neg_part(tr);
      return {0.5 * l * tp * tp + m * ep.ddot(ep), 0.5 * l * tm * tm + m * em.ddot(em)};
    }
  }
  return {};
}

SplitStress split_stress(const SymTensor& eps, EnergySplit method, const LinearElasticParams& p) {
  const double tr = eps.trace();
  const SymTensor full = energy_and_stress(eps, p).sigma;
  SymTensor plus;
  switch (method) {
    case EnergySplit::none:
      plus = full;
      break;
    case EnergySplit::spectral: {
      const auto r = root_stiffness(p);
      const SymTensor sp = eig_sym_sorted(apply_isotropic(eps, r.vol, r.dev)).apply(pos_part);
      plus = apply_isotropic(sp, r.vol, r.dev);
      break;
    }
    case EnergySplit::kg: {
      const SymTensor dp = eig_sym_sorted(eps.dev()).apply(pos_part);
      plus = p.bulk() * pos_part(tr) * SymTensor::identity() + 2.0 * p.mu() * dp.dev();
      break;
    }
    case EnergySplit::lambda_mu: {
      const SymTensor ep = eig_sym_sorted(eps).apply(pos_part);
      plus = p.lambda() * pos_part(tr) * SymTensor::identity() + 2.0 * p.mu() * ep;
      break;
    }
  }
  return {plus, full - plus};
}

SymTensor degraded_stress(const SymTensor& eps, double z, EnergySplit method, const LinearElasticParams& p,
                          const DegradationParams& deg) {
  require_split_for_fem(method);
  const double g = degradation(z, deg).g;
  const auto s = split_stress(eps, method, p);
  return g * s.plus + s.minus;
}

namespace {

// Columns k in cols of the degraded tangent, from directional derivatives.
template <std::size_t N>
Eigen::Matrix<double, 6, N> degraded_columns(const SymTensor& eps, double z, EnergySplit method,
                                             const LinearElasticParams& p, const DegradationParams& deg,
                                             const std::array<int, N>& cols) {
  require_split_for_fem(method);
  const double g = degradation(z, deg).g;
  const Mat6 c = p.stiffness();
  Eigen::Matrix<double, 6, N> out;
  for (std::size_t j = 0; j < N; ++j) out.col(j) = g * c.col(cols[j]);
  if (method == EnergySplit::none) return out;

  const double tr = eps.trace();
  const bool kg = method == EnergySplit::kg;
  const SpectralDecomp sd = eig_sym_sorted(kg ? eps.dev() : eps);
  const double vh = (kg ? p.bulk() : p.lambda()) * heaviside(tr), m2 = 2.0 * p.mu();
  for (std::size_t j = 0; j < N; ++j) {
    const SymTensor h = SymTensor::voigt_unit(cols[j]);
    const SymTensor cp = kg ? m2 * positive_part_derivative(sd, h.dev()).dev()
                            : m2 * positive_part_derivative(sd, h);
    for (int i = 0; i < 6; ++i) out(i, j) = c(i, cols[j]) - (1.0 - g) * (cp[i] + (i < 3 ? vh * h.trace() : 0.0));
  }
  return out;
}

}  // namespace

Mat6 degraded_tangent(const SymTensor& eps, double z, EnergySplit method, const LinearElasticParams& p,
                      const DegradationParams& deg) {
  return degraded_columns<6>(eps, z, method, p, deg, {0, 1, 2, 3, 4, 5});
}

double critical_stress(double E, double Gc, double lc) {
  if (!(E > 0.0) || !(Gc > 0.0) || !(lc > 0.0))
    throw NonPositiveParameter("critical stress needs positive E, Gc and lc");
  return std::sqrt(E * Gc / (3.0 * lc));
}

double plane_out_of_plane_factor(const LinearElasticParams& p) {
  return p.mode == PlaneMode::plane_stress ? -p.nu / (1.0 - p.nu) : 0.0;
}

SymTensor embed_plane(double exx, double eyy, double gxy, const LinearElasticParams& p) {
  const double ezz = plane_out_of_plane_factor(p) * (exx + eyy);
  return {exx, eyy, ezz, 0.0, 0.0, 0.5 * gxy};
}

PlaneStressPoint plane_stress_point(double exx, double eyy, double gxy, double z, EnergySplit method,
                                    const LinearElasticParams& p, const DegradationParams& deg, bool want_tangent) {
  PlaneStressPoint out;
  out.eps = embed_plane(exx, eyy, gxy, p);
  auto szz = [&](double e33) {
    out.eps[2] = e33;
    out.sigma = degraded_stress(out.eps, z, method, p, deg);
    return out.sigma[2];
  };
  // sigma_zz is nondecreasing in e33: Newton, bisecting inside the sign bracket when a
  // step leaves it (the split makes sigma_zz piecewise linear).
  double e = out.eps[2];
  double f = szz(e);
  double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100 && std::abs(f) > 1e-13 * std::max(out.sigma.norm(), 1e-300); ++it) {
    if (f > 0.0)
      hi = e;
    else
      lo = e;
    const double d = degraded_columns<1>(out.eps, z, method, p, deg, {2})(2, 0);
    double next = d > 0.0 ? e - f / d : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      if (!std::isfinite(lo) || !std::isfinite(hi)) throw SingularTangent("plane-stress condensation lost its bracket");
      next = 0.5 * (lo + hi);
    }
    if (next == e) break;
    e = next;
    f = szz(e);
  }
  if (want_tangent) {
    // Columns xx, yy, xy, zz of the full tangent.
    const auto D = degraded_columns<4>(out.eps, z, method, p, deg, {0, 1, 5, 2});
    static constexpr int ip[3] = {0, 1, 5};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.tangent(i, j) = D(ip[i], j) - D(ip[i], 3) * D(2, j) / D(2, 3);
  }
  return out;
}

}  // namespace pff
