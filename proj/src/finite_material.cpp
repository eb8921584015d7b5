#include "pff/finite_material.hpp"

#include <atomic>
#include <cmath>

#include "pff/errors.hpp"

namespace pff {

namespace {

std::atomic<std::uint64_t> g_clamp_events{0};

const double kSqrt27 = 3.0 * std::sqrt(3.0);

// Value and first/second partial derivatives of an energy term W(a, b, J)
// with a = F:F, b = cofF:cofF, J = det F.
struct Term {
  double v = 0, a = 0, b = 0, j = 0;
  double aa = 0, ab = 0, bb = 0, aj = 0, bj = 0, jj = 0;

  Term& add(const Term& o, double w) {
    v += w * o.v;
    a += w * o.a;
    b += w * o.b;
    j += w * o.j;
    aa += w * o.aa;
    ab += w * o.ab;
    bb += w * o.bb;
    aj += w * o.aj;
    bj += w * o.bj;
    jj += w * o.jj;
    return *this;
  }
};

// mu/2 J^{-2/3} (a - shift) - mu/2 (3 - shift): shift = 0 gives the full
// isochoric term, shift = 3 the split branch.
Term first_invariant_term(double a, double J, double mu, bool split) {
  const double c = 0.5 * mu;
  const double jm23 = std::pow(J, -2.0 / 3.0);
  const double x = split ? a - 3.0 : a;
  Term t;
  t.v = split ? c * jm23 * x : c * (jm23 * x - 3.0);
  t.a = c * jm23;
  t.j = -2.0 / 3.0 * c * jm23 / J * x;
  t.aj = -2.0 / 3.0 * c * jm23 / J;
  t.jj = 10.0 / 9.0 * c * jm23 / (J * J) * x;
  return t;
}

// mu k/2 (s^{3/2} - 3 sqrt 3), s = J^{-4/3} b (full) or 3 + J^{-4/3}(b - 3) (split).
Term second_invariant_term(double b, double J, double muk, bool split, bool count_clamp) {
  const double c = 0.5 * muk;
  Term t;
  if (c == 0.0) return t;
  const double jm43 = std::pow(J, -4.0 / 3.0);
  const double x = split ? b - 3.0 : b;
  const double s = (split ? 3.0 : 0.0) + jm43 * x;
  if (s <= 0.0) {
    if (count_clamp) g_clamp_events.fetch_add(1, std::memory_order_relaxed);
    t.v = -c * kSqrt27;
    return t;
  }
  const double sb = jm43;
  const double sj = -4.0 / 3.0 * jm43 / J * x;
  const double sbj = -4.0 / 3.0 * jm43 / J;
  const double sjj = 28.0 / 9.0 * jm43 / (J * J) * x;
  const double rs = std::sqrt(s);
  const double f1 = 1.5 * c * rs;
  const double f2 = 0.75 * c / rs;
  t.v = c * (s * rs - kSqrt27);
  t.b = f1 * sb;
  t.j = f1 * sj;
  t.bb = f2 * sb * sb;
  t.bj = f2 * sb * sj + f1 * sbj;
  t.jj = f2 * sj * sj + f1 * sjj;
  return t;
}

Term volumetric_term(double J, double K) {
  Term t;
  t.v = 0.5 * K * (J - 1.0) * (J - 1.0);
  t.j = K * (J - 1.0);
  t.jj = K;
  return t;
}

// Undamaged energy as a function of (a, b, J).
Term full_energy(double a, double b, double J, const HyperelasticParams& p) {
  Term t;
  t.add(first_invariant_term(a, J, p.mu, false), 1.0);
  t.add(second_invariant_term(b, J, p.mu * p.k, false, false), 1.0);
  t.add(volumetric_term(J, p.K), 1.0);
  return t;
}

struct Weighted {
  Term total;
  double tensile = 0.0;  // energy in the degraded branches
};

// Invariant-split energy: branches on the tensile side of their Macaulay kink get g.
Weighted invariant_energy(double a, double b, double J, double g, const HyperelasticParams& p) {
  Weighted w;
  const Term t1 = first_invariant_term(a, J, p.mu, true);
  const Term t2 = second_invariant_term(b, J, p.mu * p.k, true, true);
  const Term t3 = volumetric_term(J, p.K);
  const bool p1 = a > 3.0, p2 = b > 3.0, p3 = J > 1.0;
  w.total.add(t1, p1 ? g : 1.0);
  w.total.add(t2, p2 ? g : 1.0);
  w.total.add(t3, p3 ? g : 1.0);
  w.tensile = (p1 ? t1.v : 0.0) + (p2 ? t2.v : 0.0) + (p3 ? t3.v : 0.0);
  return w;
}

struct Kinematics {
  Tensor2 F, cof, dbdF, finvT;
  double a = 0, b = 0, J = 0;
};

Kinematics kinematics(const Tensor2& F) {
  Kinematics k;
  k.F = F;
  k.J = F.det();
  if (!(k.J > 0.0)) throw NonPositiveJacobian(k.J);
  k.cof = F.cofactor();
  k.a = F.ddot(F);
  k.b = k.cof.ddot(k.cof);
  k.dbdF = 2.0 * (k.a * F - F * F.transpose() * F);
  k.finvT = k.cof * (1.0 / k.J);
  return k;
}

Term energy_term(const Kinematics& k, double z, FiniteSplit method, const HyperelasticParams& p,
                 const DegradationParams& deg) {
  const double g = degradation(z, deg).g;
  if (method == FiniteSplit::invariant) return invariant_energy(k.a, k.b, k.J, g, p).total;
  Term t;
  t.add(full_energy(k.a, k.b, k.J, p), g);
  return t;
}

Tensor2 stress_from_term(const Kinematics& k, const Term& t) {
  return (2.0 * t.a) * k.F + t.b * k.dbdF + t.j * k.cof;
}

Mat9 tangent_from_term(const Kinematics& k, const Term& t) {
  const Tensor2& F = k.F;
  const Tensor2 Ft = F.transpose();
  const Tensor2 FtF = Ft * F;
  const Tensor2 FFt = F * Ft;
  Mat9 A;
  for (int col = 0; col < 9; ++col) {
    Tensor2 H;
    H[col] = 1.0;
    const double da = 2.0 * F[col];
    const double db = k.dbdF[col];
    const double dJ = k.cof[col];
    const Tensor2 d2b = 2.0 * (2.0 * F[col] * F + k.a * H - H * FtF - F * H.transpose() * F - FFt * H);
    const Tensor2 dcof = dJ * k.finvT - k.J * (k.finvT * H.transpose() * k.finvT);
    const double dWa = t.aa * da + t.ab * db + t.aj * dJ;
    const double dWb = t.ab * da + t.bb * db + t.bj * dJ;
    const double dWj = t.aj * da + t.bj * db + t.jj * dJ;
    const Tensor2 dP = (2.0 * t.a) * H + t.b * d2b + t.j * dcof + (2.0 * dWa) * F + dWb * k.dbdF + dWj * k.cof;
    for (int r = 0; r < 9; ++r) A(r, col) = dP[r];
  }
  return A;
}

// ---- stretch split

struct StretchEval {
  double psi = 0.0;
  std::array<double, 3> dpsi{};  // dPsi / d lambda_a
  double drive = 0.0;            // -dPsi/dz
};

// Undamaged energy and its gradient in principal stretches.
double principal_energy(const std::array<double, 3>& l, std::array<double, 3>& grad, const HyperelasticParams& p) {
  const double J = l[0] * l[1] * l[2];
  if (!(J > 0.0)) throw NonPositiveJacobian(J);
  const double a = l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
  const double c01 = l[0] * l[1], c02 = l[0] * l[2], c12 = l[1] * l[2];
  const double b = c01 * c01 + c02 * c02 + c12 * c12;
  const Term t = full_energy(a, b, J, p);
  for (int i = 0; i < 3; ++i) {
    const double o1 = l[(i + 1) % 3], o2 = l[(i + 2) % 3];
    grad[i] = t.a * 2.0 * l[i] + t.b * 2.0 * l[i] * (o1 * o1 + o2 * o2) + t.j * J / l[i];
  }
  return t.v;
}

StretchEval stretch_energy(const std::array<double, 3>& lam, double z, const HyperelasticParams& p,
                           const DegradationParams& deg) {
  std::array<double, 3> hat{}, dhat{}, dhat_dz{};
  for (int i = 0; i < 3; ++i) {
    const double lp = 1.0 + pos_part(lam[i] - 1.0);
    const double lm = 1.0 + neg_part(lam[i] - 1.0);
    const double le = std::pow(lp, 1.0 - z);
    hat[i] = le * lm;
    dhat[i] = lam[i] > 1.0 ? (1.0 - z) * le / lp : 1.0;
    dhat_dz[i] = -std::log(lp) * hat[i];
  }
  StretchEval e;
  std::array<double, 3> gh{}, gl{};
  e.psi = principal_energy(hat, gh, p) + deg.eps_res * principal_energy(lam, gl, p);
  for (int i = 0; i < 3; ++i) {
    e.dpsi[i] = gh[i] * dhat[i] + deg.eps_res * gl[i];
    e.drive -= gh[i] * dhat_dz[i];
  }
  return e;
}

Tensor2 stretch_piola(const Tensor2& F, double z, const HyperelasticParams& p, const DegradationParams& deg) {
  const PrincipalStretches ps = principal_stretches(F);
  const StretchEval e = stretch_energy(ps.lambda, z, p, deg);
  Tensor2 P;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) P(i, j) += e.dpsi[a] * ps.n[a][i] * ps.N[a][j];
  return P;
}

}  // namespace

HyperelasticParams HyperelasticParams::make(double mu, double k, double K) {
  if (!(mu > 0.0)) throw NonPositiveParameter("shear modulus mu must be positive");
  if (!(K > 0.0)) throw NonPositiveParameter("bulk modulus K must be positive");
  if (!(k >= 0.0)) throw NonPositiveParameter("Mooney-Rivlin ratio k must be non-negative");
  return {mu, k, K};
}

HyperelasticParams HyperelasticParams::from_linear(double E, double nu, double k) {
  const auto lin = LinearElasticParams::make(E, nu);
  return make(lin.mu(), k, lin.bulk());
}

double volumetric_energy(double J, const HyperelasticParams& p) {
  if (!(J > 0.0)) throw NonPositiveJacobian(J);
  return 0.5 * p.K * (J - 1.0) * (J - 1.0);
}

double isochoric_energy(double i1bar, double i2bar, const HyperelasticParams& p) {
  constexpr double slack = -1e-9;
  if (i1bar - 3.0 < slack || i2bar - 3.0 < slack)
    throw InvalidInvariant("isochoric invariants must not fall below 3");
  return 0.5 * p.mu * ((i1bar - 3.0) + p.k * (std::pow(i2bar, 1.5) - kSqrt27));
}

InvariantSplitState invariant_split(const Tensor2& F) {
  const Kinematics k = kinematics(F);
  const double jm23 = std::pow(k.J, -2.0 / 3.0);
  const double jm43 = jm23 * jm23;
  InvariantSplitState s;
  s.i1_plus = 3.0 + jm23 * pos_part(k.a - 3.0);
  s.i1_minus = 3.0 + jm23 * neg_part(k.a - 3.0);
  s.i2_plus = 3.0 + jm43 * pos_part(k.b - 3.0);
  s.i2_minus = 3.0 + jm43 * neg_part(k.b - 3.0);
  if (s.i2_minus < 0.0) {
    g_clamp_events.fetch_add(1, std::memory_order_relaxed);
    s.i2_minus = 0.0;
  }
  s.j_plus = 1.0 + pos_part(k.J - 1.0);
  s.j_minus = 1.0 + neg_part(k.J - 1.0);
  return s;
}

PrincipalStretches principal_stretches(const Tensor2& F) {
  const double J = F.det();
  if (!(J > 0.0)) throw NonPositiveJacobian(J);
  const SpectralDecomp sd = eig_sym_sorted((F.transpose() * F).sym());
  PrincipalStretches ps;
  const Eigen::Matrix3d f = F.matrix();
  for (int a = 0; a < 3; ++a) {
    ps.lambda[a] = std::sqrt(std::max(sd.values[a], 0.0));
    ps.N[a] = sd.vectors[a];
    const Eigen::Vector3d Na(sd.vectors[a][0], sd.vectors[a][1], sd.vectors[a][2]);
    const Eigen::Vector3d na = f * Na / ps.lambda[a];
    ps.n[a] = {na[0], na[1], na[2]};
  }
  return ps;
}

StretchSplitState stretch_split(const Tensor2& F, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw OutOfRangeZ(z);
  const PrincipalStretches ps = principal_stretches(F);
  StretchSplitState s;
  for (int a = 0; a < 3; ++a) {
    const double l = ps.lambda[a];
    s.lambda[a] = l;
    s.plus[a] = l > 1.0 ? l : 1.0;  // keeps plus * minus == lambda bitwise
    s.minus[a] = l < 1.0 ? l : 1.0;
    s.elastic[a] = std::pow(s.plus[a], 1.0 - z);
    s.inelastic[a] = std::pow(s.plus[a], z) * s.minus[a];
  }
  return s;
}

double degraded_energy(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                       const DegradationParams& deg) {
  if (method == FiniteSplit::stretch) {
    if (!(z >= 0.0 && z <= 1.0)) throw OutOfRangeZ(z);
    return stretch_energy(principal_stretches(F).lambda, z, p, deg).psi;
  }
  return energy_term(kinematics(F), z, method, p, deg).v;
}

Tensor2 piola_stress(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                     const DegradationParams& deg) {
  if (method == FiniteSplit::stretch) {
    if (!(z >= 0.0 && z <= 1.0)) throw OutOfRangeZ(z);
    return stretch_piola(F, z, p, deg);
  }
  const Kinematics k = kinematics(F);
  return stress_from_term(k, energy_term(k, z, method, p, deg));
}

Mat9 piola_tangent(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                   const DegradationParams& deg) {
  if (method == FiniteSplit::stretch) {
    // Central differences; the analytic spectral tangent is not worth its
    // complexity for a split that is only used in small studies.
    Mat9 A;
    const double h = 1e-6 * std::max(1.0, F.norm());
    for (int c = 0; c < 9; ++c) {
      Tensor2 Fp = F, Fm = F;
      Fp[c] += h;
      Fm[c] -= h;
      const Tensor2 dP = (stretch_piola(Fp, z, p, deg) - stretch_piola(Fm, z, p, deg)) * (0.5 / h);
      for (int r = 0; r < 9; ++r) A(r, c) = dP[r];
    }
    return 0.5 * (A + A.transpose());
  }
  const Kinematics k = kinematics(F);
  return tangent_from_term(k, energy_term(k, z, method, p, deg));
}

double damage_drive(const Tensor2& F, double z, FiniteSplit method, const HyperelasticParams& p,
                    const DegradationParams& deg) {
  if (method == FiniteSplit::stretch) {
    if (!(z >= 0.0 && z <= 1.0)) throw OutOfRangeZ(z);
    return stretch_energy(principal_stretches(F).lambda, z, p, deg).drive;
  }
  const double dg = degradation(z, deg).dg;
  const Kinematics k = kinematics(F);
  const double tensile = method == FiniteSplit::invariant ? invariant_energy(k.a, k.b, k.J, 1.0, p).tensile
                                                          : full_energy(k.a, k.b, k.J, p).v;
  return -dg * tensile;
}

std::uint64_t invariant_clamp_events() { return g_clamp_events.load(std::memory_order_relaxed); }

}  // namespace pff
