#include "pff/tensor.hpp"

#include <algorithm>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include "pff/errors.hpp"

namespace pff {

// ---------------------------------------------------------------- SymTensor

SymTensor SymTensor::outer(const Vec3& n) {
  return {n[0] * n[0], n[1] * n[1], n[2] * n[2], n[1] * n[2], n[0] * n[2], n[0] * n[1]};
}

SymTensor SymTensor::voigt_unit(int k) {
  SymTensor e;
  e[k] = k < 3 ? 1.0 : 0.5;
  return e;
}

SymTensor SymTensor::from_matrix(const Eigen::Matrix3d& m) {
  return {m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(1, 2) + m(2, 1)), 0.5 * (m(0, 2) + m(2, 0)),
          0.5 * (m(0, 1) + m(1, 0))};
}

SymTensor SymTensor::dev() const noexcept {
  const double m = trace() / 3.0;
  return {c_[0] - m, c_[1] - m, c_[2] - m, c_[3], c_[4], c_[5]};
}

double SymTensor::ddot(const SymTensor& o) const noexcept {
  return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2] +
         2.0 * (c_[3] * o.c_[3] + c_[4] * o.c_[4] + c_[5] * o.c_[5]);
}

double SymTensor::det() const noexcept {
  const double xx = c_[0], yy = c_[1], zz = c_[2], yz = c_[3], xz = c_[4], xy = c_[5];
  return xx * (yy * zz - yz * yz) - xy * (xy * zz - yz * xz) + xz * (xy * yz - yy * xz);
}

Eigen::Matrix3d SymTensor::matrix() const {
  Eigen::Matrix3d m;
  m << c_[0], c_[5], c_[4], c_[5], c_[1], c_[3], c_[4], c_[3], c_[2];
  return m;
}

SymTensor SymTensor::rotated(const Eigen::Matrix3d& q) const {
  return from_matrix(q * matrix() * q.transpose());
}

SymTensor& SymTensor::operator+=(const SymTensor& o) noexcept {
  for (int k = 0; k < 6; ++k) c_[k] += o.c_[k];
  return *this;
}
SymTensor& SymTensor::operator-=(const SymTensor& o) noexcept {
  for (int k = 0; k < 6; ++k) c_[k] -= o.c_[k];
  return *this;
}
SymTensor& SymTensor::operator*=(double s) noexcept {
  for (auto& v : c_) v *= s;
  return *this;
}

// ---------------------------------------------------------------- Tensor2

Tensor2::Tensor2(const Eigen::Matrix3d& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a_[3 * i + j] = m(i, j);
}

Tensor2 Tensor2::identity() {
  Tensor2 t;
  t.a_[0] = t.a_[4] = t.a_[8] = 1.0;
  return t;
}

Tensor2 Tensor2::from_sym(const SymTensor& s) {
  Tensor2 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = s(i, j);
  return t;
}

double Tensor2::det() const noexcept {
  const auto& a = a_;
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

Tensor2 Tensor2::cofactor() const noexcept {
  const auto& a = a_;
  Tensor2 c;
  c.a_[0] = a[4] * a[8] - a[5] * a[7];
  c.a_[1] = a[5] * a[6] - a[3] * a[8];
  c.a_[2] = a[3] * a[7] - a[4] * a[6];
  c.a_[3] = a[2] * a[7] - a[1] * a[8];
  c.a_[4] = a[0] * a[8] - a[2] * a[6];
  c.a_[5] = a[1] * a[6] - a[0] * a[7];
  c.a_[6] = a[1] * a[5] - a[2] * a[4];
  c.a_[7] = a[2] * a[3] - a[0] * a[5];
  c.a_[8] = a[0] * a[4] - a[1] * a[3];
  return c;
}

Tensor2 Tensor2::transpose() const noexcept {
  Tensor2 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

Tensor2 Tensor2::inverse() const {
  const double d = det();
  if (d == 0.0) throw NonPositiveJacobian(d);
  return cofactor().transpose() * (1.0 / d);
}

double Tensor2::ddot(const Tensor2& o) const noexcept {
  double s = 0.0;
  for (int k = 0; k < 9; ++k) s += a_[k] * o.a_[k];
  return s;
}

Eigen::Matrix3d Tensor2::matrix() const {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a_[3 * i + j];
  return m;
}

SymTensor Tensor2::sym() const noexcept {
  const auto& a = a_;
  return {a[0], a[4], a[8], 0.5 * (a[5] + a[7]), 0.5 * (a[2] + a[6]), 0.5 * (a[1] + a[3])};
}

Tensor2& Tensor2::operator+=(const Tensor2& o) noexcept {
  for (int k = 0; k < 9; ++k) a_[k] += o.a_[k];
  return *this;
}
Tensor2& Tensor2::operator-=(const Tensor2& o) noexcept {
  for (int k = 0; k < 9; ++k) a_[k] -= o.a_[k];
  return *this;
}
Tensor2& Tensor2::operator*=(double s) noexcept {
  for (auto& v : a_) v *= s;
  return *this;
}

Tensor2 operator*(const Tensor2& a, const Tensor2& b) noexcept {
  Tensor2 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// ---------------------------------------------------------------- eigensolver

SymTensor SpectralDecomp::reconstruct() const {
  return apply([](double v) { return v; });
}

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

// Null vector of (A - lambda I) from the largest cross product of its rows.
Vec3 null_vector(const SymTensor& a, double lambda) {
  const Vec3 r0{a(0, 0) - lambda, a(0, 1), a(0, 2)};
  const Vec3 r1{a(1, 0), a(1, 1) - lambda, a(1, 2)};
  const Vec3 r2{a(2, 0), a(2, 1), a(2, 2) - lambda};
  const std::array<Vec3, 3> c{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  int best = 0;
  double best_n = dot(c[0], c[0]);
  for (int k = 1; k < 3; ++k) {
    const double n = dot(c[k], c[k]);
    if (n > best_n) {
      best = k;
      best_n = n;
    }
  }
  if (best_n <= 0.0) return {0.0, 0.0, 0.0};
  return scaled(c[best], 1.0 / std::sqrt(best_n));
}

void sort_descending(SpectralDecomp& s) {
  auto order = [&](int i, int j) {
    if (s.values[i] < s.values[j]) {
      std::swap(s.values[i], s.values[j]);
      std::swap(s.vectors[i], s.vectors[j]);
    }
  };
  order(0, 1);
  order(1, 2);
  order(0, 1);
}

double reconstruction_error(const SymTensor& a, const SpectralDecomp& s) {
  return (s.reconstruct() - a).norm();
}

double orthogonality_error(const SpectralDecomp& s) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e = std::max(e, std::abs(dot(s.vectors[i], s.vectors[j]) - (i == j ? 1.0 : 0.0)));
  return e;
}

SpectralDecomp jacobi(const SymTensor& a) {
  Eigen::Matrix3d m = a.matrix();
  Eigen::Matrix3d v = Eigen::Matrix3d::Identity();
  const double scale = std::max(a.norm(), 1e-300);
  constexpr int max_sweeps = 50;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double off = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
    if (off <= 1e-36 * scale * scale) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
        r(p, p) = c;
        r(q, q) = c;
        r(p, q) = s;
        r(q, p) = -s;
        m = r.transpose() * m * r;
        v = v * r;
      }
  }
  SpectralDecomp s;
  for (int k = 0; k < 3; ++k) {
    s.values[k] = m(k, k);
    s.vectors[k] = {v(0, k), v(1, k), v(2, k)};
  }
  sort_descending(s);
  return s;
}

// Block-diagonal case (no yz, xz coupling): closed-form 2x2 rotation plus the z axis.
SpectralDecomp planar(const SymTensor& a) {
  const double m = 0.5 * (a[0] + a[1]);
  const double d = 0.5 * (a[0] - a[1]);
  const double r = std::hypot(d, a[5]);
  const double th = 0.5 * std::atan2(a[5], d);
  const double c = std::cos(th), s = std::sin(th);
  SpectralDecomp out;
  out.values = {m + r, m - r, a[2]};
  out.vectors = {Vec3{c, s, 0.0}, Vec3{-s, c, 0.0}, Vec3{0.0, 0.0, 1.0}};
  sort_descending(out);
  return out;
}

}  // namespace

SpectralDecomp eig_sym_sorted(const SymTensor& a) {
  const double scale = a.norm();
  SpectralDecomp s;
  s.vectors = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  if (scale == 0.0) return s;
  if (a[3] == 0.0 && a[4] == 0.0) return planar(a);

  const double q = a.trace() / 3.0;
  const SymTensor b = a - q * SymTensor::identity();
  const double p2 = b.ddot(b);
  const double p = std::sqrt(p2 / 6.0);
  if (p <= 1e-14 * scale) {
    s.values = {q, q, q};
    return s;
  }

  const double r = std::clamp(b.det() / (2.0 * p * p * p), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double l1 = q + 2.0 * p * std::cos(phi);
  const double l3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double l2 = 3.0 * q - l1 - l3;

  // Cross-product eigenvectors lose accuracy as the spectrum becomes
  // degenerate; switch to Jacobi below the relative discriminant threshold.
  const double disc = (l1 - l2) * (l2 - l3) * (l1 - l3);
  const double disc_rel = disc * disc / std::pow(scale, 6);
  SpectralDecomp result;
  bool analytic_ok = false;
  if (disc_rel > 1e-12) {
    Vec3 v1 = null_vector(a, l1);
    Vec3 v3 = null_vector(a, l3);
    v3 = {v3[0] - dot(v1, v3) * v1[0], v3[1] - dot(v1, v3) * v1[1], v3[2] - dot(v1, v3) * v1[2]};
    const double n3 = std::sqrt(dot(v3, v3));
    if (dot(v1, v1) > 0.5 && n3 > 0.5) {
      v3 = scaled(v3, 1.0 / n3);
      const Vec3 v2 = cross(v3, v1);
      result.values = {l1, l2, l3};
      result.vectors = {v1, v2, v3};
      analytic_ok = reconstruction_error(a, result) <= 1e-12 * scale && orthogonality_error(result) <= 1e-12;
    }
  }
  if (!analytic_ok) result = jacobi(a);

  if (reconstruction_error(a, result) > 1e-8 * scale || orthogonality_error(result) > 1e-8)
    throw EigenSolveFailure("symmetric 3x3 eigensolver did not converge");
  return result;
}

TensionCompression split_strain_spectral(const SymTensor& eps) {
  const SpectralDecomp s = eig_sym_sorted(eps);
  const SymTensor plus = s.apply(pos_part);
  return {plus, eps - plus};
}

VolDev vol_dev_parts(const SymTensor& a) { return {a.trace(), a.dev()}; }

ModifiedInvariants modified_invariants(const Tensor2& f) {
  const double j = f.det();
  if (j <= 0.0) throw NonPositiveJacobian(j);
  const Tensor2 cof = f.cofactor();
  return {std::pow(j, -2.0 / 3.0) * f.ddot(f), std::pow(j, -4.0 / 3.0) * cof.ddot(cof), j};
}

SymTensor positive_part_derivative(const SpectralDecomp& spec, const SymTensor& h) {
  Eigen::Matrix3d v;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) v(i, a) = spec.vectors[a][i];
  Eigen::Matrix3d hh = v.transpose() * h.matrix() * v;

  const double scale = std::max({std::abs(spec.values[0]), std::abs(spec.values[2]), 1e-300});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double la = spec.values[a], lb = spec.values[b];
      double f1;
      if (std::abs(la - lb) <= 1e-10 * scale)
        f1 = heaviside(0.5 * (la + lb));
      else
        f1 = (pos_part(la) - pos_part(lb)) / (la - lb);
      hh(a, b) *= f1;
    }
  return SymTensor::from_matrix(v * hh * v.transpose());
}

}  // namespace pff
