#pragma once

// Small dense tensor algebra for 3x3 strain, stress and deformation measures.

#include <array>
#include <cmath>

#include <Eigen/Core>

namespace pff {

using Vec3 = std::array<double, 3>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat9 = Eigen::Matrix<double, 9, 9>;

enum class Sign { plus, minus };

/// Macaulay bracket: <x>+ = (x+|x|)/2, <x>- = (x-|x|)/2.
constexpr double macaulay(double x, Sign s) noexcept {
  if (s == Sign::plus) return x > 0.0 ? x : 0.0;
  return x < 0.0 ? x : 0.0;
}
constexpr double pos_part(double x) noexcept { return macaulay(x, Sign::plus); }
constexpr double neg_part(double x) noexcept { return macaulay(x, Sign::minus); }

/// Heaviside used for tangents; the kink at zero takes the mean slope.
constexpr double heaviside(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

class Tensor2;

/// Symmetric 3x3 tensor, components stored in Voigt order (xx, yy, zz, yz, xz, xy).
class SymTensor {
public:
  constexpr SymTensor() = default;
  constexpr SymTensor(double xx, double yy, double zz, double yz, double xz, double xy)
      : c_{xx, yy, zz, yz, xz, xy} {}

  static constexpr SymTensor diag(double a, double b, double c) { return {a, b, c, 0.0, 0.0, 0.0}; }
  static constexpr SymTensor identity() { return diag(1.0, 1.0, 1.0); }
  static constexpr SymTensor zero() { return {}; }
  /// n (x) n
  static SymTensor outer(const Vec3& n);
  /// Unit direction for engineering-Voigt component k (shear components carry 1/2).
  static SymTensor voigt_unit(int k);
  static SymTensor from_matrix(const Eigen::Matrix3d& m);

  double operator()(int i, int j) const noexcept { return c_[index(i, j)]; }
  double& operator[](int k) noexcept { return c_[k]; }
  double operator[](int k) const noexcept { return c_[k]; }
  const std::array<double, 6>& voigt() const noexcept { return c_; }

  double trace() const noexcept { return c_[0] + c_[1] + c_[2]; }
  SymTensor dev() const noexcept;
  /// Full double contraction A:B.
  double ddot(const SymTensor& o) const noexcept;
  double norm() const noexcept { return std::sqrt(ddot(*this)); }
  double det() const noexcept;
  Eigen::Matrix3d matrix() const;
  /// Q A Q^T
  SymTensor rotated(const Eigen::Matrix3d& q) const;

  SymTensor& operator+=(const SymTensor& o) noexcept;
  SymTensor& operator-=(const SymTensor& o) noexcept;
  SymTensor& operator*=(double s) noexcept;

  friend SymTensor operator+(SymTensor a, const SymTensor& b) noexcept { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) noexcept { return a -= b; }
  friend SymTensor operator*(SymTensor a, double s) noexcept { return a *= s; }
  friend SymTensor operator*(double s, SymTensor a) noexcept { return a *= s; }
  friend SymTensor operator-(SymTensor a) noexcept { return a *= -1.0; }

  static constexpr int index(int i, int j) noexcept {
    if (i == j) return i;
    const int s = i + j;  // (1,2)->3, (0,2)->2 -> 4, (0,1)->1 -> 5
    return s == 3 ? 3 : (s == 2 ? 4 : 5);
  }

private:
  std::array<double, 6> c_{};
};

/// General 3x3 tensor (deformation gradient, first Piola-Kirchhoff stress), row-major.
class Tensor2 {
public:
  constexpr Tensor2() = default;
  explicit Tensor2(const Eigen::Matrix3d& m);
  static Tensor2 identity();
  static Tensor2 from_sym(const SymTensor& s);

  double operator()(int i, int j) const noexcept { return a_[3 * i + j]; }
  double& operator()(int i, int j) noexcept { return a_[3 * i + j]; }
  double operator[](int k) const noexcept { return a_[k]; }
  double& operator[](int k) noexcept { return a_[k]; }
  const std::array<double, 9>& data() const noexcept { return a_; }

  double det() const noexcept;
  /// cof F = det(F) F^{-T}, computed without division.
  Tensor2 cofactor() const noexcept;
  Tensor2 transpose() const noexcept;
  Tensor2 inverse() const;
  double ddot(const Tensor2& o) const noexcept;
  double norm() const noexcept { return std::sqrt(ddot(*this)); }
  Eigen::Matrix3d matrix() const;
  SymTensor sym() const noexcept;

  Tensor2& operator+=(const Tensor2& o) noexcept;
  Tensor2& operator-=(const Tensor2& o) noexcept;
  Tensor2& operator*=(double s) noexcept;
  friend Tensor2 operator+(Tensor2 a, const Tensor2& b) noexcept { return a += b; }
  friend Tensor2 operator-(Tensor2 a, const Tensor2& b) noexcept { return a -= b; }
  friend Tensor2 operator*(Tensor2 a, double s) noexcept { return a *= s; }
  friend Tensor2 operator*(double s, Tensor2 a) noexcept { return a *= s; }
  friend Tensor2 operator*(const Tensor2& a, const Tensor2& b) noexcept;

private:
  std::array<double, 9> a_{};
};

/// Eigenvalues sorted descending with orthonormal eigenvectors.
struct SpectralDecomp {
  std::array<double, 3> values{};
  std::array<Vec3, 3> vectors{};

  SymTensor reconstruct() const;
  /// sum_a f(lambda_a) n_a (x) n_a
  template <class F>
  SymTensor apply(F&& f) const {
    SymTensor out;
    for (int a = 0; a < 3; ++a) out += f(values[a]) * SymTensor::outer(vectors[a]);
    return out;
  }
};

SpectralDecomp eig_sym_sorted(const SymTensor& a);

struct TensionCompression {
  SymTensor plus;
  SymTensor minus;
};
TensionCompression split_strain_spectral(const SymTensor& eps);

struct VolDev {
  double trace = 0.0;
  SymTensor dev;
};
VolDev vol_dev_parts(const SymTensor& a);

struct ModifiedInvariants {
  double i1bar = 3.0;
  double i2bar = 3.0;
  double jac = 1.0;
};
/// I1bar = J^{-2/3} F:F, I2bar = J^{-4/3} cofF:cofF, J = det F.
ModifiedInvariants modified_invariants(const Tensor2& f);

/// Directional derivative of the spectral positive part A+ at A in direction H.
SymTensor positive_part_derivative(const SpectralDecomp& spec, const SymTensor& h);

}  // namespace pff
