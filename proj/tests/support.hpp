#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "pff/tensor.hpp"

namespace pff::test {

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline SymTensor random_sym(double scale = 1.0) {
  SymTensor a;
  for (int k = 0; k < 6; ++k) a[k] = scale * uniform(-1.0, 1.0);
  return a;
}

inline Eigen::Matrix3d random_rotation() {
  Eigen::Quaterniond q(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
  q.normalize();
  return q.toRotationMatrix();
}

/// F = I + scale * random, redrawn until det F > 0.5.
inline Tensor2 random_deformation(double scale = 0.2) {
  for (;;) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) += scale * uniform(-1.0, 1.0);
    if (m.determinant() > 0.5) return Tensor2(m);
  }
}

inline double rel_diff(double a, double b, double floor = 1e-300) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace pff::test
