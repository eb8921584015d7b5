#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "pff/mesh.hpp"
#include "pff/staggered.hpp"

namespace pff {

inline constexpr const char* kCurveHeader = "step,u_mm,F_N,max_z,iters,seconds";

/// Load-displacement curve, one row per step. Throws IoError.
void write_curve_csv(const std::string& path, const std::vector<StepRecord>& records);
std::vector<StepRecord> read_curve_csv(const std::string& path);

/// Legacy VTK ASCII v3.0 unstructured grid with point data z and displacement.
void write_vtk(const std::string& path, const Mesh& mesh, const Eigen::VectorXd& u, const Eigen::VectorXd& z);

struct VtkData {
  Mesh mesh;  // node coordinates and connectivity, no node sets
  Eigen::VectorXd z;
  std::vector<std::array<double, 3>> displacement;
};
VtkData read_vtk(const std::string& path);

void write_json(const std::string& path, const nlohmann::ordered_json& j);
nlohmann::json read_json(const std::string& path);

/// Creates the directory and its parents.
void ensure_directory(const std::string& dir);

}  // namespace pff
