#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pff/mesh.hpp"
#include "pff/staggered.hpp"

namespace pff {

struct KinkOptions {
  double threshold = 0.9;  // element mean z above which a cell counts as cracked
  double r_min = 0.0;      // radius window around the tip, mm
  double r_max = 25.0;
};

struct KinkResult {
  double alpha_deg = 0.0;      // 180 = straight continuation
  double deviation_deg = 0.0;  // signed direction of the crack, positive = counterclockwise from +x
  int points = 0;
};

/// Total least-squares line through cracked-cell centroids ahead of the tip (x > tip x).
/// Throws NoCrackFound when fewer than three cells qualify.
KinkResult measure_kink_angle(const Mesh& mesh, const Eigen::VectorXd& z, const std::array<double, 3>& tip,
                              const KinkOptions& opt = {});

struct PeakLoad {
  double F_max = 0.0;
  double u_at_F_max = 0.0;
  int step = -1;
};
PeakLoad peak_load(const std::vector<StepRecord>& records);

/// Where the first strongly damaged node sits relative to the specimen.
enum class Locus { none, central, intermediate, outer, interior, surface };
std::string to_string(Locus l);

/// Disc centered at the origin: central if r <= 0.2 R, outer if r >= 0.85 R.
Locus classify_disc_locus(const std::array<double, 3>& p, double radius);
/// Block [0,lx]x[0,ly]x[0,lz]: surface if on any face.
Locus classify_block_locus(const std::array<double, 3>& p, const std::array<double, 3>& extent);

/// L2 error of nodal values against exp(-|x|/lc), relative to the exact profile norm.
double profile_l2_error(const Mesh& line, const Eigen::VectorXd& z, double lc);

struct SweepRow {
  double value = 0.0;
  double F_max = 0.0;
  double u_at_F_max = 0.0;
  double ratio = 0.0;  // F_max / F_max of the first row
};
/// Fills ratio and writes value,F_max_N,u_at_F_max_mm,ratio,increase_percent.
void write_sweep_summary(const std::string& path, const std::string& axis, std::vector<SweepRow>& rows);

}  // namespace pff
