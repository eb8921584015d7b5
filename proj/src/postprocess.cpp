#include "pff/postprocess.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "pff/errors.hpp"
#include "pff/phasefield.hpp"

namespace pff {

KinkResult measure_kink_angle(const Mesh& mesh, const Eigen::VectorXd& z, const std::array<double, 3>& tip,
                              const KinkOptions& opt) {
  if (z.size() != mesh.num_nodes()) throw DimensionMismatch("phase field size does not match the mesh");
  std::vector<Eigen::Vector2d> pts;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    double zm = 0.0;
    for (int n : mesh.element(e)) zm += z[n];
    zm /= mesh.npe();
    if (zm <= opt.threshold) continue;
    const auto c = mesh.centroid(e);
    const Eigen::Vector2d d(c[0] - tip[0], c[1] - tip[1]);
    const double r = d.norm();
    if (d.x() > 0.0 && r >= opt.r_min && r <= opt.r_max) pts.push_back(d);
  }
  if (pts.size() < 3) throw NoCrackFound("fewer than three cracked cells ahead of the tip");

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  Eigen::Vector2d dir = es.eigenvectors().col(1);
  if (dir.dot(mean) < 0.0) dir = -dir;

  KinkResult k;
  k.deviation_deg = std::atan2(dir.y(), dir.x()) * 180.0 / std::numbers::pi;
  k.alpha_deg = 180.0 - std::abs(k.deviation_deg);
  k.points = static_cast<int>(pts.size());
  return k;
}

PeakLoad peak_load(const std::vector<StepRecord>& records) {
  PeakLoad p;
  for (const auto& r : records)
    if (p.step < 0 || r.F > p.F_max) {
      p.F_max = r.F;
      p.u_at_F_max = r.u;
      p.step = r.step;
    }
  return p;
}

std::string to_string(Locus l) {
  switch (l) {
    case Locus::none:
      return "none";
    case Locus::central:
      return "central";
    case Locus::intermediate:
      return "intermediate";
    case Locus::outer:
      return "outer";
    case Locus::interior:
      return "interior";
    case Locus::surface:
      return "surface";
  }
  return "none";
}

Locus classify_disc_locus(const std::array<double, 3>& p, double radius) {
  const double r = std::hypot(p[0], p[1]) / radius;
  if (r <= 0.2) return Locus::central;
  if (r >= 0.85) return Locus::outer;
  return Locus::intermediate;
}

Locus classify_block_locus(const std::array<double, 3>& p, const std::array<double, 3>& extent) {
  for (int d = 0; d < 3; ++d) {
    const double tol = 1e-9 * extent[d];
    if (std::abs(p[d]) <= tol || std::abs(p[d] - extent[d]) <= tol) return Locus::surface;
  }
  return Locus::interior;
}

double profile_l2_error(const Mesh& line, const Eigen::VectorXd& z, double lc) {
  // Three-point Gauss per element of the linear interpolant against the exact profile.
  static constexpr double xg[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr double wg[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double err = 0.0, ref = 0.0;
  for (int e = 0; e < line.num_elements(); ++e) {
    const auto el = line.element(e);
    const double x0 = line.nodes[el[0]][0], x1 = line.nodes[el[1]][0];
    const double half = 0.5 * (x1 - x0);
    for (int q = 0; q < 3; ++q) {
      const double s = 0.5 * (1.0 + xg[q]);
      const double x = x0 + s * (x1 - x0);
      const double zh = (1.0 - s) * z[el[0]] + s * z[el[1]];
      const double ex = analytic_profile(x, lc);
      err += wg[q] * half * (zh - ex) * (zh - ex);
      ref += wg[q] * half * ex * ex;
    }
  }
  return std::sqrt(err / ref);
}

void write_sweep_summary(const std::string& path, const std::string& axis, std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << axis << ",F_max_N,u_at_F_max_mm,ratio,increase_percent\n";
  const double base = rows.empty() ? 0.0 : rows.front().F_max;
  char buf[160];
  for (auto& r : rows) {
    r.ratio = base != 0.0 ? r.F_max / base : 0.0;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.6f\n", r.value, r.F_max, r.u_at_F_max, r.ratio,
                  100.0 * (r.ratio - 1.0));
    out << buf;
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace pff
