#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pff {

enum class ElementType { line2, tri3, hex8 };

int nodes_per_element(ElementType t);
int element_dim(ElementType t);

struct Mesh {
  ElementType type = ElementType::tri3;
  std::vector<std::array<double, 3>> nodes;
  std::vector<int> conn;  // nodes_per_element() entries per element
  std::map<std::string, std::vector<int>> node_sets;
  double h_nominal = 0.0;  // smallest generator spacing

  int dim() const { return element_dim(type); }
  int npe() const { return nodes_per_element(type); }
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(conn.size()) / npe(); }
  std::span<const int> element(int e) const { return {conn.data() + static_cast<std::size_t>(e) * npe(), static_cast<std::size_t>(npe())}; }
  std::array<double, 3> centroid(int e) const;
  const std::vector<int>& set(const std::string& name) const;
};

/// Horizontal slit at height y from x_begin to x_end. Nodes strictly before
/// x_end are duplicated; the node at x_end is the crack tip.
struct SlitSpec {
  bool enabled = false;
  double y = 0.0;
  double x_begin = 0.0;
  double x_end = 0.0;
};

/// Grid lines with spacing h_fine inside [fine_lo, fine_hi] and at most
/// h_coarse elsewhere; all of lo, fine_lo, fine_hi, hi are lines.
std::vector<double> graded_lines(double lo, double hi, double h_coarse, double h_fine, double fine_lo, double fine_hi);
std::vector<double> uniform_lines(double lo, double hi, int n);

/// Crisscross triangulation (4 triangles per cell around a center node) of a
/// tensor-product grid. Sets: left, right, bottom, top.
Mesh generate_plate(const std::vector<double>& xs, const std::vector<double>& ys, const SlitSpec& slit = {});
/// Uniform nx by ny plate of size lx by ly.
Mesh generate_structured_plate(int nx, int ny, double lx, double ly, const SlitSpec& slit = {});

/// Disc of radius r centered at the origin from nr concentric rings (6k nodes on ring k).
/// Sets: boundary, top_arc, bottom_arc (|x| <= arc_width/2), top_center, bottom_center.
Mesh generate_disc(double radius, int nr, double arc_width);

/// Trilinear hex block [0,lx]x[0,ly]x[0,lz]. Sets: bottom, top, sides, patch
/// (top nodes inside the centered square of side patch_side).
Mesh generate_block(int nx, int ny, int nz, double lx, double ly, double lz, double patch_side);

/// Two-node elements on [x0, x1]. Sets: left, right, center (node closest to the midpoint).
Mesh generate_line(int n, double x0, double x1);

}  // namespace pff
