#include "pff/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pff/errors.hpp"

namespace pff {

int nodes_per_element(ElementType t) {
  switch (t) {
    case ElementType::line2:
      return 2;
    case ElementType::tri3:
      return 3;
    case ElementType::hex8:
      return 8;
  }
  return 0;
}

int element_dim(ElementType t) {
  switch (t) {
    case ElementType::line2:
      return 1;
    case ElementType::tri3:
      return 2;
    case ElementType::hex8:
      return 3;
  }
  return 0;
}

std::array<double, 3> Mesh::centroid(int e) const {
  std::array<double, 3> c{0, 0, 0};
  const auto el = element(e);
  for (int n : el)
    for (int d = 0; d < 3; ++d) c[d] += nodes[n][d];
  for (auto& v : c) v /= static_cast<double>(el.size());
  return c;
}

const std::vector<int>& Mesh::set(const std::string& name) const {
  const auto it = node_sets.find(name);
  if (it == node_sets.end()) throw DimensionMismatch("mesh has no node set '" + name + "'");
  return it->second;
}

namespace {

int find_line(const std::vector<double>& lines, double v, double tol) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (std::abs(lines[i] - v) <= tol) return static_cast<int>(i);
  return -1;
}

void add_box_sets(Mesh& m, double x0, double x1, double y0, double y1) {
  const double tol = 1e-9 * std::max(x1 - x0, y1 - y0);
  for (int n = 0; n < m.num_nodes(); ++n) {
    const auto& p = m.nodes[n];
    if (std::abs(p[0] - x0) <= tol) m.node_sets["left"].push_back(n);
    if (std::abs(p[0] - x1) <= tol) m.node_sets["right"].push_back(n);
    if (std::abs(p[1] - y0) <= tol) m.node_sets["bottom"].push_back(n);
    if (std::abs(p[1] - y1) <= tol) m.node_sets["top"].push_back(n);
  }
}

double signed_area(const Mesh& m, int a, int b, int c) {
  const auto& p = m.nodes[a];
  const auto& q = m.nodes[b];
  const auto& r = m.nodes[c];
  return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]));
}

void push_tri(Mesh& m, int a, int b, int c) {
  if (signed_area(m, a, b, c) < 0.0) std::swap(b, c);
  m.conn.insert(m.conn.end(), {a, b, c});
}

}  // namespace

std::vector<double> uniform_lines(double lo, double hi, int n) {
  if (n < 1 || !(hi > lo)) throw DimensionMismatch("uniform_lines needs n >= 1 and hi > lo");
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) out[i] = lo + (hi - lo) * i / n;
  return out;
}

std::vector<double> graded_lines(double lo, double hi, double h_coarse, double h_fine, double fine_lo,
                                 double fine_hi) {
  if (!(h_coarse > 0.0) || !(h_fine > 0.0) || !(hi > lo)) throw DimensionMismatch("graded_lines needs positive sizes");
  fine_lo = std::clamp(fine_lo, lo, hi);
  fine_hi = std::clamp(fine_hi, fine_lo, hi);
  std::vector<double> out;
  out.push_back(lo);
  auto extend = [&](double b, double h) {
    const double a = out.back();
    if (b - a <= 1e-12 * (hi - lo)) return;
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-9)));
    for (int i = 1; i <= n; ++i) out.push_back(a + (b - a) * i / n);
  };
  extend(fine_lo, h_coarse);
  extend(fine_hi, h_fine);
  extend(hi, h_coarse);
  return out;
}

Mesh generate_plate(const std::vector<double>& xs, const std::vector<double>& ys, const SlitSpec& slit) {
  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;
  if (nx < 1 || ny < 1) throw DimensionMismatch("plate needs at least one cell per direction");
  Mesh m;
  m.type = ElementType::tri3;
  m.h_nominal = 1e300;
  for (int i = 0; i < nx; ++i) m.h_nominal = std::min(m.h_nominal, xs[i + 1] - xs[i]);
  for (int j = 0; j < ny; ++j) m.h_nominal = std::min(m.h_nominal, ys[j + 1] - ys[j]);

  auto corner = [&](int i, int j) { return i + (nx + 1) * j; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.nodes.push_back({xs[i], ys[j], 0.0});
  const int center0 = m.num_nodes();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      m.nodes.push_back({0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]), 0.0});

  // Duplicate seam nodes: upper cells of the slit row use the copies.
  std::vector<int> upper_copy(static_cast<std::size_t>(nx + 1), -1);
  int js = -1;
  if (slit.enabled) {
    const double tol = 1e-9 * std::max(xs.back() - xs.front(), ys.back() - ys.front());
    js = find_line(ys, slit.y, tol);
    const int ib = find_line(xs, slit.x_begin, tol);
    const int ie = find_line(xs, slit.x_end, tol);
    if (js <= 0 || js >= ny) throw InvalidSlit("slit height does not coincide with an interior grid line");
    if (ib < 0 || ie < 0 || ie <= ib) throw InvalidSlit("slit ends do not coincide with grid lines");
    const int first = ib == 0 ? 0 : ib + 1;
    for (int i = first; i < ie; ++i) {
      upper_copy[i] = m.num_nodes();
      m.nodes.push_back(m.nodes[corner(i, js)]);
    }
  }

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int a = corner(i, j), b = corner(i + 1, j);
      const int c = corner(i + 1, j + 1), d = corner(i, j + 1);
      if (j == js) {
        if (upper_copy[i] >= 0) a = upper_copy[i];
        if (upper_copy[i + 1] >= 0) b = upper_copy[i + 1];
      }
      const int mid = center0 + i + nx * j;
      m.conn.insert(m.conn.end(), {a, b, mid, b, c, mid, c, d, mid, d, a, mid});
    }
  add_box_sets(m, xs.front(), xs.back(), ys.front(), ys.back());
  return m;
}

Mesh generate_structured_plate(int nx, int ny, double lx, double ly, const SlitSpec& slit) {
  if (nx < 1 || ny < 1) throw DimensionMismatch("plate needs at least one cell per direction");
  return generate_plate(uniform_lines(0.0, lx, nx), uniform_lines(0.0, ly, ny), slit);
}

Mesh generate_disc(double radius, int nr, double arc_width) {
  if (nr < 2 || !(radius > 0.0)) throw DimensionMismatch("disc needs nr >= 2 and a positive radius");
  Mesh m;
  m.type = ElementType::tri3;
  m.h_nominal = radius / nr;
  m.nodes.push_back({0.0, 0.0, 0.0});
  std::vector<int> ring_start{0};
  for (int k = 1; k <= nr; ++k) {
    ring_start.push_back(m.num_nodes());
    const int n = 6 * k;
    const double r = radius * k / nr;
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * std::numbers::pi * j / n;
      m.nodes.push_back({r * std::cos(t), r * std::sin(t), 0.0});
    }
  }
  for (int j = 0; j < 6; ++j) push_tri(m, 0, ring_start[1] + j, ring_start[1] + (j + 1) % 6);
  for (int k = 2; k <= nr; ++k) {
    const int n0 = 6 * (k - 1), n1 = 6 * k;
    const int s0 = ring_start[k - 1], s1 = ring_start[k];
    int i = 0, j = 0;
    while (i < n0 || j < n1) {
      const double next_in = static_cast<double>(i + 1) / n0;
      const double next_out = static_cast<double>(j + 1) / n1;
      if (j < n1 && (i >= n0 || next_out <= next_in)) {
        push_tri(m, s0 + i % n0, s1 + j, s1 + (j + 1) % n1);
        ++j;
      } else {
        push_tri(m, s0 + i, s1 + j % n1, s0 + (i + 1) % n0);
        ++i;
      }
    }
  }
  const double tol = 1e-9 * radius;
  int top = -1, bottom = -1;
  for (int n = ring_start[nr]; n < m.num_nodes(); ++n) {
    const auto& p = m.nodes[n];
    m.node_sets["boundary"].push_back(n);
    if (std::abs(p[0]) <= 0.5 * arc_width + tol) {
      if (p[1] > 0.0) m.node_sets["top_arc"].push_back(n);
      if (p[1] < 0.0) m.node_sets["bottom_arc"].push_back(n);
    }
    if (top < 0 || p[1] > m.nodes[top][1]) top = n;
    if (bottom < 0 || p[1] < m.nodes[bottom][1]) bottom = n;
  }
  m.node_sets["top_center"] = {top};
  m.node_sets["bottom_center"] = {bottom};
  return m;
}

Mesh generate_block(int nx, int ny, int nz, double lx, double ly, double lz, double patch_side) {
  if (nx < 1 || ny < 1 || nz < 1) throw DimensionMismatch("block needs at least one cell per direction");
  Mesh m;
  m.type = ElementType::hex8;
  m.h_nominal = std::min({lx / nx, ly / ny, lz / nz});
  auto id = [&](int i, int j, int k) { return i + (nx + 1) * (j + (ny + 1) * k); };
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) m.nodes.push_back({lx * i / nx, ly * j / ny, lz * k / nz});
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        m.conn.insert(m.conn.end(), {id(i, j, k), id(i + 1, j, k), id(i + 1, j + 1, k), id(i, j + 1, k),
                                     id(i, j, k + 1), id(i + 1, j, k + 1), id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)});
  const double tol = 1e-9 * std::max({lx, ly, lz});
  for (int n = 0; n < m.num_nodes(); ++n) {
    const auto& p = m.nodes[n];
    if (std::abs(p[2]) <= tol) m.node_sets["bottom"].push_back(n);
    if (std::abs(p[2] - lz) <= tol) {
      m.node_sets["top"].push_back(n);
      if (std::abs(p[0] - 0.5 * lx) <= 0.5 * patch_side + tol && std::abs(p[1] - 0.5 * ly) <= 0.5 * patch_side + tol)
        m.node_sets["patch"].push_back(n);
    }
    if (std::abs(p[0]) <= tol || std::abs(p[0] - lx) <= tol || std::abs(p[1]) <= tol || std::abs(p[1] - ly) <= tol)
      m.node_sets["sides"].push_back(n);
  }
  return m;
}

Mesh generate_line(int n, double x0, double x1) {
  if (n < 1 || !(x1 > x0)) throw DimensionMismatch("line needs n >= 1 and x1 > x0");
  Mesh m;
  m.type = ElementType::line2;
  m.h_nominal = (x1 - x0) / n;
  for (int i = 0; i <= n; ++i) m.nodes.push_back({x0 + (x1 - x0) * i / n, 0.0, 0.0});
  for (int e = 0; e < n; ++e) m.conn.insert(m.conn.end(), {e, e + 1});
  m.node_sets["left"] = {0};
  m.node_sets["right"] = {n};
  int c = 0;
  const double mid = 0.5 * (x0 + x1);
  for (int i = 0; i <= n; ++i)
    if (std::abs(m.nodes[i][0] - mid) < std::abs(m.nodes[c][0] - mid)) c = i;
  m.node_sets["center"] = {c};
  return m;
}

}  // namespace pff
