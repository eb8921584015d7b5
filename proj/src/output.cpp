#include "pff/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pff/errors.hpp"

namespace pff {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return in;
}

// 17 significant digits read back to the same double.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int vtk_cell_type(ElementType t) {
  switch (t) {
    case ElementType::line2:
      return 3;
    case ElementType::tri3:
      return 5;
    case ElementType::hex8:
      return 12;
  }
  return 0;
}

}  // namespace

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

void write_curve_csv(const std::string& path, const std::vector<StepRecord>& records) {
  auto out = open_out(path);
  out << kCurveHeader << '\n';
  for (const auto& r : records)
    out << r.step << ',' << num(r.u) << ',' << num(r.F) << ',' << num(r.max_z) << ',' << r.iters << ','
        << num(r.seconds) << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<StepRecord> read_curve_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) throw IoError("'" + path + "' is not a load-displacement curve");
  std::vector<StepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    StepRecord r;
    char c1, c2, c3, c4, c5;
    std::istringstream ss(line);
    if (!(ss >> r.step >> c1 >> r.u >> c2 >> r.F >> c3 >> r.max_z >> c4 >> r.iters >> c5 >> r.seconds))
      throw IoError("malformed row in '" + path + "': " + line);
    out.push_back(r);
  }
  return out;
}

void write_vtk(const std::string& path, const Mesh& mesh, const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
  const int nn = mesh.num_nodes();
  const int ne = mesh.num_elements();
  const int npe = mesh.npe();
  const int dim = mesh.dim();
  if (z.size() != nn) throw DimensionMismatch("phase field size does not match the mesh");
  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\nphase-field fracture state\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nn << " double\n";
  for (const auto& p : mesh.nodes) out << num(p[0]) << ' ' << num(p[1]) << ' ' << num(p[2]) << '\n';
  out << "CELLS " << ne << ' ' << ne * (npe + 1) << '\n';
  for (int e = 0; e < ne; ++e) {
    out << npe;
    for (int n : mesh.element(e)) out << ' ' << n;
    out << '\n';
  }
  out << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) out << vtk_cell_type(mesh.type) << '\n';
  out << "POINT_DATA " << nn << "\nSCALARS z double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < nn; ++i) out << num(z[i]) << '\n';
  out << "VECTORS displacement double\n";
  const bool has_u = u.size() == static_cast<Eigen::Index>(nn) * dim && dim > 1;
  for (int i = 0; i < nn; ++i) {
    for (int d = 0; d < 3; ++d) {
      const double v = has_u && d < dim ? u[i * dim + d] : 0.0;
      out << num(v) << (d < 2 ? ' ' : '\n');
    }
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

VtkData read_vtk(const std::string& path) {
  auto in = open_in(path);
  VtkData d;
  std::string tok;
  auto expect = [&](const std::string& word) {
    while (in >> tok)
      if (tok == word) return;
    throw IoError("'" + path + "': missing " + word);
  };
  expect("POINTS");
  int nn = 0;
  in >> nn >> tok;
  d.mesh.nodes.resize(static_cast<std::size_t>(nn));
  for (auto& p : d.mesh.nodes) in >> p[0] >> p[1] >> p[2];
  expect("CELLS");
  int ne = 0, total = 0;
  in >> ne >> total;
  int npe = 0;
  for (int e = 0; e < ne; ++e) {
    in >> npe;
    for (int a = 0; a < npe; ++a) {
      int n = 0;
      in >> n;
      d.mesh.conn.push_back(n);
    }
  }
  expect("CELL_TYPES");
  int type = 0;
  in >> tok;
  for (int e = 0; e < ne; ++e) in >> type;
  d.mesh.type = type == 3 ? ElementType::line2 : (type == 12 ? ElementType::hex8 : ElementType::tri3);
  expect("LOOKUP_TABLE");
  in >> tok;
  d.z.resize(nn);
  for (int i = 0; i < nn; ++i) in >> d.z[i];
  expect("displacement");
  in >> tok;
  d.displacement.resize(static_cast<std::size_t>(nn));
  for (auto& v : d.displacement) in >> v[0] >> v[1] >> v[2];
  if (!in) throw IoError("'" + path + "': truncated file");
  return d;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

nlohmann::json read_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

}  // namespace pff
