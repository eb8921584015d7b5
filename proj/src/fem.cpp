#include "pff/fem.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#ifdef PFF_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#endif

#include "pff/errors.hpp"

namespace pff {

// ---------------------------------------------------------------- linear solver

#ifdef PFF_HAVE_CHOLMOD
// Some BLAS builds mis-detect the CPU and break supernodal factorization; probe once with a
// small SPD matrix large enough to trigger the supernodal BLAS path.
bool supernodal_works() {
  static const bool ok = [] {
    const int n = 40, N = n * n;
    std::vector<Eigen::Triplet<double>> t;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int k = i + n * j;
        t.emplace_back(k, k, 4.5);
        if (i > 0) t.emplace_back(k, k - 1, -1.0);
        if (i < n - 1) t.emplace_back(k, k + 1, -1.0);
        if (j > 0) t.emplace_back(k, k - n, -1.0);
        if (j < n - 1) t.emplace_back(k, k + n, -1.0);
      }
    Eigen::SparseMatrix<double> A(N, N);
    A.setFromTriplets(t.begin(), t.end());
    Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>> llt;
    llt.cholmod().print = 0;
    llt.compute(A);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(N);
    return (A * llt.solve(b) - b).norm() <= 1e-10 * b.norm();
  }();
  return ok;
}
#endif

class LinearSolver {
public:
  LinearSolver() {
#ifdef PFF_HAVE_CHOLMOD
    llt_.cholmod().print = 0;
    supernodal_ = supernodal_works();
    use_ldlt_ = !supernodal_;
#endif
  }

  void factorize(const Eigen::SparseMatrix<double>& K) {
#ifdef PFF_HAVE_CHOLMOD
    if (!use_ldlt_) {
      if (!analyzed_) {
        llt_.analyzePattern(K);
        analyzed_ = true;
      }
      llt_.factorize(K);
      if (llt_.info() == Eigen::Success) return;
      use_ldlt_ = true;
    }
#endif
    if (!ldlt_analyzed_) {
      ldlt_.analyzePattern(K);
      ldlt_analyzed_ = true;
    }
    ldlt_.factorize(K);
    if (ldlt_.info() != Eigen::Success) throw SingularTangent("sparse factorization of the tangent failed");
    use_ldlt_ = true;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) {
#ifdef PFF_HAVE_CHOLMOD
    if (!use_ldlt_) return llt_.solve(b);
#endif
    return ldlt_.solve(b);
  }

  // An indefinite tangent switches to LDLT for the current factorization only.
  void reset_choice() {
#ifdef PFF_HAVE_CHOLMOD
    use_ldlt_ = !supernodal_;
#endif
  }

private:
#ifdef PFF_HAVE_CHOLMOD
  Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>> llt_;
  bool analyzed_ = false;
  bool supernodal_ = false;
#endif
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  bool ldlt_analyzed_ = false;
  bool use_ldlt_ = false;
};

// ---------------------------------------------------------------- helpers

namespace {

constexpr int kMaxNpe = 8;
constexpr int kMaxDofs = 24;
using LocalMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDofs, kMaxDofs>;
using LocalVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDofs, 1>;

// Voigt index of (i,j) in the plane (xx, yy, xy) or 3D (xx, yy, zz, yz, xz, xy) ordering.
int voigt2(int i, int j) { return i == j ? i : 2; }
int voigt3(int i, int j) { return SymTensor::index(i, j); }

Eigen::Matrix<double, 6, 3> plane_embedding(const LinearElasticParams& p) {
  const double a = plane_out_of_plane_factor(p);
  Eigen::Matrix<double, 6, 3> P = Eigen::Matrix<double, 6, 3>::Zero();
  P(0, 0) = 1.0;
  P(1, 1) = 1.0;
  P(2, 0) = a;
  P(2, 1) = a;
  P(5, 2) = 1.0;
  return P;
}

Tensor2 deformation_gradient(const Eigen::Matrix3d& grad) { return Tensor2(Eigen::Matrix3d::Identity() + grad); }

SymTensor cauchy_from_piola(const Tensor2& P, const Tensor2& F) {
  return (P * F.transpose() * (1.0 / F.det())).sym();
}

}  // namespace

Eigen::Vector3d project_plane_stress(const SymTensor& s, const LinearElasticParams& p) {
  const double a = plane_out_of_plane_factor(p);
  return {s[0] + a * s[2], s[1] + a * s[2], s[5]};
}

// ---------------------------------------------------------------- Fem

Fem::Fem(const Mesh& mesh, MaterialModel material) : mesh_(mesh), mat_(std::move(material)) {
  dim_ = mesh_.dim();
  npe_ = mesh_.npe();
  if (mat_.kind == MaterialKind::hyperelastic && dim_ == 2 && mat_.linear.mode == PlaneMode::plane_stress)
    throw NonPositiveParameter("finite-strain material requires plane strain in 2D");
  precompute();
  solver_ = std::make_unique<LinearSolver>();
}

Fem::~Fem() = default;

void Fem::precompute() {
  const int ne = mesh_.num_elements();
  std::vector<std::array<double, 3>> qref;
  std::vector<double> wref;
  switch (mesh_.type) {
    case ElementType::line2: {
      const double g = 1.0 / std::sqrt(3.0);
      qref = {{-g, 0, 0}, {g, 0, 0}};
      wref = {1.0, 1.0};
      break;
    }
    case ElementType::tri3:
      qref = {{1.0 / 3.0, 1.0 / 3.0, 0}};
      wref = {0.5};
      break;
    case ElementType::hex8: {
      const double g = 1.0 / std::sqrt(3.0);
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
          for (int i = 0; i < 2; ++i) {
            qref.push_back({i ? g : -g, j ? g : -g, k ? g : -g});
            wref.push_back(1.0);
          }
      break;
    }
  }
  nq_ = static_cast<int>(qref.size());
  weight_.assign(static_cast<std::size_t>(ne) * nq_, 0.0);
  N_.assign(static_cast<std::size_t>(ne) * nq_ * npe_, 0.0);
  dN_.assign(static_cast<std::size_t>(ne) * nq_ * npe_ * dim_, 0.0);

  static constexpr int hs[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
                                   {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};
  const double thick = dim_ == 2 ? mat_.thickness : 1.0;

  for (int e = 0; e < ne; ++e) {
    const auto el = mesh_.element(e);
    for (int q = 0; q < nq_; ++q) {
      const int qi = e * nq_ + q;
      double Nloc[kMaxNpe];
      double dref[kMaxNpe][3] = {};
      const auto& xi = qref[q];
      switch (mesh_.type) {
        case ElementType::line2:
          Nloc[0] = 0.5 * (1 - xi[0]);
          Nloc[1] = 0.5 * (1 + xi[0]);
          dref[0][0] = -0.5;
          dref[1][0] = 0.5;
          break;
        case ElementType::tri3:
          Nloc[0] = 1 - xi[0] - xi[1];
          Nloc[1] = xi[0];
          Nloc[2] = xi[1];
          dref[0][0] = -1;
          dref[0][1] = -1;
          dref[1][0] = 1;
          dref[2][1] = 1;
          break;
        case ElementType::hex8:
          for (int a = 0; a < 8; ++a) {
            const double s0 = 1 + hs[a][0] * xi[0], s1 = 1 + hs[a][1] * xi[1], s2 = 1 + hs[a][2] * xi[2];
            Nloc[a] = 0.125 * s0 * s1 * s2;
            dref[a][0] = 0.125 * hs[a][0] * s1 * s2;
            dref[a][1] = 0.125 * hs[a][1] * s0 * s2;
            dref[a][2] = 0.125 * hs[a][2] * s0 * s1;
          }
          break;
      }
      Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
      for (int a = 0; a < npe_; ++a)
        for (int i = 0; i < dim_; ++i)
          for (int j = 0; j < dim_; ++j) J(i, j) += mesh_.nodes[el[a]][i] * dref[a][j];
      const auto Jd = J.topLeftCorner(dim_, dim_);
      const double det = dim_ == 1 ? Jd(0, 0) : (dim_ == 2 ? Jd.determinant() : J.determinant());
      if (!(det > 0.0)) throw NonPositiveJacobian(det);
      Eigen::MatrixXd Jinv = Eigen::MatrixXd(Jd).inverse();
      weight_[qi] = wref[q] * det * thick;
      for (int a = 0; a < npe_; ++a) {
        N_[static_cast<std::size_t>(qi) * npe_ + a] = Nloc[a];
        for (int j = 0; j < dim_; ++j) {
          double s = 0.0;
          for (int k = 0; k < dim_; ++k) s += dref[a][k] * Jinv(k, j);
          dN_[(static_cast<std::size_t>(qi) * npe_ + a) * dim_ + j] = s;
        }
      }
    }
  }

  if (dim_ == 1) return;

  // Sparsity pattern and scatter map.
  const int nd = npe_ * dim_;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(ne) * nd * nd);
  for (int e = 0; e < ne; ++e) {
    const auto el = mesh_.element(e);
    for (int a = 0; a < npe_; ++a)
      for (int i = 0; i < dim_; ++i)
        for (int b = 0; b < npe_; ++b)
          for (int k = 0; k < dim_; ++k) trip.emplace_back(el[a] * dim_ + i, el[b] * dim_ + k, 0.0);
  }
  K_.resize(ndof(), ndof());
  K_.setFromTriplets(trip.begin(), trip.end());
  K_.makeCompressed();
  scatter_.resize(static_cast<std::size_t>(ne) * nd * nd);
  const int* outer = K_.outerIndexPtr();
  const int* inner = K_.innerIndexPtr();
  for (int e = 0; e < ne; ++e) {
    const auto el = mesh_.element(e);
    for (int r = 0; r < nd; ++r)
      for (int c = 0; c < nd; ++c) {
        const int gr = el[r / dim_] * dim_ + r % dim_;
        const int gc = el[c / dim_] * dim_ + c % dim_;
        const int* pos = std::lower_bound(inner + outer[gc], inner + outer[gc + 1], gr);
        scatter_[(static_cast<std::size_t>(e) * nd + r) * nd + c] = static_cast<int>(pos - inner);
      }
  }
}

bool Fem::condensed_plane_stress() const noexcept {
  return dim_ == 2 && mat_.kind == MaterialKind::linear && mat_.linear.mode == PlaneMode::plane_stress &&
         mat_.stress_split != EnergySplit::none;
}

double Fem::z_at(int q, const Eigen::VectorXd& z) const {
  const auto el = mesh_.element(q / nq_);
  double v = 0.0;
  for (int a = 0; a < npe_; ++a) v += N_[static_cast<std::size_t>(q) * npe_ + a] * z[el[a]];
  return std::clamp(v, 0.0, 1.0);
}

void Fem::gather(int e, const Eigen::VectorXd& u, double* ue) const {
  const auto el = mesh_.element(e);
  for (int a = 0; a < npe_; ++a)
    for (int i = 0; i < dim_; ++i) ue[a * dim_ + i] = u[el[a] * dim_ + i];
}

namespace {

Eigen::Matrix3d displacement_gradient(const double* ue, const double* dN, int npe, int dim) {
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (int a = 0; a < npe; ++a)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) H(i, j) += ue[a * dim + i] * dN[a * dim + j];
  return H;
}

SymTensor small_strain(const Eigen::Matrix3d& H, int dim, const LinearElasticParams& p) {
  if (dim == 2) return embed_plane(H(0, 0), H(1, 1), H(0, 1) + H(1, 0), p);
  return SymTensor::from_matrix(H);
}

}  // namespace

SymTensor Fem::point_strain(const Eigen::Matrix3d& H, double zq) const {
  if (condensed_plane_stress())
    return plane_stress_point(H(0, 0), H(1, 1), H(0, 1) + H(1, 0), zq, mat_.stress_split, mat_.linear, mat_.deg, false)
        .eps;
  return small_strain(H, dim_, mat_.linear);
}

Eigen::VectorXd Fem::internal_force(const Eigen::VectorXd& u, const Eigen::VectorXd& z, bool want_tangent) {
  if (dim_ == 1) throw DimensionMismatch("line meshes carry the phase field only");
  if (u.size() != ndof() || z.size() != mesh_.num_nodes()) throw DimensionMismatch("field sizes do not match the mesh");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(ndof());
  if (want_tangent) std::fill(K_.valuePtr(), K_.valuePtr() + K_.nonZeros(), 0.0);

  const int nd = npe_ * dim_;
  const bool linear = mat_.kind == MaterialKind::linear;
  const Eigen::Matrix<double, 6, 3> Pe = plane_embedding(mat_.linear);
  const bool condensed = condensed_plane_stress();
  double ue[kMaxDofs];
  LocalVector fe(nd);
  LocalMatrix ke(nd, nd);

  for (int e = 0; e < mesh_.num_elements(); ++e) {
    gather(e, u, ue);
    fe.setZero();
    if (want_tangent) ke.setZero();
    for (int q = 0; q < nq_; ++q) {
      const int qi = e * nq_ + q;
      const double w = weight_[qi];
      const double* dN = &dN_[static_cast<std::size_t>(qi) * npe_ * dim_];
      const double zq = z_at(qi, z);
      const Eigen::Matrix3d H = displacement_gradient(ue, dN, npe_, dim_);
      if (linear) {
        SymTensor eps, sig;
        Eigen::Matrix<double, 6, 6> D;
        Eigen::Vector3d s2;
        Eigen::Matrix3d D2 = Eigen::Matrix3d::Zero();
        if (condensed) {
          const PlaneStressPoint ps = plane_stress_point(H(0, 0), H(1, 1), H(0, 1) + H(1, 0), zq, mat_.stress_split,
                                                         mat_.linear, mat_.deg, want_tangent);
          sig = ps.sigma;
          s2 = {sig[0], sig[1], sig[5]};
          D2 = ps.tangent;
        } else {
          eps = small_strain(H, dim_, mat_.linear);
          sig = degraded_stress(eps, zq, mat_.stress_split, mat_.linear, mat_.deg);
          if (want_tangent) D = degraded_tangent(eps, zq, mat_.stress_split, mat_.linear, mat_.deg);
          if (dim_ == 2) {
            s2 = project_plane_stress(sig, mat_.linear);
            if (want_tangent) D2 = Pe.transpose() * D * Pe;
          }
        }
        if (dim_ == 2) {
          for (int a = 0; a < npe_; ++a)
            for (int i = 0; i < 2; ++i) {
              double s = 0.0;
              for (int j = 0; j < 2; ++j) s += s2[voigt2(i, j)] * dN[a * 2 + j];
              fe[a * 2 + i] += w * s;
              if (!want_tangent) continue;
              for (int b = 0; b < npe_; ++b)
                for (int k = 0; k < 2; ++k) {
                  double kv = 0.0;
                  for (int j = 0; j < 2; ++j)
                    for (int l = 0; l < 2; ++l) kv += dN[a * 2 + j] * D2(voigt2(i, j), voigt2(k, l)) * dN[b * 2 + l];
                  ke(a * 2 + i, b * 2 + k) += w * kv;
                }
            }
        } else {
          for (int a = 0; a < npe_; ++a)
            for (int i = 0; i < 3; ++i) {
              double s = 0.0;
              for (int j = 0; j < 3; ++j) s += sig(i, j) * dN[a * 3 + j];
              fe[a * 3 + i] += w * s;
              if (!want_tangent) continue;
              for (int b = 0; b < npe_; ++b)
                for (int k = 0; k < 3; ++k) {
                  double kv = 0.0;
                  for (int j = 0; j < 3; ++j)
                    for (int l = 0; l < 3; ++l) kv += dN[a * 3 + j] * D(voigt3(i, j), voigt3(k, l)) * dN[b * 3 + l];
                  ke(a * 3 + i, b * 3 + k) += w * kv;
                }
            }
        }
      } else {
        const Tensor2 F = deformation_gradient(H);
        const Tensor2 P = piola_stress(F, zq, mat_.finite_split, mat_.hyper, mat_.deg);
        Mat9 A;
        if (want_tangent) A = piola_tangent(F, zq, mat_.finite_split, mat_.hyper, mat_.deg);
        for (int a = 0; a < npe_; ++a)
          for (int i = 0; i < dim_; ++i) {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j) s += P(i, j) * dN[a * dim_ + j];
            fe[a * dim_ + i] += w * s;
            if (!want_tangent) continue;
            for (int b = 0; b < npe_; ++b)
              for (int k = 0; k < dim_; ++k) {
                double kv = 0.0;
                for (int j = 0; j < dim_; ++j)
                  for (int l = 0; l < dim_; ++l) kv += dN[a * dim_ + j] * A(3 * i + j, 3 * k + l) * dN[b * dim_ + l];
                ke(a * dim_ + i, b * dim_ + k) += w * kv;
              }
          }
      }
    }
    const auto el = mesh_.element(e);
    for (int r = 0; r < nd; ++r) f[el[r / dim_] * dim_ + r % dim_] += fe[r];
    if (want_tangent) {
      double* vals = K_.valuePtr();
      const int* sc = &scatter_[static_cast<std::size_t>(e) * nd * nd];
      for (int r = 0; r < nd; ++r)
        for (int c = 0; c < nd; ++c) vals[sc[r * nd + c]] += ke(r, c);
    }
  }
  return f;
}

namespace {
std::string ratio_text(double a, double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", b > 0.0 ? a / b : a);
  return buf;
}
}  // namespace

SolveReport Fem::solve(Eigen::VectorXd& u, const Eigen::VectorXd& z, const std::vector<char>& constrained,
                       const Eigen::VectorXd& targets, double rel_tol, int max_iter) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  for (int d = 0; d < ndof(); ++d)
    if (constrained[d]) u[d] = targets[d];

  const bool constant_tangent = mat_.kind == MaterialKind::linear && mat_.stress_split == EnergySplit::none;
  auto free_residual = [&](const Eigen::VectorXd& f) {
    Eigen::VectorXd r = f;
    for (int d = 0; d < ndof(); ++d)
      if (constrained[d]) r[d] = 0.0;
    return r;
  };

  bool factorized = false;
  double e_cur = std::numeric_limits<double>::quiet_NaN();  // energy at u, when known
  std::vector<double> history;
  Eigen::VectorXd f = internal_force(u, z, true);
  Eigen::VectorXd r = free_residual(f);
  for (int it = 0;; ++it) {
    rep.residual = r.norm();
    rep.reference = f.norm();
    rep.iterations = it;
    if (rep.residual <= rel_tol * rep.reference || rep.residual == 0.0) {
      rep.converged = true;
      break;
    }
    // Strong stiffness contrast across cracks puts a roundoff floor on the residual;
    // a stalled iterate below the loose bound is accepted.
    history.push_back(rep.residual);
    const double loose = std::max(1e-9, rel_tol) * rep.reference;
    const bool stalled = it >= 4 && rep.residual > 0.5 * history[history.size() - 4];
    if (rep.residual <= loose && (stalled || it >= max_iter)) {
      rep.converged = true;
      break;
    }
    if (it >= max_iter) {
      rep.failure = "Newton iteration limit reached (residual " + ratio_text(rep.residual, rep.reference) + " of reference)";
      break;
    }
    if (!factorized || !constant_tangent) {
      // Eliminate constrained dofs symmetrically.
      for (int c = 0; c < K_.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator itk(K_, c); itk; ++itk)
          if (constrained[itk.row()] || constrained[c]) itk.valueRef() = itk.row() == c ? 1.0 : 0.0;
      solver_->reset_choice();
      solver_->factorize(K_);
      factorized = true;
    }
    const Eigen::VectorXd du = -solver_->solve(r);
    if (!du.allFinite()) {
      rep.failure = "non-finite Newton increment";
      break;
    }

    // The elastic energy is convex in u, so backtracking uses an Armijo test on it.
    // Near convergence the energy change drops below roundoff and the residual
    // norm decides instead. A full step is kept for the constant tangent.
    if (!constant_tangent && !std::isfinite(e_cur)) e_cur = elastic_energy(u, z);
    const double e0 = e_cur;
    const double slope = r.dot(du);
    const double noise = 1e-12 * std::max(std::abs(e0), 1e-300);
    double alpha = 1.0, e_next = std::numeric_limits<double>::quiet_NaN();
    Eigen::VectorXd u_try, f_try, r_try;
    bool accepted = false;
    for (int ls = 0; ls < 20; ++ls) {
      u_try = u + alpha * du;
      try {
        if (constant_tangent) {
          f_try = internal_force(u_try, z, false);
          r_try = free_residual(f_try);
          accepted = true;
          break;
        }
        const double e1 = elastic_energy(u_try, z);
        if (e1 <= e0 + 1e-4 * alpha * slope && std::abs(e1 - e0) > noise) {
          e_next = e1;
          accepted = true;
          break;
        }
        if (std::abs(e1 - e0) <= noise) {
          r_try = free_residual(internal_force(u_try, z, false));
          if (r_try.norm() < rep.residual) {
            accepted = true;
            break;
          }
        }
      } catch (const NonPositiveJacobian&) {
      }
      alpha *= 0.5;
    }
    if (!accepted && rep.residual <= std::max(1e-9, rel_tol) * rep.reference) {
      rep.converged = true;
      break;
    }
    if (!accepted) {
      rep.failure = "line search failed (residual " + ratio_text(rep.residual, rep.reference) + " of reference)";
      break;
    }
    u = u_try;
    e_cur = e_next;
    f = constant_tangent ? f_try : internal_force(u, z, true);
    r = constant_tangent ? r_try : free_residual(f);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

PhaseOperators Fem::phase_operators() const {
  PhaseOperators ops;
  const int nn = mesh_.num_nodes();
  ops.lumped_mass = Eigen::VectorXd::Zero(nn);
  std::vector<Eigen::Triplet<double>> trip;
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const auto el = mesh_.element(e);
    for (int q = 0; q < nq_; ++q) {
      const int qi = e * nq_ + q;
      const double w = weight_[qi];
      const double* dN = &dN_[static_cast<std::size_t>(qi) * npe_ * dim_];
      for (int a = 0; a < npe_; ++a) {
        ops.lumped_mass[el[a]] += w * N_[static_cast<std::size_t>(qi) * npe_ + a];
        for (int b = 0; b < npe_; ++b) {
          double s = 0.0;
          for (int d = 0; d < dim_; ++d) s += dN[a * dim_ + d] * dN[b * dim_ + d];
          trip.emplace_back(el[a], el[b], w * s);
        }
      }
    }
  }
  ops.stiffness.resize(nn, nn);
  ops.stiffness.setFromTriplets(trip.begin(), trip.end());
  ops.stiffness.makeCompressed();
  return ops;
}

std::vector<PointState> Fem::point_states(const Eigen::VectorXd& u, const Eigen::VectorXd& z, DriveStress stress) const {
  std::vector<PointState> out(static_cast<std::size_t>(num_points()));
  double ue[kMaxDofs];
  const DegradationParams intact{0.0};
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    gather(e, u, ue);
    for (int q = 0; q < nq_; ++q) {
      const int qi = e * nq_ + q;
      const double* dN = &dN_[static_cast<std::size_t>(qi) * npe_ * dim_];
      const Eigen::Matrix3d H = displacement_gradient(ue, dN, npe_, dim_);
      PointState& s = out[qi];
      s.z = z_at(qi, z);
      if (mat_.kind == MaterialKind::linear) {
        s.eps = point_strain(H, s.z);
        s.sigma = stress == DriveStress::effective
                      ? energy_and_stress(s.eps, mat_.linear).sigma
                      : degraded_stress(s.eps, s.z, mat_.stress_split, mat_.linear, mat_.deg);
      } else {
        const Tensor2 F = deformation_gradient(H);
        const Tensor2 P = stress == DriveStress::effective
                              ? piola_stress(F, 0.0, FiniteSplit::none, mat_.hyper, intact)
                              : piola_stress(F, s.z, mat_.finite_split, mat_.hyper, mat_.deg);
        s.sigma = cauchy_from_piola(P, F);
        s.eps = ((F.transpose() * F - Tensor2::identity()) * 0.5).sym();
        s.stretches = principal_stretches(F).lambda;
      }
    }
  }
  return out;
}

NodalDrive Fem::nodal_drive(const Eigen::VectorXd& u, const Eigen::VectorXd& z, const DrivingForceSpec& spec,
                            DriveStress stress) const {
  const int nn = mesh_.num_nodes();
  NodalDrive d;
  const bool var = spec.variational();
  if (var)
    d.linear = Eigen::VectorXd::Zero(nn);
  else
    d.constant = Eigen::VectorXd::Zero(nn);
  const double scale = spec.lc / spec.Gc;
  const auto states = point_states(u, z, stress);
  double ue[kMaxDofs];
  const bool finite = mat_.kind == MaterialKind::hyperelastic;
  FiniteSplit fsplit = spec.kind == DriveKind::griffith ? FiniteSplit::none : mat_.finite_split;
  if (finite && var && spec.kind != DriveKind::griffith && fsplit == FiniteSplit::none) fsplit = FiniteSplit::invariant;
  if (finite && var && fsplit == FiniteSplit::stretch) {
    d.constant = Eigen::VectorXd::Zero(nn);
    d.linear.resize(0);
  }
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const auto el = mesh_.element(e);
    if (finite) gather(e, u, ue);
    for (int q = 0; q < nq_; ++q) {
      const int qi = e * nq_ + q;
      const PointState& s = states[qi];
      double lin = 0.0, con = 0.0;
      if (var) {
        if (!finite) {
          lin = 2.0 * scale * positive_negative_energy(s.eps, spec.energy_split(), mat_.linear).plus;
        } else {
          const double* dN = &dN_[static_cast<std::size_t>(qi) * npe_ * dim_];
          const Tensor2 F = deformation_gradient(displacement_gradient(ue, dN, npe_, dim_));
          if (fsplit == FiniteSplit::stretch)
            con = scale * damage_drive(F, s.z, fsplit, mat_.hyper, mat_.deg);
          else
            lin = scale * damage_drive(F, 0.0, fsplit, mat_.hyper, mat_.deg);
        }
      } else {
        con = effective_drive(s, spec, mat_.linear);
      }
      const double w = weight_[qi];
      for (int a = 0; a < npe_; ++a) {
        const double wn = w * N_[static_cast<std::size_t>(qi) * npe_ + a];
        if (d.linear.size()) d.linear[el[a]] += wn * lin;
        if (d.constant.size()) d.constant[el[a]] += wn * con;
      }
    }
  }
  return d;
}

double Fem::point_energy(int q, const double* ue, double zq) const {
  const double* dN = &dN_[static_cast<std::size_t>(q) * npe_ * dim_];
  const Eigen::Matrix3d H = displacement_gradient(ue, dN, npe_, dim_);
  if (mat_.kind == MaterialKind::linear) {
    const SymTensor eps = point_strain(H, zq);
    const SplitEnergy s = positive_negative_energy(eps, mat_.stress_split, mat_.linear);
    return degradation(zq, mat_.deg).g * s.plus + s.minus;
  }
  return degraded_energy(deformation_gradient(H), zq, mat_.finite_split, mat_.hyper, mat_.deg);
}

double Fem::elastic_energy(const Eigen::VectorXd& u, const Eigen::VectorXd& z) const {
  double total = 0.0;
  double ue[kMaxDofs];
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    gather(e, u, ue);
    for (int q = 0; q < nq_; ++q) {
      const int qi = e * nq_ + q;
      total += weight_[qi] * point_energy(qi, ue, z_at(qi, z));
    }
  }
  return total;
}

double Fem::total_energy(const Eigen::VectorXd& u, const Eigen::VectorXd& z, double Gc, double lc) const {
  double total = 0.0;
  double ue[kMaxDofs];
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const auto el = mesh_.element(e);
    if (dim_ > 1) gather(e, u, ue);
    for (int q = 0; q < nq_; ++q) {
      const int qi = e * nq_ + q;
      const double zq = z_at(qi, z);
      const double* dN = &dN_[static_cast<std::size_t>(qi) * npe_ * dim_];
      Vec3 gz{0, 0, 0};
      for (int a = 0; a < npe_; ++a)
        for (int d = 0; d < dim_; ++d) gz[d] += z[el[a]] * dN[a * dim_ + d];
      double psi = dim_ > 1 ? point_energy(qi, ue, zq) : 0.0;
      total += weight_[qi] * (psi + Gc * surface_density(zq, gz, lc));
    }
  }
  return total;
}

}  // namespace pff
