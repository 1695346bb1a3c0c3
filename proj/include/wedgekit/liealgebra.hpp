#ifndef WEDGEKIT_LIEALGEBRA_HPP
#define WEDGEKIT_LIEALGEBRA_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wedgekit/common.hpp"
#include "wedgekit/linalg.hpp"

namespace wedgekit {

class LieAlgebra;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// A matrix Lie algebra given by an explicit real basis of d x d matrices.
/// Structure constants are derived from matrix commutators and validated
/// against bracket closure, antisymmetry and the Jacobi identity at
/// construction time. Instances are immutable; operations are pure.
class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
 public:
  static AlgebraPtr create(std::string name, std::vector<Mat> basis,
                           double tolerance = kDefaultTolerance) {
    auto alg = std::shared_ptr<LieAlgebra>(
        new LieAlgebra(std::move(name), std::move(basis), tolerance));
    alg->validate();
    return alg;
  }

  const std::string& name() const { return name_; }
  int matrix_size() const { return d_; }
  int dim() const { return n_; }
  double tolerance() const { return tol_; }
  const std::vector<Mat>& basis() const { return basis_; }

  /// Coordinates of a d x d matrix in the basis (least squares); second value
  /// is the residual outside the span.
  std::pair<Vec, double> coordinates(const Mat& m) const {
    Eigen::Map<const Vec> flat(m.data(), m.size());
    const Vec c = coord_solver_.solve(flat);
    const double res = (flat_basis_ * c - flat).norm();
    return {c, res};
  }

  Mat realize(const Vec& coords) const {
    Mat m = Mat::Zero(d_, d_);
    for (int i = 0; i < n_; ++i) m += coords(i) * basis_[i];
    return m;
  }

  /// c_{ijk}: [x_i, x_j] = sum_k c_{ijk} x_k. Stored antisymmetrized in (i,j).
  double structure_constant(int i, int j, int k) const { return structure_[i](j, k); }

  /// Matrix of ad(x_i) acting on coordinates: column j holds coords([x_i, x_j]).
  const Mat& ad_basis(int i) const { return ad_basis_[i]; }

  /// Gram matrix of the Killing form in the chosen basis.
  const Mat& killing_gram() const { return killing_; }

  double bracket_residual() const { return bracket_residual_; }
  double jacobi_residual() const { return jacobi_residual_; }

 private:
  LieAlgebra(std::string name, std::vector<Mat> basis, double tolerance)
      : name_(std::move(name)), basis_(std::move(basis)), tol_(tolerance) {}

  void validate() {
    if (basis_.empty()) throw DomainError("empty basis");
    if (tol_ < 0) throw DomainError("negative tolerance");
    d_ = static_cast<int>(basis_[0].rows());
    n_ = static_cast<int>(basis_.size());
    flat_basis_.resize(d_ * d_, n_);
    for (int i = 0; i < n_; ++i) {
      if (basis_[i].rows() != d_ || basis_[i].cols() != d_)
        throw DomainError("basis matrices have mixed sizes");
      Eigen::Map<const Vec> flat(basis_[i].data(), d_ * d_);
      flat_basis_.col(i) = flat;
    }
    if (linalg::rank_of(flat_basis_) != n_)
      throw DomainError("basis matrices are linearly dependent");
    coord_solver_ = flat_basis_.completeOrthogonalDecomposition();

    // Structure constants with c_{ijk} = -c_{jik} enforced by construction.
    structure_.assign(n_, Mat::Zero(n_, n_));
    bracket_residual_ = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const Mat br = basis_[i] * basis_[j] - basis_[j] * basis_[i];
        auto [c, res] = coordinates(br);
        bracket_residual_ = std::max(bracket_residual_, res);
        if (res > tol_ * (1.0 + br.norm())) {
          std::ostringstream msg;
          msg << name_ << ": bracket closure fails for basis pair (" << i << "," << j
              << "), residual " << res;
          throw DomainError(msg.str());
        }
        structure_[i].row(j) = c.transpose();
        structure_[j].row(i) = -c.transpose();
      }
    }

    ad_basis_.assign(n_, Mat::Zero(n_, n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) ad_basis_[i].col(j) = structure_[i].row(j).transpose();

    jacobi_residual_ = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        // [ad x_i, ad x_j] = ad [x_i, x_j] is Jacobi for the whole k-range.
        const Mat lhs = ad_basis_[i] * ad_basis_[j] - ad_basis_[j] * ad_basis_[i];
        Mat rhs = Mat::Zero(n_, n_);
        for (int k = 0; k < n_; ++k) rhs += structure_[i](j, k) * ad_basis_[k];
        jacobi_residual_ = std::max(jacobi_residual_, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    const double scale = 1.0 + flat_basis_.norm();
    if (jacobi_residual_ > tol_ * scale * scale) {
      std::ostringstream msg;
      msg << name_ << ": Jacobi identity fails, residual " << jacobi_residual_;
      throw DomainError(msg.str());
    }

    killing_.resize(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        killing_(i, j) = (ad_basis_[i] * ad_basis_[j]).trace();
        killing_(j, i) = killing_(i, j);
      }
  }

  std::string name_;
  std::vector<Mat> basis_;
  double tol_ = kDefaultTolerance;
  int d_ = 0;
  int n_ = 0;
  Mat flat_basis_;
  Eigen::CompleteOrthogonalDecomposition<Mat> coord_solver_;
  std::vector<Mat> structure_;
  std::vector<Mat> ad_basis_;
  Mat killing_;
  double bracket_residual_ = 0.0;
  double jacobi_residual_ = 0.0;
};

/// Element of a LieAlgebra, held as coordinates in the algebra basis.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, Vec coords)
      : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (coords_.size() != algebra_->dim())
      throw DomainError("coordinate length does not match algebra dimension");
  }

  static AlgebraElement from_matrix(const AlgebraPtr& algebra, const Mat& m) {
    auto [c, res] = algebra->coordinates(m);
    if (res > algebra->tolerance() * (1.0 + m.norm()))
      throw DomainError("matrix is not in the span of the algebra basis");
    return AlgebraElement(algebra, c);
  }

  static AlgebraElement zero(const AlgebraPtr& algebra) {
    return AlgebraElement(algebra, Vec::Zero(algebra->dim()));
  }

  static AlgebraElement basis(const AlgebraPtr& algebra, int i) {
    Vec c = Vec::Zero(algebra->dim());
    c(i) = 1.0;
    return AlgebraElement(algebra, c);
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  const Vec& coords() const { return coords_; }
  Mat matrix() const { return algebra_->realize(coords_); }
  double norm() const { return coords_.norm(); }

  AlgebraElement operator+(const AlgebraElement& o) const {
    check_same(o);
    return AlgebraElement(algebra_, coords_ + o.coords_);
  }
  AlgebraElement operator-(const AlgebraElement& o) const {
    check_same(o);
    return AlgebraElement(algebra_, coords_ - o.coords_);
  }
  AlgebraElement operator*(double s) const { return AlgebraElement(algebra_, s * coords_); }
  AlgebraElement operator-() const { return AlgebraElement(algebra_, -coords_); }

  void check_same(const AlgebraElement& o) const {
    if (algebra_.get() != o.algebra_.get())
      throw DomainError("elements belong to different algebras");
  }

 private:
  AlgebraPtr algebra_;
  Vec coords_;
};

/// Group-side object: an invertible d x d matrix with a Z_2 parity tag.
/// parity +1 marks elements of the even (identity-component side) group,
/// parity -1 the odd coset of involution-like transporters.
struct GroupElement {
  Mat matrix;
  int parity = +1;

  GroupElement(Mat m, int p = +1) : matrix(std::move(m)), parity(p) {
    if (parity != 1 && parity != -1) throw DomainError("parity must be +1 or -1");
    const double det = matrix.determinant();
    if (std::abs(det) < kDefaultTolerance)
      throw DomainError("group element is numerically singular");
  }

  static GroupElement identity(int d) { return GroupElement(Mat::Identity(d, d), +1); }

  GroupElement inverse() const { return GroupElement(matrix.inverse(), parity); }

  GroupElement operator*(const GroupElement& o) const {
    return GroupElement(matrix * o.matrix, parity * o.parity);
  }
};

// ---- operations ----

inline AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  x.check_same(y);
  const auto& alg = *x.algebra();
  Vec out = Vec::Zero(alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    if (x.coords()(i) != 0.0) out += x.coords()(i) * (alg.ad_basis(i) * y.coords());
  return AlgebraElement(x.algebra(), out);
}

/// Matrix of ad(x) on coordinate space; column j holds coords([x, x_j]).
inline Mat ad_matrix(const AlgebraElement& x) {
  const auto& alg = *x.algebra();
  Mat out = Mat::Zero(alg.dim(), alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    if (x.coords()(i) != 0.0) out += x.coords()(i) * alg.ad_basis(i);
  return out;
}

inline double killing_form(const AlgebraElement& x, const AlgebraElement& y) {
  x.check_same(y);
  return x.coords().dot(x.algebra()->killing_gram() * y.coords());
}

/// exp(t x) as a group element (Pade scaling-and-squaring via Eigen).
inline GroupElement exp_element(const AlgebraElement& x, double t = 1.0) {
  const Mat m = t * x.matrix();
  const double scale = m.cwiseAbs().maxCoeff() * m.rows();
  if (!std::isfinite(scale) || scale > 700.0)
    throw NumericError("exp argument too large for the double-precision envelope");
  Mat e = m.exp();
  if (!e.allFinite()) throw NumericError("matrix exponential overflowed");
  return GroupElement(std::move(e), +1);
}

/// Coordinates of g x g^{-1}; requires the result to stay inside the span of
/// the basis. A residual beyond tolerance means g does not act on this algebra.
inline AlgebraElement adjoint_action(const GroupElement& g, const AlgebraElement& x) {
  const Mat conj = g.matrix * x.matrix() * g.matrix.inverse();
  auto [c, res] = x.algebra()->coordinates(conj);
  if (res > 1e3 * x.algebra()->tolerance() * (1.0 + conj.norm())) {
    std::ostringstream msg;
    msg << "adjoint action leaves the algebra span (residual " << res << ")";
    throw ClosureError(msg.str());
  }
  return AlgebraElement(x.algebra(), c);
}

/// Matrix of Ad(g) on coordinate space.
inline Mat adjoint_matrix(const GroupElement& g, const AlgebraPtr& algebra) {
  Mat out(algebra->dim(), algebra->dim());
  for (int j = 0; j < algebra->dim(); ++j)
    out.col(j) = adjoint_action(g, AlgebraElement::basis(algebra, j)).coords();
  return out;
}

// ---- family constructors ----
//
// Basis conventions (fixed so structure constants and fixtures are stable):
//   sl(n,R):   E_ij for i != j in row-major order, then H_i = E_ii - E_{i+1,i+1}.
//   so(p,q):   eta = diag(1_p, -1_q); X_ab = eta_aa E_ab - eta_bb E_ba, a < b,
//              lexicographic. Mixed-signature pairs are boosts.
//   sp(2n,R):  blocks [[A, B], [C, -A^T]], B and C symmetric; A = E_ij first,
//              then B over the symmetric basis, then C.
//   gl(n,R):   all elementary matrices E_ij, row-major.
//   iso(1,d):  (d+2) x (d+2) affine matrices; so(1,d) block first, then the
//              translations P_mu = E_{mu,d+1}.

namespace families {

inline Mat elementary(int d, int i, int j) {
  Mat e = Mat::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

inline std::vector<Mat> sl_basis(int n) {
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) basis.push_back(elementary(n, i, j));
  for (int i = 0; i + 1 < n; ++i)
    basis.push_back(elementary(n, i, i) - elementary(n, i + 1, i + 1));
  return basis;
}

inline std::vector<Mat> so_basis(int p, int q) {
  const int d = p + q;
  Vec eta(d);
  for (int i = 0; i < d; ++i) eta(i) = i < p ? 1.0 : -1.0;
  std::vector<Mat> basis;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      basis.push_back(eta(a) * elementary(d, a, b) - eta(b) * elementary(d, b, a));
  return basis;
}

inline std::vector<Mat> sp_basis(int n) {
  const int d = 2 * n;
  std::vector<Mat> basis;
  auto block = [&](const Mat& a, const Mat& b, const Mat& c) {
    Mat m = Mat::Zero(d, d);
    m.block(0, 0, n, n) = a;
    m.block(0, n, n, n) = b;
    m.block(n, 0, n, n) = c;
    m.block(n, n, n, n) = -a.transpose();
    return m;
  };
  const Mat zero = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(block(elementary(n, i, j), zero, zero));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat s = elementary(n, i, j);
      if (i != j) s += elementary(n, j, i);
      basis.push_back(block(zero, s, zero));
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat s = elementary(n, i, j);
      if (i != j) s += elementary(n, j, i);
      basis.push_back(block(zero, zero, s));
    }
  return basis;
}

inline std::vector<Mat> gl_basis(int n) {
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis.push_back(elementary(n, i, j));
  return basis;
}

inline std::vector<Mat> iso_basis(int p, int q) {
  const int d = p + q;
  std::vector<Mat> basis;
  for (const Mat& l : so_basis(p, q)) {
    Mat m = Mat::Zero(d + 1, d + 1);
    m.block(0, 0, d, d) = l;
    basis.push_back(m);
  }
  for (int mu = 0; mu < d; ++mu) basis.push_back(elementary(d + 1, mu, d));
  return basis;
}

}  // namespace families

/// Supported families: sl(n,R) n<=6, so(p,q) p+q<=6, sp(4,R), gl(2,R),
/// iso(1,d) d<=3. Anything else throws UnsupportedError.
inline AlgebraPtr make_algebra(const std::string& family, int a, int b = -1) {
  std::ostringstream name;
  if (family == "sl") {
    if (a < 2 || a > 6) throw UnsupportedError("sl(n,R) supported for 2 <= n <= 6");
    name << "sl" << a;
    return LieAlgebra::create(name.str(), families::sl_basis(a));
  }
  if (family == "so") {
    if (b < 0) throw UnsupportedError("so(p,q) needs both signature arguments");
    if (a < 0 || b < 0 || a + b < 3 || a + b > 6)
      throw UnsupportedError("so(p,q) supported for 3 <= p+q <= 6");
    name << "so(" << a << "," << b << ")";
    return LieAlgebra::create(name.str(), families::so_basis(a, b));
  }
  if (family == "sp") {
    if (a != 2) throw UnsupportedError("sp(2n,R) supported for n = 2 only");
    name << "sp" << 2 * a;
    return LieAlgebra::create(name.str(), families::sp_basis(a));
  }
  if (family == "gl") {
    if (a != 2) throw UnsupportedError("gl(n,R) supported for n = 2 only");
    return LieAlgebra::create("gl2", families::gl_basis(a));
  }
  if (family == "iso") {
    if (a != 1 || b < 1 || b > 3) throw UnsupportedError("iso(1,d) supported for d <= 3");
    name << "iso(1," << b << ")";
    return LieAlgebra::create(name.str(), families::iso_basis(1, b));
  }
  throw UnsupportedError("unknown family: " + family);
}

/// Block-diagonal direct sum; the summands become commuting ideals.
inline AlgebraPtr direct_sum(const std::vector<AlgebraPtr>& parts, std::string name) {
  int total = 0;
  for (const auto& p : parts) total += p->matrix_size();
  std::vector<Mat> basis;
  int offset = 0;
  for (const auto& p : parts) {
    for (const Mat& b : p->basis()) {
      Mat big = Mat::Zero(total, total);
      big.block(offset, offset, p->matrix_size(), p->matrix_size()) = b;
      basis.push_back(std::move(big));
    }
    offset += p->matrix_size();
  }
  return LieAlgebra::create(std::move(name), std::move(basis));
}

// ---- JSON file format ----
// { "name": str, "matrix_size": int, "basis": [ row-major matrices ], "tolerance": float }

inline nlohmann::json algebra_to_json(const LieAlgebra& alg) {
  nlohmann::json j;
  j["name"] = alg.name();
  j["matrix_size"] = alg.matrix_size();
  j["tolerance"] = alg.tolerance();
  auto& basis = j["basis"] = nlohmann::json::array();
  for (const Mat& m : alg.basis()) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj));
      rows.push_back(row);
    }
    basis.push_back(rows);
  }
  return j;
}

/// Loads and fully re-validates; the constructor throws naming the first
/// violated identity.
inline AlgebraPtr algebra_from_json(const nlohmann::json& j) {
  const std::string name = j.at("name").get<std::string>();
  const int d = j.at("matrix_size").get<int>();
  const double tol = j.value("tolerance", kDefaultTolerance);
  std::vector<Mat> basis;
  for (const auto& jm : j.at("basis")) {
    if (static_cast<int>(jm.size()) != d)
      throw DomainError("basis matrix rows do not match matrix_size");
    Mat m(d, d);
    for (int i = 0; i < d; ++i) {
      if (static_cast<int>(jm[i].size()) != d)
        throw DomainError("basis matrix columns do not match matrix_size");
      for (int k = 0; k < d; ++k) m(i, k) = jm[i][k].get<double>();
    }
    basis.push_back(std::move(m));
  }
  return LieAlgebra::create(name, std::move(basis), tol);
}

}  // namespace wedgekit

#endif
