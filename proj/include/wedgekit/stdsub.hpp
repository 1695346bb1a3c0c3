#ifndef WEDGEKIT_STDSUB_HPP
#define WEDGEKIT_STDSUB_HPP

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wedgekit/common.hpp"
#include "wedgekit/linalg.hpp"

namespace wedgekit {

// Everything in this module lives on the realification of C^N with the fixed
// convention z <-> (Re z, Im z); multiplication by i is the block matrix
// Cx = [[0,-I],[I,0]]. Anti-linear operators are then plain real matrices that
// anticommute with Cx, and the polar decomposition of the Tomita operator is
// ordinary real linear algebra.

/// Real subspace of C^N, held as real 2N x k coordinate columns.
class RealSubspace {
 public:
  RealSubspace(int ambient_dim, Mat basis)
      : n_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.rows() != 2 * n_) throw DomainError("basis rows must equal 2N");
    if (basis_.cols() > 2 * n_) throw DomainError("more columns than real dimensions");
    if (linalg::rank_of(basis_) != basis_.cols())
      throw DomainError("subspace basis columns are linearly dependent");
  }

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  RealSubspace orthonormalized() const { return RealSubspace(n_, linalg::orth(basis_)); }

  /// Orthogonal projection onto the subspace.
  Mat projector() const {
    const Mat q = linalg::orth(basis_);
    return q * q.transpose();
  }

  double gap_to(const RealSubspace& o) const { return linalg::subspace_gap(basis_, o.basis_); }

  /// || (1 - P_other) this || : zero iff this subspace is contained in other.
  double containment_residual_in(const RealSubspace& o) const {
    return linalg::containment_residual(basis_, o.basis_);
  }

 private:
  int n_;
  Mat basis_;
};

inline bool is_cyclic(const RealSubspace& h) {
  Mat stacked(2 * h.ambient_dim(), 2 * h.dim());
  const Mat cx = linalg::complex_structure(h.ambient_dim());
  stacked << h.basis(), cx * h.basis();
  return linalg::rank_of(stacked) == 2 * h.ambient_dim();
}

inline bool is_separating(const RealSubspace& h) {
  Mat stacked(2 * h.ambient_dim(), 2 * h.dim());
  const Mat cx = linalg::complex_structure(h.ambient_dim());
  stacked << h.basis(), cx * h.basis();
  return linalg::rank_of(stacked) == 2 * h.dim();  // dim(H ^ iH) = 2k - rank = 0
}

inline bool is_standard(const RealSubspace& h) { return is_cyclic(h) && is_separating(h); }

/// Symplectic complement H' = (iH) orthogonal-complement for the real inner
/// product; dimension 2N - dim H.
inline RealSubspace symplectic_complement(const RealSubspace& h) {
  const Mat cx = linalg::complex_structure(h.ambient_dim());
  const Mat ih = cx * h.basis();
  return RealSubspace(h.ambient_dim(), linalg::nullspace(ih.transpose()));
}

/// Real matrix that anticommutes with the complex structure.
struct AntiLinearOp {
  Mat matrix;

  explicit AntiLinearOp(Mat m) : matrix(std::move(m)) {
    const int n2 = static_cast<int>(matrix.rows());
    const Mat cx = linalg::complex_structure(n2 / 2);
    if ((matrix * cx + cx * matrix).norm() > 1e-10 * (1.0 + matrix.norm()))
      throw DomainError("operator is not anti-linear");
  }
};

/// Modular data (J, Delta) with Delta kept through its scaled logarithm
/// A = log(Delta) / 2pi, so admissibility is the linear constraint JAJ = -A.
class ModularPair {
 public:
  ModularPair(AntiLinearOp j, Mat log_delta_over_2pi)
      : j_(std::move(j)), a_(std::move(log_delta_over_2pi)) {
    const int n2 = static_cast<int>(a_.rows());
    const Mat id = Mat::Identity(n2, n2);
    const Mat cx = linalg::complex_structure(n2 / 2);
    const double scale = 1.0 + a_.norm();
    if ((j_.matrix * j_.matrix - id).norm() > 1e-9 * scale)
      throw DomainError("J is not an involution");
    if ((j_.matrix.transpose() * j_.matrix - id).norm() > 1e-9 * scale)
      throw DomainError("J is not isometric");
    if ((a_ - a_.transpose()).norm() > 1e-9 * scale)
      throw DomainError("log Delta is not self-adjoint");
    if ((a_ * cx - cx * a_).norm() > 1e-9 * scale)
      throw DomainError("log Delta is not complex-linear");
    if ((j_.matrix * a_ * j_.matrix + a_).norm() > 1e-8 * scale)
      throw DomainError("modular relation J Delta J = Delta^{-1} fails");
  }

  int ambient_dim() const { return static_cast<int>(a_.rows()) / 2; }
  const Mat& j() const { return j_.matrix; }
  const Mat& log_delta_over_2pi() const { return a_; }

  Mat delta() const { return linalg::sym_exp(2.0 * M_PI * a_); }
  Mat delta_power(double p) const { return linalg::sym_exp(2.0 * M_PI * p * a_); }

  /// Unitary Delta^{it} = exp(2 pi i t A) on realified coordinates.
  Mat delta_it(double t) const {
    const Mat cx = linalg::complex_structure(ambient_dim());
    return (2.0 * M_PI * t * cx * a_).exp();
  }

  Mat tomita() const { return j_.matrix * delta_power(0.5); }

  double agreement_residual(const ModularPair& o) const {
    return std::max((j_.matrix - o.j_.matrix).norm(), (a_ - o.a_).norm());
  }

 private:
  AntiLinearOp j_;
  Mat a_;
};

/// Tomita operator of a standard subspace: S(xi + i eta) = xi - i eta on
/// H + iH, then the polar data Delta = S^T S, J = S Delta^{-1/2}.
inline std::pair<AntiLinearOp, ModularPair> tomita_from_subspace(const RealSubspace& h) {
  if (!is_standard(h)) throw DomainError("tomita operator needs a standard subspace");
  const int n = h.ambient_dim();
  const Mat cx = linalg::complex_structure(n);
  Mat m(2 * n, 2 * n);
  m << h.basis(), cx * h.basis();

  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0 || sv(0) / sv(sv.size() - 1) > 1e12)
    throw ConditioningError("decomposition H + iH is too ill-conditioned");

  Mat flipped(2 * n, 2 * n);
  flipped << h.basis(), -cx * h.basis();
  // S is anti-linear by construction; projecting onto the anticommuting part
  // removes the roundoff contamination from the solve.
  const Mat s = linalg::anti_linear_part(flipped * m.inverse());

  const Mat delta = s.transpose() * s;
  const Mat a = linalg::complex_linear_part(
      0.5 * (linalg::sym_log(delta) + linalg::sym_log(delta).transpose())) /
      (2.0 * M_PI);
  Mat j = linalg::anti_linear_part(
      s * linalg::sym_function(delta, [](double x) { return 1.0 / std::sqrt(x); }));
  // The exact J is a symmetric orthogonal matrix; snap onto that manifold to
  // discard the roundoff picked up through the conditioned Delta^{-1/2}.
  j = linalg::sym_function(0.5 * (j + j.transpose()),
                           [](double x) { return x >= 0.0 ? 1.0 : -1.0; });
  j = linalg::anti_linear_part(j);

  ModularPair pair(AntiLinearOp(j), 0.5 * (a + a.transpose()));
  return {AntiLinearOp(s), std::move(pair)};
}

/// H = ker(1 - J Delta^{1/2}) recovered from the singular value decomposition;
/// the kernel of the realified Tomita operator has real dimension exactly N,
/// and its nonzero singular values stay >= 2, so the split is well separated.
inline RealSubspace subspace_from_pair(const ModularPair& pair) {
  const int n = pair.ambient_dim();
  const Mat s = pair.tomita();
  const Mat id = Mat::Identity(2 * n, 2 * n);
  Eigen::JacobiSVD<Mat> svd(id - s, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-8 * std::max(1.0, sv(0));
  int kernel_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= cutoff) ++kernel_dim;
  if (kernel_dim != n)
    throw ConditioningError("fixed-point space of the Tomita operator is numerically defective");
  RealSubspace h(n, svd.matrixV().rightCols(n));
  return h;
}

/// Covariance transport: the pair of UH is (U Delta U*, U J U*) for unitary
/// and anti-unitary U alike; on realified matrices both read U M U^T. (The
/// parity of U only reverses the direction of the modular flow Delta^{it}, as
/// U = J_H shows: J Delta J = Delta^{-1} is exactly the pair of H'.) The
/// prediction is checked against a recomputation from U H.
struct TransportResult {
  ModularPair pair;
  RealSubspace image;
  double recomputation_residual = 0.0;
};

inline TransportResult covariance_transport(const Mat& u, int parity,
                                            const RealSubspace& h,
                                            const ModularPair& pair,
                                            bool verify = true) {
  const int n = h.ambient_dim();
  const Mat cx = linalg::complex_structure(n);
  const double comm = (u * cx - parity * cx * u).norm();
  if (parity != 1 && parity != -1)
    throw DomainError("parity must be +1 (unitary) or -1 (anti-unitary)");
  if (comm > 1e-9 * (1.0 + u.norm()))
    throw DomainError("parity flag inconsistent with the complex structure");
  if ((u.transpose() * u - Mat::Identity(2 * n, 2 * n)).norm() > 1e-9)
    throw DomainError("transport operator is not isometric");

  ModularPair predicted(AntiLinearOp(u * pair.j() * u.transpose()),
                        u * pair.log_delta_over_2pi() * u.transpose());
  RealSubspace image(n, u * h.basis());
  double residual = 0.0;
  if (verify) {
    const auto recomputed = tomita_from_subspace(image);
    residual = predicted.agreement_residual(recomputed.second);
    if (residual > 1e-8)
      throw NumericError("covariance transport disagrees with recomputation");
  }
  return TransportResult{std::move(predicted), std::move(image), residual};
}

/// Residuals of the commutation relations between the modular data and a
/// unitary one-parameter group U(t) = exp(i t P): J U(t) J = U(-t) and
/// Delta^{-is/2pi} U(t) Delta^{is/2pi} = U(e^{+-s} t). Report only; the
/// premises cannot hold nontrivially in finite dimension, so large residuals
/// on generic inputs are expected and meaningful.
struct CommutationReport {
  double reflection_residual = 0.0;
  double dilation_residual = 0.0;
  std::vector<double> t_grid;
  std::vector<double> s_grid;
};

inline CommutationReport borchers_relation_check(const ModularPair& pair,
                                                 const Mat& generator_realified,
                                                 int sign = +1) {
  const int n = pair.ambient_dim();
  const Mat cx = linalg::complex_structure(n);
  const Mat p = generator_realified;
  if ((p * cx - cx * p).norm() > 1e-9 * (1.0 + p.norm()))
    throw DomainError("generator must be complex-linear");
  CommutationReport report;
  report.t_grid = {-1.0, -0.5, 0.5, 1.0};
  report.s_grid = {-1.0, -0.5, 0.5, 1.0};
  auto u_of = [&](double t) { return (t * cx * p).exp(); };
  for (double t : report.t_grid) {
    const Mat lhs = pair.j() * u_of(t) * pair.j();
    report.reflection_residual =
        std::max(report.reflection_residual, (lhs - u_of(-t)).norm());
    for (double s : report.s_grid) {
      const Mat d = pair.delta_it(-s / (2.0 * M_PI));
      const Mat conj = d * u_of(t) * d.inverse();
      const double scaled_t = std::exp(sign * s) * t;
      report.dilation_residual =
          std::max(report.dilation_residual, (conj - u_of(scaled_t)).norm());
    }
  }
  return report;
}

// ---- random fixtures ----

/// Random standard subspace, redrawn until the H + iH decomposition is well
/// conditioned (Gaussian draws have a heavy conditioning tail that would leave
/// the round-trip accuracy envelope).
inline RealSubspace random_standard_subspace(int n, std::mt19937_64& rng,
                                             double max_condition = 1e6) {
  const Mat cx = linalg::complex_structure(n);
  for (int attempt = 0; attempt < 256; ++attempt) {
    RealSubspace h(n, linalg::gaussian_matrix(2 * n, n, rng));
    if (!is_standard(h)) continue;
    h = h.orthonormalized();
    Mat m(2 * n, 2 * n);
    m << h.basis(), cx * h.basis();
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > 0 && sv(0) / sv(sv.size() - 1) <= max_condition) return h;
  }
  throw NumericError("failed to draw a well-conditioned standard subspace");
}

/// Random conjugation J = U conj U* and a compatible A with JAJ = -A,
/// norm capped (the default cap keeps exp(2 pi A) inside the double-precision
/// round-trip envelope).
inline ModularPair random_admissible_pair(int n, std::mt19937_64& rng,
                                          double norm_cap = 3.0) {
  const Mat u = linalg::to_real(linalg::random_unitary(n, rng));
  const Mat j = u * linalg::conjugation_real(n) * u.transpose();

  const CMat g = linalg::gaussian_complex_matrix(n, n, rng);
  const Mat h0 = linalg::to_real(CMat(0.5 * (g + g.adjoint())));
  Mat a = 0.5 * (h0 - j * h0 * j);
  a = 0.5 * (a + a.transpose());
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  const double target = unif(rng) * norm_cap;
  const double norm = a.norm();
  if (norm > 1e-12) a *= target / norm;
  return ModularPair(AntiLinearOp(j), a);
}

// ---- serialization ----

inline nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Mat matrix_from_json(const nlohmann::json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  return m;
}

inline nlohmann::json subspace_to_json(const RealSubspace& h) {
  return nlohmann::json{{"ambient_dim", h.ambient_dim()},
                        {"columns", matrix_to_json(h.basis())}};
}

inline RealSubspace subspace_from_json(const nlohmann::json& j) {
  return RealSubspace(j.at("ambient_dim").get<int>(),
                      matrix_from_json(j.at("columns")));
}

inline nlohmann::json pair_to_json(const ModularPair& p) {
  return nlohmann::json{{"log_delta_over_2pi", matrix_to_json(p.log_delta_over_2pi())},
                        {"j", matrix_to_json(p.j())}};
}

inline ModularPair pair_from_json(const nlohmann::json& j) {
  return ModularPair(AntiLinearOp(matrix_from_json(j.at("j"))),
                     matrix_from_json(j.at("log_delta_over_2pi")));
}

}  // namespace wedgekit

#endif
