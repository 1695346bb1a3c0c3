#ifndef WEDGEKIT_LINALG_HPP
#define WEDGEKIT_LINALG_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "wedgekit/common.hpp"

namespace wedgekit {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

namespace linalg {

/// Numeric rank from singular values with a threshold relative to the largest.
inline int rank_of(const Mat& m, double rel_tol = 1e-9) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

/// Orthonormal basis of the column span.
inline Mat orth(const Mat& m, double rel_tol = 1e-9) {
  if (m.size() == 0 || m.norm() == 0.0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the kernel (right null space).
inline Mat nullspace(const Mat& m, double rel_tol = 1e-9) {
  if (m.size() == 0) return Mat(0, 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 && sv(0) > 0) ? rel_tol * sv(0) : rel_tol;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

/// || (1 - P_span(b)) a || with a's columns normalized: how far a sticks out of span(b).
inline double containment_residual(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return 0.0;
  const Mat qa = orth(a);
  const Mat qb = orth(b);
  if (qa.cols() == 0) return 0.0;
  const Mat out = qa - qb * (qb.transpose() * qa);
  return out.norm();
}

/// Largest principal-angle sine between two subspaces given by basis columns.
/// Zero iff the spans coincide (requires equal dimension).
inline double subspace_gap(const Mat& a, const Mat& b) {
  const Mat qa = orth(a);
  const Mat qb = orth(b);
  const Mat pa = qa * qa.transpose();
  const Mat pb = qb * qb.transpose();
  return (pa - pb).norm();
}

/// Spectral functions of a symmetric matrix.
inline Mat sym_function(const Mat& s, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (s + s.transpose()));
  Vec lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) lam(i) = f(lam(i));
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

inline Mat sym_sqrt(const Mat& s) {
  return sym_function(s, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

inline Mat sym_inv_sqrt(const Mat& s) {
  return sym_function(s, [](double x) {
    if (x <= 0.0) throw ConditioningError("matrix not positive definite");
    return 1.0 / std::sqrt(x);
  });
}

inline Mat sym_log(const Mat& s) {
  return sym_function(s, [](double x) {
    if (x <= 0.0) throw ConditioningError("log of non-positive eigenvalue");
    return std::log(x);
  });
}

inline Mat sym_exp(const Mat& s) {
  return sym_function(s, [](double x) { return std::exp(x); });
}

/// Non-negative least squares, Lawson-Hanson active set.
/// Returns argmin_{x >= 0} ||A x - b||_2.
inline Vec nnls(const Mat& A, const Vec& b, int max_iter = 0) {
  const int n = static_cast<int>(A.cols());
  if (max_iter <= 0) max_iter = 3 * std::max(n, 10);
  Vec x = Vec::Zero(n);
  std::vector<bool> passive(n, false);
  Vec w = A.transpose() * (b - A * x);
  const double tol = 1e-12 * (A.norm() * b.norm() + 1.0);
  int iter = 0;
  while (iter++ < max_iter) {
    int t = -1;
    double wmax = tol;
    for (int j = 0; j < n; ++j)
      if (!passive[j] && w(j) > wmax) { wmax = w(j); t = j; }
    if (t < 0) break;
    passive[t] = true;
    while (true) {
      std::vector<int> idx;
      for (int j = 0; j < n; ++j)
        if (passive[j]) idx.push_back(j);
      Mat Ap(A.rows(), idx.size());
      for (size_t k = 0; k < idx.size(); ++k) Ap.col(k) = A.col(idx[k]);
      Vec z = Ap.completeOrthogonalDecomposition().solve(b);
      bool feasible = true;
      for (int k = 0; k < z.size(); ++k)
        if (z(k) <= 0) { feasible = false; break; }
      if (feasible) {
        x.setZero();
        for (size_t k = 0; k < idx.size(); ++k) x(idx[k]) = z(k);
        break;
      }
      double alpha = 1.0;
      for (size_t k = 0; k < idx.size(); ++k)
        if (z(k) <= 0) alpha = std::min(alpha, x(idx[k]) / (x(idx[k]) - z(k)));
      for (size_t k = 0; k < idx.size(); ++k) {
        x(idx[k]) += alpha * (z(k) - x(idx[k]));
        if (x(idx[k]) <= tol) { x(idx[k]) = 0.0; passive[idx[k]] = false; }
      }
    }
    w = A.transpose() * (b - A * x);
  }
  return x;
}

/// Residual of the best conic (nonnegative) combination of the columns of A
/// reproducing b; zero means b lies in the generated cone.
inline double cone_residual(const Mat& A, const Vec& b) {
  if (A.cols() == 0) return b.norm();
  const Vec x = nnls(A, b);
  return (A * x - b).norm();
}

// ---- realification of complex column space: z <-> (Re z, Im z) ----

/// Multiplication by i on realified coordinates: [[0, -I], [I, 0]].
inline Mat complex_structure(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.block(0, n, n, n) = -Mat::Identity(n, n);
  j.block(n, 0, n, n) = Mat::Identity(n, n);
  return j;
}

/// Realified matrix of a complex-linear operator.
inline Mat to_real(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  Mat r(2 * n, 2 * n);
  r.block(0, 0, n, n) = m.real();
  r.block(0, n, n, n) = -m.imag();
  r.block(n, 0, n, n) = m.imag();
  r.block(n, n, n, n) = m.real();
  return r;
}

/// Inverse of to_real; throws if the block structure is not complex-linear.
inline CMat to_complex(const Mat& r, double tol = 1e-9) {
  const int n = static_cast<int>(r.rows()) / 2;
  const Mat x = 0.5 * (r.block(0, 0, n, n) + r.block(n, n, n, n));
  const Mat y = 0.5 * (r.block(n, 0, n, n) - r.block(0, n, n, n));
  const double defect = (r.block(0, 0, n, n) - r.block(n, n, n, n)).norm() +
                        (r.block(0, n, n, n) + r.block(n, 0, n, n)).norm();
  if (defect > tol * (1.0 + r.norm()))
    throw DomainError("matrix does not commute with the complex structure");
  CMat m(n, n);
  m.real() = x;
  m.imag() = y;
  return m;
}

inline Vec to_real_vec(const CVec& z) {
  const int n = static_cast<int>(z.size());
  Vec v(2 * n);
  v.head(n) = z.real();
  v.tail(n) = z.imag();
  return v;
}

inline CVec to_complex_vec(const Vec& v) {
  const int n = static_cast<int>(v.size()) / 2;
  CVec z(n);
  z.real() = v.head(n);
  z.imag() = v.tail(n);
  return z;
}

/// Realified componentwise complex conjugation: diag(I, -I).
inline Mat conjugation_real(int n) {
  Mat c = Mat::Identity(2 * n, 2 * n);
  c.block(n, n, n, n) = -Mat::Identity(n, n);
  return c;
}

/// Projection of a real 2N x 2N matrix onto its complex-linear part
/// (the component commuting with the complex structure).
inline Mat complex_linear_part(const Mat& m) {
  const Mat cx = complex_structure(static_cast<int>(m.rows()) / 2);
  return 0.5 * (m - cx * m * cx);
}

/// Projection onto the anti-linear part (anticommuting with i).
inline Mat anti_linear_part(const Mat& m) {
  const Mat cx = complex_structure(static_cast<int>(m.rows()) / 2);
  return 0.5 * (m + cx * m * cx);
}

// ---- random fixtures (explicit seeds everywhere) ----

inline Mat gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline Vec gaussian_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

inline CMat gaussian_complex_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = std::complex<double>(dist(rng), dist(rng));
  return m;
}

/// Haar-ish random unitary via QR of a complex Gaussian.
inline CMat random_unitary(int n, std::mt19937_64& rng) {
  const CMat g = gaussian_complex_matrix(n, n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const std::complex<double> d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace linalg
}  // namespace wedgekit

#endif
