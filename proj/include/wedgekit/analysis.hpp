#ifndef WEDGEKIT_ANALYSIS_HPP
#define WEDGEKIT_ANALYSIS_HPP

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wedgekit/bgl.hpp"
#include "wedgekit/euler.hpp"
#include "wedgekit/wedge.hpp"

namespace wedgekit {

/// Two commuting Euler elements, one living in a distinguished subalgebra:
/// the configuration whose transported net can fail modular covariance.
struct CovariancePuzzle {
  AlgebraPtr ambient;
  Mat subalgebra;  // coordinate columns spanning the subalgebra
  AlgebraElement h1;
  AlgebraElement h2;

  CovariancePuzzle(AlgebraPtr g, Mat sub, AlgebraElement a, AlgebraElement b)
      : ambient(std::move(g)), subalgebra(std::move(sub)), h1(std::move(a)), h2(std::move(b)) {
    if (h1.algebra().get() != ambient.get() || h2.algebra().get() != ambient.get())
      throw DomainError("puzzle elements must live in the ambient algebra");
    const int n = ambient->dim();
    if (subalgebra.rows() != n) throw DomainError("subalgebra columns have wrong length");
    // Bracket closure of the subalgebra span.
    const Mat q = linalg::orth(subalgebra);
    for (int i = 0; i < q.cols(); ++i)
      for (int j = i + 1; j < q.cols(); ++j) {
        const auto br = bracket(AlgebraElement(ambient, q.col(i)),
                                AlgebraElement(ambient, q.col(j)));
        if (linalg::containment_residual(br.coords(), q) > 1e-8 * (1.0 + br.norm()))
          throw DomainError("subalgebra span is not bracket closed");
      }
    if (bracket(h1, h2).norm() > 1e-8 * (1.0 + h1.norm() * h2.norm()))
      throw DomainError("puzzle requires [h1, h2] = 0");
  }
};

struct CovarianceVerdict {
  bool violated = false;
  double witness_norm = 0.0;       // component outside ker(ad h2)
  std::optional<AlgebraElement> witness;
  double containment_residual = 0.0;
  // The Lie-algebra criterion presumes a representation with discrete kernel;
  // carried as an assumption flag on the report.
  std::string assumption = "discrete-kernel";
};

/// Tests [h1 - h2, subalgebra] inside ker(ad h2). A component sticking out is
/// the obstruction witness; containment means the transported net is
/// compatible with modular covariance at the Lie-algebra level.
inline CovarianceVerdict modular_covariance_test(const CovariancePuzzle& p) {
  CovarianceVerdict verdict;
  const Mat kernel = linalg::nullspace(ad_matrix(p.h2), 1e-8);
  const AlgebraElement diff = p.h1 - p.h2;
  const Mat q = linalg::orth(p.subalgebra);
  for (int i = 0; i < q.cols(); ++i) {
    const AlgebraElement y(p.ambient, q.col(i));
    const auto br = bracket(diff, y);
    const Vec outside = br.coords() - kernel * (kernel.transpose() * br.coords());
    verdict.containment_residual = std::max(verdict.containment_residual, outside.norm());
    if (outside.norm() > verdict.witness_norm) {
      verdict.witness_norm = outside.norm();
      verdict.witness = y;
    }
  }
  verdict.violated = verdict.witness_norm > 1e-8;
  return verdict;
}

struct CounterexampleReport {
  CovariancePuzzle puzzle;
  AlgebraElement h_center;       // central part of h2 in the gl2 subalgebra
  GroupElement to_antidiagonal;  // conjugator moving h1 to the off-diagonal form
  EulerGrading h2_grading;
  SymmetryCertificate h2_symmetry;
  CovarianceVerdict verdict;
};

/// The smallest reproducible instance of a transported net without modular
/// covariance: sl(n), node j, with the sl2 straddling the eigenvalue gap.
/// h2 = h_c + s with h_c central in the gl2 block and h1 = -s; the verdict
/// must come out violated, and h2 must be a non-symmetric Euler element, so
/// symmetric nodes are refused.
inline CounterexampleReport build_counterexample(int n = 3, int j = 1,
                                                 std::uint64_t seed = 0x5eedULL) {
  if (n < 3) throw UnsupportedError("sl(2) has only symmetric Euler elements");
  if (2 * j == n)
    throw UnsupportedError("the middle node is symmetric; a non-symmetric Euler element is required");
  if (j < 1 || j >= n) throw DomainError("node out of range");
  auto alg = make_algebra("sl", n);

  const auto h2 = AlgebraElement::from_matrix(alg, sl_euler_candidate(n, j));
  Mat s_mat = Mat::Zero(n, n);
  s_mat(j - 1, j - 1) = 0.5;
  s_mat(j, j) = -0.5;
  const auto s = AlgebraElement::from_matrix(alg, s_mat);
  const auto h1 = -s;
  const auto h_center = h2 - s;

  // sl2 block straddling the gap.
  Mat sub(alg->dim(), 3);
  sub.col(0) = AlgebraElement::from_matrix(alg, families::elementary(n, j - 1, j)).coords();
  sub.col(1) = AlgebraElement::from_matrix(alg, families::elementary(n, j, j - 1)).coords();
  sub.col(2) = s.coords();

  CovariancePuzzle puzzle(alg, sub, h1, h2);

  // h_center commutes with the block.
  for (int i = 0; i < 3; ++i)
    if (bracket(h_center, AlgebraElement(alg, sub.col(i))).norm() > 1e-10)
      throw NumericError("central split failed");

  // Rotation by pi/4 in the block moves h1 to the antidiagonal form.
  Mat rot = Mat::Identity(n, n);
  const double cs = std::cos(M_PI / 4.0), sn = std::sin(M_PI / 4.0);
  rot(j - 1, j - 1) = cs;
  rot(j - 1, j) = sn;
  rot(j, j - 1) = -sn;
  rot(j, j) = cs;
  const GroupElement conj(rot, +1);
  Mat target = Mat::Zero(n, n);
  target(j - 1, j) = 0.5;
  target(j, j - 1) = 0.5;
  if ((adjoint_action(conj, h1).matrix() - target).norm() > 1e-10)
    throw NumericError("conjugation to the antidiagonal form failed");

  const auto check = is_euler(h2);
  if (!check) throw NumericError("counterexample element is not Euler: " + check.reason);
  auto symmetry = is_symmetric(*check.grading, seed);
  if (symmetry.symmetric())
    throw NumericError("counterexample element is unexpectedly symmetric");

  auto verdict = modular_covariance_test(puzzle);
  if (!verdict.violated)
    throw NumericError("counterexample verdict regressed to covariant-compatible");

  return CounterexampleReport{std::move(puzzle), h_center,           conj,
                              *check.grading,    std::move(symmetry), std::move(verdict)};
}

inline CounterexampleReport build_ds2_counterexample(std::uint64_t seed = 0x5eedULL) {
  return build_counterexample(3, 1, seed);
}

// ---- regularity through generating cones ----

struct ConeSideReport {
  int eigenspace_dim = 0;
  int generating_dim = 0;
  int rejected_candidates = 0;  // projections that left the cone
  bool generating = false;
};

struct RegularityReportCones {
  ConeSideReport plus;
  ConeSideReport minus;
  bool both() const { return plus.generating && minus.generating; }
};

namespace detail {

inline ConeSideReport cone_side(const ConeSpec& cone, const EulerGrading& grading, int nu,
                                const Mat* restrict_to = nullptr) {
  ConeSideReport side;
  const Mat proj = grading.projection(nu);
  Mat target = grading.eigenspace_basis(nu);
  if (restrict_to) {
    // Intersection of the eigenspace with the restriction span.
    const Mat a = target;
    const Mat b = linalg::orth(*restrict_to);
    Mat stacked(a.rows(), a.cols() + b.cols());
    stacked << a, -b;
    const Mat null = linalg::nullspace(stacked);
    Mat inter(a.rows(), null.cols());
    for (int i = 0; i < null.cols(); ++i) inter.col(i) = a * null.col(i).head(a.cols());
    target = linalg::orth(inter);
  }
  side.eigenspace_dim = static_cast<int>(target.cols());

  std::vector<Vec> kept;
  for (const auto& gen : cone.generators) {
    Vec candidate = proj * gen.coords();
    if (restrict_to) {
      const Mat b = linalg::orth(*restrict_to);
      candidate = b * (b.transpose() * candidate);
    }
    if (candidate.norm() < 1e-12) continue;
    // Re-verify cone membership of the projected generator.
    const AlgebraElement elem(cone.algebra, candidate);
    if (!cone.contains(elem, 1e-6)) {
      ++side.rejected_candidates;
      continue;
    }
    kept.push_back(candidate);
  }
  Mat span(cone.algebra->dim(), kept.size());
  for (size_t i = 0; i < kept.size(); ++i) span.col(i) = kept[i];
  side.generating_dim = kept.empty() ? 0 : linalg::rank_of(span, 1e-9);
  side.generating = side.eigenspace_dim > 0 && side.generating_dim == side.eigenspace_dim;
  return side;
}

}  // namespace detail

/// Are the cone slices C_nu = nu C intersect g_nu(h) linearly generating the
/// grading eigenspaces? Candidates are the projected cone generators,
/// re-verified inside the cone before they may contribute to the span.
inline RegularityReportCones regularity_cone_check(const ConeSpec& cone,
                                                   const EulerGrading& grading) {
  if (cone.algebra.get() != grading.h.algebra().get())
    throw DomainError("cone and grading live on different algebras");
  RegularityReportCones report;
  report.plus = detail::cone_side(cone, grading, +1);
  report.minus = detail::cone_side(cone, grading, -1);
  return report;
}

struct SemidirectSplit {
  Mat radical;     // coordinate columns of the ideal r
  Mat complement;  // coordinate columns of the complement l
};

struct Attestation {
  bool value = false;
  std::string provenance;  // representation-level input, not computed here
};

struct SemidirectRegularityReport {
  RegularityReportCones cone_condition;
  Attestation restriction_condition;
  bool verdict = false;
};

/// Semidirect criterion: (a) the cone slices generate r_{+-1}(h) inside the
/// ideal; (b) regularity of the restriction to the complement, supplied as an
/// attestation because it is representation-level input.
inline SemidirectRegularityReport semidirect_regularity_check(const ConeSpec& cone,
                                                              const EulerGrading& grading,
                                                              const SemidirectSplit& split,
                                                              const Attestation& restriction) {
  const AlgebraPtr alg = grading.h.algebra();
  const int n = alg->dim();
  if (split.radical.rows() != n || split.complement.rows() != n)
    throw DomainError("split columns have the wrong length");
  if (linalg::rank_of(split.radical) + linalg::rank_of(split.complement) != n)
    throw DomainError("split does not decompose the algebra");
  const Mat r = linalg::orth(split.radical);
  const Mat l = linalg::orth(split.complement);
  // [l, r] inside r and r an ideal.
  for (int i = 0; i < n; ++i) {
    for (int jr = 0; jr < r.cols(); ++jr) {
      const auto br = bracket(AlgebraElement::basis(alg, i), AlgebraElement(alg, r.col(jr)));
      if (linalg::containment_residual(br.coords(), r) > 1e-8 * (1.0 + br.norm()))
        throw DomainError("radical is not an ideal");
    }
  }
  for (const auto& gen : cone.generators)
    if (linalg::containment_residual(gen.coords(), r) > 1e-6 * (1.0 + gen.norm()))
      throw DomainError("cone generators must lie in the radical for the split check");

  SemidirectRegularityReport report;
  report.cone_condition.plus = detail::cone_side(cone, grading, +1, &split.radical);
  report.cone_condition.minus = detail::cone_side(cone, grading, -1, &split.radical);
  report.restriction_condition = restriction;
  report.verdict = report.cone_condition.both() && restriction.value;
  return report;
}

// ---- audit of the modular-theorem conclusion on given data ----

struct TheoremAuditReport {
  double modular_identity_residual = 0.0;  // U(exp t h) vs Delta^{-it/2pi}
  double reflection_relation_residual = 0.0;  // J U(exp x) J vs U(exp tau(x))
  bool h_euler = false;
  std::string h_reason;
  int samples = 0;
};

/// Consistency audit, not a proof engine: given representation data that is
/// supposed to satisfy the modular identity for h, check the identity itself
/// and the reflected commutation relation for sampled exp(x).
inline TheoremAuditReport euler_theorem_audit(
    const ModularRepData& rep, const AlgebraElement& h,
    const std::function<Mat(const AlgebraElement&)>& u_of_exp,
    const std::vector<AlgebraElement>& samples) {
  TheoremAuditReport report;
  const int n2 = static_cast<int>(rep.generator.rows());
  const Mat cx = linalg::complex_structure(n2 / 2);

  for (double t : {0.5, 1.0}) {
    const Mat lhs = u_of_exp(h * t);
    const Mat rhs = ((-t) * cx * rep.generator).exp();
    report.modular_identity_residual =
        std::max(report.modular_identity_residual, (lhs - rhs).norm());
  }

  const auto check = is_euler(h);
  report.h_euler = check.grading.has_value();
  report.h_reason = check.reason;
  if (check) {
    const EulerInvolution tau = euler_involution(*check.grading);
    for (const auto& x : samples) {
      const Mat lhs = rep.conjugation.matrix * u_of_exp(x) * rep.conjugation.matrix;
      const Mat rhs = u_of_exp(tau.apply(x));
      report.reflection_relation_residual =
          std::max(report.reflection_relation_residual, (lhs - rhs).norm());
      ++report.samples;
    }
  }
  return report;
}

// ---- anti-ellipticity ----

struct IdealDecomposition {
  AlgebraPtr algebra;
  std::vector<Mat> ideals;  // coordinate columns of the simple ideals
  Mat center;               // coordinate columns of the center (may be empty)
};

namespace detail {

inline void validate_decomposition(const IdealDecomposition& dec) {
  const AlgebraPtr alg = dec.algebra;
  const int n = alg->dim();
  int total = dec.center.size() == 0 ? 0 : static_cast<int>(dec.center.cols());
  Mat all(n, n);
  int col = 0;
  for (int i = 0; i < total; ++i) all.col(col++) = dec.center.col(i);
  for (const auto& ideal : dec.ideals) {
    for (int i = 0; i < ideal.cols(); ++i) all.col(col++) = ideal.col(i);
    total += static_cast<int>(ideal.cols());
  }
  if (total != n || linalg::rank_of(all.leftCols(total)) != n)
    throw DomainError("decomposition does not span the algebra");

  auto commutes = [&](const Mat& a, const Mat& b) {
    for (int i = 0; i < a.cols(); ++i)
      for (int j = 0; j < b.cols(); ++j)
        if (bracket(AlgebraElement(alg, a.col(i)), AlgebraElement(alg, b.col(j))).norm() >
            1e-8)
          return false;
    return true;
  };
  if (dec.center.size() != 0 && !commutes(dec.center, all.leftCols(total)))
    throw DomainError("declared center is not central");
  for (size_t a = 0; a < dec.ideals.size(); ++a) {
    for (size_t b = a + 1; b < dec.ideals.size(); ++b)
      if (!commutes(dec.ideals[a], dec.ideals[b]))
        throw DomainError("declared ideals do not commute (not a direct sum of ideals)");
    // closure of each ideal
    const Mat q = linalg::orth(dec.ideals[a]);
    for (int i = 0; i < q.cols(); ++i)
      for (int j = i + 1; j < q.cols(); ++j) {
        const auto br =
            bracket(AlgebraElement(alg, q.col(i)), AlgebraElement(alg, q.col(j)));
        if (linalg::containment_residual(br.coords(), q) > 1e-8 * (1.0 + br.norm()))
          throw DomainError("declared ideal is not bracket closed");
      }
  }
}

/// Elliptic component: ad restricted to the ideal is semisimple with purely
/// imaginary spectrum.
inline bool component_elliptic(const AlgebraPtr& alg, const Vec& component,
                               const Mat& ideal) {
  if (component.norm() < 1e-12) return true;
  const Mat q = linalg::orth(ideal);
  Mat ad = Mat::Zero(alg->dim(), alg->dim());
  for (int i = 0; i < alg->dim(); ++i)
    if (component(i) != 0.0) ad += component(i) * alg->ad_basis(i);
  const Mat restricted = q.transpose() * ad * q;
  Eigen::EigenSolver<Mat> es(restricted);
  const double scale = std::max(1.0, restricted.norm());
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i).real()) > 1e-8 * scale) return false;
  // Semisimplicity: the eigenvector matrix must be invertible.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(es.eigenvectors());
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > 1e-8 * sv(0);
}

}  // namespace detail

struct AntiEllipticReport {
  bool anti_elliptic = false;
  int n_h_dim = 0;  // dimension of the smallest ideal with elliptic quotient image
  std::vector<bool> component_elliptic;
};

/// n_h + R h = g, with n_h the sum of the simple ideals on which the
/// component of h fails to be elliptic. Abelian algebras have every element
/// elliptic; there the verdict reduces to the one-dimensional case.
inline AntiEllipticReport anti_elliptic(const AlgebraElement& h,
                                        const IdealDecomposition& dec) {
  if (h.algebra().get() != dec.algebra.get())
    throw DomainError("element and decomposition disagree on the algebra");
  detail::validate_decomposition(dec);
  const AlgebraPtr alg = dec.algebra;
  const int n = alg->dim();

  AntiEllipticReport report;
  if (dec.ideals.empty()) {  // purely abelian
    report.anti_elliptic = n <= 1;
    return report;
  }

  Mat n_h(n, 0);
  for (const auto& ideal : dec.ideals) {
    const Mat q = linalg::orth(ideal);
    const Vec component = q * (q.transpose() * h.coords());
    const bool elliptic = detail::component_elliptic(alg, component, ideal);
    report.component_elliptic.push_back(elliptic);
    if (!elliptic) {
      Mat grown(n, n_h.cols() + q.cols());
      grown << n_h, q;
      n_h = std::move(grown);
    }
  }
  report.n_h_dim = static_cast<int>(n_h.cols());

  Mat joined(n, n_h.cols() + 1);
  joined << n_h, h.coords();
  report.anti_elliptic = linalg::rank_of(joined) == n;
  return report;
}

// ---- JSON reports ----

inline nlohmann::json covariance_verdict_to_json(const CovarianceVerdict& v) {
  nlohmann::json j;
  j["verdict"] = v.violated ? "violated" : "covariant-compatible";
  j["witness_norm"] = v.witness_norm;
  j["assumption"] = v.assumption;
  if (v.witness) {
    nlohmann::json coords = nlohmann::json::array();
    for (int i = 0; i < v.witness->coords().size(); ++i)
      coords.push_back(v.witness->coords()(i));
    j["witness"] = coords;
  }
  return j;
}

inline nlohmann::json counterexample_to_json(const CounterexampleReport& r) {
  nlohmann::json j;
  j["algebra"] = r.puzzle.ambient->name();
  j["h2_dims"] = {r.h2_grading.dims[0], r.h2_grading.dims[1], r.h2_grading.dims[2]};
  j["h2_symmetric"] = r.h2_symmetry.symmetric();
  j["covariance"] = covariance_verdict_to_json(r.verdict);
  return j;
}

}  // namespace wedgekit

#endif
