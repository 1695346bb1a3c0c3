#ifndef WEDGEKIT_WEDGE_HPP
#define WEDGEKIT_WEDGE_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wedgekit/euler.hpp"

namespace wedgekit {

/// Abstract wedge: an Euler element together with its grading involution.
struct WedgeCouple {
  AlgebraElement h;
  EulerInvolution tau;

  const AlgebraPtr& algebra() const { return h.algebra(); }

  bool approx_equal(const WedgeCouple& o, double tol = 1e-8) const {
    return (h.coords() - o.h.coords()).norm() < tol &&
           (tau.matrix() - o.tau.matrix()).norm() < tol;
  }
};

inline WedgeCouple wedge_couple(const AlgebraElement& h) {
  const auto check = is_euler(h);
  if (!check) throw DomainError("wedge couple needs an Euler element (" + check.reason + ")");
  return WedgeCouple{h, euler_involution(*check.grading)};
}

/// epsilon(g) Ad(g) x: the adjoint action with a sign flip on odd elements.
inline AlgebraElement twisted_adjoint(const GroupElement& g, const AlgebraElement& x) {
  const AlgebraElement ad = adjoint_action(g, x);
  return g.parity > 0 ? ad : -ad;
}

/// g.(h, tau) = (Ad^eps(g) h, Ad(g) tau Ad(g)^{-1}), rechecked to be an Euler
/// couple again.
inline WedgeCouple act(const GroupElement& g, const WedgeCouple& w) {
  const AlgebraElement h2 = twisted_adjoint(g, w.h);
  const Mat ad = adjoint_matrix(g, w.algebra());
  const Mat ad_inv = ad.inverse();
  const Mat tau2 = ad * w.tau.matrix() * ad_inv;
  const auto check = is_euler(h2);
  if (!check) throw NumericError("group action broke the Euler property: " + check.reason);
  const EulerInvolution expected = euler_involution(*check.grading);
  // Conjugation by extreme group elements amplifies roundoff by the condition
  // number of Ad(g); the consistency recheck scales accordingly.
  const double cond = ad.norm() * ad_inv.norm();
  const double tol = std::max(1e-8, 1e-13 * cond * cond) * (1.0 + tau2.norm());
  if ((expected.matrix() - tau2).norm() > tol)
    throw NumericError("transported involution does not match the transported grading");
  // Store the polynomial sign map: same involution, cleaner numerics after
  // repeated transports.
  return WedgeCouple{h2, expected};
}

/// W' = (-h, tau).
inline WedgeCouple dual(const WedgeCouple& w) { return WedgeCouple{-w.h, w.tau}; }

// ---- invariant cones ----

enum class ConeKind {
  Trivial,              // C = {0}
  FinitelyGenerated,    // conic hull of the generator list
  Sl2Standard,          // {[[a,b],[c,-a]] : b >= 0, c <= 0, a^2 <= -bc}
  MinkowskiTranslation  // forward light cone inside the translation ideal of iso(1,d)
};

/// A pointed invariant cone, either given by finitely many rays or by one of
/// the two analytic descriptions used throughout. Membership for the analytic
/// kinds is the exact inequality test; for ray lists it is a nonnegative
/// least-squares fit.
struct ConeSpec {
  std::string label;
  ConeKind kind = ConeKind::Trivial;
  AlgebraPtr algebra;
  std::vector<AlgebraElement> generators;

  double membership_residual(const AlgebraElement& x) const {
    if (x.algebra().get() != algebra.get())
      throw DomainError("cone membership for an element of another algebra");
    switch (kind) {
      case ConeKind::Trivial:
        return x.norm();
      case ConeKind::Sl2Standard: {
        const Mat m = x.matrix();
        const double a = m(0, 0), b = m(0, 1), c = m(1, 0);
        return std::max({0.0, -b, c, std::sqrt(std::max(0.0, a * a + b * c))});
      }
      case ConeKind::MinkowskiTranslation: {
        const Mat m = x.matrix();
        const int d = static_cast<int>(m.rows()) - 1;
        const double lorentz = m.block(0, 0, d, d).norm();
        const Vec t = m.block(0, d, d, 1);
        const double spatial = t.tail(d - 1).norm();
        return lorentz + std::max(0.0, spatial - t(0));
      }
      case ConeKind::FinitelyGenerated: {
        Mat gens(algebra->dim(), generators.size());
        for (size_t i = 0; i < generators.size(); ++i) gens.col(i) = generators[i].coords();
        return linalg::cone_residual(gens, x.coords());
      }
    }
    throw DomainError("unknown cone kind");
  }

  bool contains(const AlgebraElement& x, double tol = 1e-8) const {
    return membership_residual(x) <= tol * (1.0 + x.norm());
  }

  /// Pointedness via the lineality test: a finitely generated cone contains a
  /// line iff -g lies in the cone for some generator g.
  bool is_pointed(double tol = 1e-8) const {
    if (kind == ConeKind::Trivial) return true;
    for (const auto& g : generators) {
      if (g.norm() < tol) continue;
      if (contains(-g, tol)) return false;
    }
    return true;
  }

  /// Max membership residual of Ad^eps(g) generator over the given group
  /// samples; small means the sampled action preserves the cone.
  double invariance_residual(const std::vector<GroupElement>& samples) const {
    double worst = 0.0;
    for (const auto& g : samples)
      for (const auto& gen : generators)
        worst = std::max(worst, membership_residual(twisted_adjoint(g, gen)));
    return worst;
  }
};

inline ConeSpec trivial_cone(AlgebraPtr algebra) {
  return ConeSpec{"trivial", ConeKind::Trivial, std::move(algebra), {}};
}

/// Extreme rays of the sl2 cone: (a,b,c) = (cos t, 1+sin t, -(1-sin t)) sweeps
/// the boundary a^2 = -bc.
inline ConeSpec sl2_standard_cone(const AlgebraPtr& algebra, int rays = 16) {
  if (algebra->matrix_size() != 2) throw DomainError("sl2 cone needs 2x2 matrices");
  ConeSpec cone{"sl2-standard", ConeKind::Sl2Standard, algebra, {}};
  for (int k = 0; k < rays; ++k) {
    const double t = 2.0 * M_PI * k / rays;
    Mat m(2, 2);
    m << std::cos(t), 1.0 + std::sin(t), -(1.0 - std::sin(t)), -std::cos(t);
    cone.generators.push_back(AlgebraElement::from_matrix(algebra, m));
  }
  return cone;
}

/// Forward translation cone of iso(1,d): the timelike ray plus sampled
/// lightlike rays.
inline ConeSpec poincare_forward_cone(const AlgebraPtr& algebra, int rays = 8) {
  const int d = algebra->matrix_size() - 2;  // iso(1,d) acts on (d+2)x(d+2)
  if (algebra->name().rfind("iso", 0) != 0)
    throw DomainError("forward translation cone is defined for iso(1,d)");
  ConeSpec cone{"poincare-forward", ConeKind::MinkowskiTranslation, algebra, {}};
  const int dim_lorentz = (d + 1) * d / 2;
  auto translation = [&](const Vec& t) {
    Vec coords = Vec::Zero(algebra->dim());
    coords.segment(dim_lorentz, d + 1) = t;
    return AlgebraElement(algebra, coords);
  };
  Vec e0 = Vec::Zero(d + 1);
  e0(0) = 1.0;
  cone.generators.push_back(translation(e0));
  for (int k = 0; k < rays; ++k) {
    Vec t = Vec::Zero(d + 1);
    t(0) = 1.0;
    if (d == 1) {
      t(1) = k % 2 == 0 ? 1.0 : -1.0;
    } else {
      const double phi = 2.0 * M_PI * k / rays;
      t(1) = std::cos(phi);
      t(2) = std::sin(phi);
    }
    cone.generators.push_back(translation(t));
  }
  return cone;
}

inline ConeSpec finitely_generated_cone(std::string label,
                                        std::vector<AlgebraElement> generators) {
  if (generators.empty()) throw DomainError("finitely generated cone needs generators");
  AlgebraPtr alg = generators[0].algebra();
  return ConeSpec{std::move(label), ConeKind::FinitelyGenerated, std::move(alg),
                  std::move(generators)};
}

// ---- order on a wedge orbit ----

enum class OrderState { True, False, Indeterminate };

struct OrderVerdict {
  OrderState state = OrderState::Indeterminate;
  double c_plus = 0.0;   // coefficient along the raising ray
  double c_minus = 0.0;  // coefficient along the lowering ray
  Mat stabilizer_factor; // the middle factor of the decomposition
  std::string reason;

  bool is_true() const { return state == OrderState::True; }
  bool is_false() const { return state == OrderState::False; }
};

namespace detail {

inline bool stabilizes(const GroupElement& g, const WedgeCouple& w, double tol = 1e-8) {
  const AlgebraElement moved = twisted_adjoint(g, w.h);
  if ((moved.coords() - w.h.coords()).norm() > tol * (1.0 + w.h.norm())) return false;
  const Mat ad = adjoint_matrix(g, w.algebra());
  return (ad * w.tau.matrix() - w.tau.matrix() * ad).norm() < tol * (1.0 + ad.norm());
}

inline Mat sl2_standard_h() {
  Mat m(2, 2);
  m << 0.5, 0, 0, -0.5;
  return m;
}

}  // namespace detail

/// Order query g1.W <= g2.W via membership of g2^{-1} g1 in the compression
/// semigroup of the base couple W.
///
/// Implemented for the trivial cone on any algebra (order collapses to the
/// stabilizer) and for sl2 with the standard cone, where the semigroup is
/// exp(R+ e) G_W exp(R+ f) and membership falls out of the triangular
/// factorization of the 2x2 matrix. Zero pivot (outside the open dense cell)
/// and coefficients within 1e-10 of the cone boundary are reported as
/// Indeterminate instead of a boolean.
inline OrderVerdict leq(const WedgeCouple& w1, const WedgeCouple& w2,
                        const GroupElement& g1, const GroupElement& g2,
                        const ConeSpec& cone) {
  if (w1.algebra().get() != w2.algebra().get() ||
      w1.algebra().get() != cone.algebra.get())
    throw DomainError("order query mixes algebras");
  if (cone.kind != ConeKind::Trivial && cone.kind != ConeKind::Sl2Standard)
    throw UnsupportedError("semigroup membership implemented for the sl2 cone only");

  const WedgeCouple base = act(g2.inverse(), w2);
  const WedgeCouple placed = act(g1, base);
  const double scale =
      1.0 + w1.h.norm() + w1.tau.matrix().norm() + placed.tau.matrix().norm();
  if (!placed.approx_equal(w1, 1e-6 * scale))
    throw DomainError("transporters do not place both couples on a common orbit");

  const GroupElement u = g2.inverse() * g1;

  if (cone.kind == ConeKind::Trivial) {
    OrderVerdict v;
    const bool fixed = detail::stabilizes(u, base);
    v.state = fixed ? OrderState::True : OrderState::False;
    v.reason = fixed ? "stabilizer" : "trivial cone admits no strict inclusions";
    return v;
  }

  if (cone.kind != ConeKind::Sl2Standard)
    throw UnsupportedError("semigroup membership implemented for the sl2 cone only");
  if ((base.h.matrix() - detail::sl2_standard_h()).norm() > 1e-6)
    throw DomainError("sl2 order query requires the standard base couple");

  Mat m = u.matrix;
  const double det = m.determinant();
  if (det <= 0) throw DomainError("sl2 order query needs det > 0 group elements");
  m /= std::sqrt(det);
  if (m(1, 1) < 0) m = -m;  // same element of PSL(2,R)

  OrderVerdict v;
  const double d = m(1, 1);
  if (std::abs(d) < 1e-12) {
    v.state = OrderState::Indeterminate;
    v.reason = "zero pivot: outside the open decomposition cell";
    return v;
  }
  v.c_plus = m(0, 1) / d;
  v.c_minus = m(1, 0) / d;
  v.stabilizer_factor = Mat::Zero(2, 2);
  v.stabilizer_factor(0, 0) = 1.0 / d;
  v.stabilizer_factor(1, 1) = d;

  if (detail::stabilizes(u, base)) {  // includes the identity
    v.state = OrderState::True;
    v.reason = "stabilizer";
    return v;
  }
  // Closed half-line membership. Machine-exact zeros (structurally triangular
  // factors) are members; coefficients inside the ambiguous band could sit on
  // either side of the boundary and stay undecided.
  auto classify = [](double c) -> int {
    if (std::abs(c) <= 1e-13) return +1;
    if (std::abs(c) < 1e-10) return 0;
    return c > 0 ? +1 : -1;
  };
  const int kp = classify(v.c_plus);
  const int km = classify(v.c_minus);
  if (kp < 0 || km < 0) {
    v.state = OrderState::False;
    v.reason = "coefficient outside the cone";
  } else if (kp == 0 || km == 0) {
    v.state = OrderState::Indeterminate;
    v.reason = "cone-boundary coefficient";
  } else {
    v.state = OrderState::True;
    v.reason = "semigroup decomposition";
  }
  return v;
}

/// The rotation by pi/2 conjugating the standard sl2 couple to its dual; the
/// transporter that realizes W' inside the even orbit.
inline GroupElement sl2_duality_rotation() {
  Mat r(2, 2);
  r << 0, 1, -1, 0;
  return GroupElement(r, +1);
}

/// W1 <= W2' . For the trivial cone this is couple equality with the dual; for
/// the sl2 cone the dual is transported by the explicit pi/2 rotation.
inline OrderVerdict is_local_pair(const WedgeCouple& w1, const WedgeCouple& w2,
                                  const GroupElement& g1, const GroupElement& g2,
                                  const ConeSpec& cone) {
  const WedgeCouple d2 = dual(w2);
  if (cone.kind == ConeKind::Trivial) {
    OrderVerdict v;
    v.state = w1.approx_equal(d2) ? OrderState::True : OrderState::False;
    v.reason = "trivial cone: locality means coincidence with the dual";
    return v;
  }
  if (cone.kind != ConeKind::Sl2Standard)
    throw UnsupportedError("locality order implemented for the sl2 cone only");
  return leq(w1, d2, g1, g2 * sl2_duality_rotation(), cone);
}

// ---- de Sitter positivity region ----

/// Point of dS^d = {x in R^{1,d} : x^2 = -1} with the ambient Minkowski
/// square x^2 = x_0^2 - sum x_i^2.
struct CausalPoint {
  Vec x;

  explicit CausalPoint(Vec coords) : x(std::move(coords)) {
    if (std::abs(minkowski_square() + 1.0) > 1e-8)
      throw DomainError("point is not on the unit hyperboloid");
  }

  double minkowski_square() const {
    return x(0) * x(0) - x.tail(x.size() - 1).squaredNorm();
  }
};

/// True iff the flow vector of h at m is timelike and future pointing, i.e. m
/// lies in the positivity region of h.
inline bool positivity_region_membership(const AlgebraElement& h, const CausalPoint& m) {
  const auto& name = h.algebra()->name();
  if (name.rfind("so(1,", 0) != 0)
    throw DomainError("positivity region is defined for so(1,d) elements");
  if (h.algebra()->matrix_size() != m.x.size())
    throw DomainError("point dimension does not match the algebra");
  const Vec flow = h.matrix() * m.x;
  const double square = flow(0) * flow(0) - flow.tail(flow.size() - 1).squaredNorm();
  return square > 1e-10 && flow(0) > 0;
}

}  // namespace wedgekit

#endif
