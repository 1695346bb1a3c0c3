#ifndef WEDGEKIT_BGL_HPP
#define WEDGEKIT_BGL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wedgekit/stdsub.hpp"
#include "wedgekit/wedge.hpp"

namespace wedgekit {

/// Representation data attached to a wedge: the scaled self-adjoint generator
/// A with Delta = e^{2 pi A} (so U(exp th) = e^{-itA} realifies to
/// exp(-t Cx A)) and the conjugation implementing the wedge involution.
/// Admissibility J A J = -A encodes that the conjugation intertwines the
/// one-parameter group with its reflected copy.
struct ModularRepData {
  Mat generator;   // realified complex-linear self-adjoint A
  AntiLinearOp conjugation;

  ModularRepData(Mat a, AntiLinearOp j) : generator(std::move(a)), conjugation(std::move(j)) {
    const double res =
        (conjugation.matrix * generator * conjugation.matrix + generator).norm();
    if (res > 1e-9 * (1.0 + generator.norm()))
      throw DomainError("rep data violates J A J = -A");
  }

  double compatibility_residual() const {
    return (conjugation.matrix * generator * conjugation.matrix + generator).norm();
  }
};

/// The standard pair of the wedge subspace attached to rep data.
inline ModularPair bgl_pair(const ModularRepData& rep) {
  if (rep.generator.norm() * 2.0 * M_PI > 60.0)
    throw ConditioningError("generator norm too large to exponentiate faithfully");
  return ModularPair(rep.conjugation, rep.generator);
}

inline RealSubspace bgl_subspace(const ModularRepData& rep) {
  return subspace_from_pair(bgl_pair(rep));
}

// ---- axiom checks for a finite family of wedge subspaces ----

struct NetEntry {
  WedgeCouple couple;
  GroupElement transporter;  // couple = transporter . base
  Mat unitary;               // realified U(transporter)
  RealSubspace subspace;
  std::string label;
};

struct GroupSample {
  GroupElement g;
  Mat unitary;  // realified (anti-)unitary U(g)
};

struct AxiomCheck {
  std::string axiom;
  bool pass = true;
  double residual = 0.0;
  int instances = 0;
  std::string note;
};

struct NetAxiomReport {
  std::vector<AxiomCheck> checks;

  const AxiomCheck* find(const std::string& axiom) const {
    for (const auto& c : checks)
      if (c.axiom == axiom) return &c;
    return nullptr;
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct NetCheckConfig {
  double tolerance = 1e-8;
  std::vector<double> hk5_times = {0.5, 1.0};
  /// Realified U(exp(t x)) for HK5; empty disables the check.
  std::function<Mat(const AlgebraElement&, double)> rep_exp;
  /// Realified skew generator dU(x) (U(exp tx) = exp(t dU(x))); used for the
  /// spectral condition; empty disables it.
  std::function<Mat(const AlgebraElement&)> rep_generator;
  /// Unitary of the base-couple involution transporter (for the reflection
  /// axiom); empty disables it.
  std::optional<Mat> base_involution_unitary;
};

namespace detail {

inline const NetEntry* find_entry(const std::vector<NetEntry>& net, const WedgeCouple& w,
                                  double tol = 1e-6) {
  for (const auto& entry : net)
    if (entry.couple.approx_equal(w, tol * (1.0 + w.tau.matrix().norm()))) return &entry;
  return nullptr;
}

}  // namespace detail

/// Per-axiom pass/fail with residuals for a finite net of wedge subspaces:
/// isotony and locality through the cone order, covariance against sampled
/// group elements, the spectral condition on cone generators, the modular
/// one-parameter identity, duality, and the modular reflection.
inline NetAxiomReport check_net_axioms(const WedgeCouple& base,
                                       const std::vector<NetEntry>& net,
                                       const std::vector<GroupSample>& samples,
                                       const ConeSpec& cone,
                                       const NetCheckConfig& config = {}) {
  NetAxiomReport report;
  const double tol = config.tolerance;

  {  // isotony: W_i <= W_j forces subspace containment
    AxiomCheck c{"isotony"};
    for (const auto& ei : net)
      for (const auto& ej : net) {
        OrderVerdict v;
        try {
          v = leq(ei.couple, ej.couple, ei.transporter, ej.transporter, cone);
        } catch (const UnsupportedError&) {
          continue;
        }
        if (v.state != OrderState::True) continue;
        ++c.instances;
        const double r = ei.subspace.containment_residual_in(ej.subspace);
        c.residual = std::max(c.residual, r);
      }
    c.pass = c.residual <= tol;
    if (c.instances == 0) c.note = "no comparable pairs";
    report.checks.push_back(c);
  }

  {  // covariance (even samples) and extended covariance (odd samples)
    AxiomCheck even{"covariance"}, odd{"covariance-extended"};
    for (const auto& s : samples) {
      for (const auto& entry : net) {
        WedgeCouple moved = act(s.g, entry.couple);
        const NetEntry* target = detail::find_entry(net, moved);
        if (!target) continue;
        const double r = linalg::subspace_gap(s.unitary * entry.subspace.basis(),
                                              target->subspace.basis());
        AxiomCheck& c = s.g.parity > 0 ? even : odd;
        ++c.instances;
        c.residual = std::max(c.residual, r);
      }
    }
    even.pass = even.residual <= tol;
    odd.pass = odd.residual <= tol;
    if (even.instances == 0) even.note = "no even samples matched the family";
    if (odd.instances == 0) odd.note = "no odd samples matched the family";
    report.checks.push_back(even);
    report.checks.push_back(odd);
  }

  {  // spectral condition: -i dU(x) >= 0 for cone generators
    AxiomCheck c{"spectral"};
    if (config.rep_generator && !cone.generators.empty()) {
      const int n2 = static_cast<int>(net.front().subspace.basis().rows());
      const Mat cx = linalg::complex_structure(n2 / 2);
      for (const auto& gen : cone.generators) {
        const Mat du = config.rep_generator(gen);
        const Mat h = -cx * du;  // realified -i dU(x)
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
        ++c.instances;
        c.residual = std::min(c.residual, es.eigenvalues().minCoeff());
      }
      c.pass = c.residual >= -1e-8;
    } else {
      c.note = "no generator data";
    }
    report.checks.push_back(c);
  }

  {  // locality: W_i <= W_j' forces N(W_i) inside the symplectic complement
    AxiomCheck c{"locality"};
    for (const auto& ei : net)
      for (const auto& ej : net) {
        OrderVerdict v;
        try {
          v = is_local_pair(ei.couple, ej.couple, ei.transporter, ej.transporter, cone);
        } catch (const UnsupportedError&) {
          continue;
        }
        if (v.state != OrderState::True) continue;
        ++c.instances;
        const double r =
            ei.subspace.containment_residual_in(symplectic_complement(ej.subspace));
        c.residual = std::max(c.residual, r);
      }
    c.pass = c.residual <= tol;
    if (c.instances == 0) c.note = "no local pairs";
    report.checks.push_back(c);
  }

  {  // modular one-parameter identity: U(exp(t h_W)) = Delta^{-it/2pi}
    AxiomCheck c{"modular-one-parameter"};
    if (config.rep_exp) {
      for (const auto& entry : net) {
        const auto pair = tomita_from_subspace(entry.subspace).second;
        for (double t : config.hk5_times) {
          const Mat lhs = config.rep_exp(entry.couple.h, t);
          const Mat rhs = pair.delta_it(-t / (2.0 * M_PI));
          ++c.instances;
          c.residual = std::max(c.residual, (lhs - rhs).norm());
        }
      }
      c.pass = c.residual <= tol;
    } else {
      c.note = "no representation data";
    }
    report.checks.push_back(c);
  }

  {  // duality: N(W') equals N(W)'
    AxiomCheck c{"duality"};
    for (const auto& entry : net) {
      const NetEntry* target = detail::find_entry(net, dual(entry.couple));
      if (!target) continue;
      ++c.instances;
      const double r = target->subspace.gap_to(symplectic_complement(entry.subspace));
      c.residual = std::max(c.residual, r);
    }
    c.pass = c.residual <= tol;
    if (c.instances == 0) c.note = "no dual pairs in the family";
    report.checks.push_back(c);
  }

  {  // modular reflection: U(tau_W) = J_{N(W)}
    AxiomCheck c{"modular-reflection"};
    if (config.base_involution_unitary) {
      for (const auto& entry : net) {
        const Mat u_tau = entry.unitary * (*config.base_involution_unitary) *
                          entry.unitary.transpose();
        const auto pair = tomita_from_subspace(entry.subspace).second;
        ++c.instances;
        c.residual = std::max(c.residual, (u_tau - pair.j()).norm());
      }
      c.pass = c.residual <= tol;
    } else {
      c.note = "no involution data";
    }
    report.checks.push_back(c);
  }

  (void)base;
  return report;
}

}  // namespace wedgekit

#endif
