#ifndef WEDGEKIT_FOCK_HPP
#define WEDGEKIT_FOCK_HPP

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "wedgekit/common.hpp"
#include "wedgekit/linalg.hpp"

namespace wedgekit {

/// Bosonic Fock space over C^modes truncated at total occupation < n_max.
/// For a single mode this is the usual n_max-level ladder; creation and
/// annihilation satisfy [a, a*] = 1 exactly below the top level.
class FockTruncation {
 public:
  explicit FockTruncation(int n_max, int modes = 1) : n_max_(n_max), modes_(modes) {
    if (n_max < 2) throw DomainError("occupation cutoff must be at least 2");
    if (modes < 1 || modes > 4) throw DomainError("supported mode count is 1..4");
    enumerate(std::vector<int>(modes, 0), 0);
    lower_.assign(modes, CMat::Zero(dim(), dim()));
    for (int idx = 0; idx < dim(); ++idx) {
      for (int m = 0; m < modes; ++m) {
        std::vector<int> state = states_[idx];
        if (state[m] == 0) continue;
        const double amp = std::sqrt(double(state[m]));
        --state[m];
        lower_[m](index_.at(state), idx) = amp;
      }
    }
  }

  int n_max() const { return n_max_; }
  int modes() const { return modes_; }
  int dim() const { return static_cast<int>(states_.size()); }

  const CMat& lowering(int mode = 0) const { return lower_.at(mode); }
  CMat raising(int mode = 0) const { return lower_.at(mode).adjoint(); }

  CMat number_operator(int mode = 0) const { return raising(mode) * lowering(mode); }

  CVec vacuum() const {
    CVec v = CVec::Zero(dim());
    v(index_.at(std::vector<int>(modes_, 0))) = 1.0;
    return v;
  }

  /// Field operator Phi(xi) = (a(xi) + a*(xi)) / sqrt(2), a(xi) antilinear in xi.
  CMat field_operator(const CVec& xi) const {
    if (xi.size() != modes_) throw DomainError("amplitude vector length != mode count");
    CMat phi = CMat::Zero(dim(), dim());
    for (int m = 0; m < modes_; ++m)
      phi += std::conj(xi(m)) * lower_[m] + xi(m) * raising(m);
    return phi / std::sqrt(2.0);
  }

 private:
  void enumerate(std::vector<int> state, int mode) {
    if (mode == modes_) {
      index_[state] = static_cast<int>(states_.size());
      states_.push_back(state);
      return;
    }
    int used = 0;
    for (int m = 0; m < mode; ++m) used += state[m];
    for (int k = 0; k + used < n_max_; ++k) {
      state[mode] = k;
      enumerate(state, mode + 1);
    }
  }

  int n_max_;
  int modes_;
  std::vector<std::vector<int>> states_;
  std::map<std::vector<int>, int> index_;
  std::vector<CMat> lower_;
};

/// Weyl unitary w(xi) = exp(i Phi(xi)) on the truncated block. The amplitude
/// envelope ||xi|| <= 1 keeps the occupation support far below the cutoff.
inline CMat weyl_op(const FockTruncation& fock, const CVec& xi) {
  if (xi.norm() > 1.0 + 1e-12)
    throw NumericError("amplitude too large for the truncation accuracy envelope");
  const CMat phi = fock.field_operator(xi);
  return (std::complex<double>(0, 1) * phi).exp();
}

inline CMat weyl_op(const FockTruncation& fock, std::complex<double> xi) {
  CVec v(1);
  v(0) = xi;
  return weyl_op(fock, v);
}

/// <Omega, w(xi) Omega>; the exact value is e^{-||xi||^2 / 4}.
inline std::complex<double> vacuum_expectation(const FockTruncation& fock, const CVec& xi) {
  const CVec omega = fock.vacuum();
  return omega.dot(weyl_op(fock, xi) * omega);
}

/// || w(xi) w(eta) - e^{-(i/2) Im<xi,eta>} w(xi+eta) ||, the composition-law
/// defect on the truncated block (operator two-norm restricted to the window
/// of the lowest `window` levels when window > 0).
inline double weyl_composition_residual(const FockTruncation& fock, const CVec& xi,
                                        const CVec& eta, int window = 0) {
  const CMat wxi = weyl_op(fock, xi);
  const CMat weta = weyl_op(fock, eta);
  const CMat wsum = weyl_op(fock, CVec(xi + eta));
  const std::complex<double> phase =
      std::exp(std::complex<double>(0, -0.5) * std::imag(xi.dot(eta)));
  CMat diff = wxi * weta - phase * wsum;
  if (window > 0 && window < fock.dim())
    diff = CMat(diff.topLeftCorner(window, window));
  Eigen::JacobiSVD<CMat> svd(diff);
  return svd.singularValues()(0);
}

inline double operator_norm(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace wedgekit

#endif
