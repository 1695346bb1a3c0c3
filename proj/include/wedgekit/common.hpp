#ifndef WEDGEKIT_COMMON_HPP
#define WEDGEKIT_COMMON_HPP

#include <random>
#include <stdexcept>
#include <string>

namespace wedgekit {

/// Inputs outside an operation's mathematical domain (mismatched algebras,
/// points off a manifold, invalid decompositions).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested family/rank/feature is outside the supported set.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric guard tripped: overflow envelope, failed recheck, ill conditioning.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Conjugation result left the span of the algebra basis.
class ClosureError : public NumericError {
 public:
  explicit ClosureError(const std::string& what) : NumericError(what) {}
};

/// Ill-conditioned linear solve or spectral extraction.
class ConditioningError : public NumericError {
 public:
  explicit ConditioningError(const std::string& what) : NumericError(what) {}
};

constexpr double kDefaultTolerance = 1e-10;

/// Deterministic per-task generator: every randomized search or property
/// fixture takes an explicit seed so reruns are bit-stable.
inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace wedgekit

#endif
