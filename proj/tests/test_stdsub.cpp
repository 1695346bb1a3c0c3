#include <catch2/catch_amalgamated.hpp>

#include "wedgekit/stdsub.hpp"

#include <cmath>

using namespace wedgekit;

namespace {

/// R^N inside C^N: the first N realified coordinates.
RealSubspace real_block(int n) {
  Mat b = Mat::Zero(2 * n, n);
  b.block(0, 0, n, n) = Mat::Identity(n, n);
  return RealSubspace(n, b);
}

/// Closed-form fixture: H = { (e^{-pi a} conj w, w) : w in C } in C^2.
RealSubspace swap_fixture_subspace(double a) {
  Mat b = Mat::Zero(4, 2);
  const double s = std::exp(-M_PI * a);
  // column 1: w = 1 -> (s, 1); column 2: w = i -> (-i s, i)
  b(0, 0) = s;
  b(1, 0) = 1.0;
  b(2, 1) = -s;
  b(3, 1) = 1.0;
  return RealSubspace(2, b);
}

Mat swap_conjugate_j() {
  Mat j = Mat::Zero(4, 4);
  j(0, 1) = j(1, 0) = 1.0;
  j(2, 3) = j(3, 2) = -1.0;
  return j;
}

}  // namespace

TEST_CASE("cyclic separating standard") {
  CHECK(is_standard(real_block(3)));

  // A complex line in C^1 is cyclic but not separating.
  Mat cline(2, 2);
  cline << 1, 0, 0, 1;
  const RealSubspace full(1, cline);
  CHECK(is_cyclic(full));
  CHECK_FALSE(is_separating(full));
  CHECK_FALSE(is_standard(full));

  auto rng = make_rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const RealSubspace h(4, linalg::gaussian_matrix(8, 4, rng));
    CHECK(is_standard(h));  // general position
    const RealSubspace small(4, linalg::gaussian_matrix(8, 2, rng));
    CHECK_FALSE(is_cyclic(small));
    CHECK(is_separating(small));
  }
}

TEST_CASE("symplectic complement") {
  const auto rn = real_block(3);
  CHECK(symplectic_complement(rn).gap_to(rn) < 1e-12);

  auto rng = make_rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4;
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(2 * n - 1));
    const RealSubspace h(n, linalg::gaussian_matrix(2 * n, k, rng));
    const auto hp = symplectic_complement(h);
    CHECK(hp.dim() == 2 * n - k);
    CHECK(symplectic_complement(hp).gap_to(h) < 1e-9);
  }
}

TEST_CASE("standardness passes to the complement") {
  auto rng = make_rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_standard_subspace(4, rng);
    CHECK(is_standard(symplectic_complement(h)));
  }
}

TEST_CASE("tomita data of the real block") {
  const auto [s, pair] = tomita_from_subspace(real_block(3));
  CHECK((pair.delta() - Mat::Identity(6, 6)).norm() < 1e-10);
  CHECK((pair.j() - linalg::conjugation_real(3)).norm() < 1e-10);
  CHECK((s.matrix - linalg::conjugation_real(3)).norm() < 1e-10);
}

TEST_CASE("tomita data of the swap fixture") {
  const double a = 0.4;
  const auto [s, pair] = tomita_from_subspace(swap_fixture_subspace(a));

  Mat expected_a = Mat::Zero(4, 4);
  expected_a(0, 0) = a;
  expected_a(1, 1) = -a;
  expected_a(2, 2) = a;
  expected_a(3, 3) = -a;
  CHECK((pair.log_delta_over_2pi() - expected_a).norm() < 1e-9);
  CHECK((pair.j() - swap_conjugate_j()).norm() < 1e-9);

  // Fix(S) recovers H.
  CHECK(subspace_from_pair(pair).gap_to(swap_fixture_subspace(a)) < 1e-8);
}

TEST_CASE("rotated real block has trivial modular operator") {
  auto rng = make_rng(73);
  const int n = 3;
  const Mat u = linalg::to_real(linalg::random_unitary(n, rng));
  const RealSubspace h(n, u * real_block(n).basis());
  const auto [s, pair] = tomita_from_subspace(h);
  CHECK((pair.delta() - Mat::Identity(2 * n, 2 * n)).norm() < 1e-9);
  const Mat expected_j = u * linalg::conjugation_real(n) * u.transpose();
  CHECK((pair.j() - expected_j).norm() < 1e-9);
}

TEST_CASE("subspace from pair closed forms") {
  const auto conj3 = AntiLinearOp(linalg::conjugation_real(3));
  const ModularPair triv(conj3, Mat::Zero(6, 6));
  CHECK(subspace_from_pair(triv).gap_to(real_block(3)) < 1e-12);

  const double a = 0.3;
  Mat am = Mat::Zero(4, 4);
  am(0, 0) = a;
  am(1, 1) = -a;
  am(2, 2) = a;
  am(3, 3) = -a;
  const ModularPair pair(AntiLinearOp(swap_conjugate_j()), am);
  CHECK(subspace_from_pair(pair).gap_to(swap_fixture_subspace(a)) < 1e-9);
}

TEST_CASE("bijection round trips") {
  auto rng = make_rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // N <= 8
    const auto pair = random_admissible_pair(n, rng);
    const auto h = subspace_from_pair(pair);
    CHECK(is_standard(h));
    CHECK(h.dim() == n);
    const auto [s, back] = tomita_from_subspace(h);
    CHECK(back.agreement_residual(pair) < 1e-8);
    CHECK(subspace_from_pair(back).gap_to(h) < 1e-8);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto h = random_standard_subspace(n, rng);
    const auto [s, pair] = tomita_from_subspace(h);
    CHECK(subspace_from_pair(pair).gap_to(h) < 1e-8);
    // Fix(S) = H directly on the returned Tomita operator.
    CHECK((s.matrix * h.basis() - h.basis()).norm() < 1e-8);
  }
}

TEST_CASE("one dimensional case is rigid") {
  auto rng = make_rng(83);
  const auto pair = random_admissible_pair(1, rng);
  CHECK(pair.log_delta_over_2pi().norm() < 1e-12);  // JAJ = -A forces A = 0
  const auto h = subspace_from_pair(pair);
  const auto [s, back] = tomita_from_subspace(h);
  CHECK(back.agreement_residual(pair) < 1e-10);
}

TEST_CASE("covariance transport") {
  auto rng = make_rng(89);
  const int n = 4;
  const auto h = random_standard_subspace(n, rng);
  const auto [s, pair] = tomita_from_subspace(h);

  // Identity transport changes nothing.
  const auto id = covariance_transport(Mat::Identity(2 * n, 2 * n), +1, h, pair);
  CHECK(id.pair.agreement_residual(pair) < 1e-12);

  // Random unitary: prediction must match recomputation (checked internally).
  const Mat u = linalg::to_real(linalg::random_unitary(n, rng));
  const auto moved = covariance_transport(u, +1, h, pair);
  CHECK(moved.recomputation_residual < 1e-8);

  // U = J implements duality: image is H' and the pair is (Delta^{-1}, J).
  const auto dualed = covariance_transport(pair.j(), -1, h, pair);
  CHECK(dualed.image.gap_to(symplectic_complement(h)) < 1e-7);
  CHECK((dualed.pair.log_delta_over_2pi() + pair.log_delta_over_2pi()).norm() < 1e-8);
  CHECK((dualed.pair.j() - pair.j()).norm() < 1e-8);

  // Parity flag must match the operator type.
  CHECK_THROWS_AS(covariance_transport(u, -1, h, pair), DomainError);
  CHECK_THROWS_AS(covariance_transport(pair.j(), +1, h, pair), DomainError);
}

TEST_CASE("modular invariance and duality of the subspace") {
  auto rng = make_rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = random_standard_subspace(4, rng).orthonormalized();
    const auto [s, pair] = tomita_from_subspace(h);
    for (double t : {0.3, 1.7}) {
      const Mat ut = pair.delta_it(t);
      CHECK(linalg::subspace_gap(ut * h.basis(), h.basis()) < 1e-7);
    }
    CHECK(linalg::subspace_gap(pair.j() * h.basis(),
                               symplectic_complement(h).basis()) < 1e-7);
    // J Delta^{it} J = Delta^{it}
    const Mat lhs = pair.j() * pair.delta_it(0.7) * pair.j();
    CHECK((lhs - pair.delta_it(0.7)).norm() < 1e-9);
  }
}

TEST_CASE("anti-linearity is preserved through the calculus") {
  auto rng = make_rng(101);
  const auto pair = random_admissible_pair(5, rng);
  const Mat cx = linalg::complex_structure(5);
  const Mat s = pair.tomita();
  CHECK((s * cx + cx * s).norm() < 1e-10 * (1.0 + s.norm()));
  CHECK((pair.j() * cx + cx * pair.j()).norm() < 1e-10);
}

TEST_CASE("commutation relation report") {
  // Trivial one-parameter group: all residuals vanish.
  const auto conj2 = AntiLinearOp(linalg::conjugation_real(2));
  auto rng = make_rng(103);
  const auto pair = random_admissible_pair(2, rng);
  const auto trivial = borchers_relation_check(pair, Mat::Zero(4, 4));
  CHECK(trivial.reflection_residual < 1e-12);
  CHECK(trivial.dilation_residual < 1e-12);

  // A generic generator without the premises: large residual, no exception.
  const CMat pc = linalg::gaussian_complex_matrix(2, 2, rng);
  const Mat p = linalg::to_real(CMat(0.5 * (pc + pc.adjoint())));
  const auto generic = borchers_relation_check(pair, p);
  CHECK(generic.dilation_residual > 1e-3);
}

TEST_CASE("ill conditioned subspaces are refused") {
  // Nearly non-separating: second column almost equals i * first.
  const int n = 2;
  Mat b(4, 2);
  b.col(0) << 1, 0, 0, 0;
  const Mat cx = linalg::complex_structure(n);
  b.col(1) = cx * b.col(0);
  b(1, 1) += 1e-14;
  const RealSubspace h(n, b);
  CHECK_THROWS_AS(tomita_from_subspace(h), std::runtime_error);
}

TEST_CASE("serialization round trip") {
  auto rng = make_rng(107);
  const auto h = random_standard_subspace(3, rng);
  const auto back = subspace_from_json(subspace_to_json(h));
  CHECK(back.gap_to(h) < 1e-14);

  const auto pair = random_admissible_pair(3, rng);
  const auto pback = pair_from_json(pair_to_json(pair));
  CHECK(pback.agreement_residual(pair) == 0.0);
}
