#include <catch2/catch_amalgamated.hpp>

#include "wedgekit/euler.hpp"

#include <cmath>
#include <complex>

using namespace wedgekit;

namespace {

AlgebraElement sl2_h(const AlgebraPtr& alg) {
  Mat m(2, 2);
  m << 0.5, 0, 0, -0.5;
  return AlgebraElement::from_matrix(alg, m);
}

Mat exp_i_pi_ad(const Mat& adh) {
  // Oracle for the involution: real part of exp(i pi ad h) via complex eigen
  // decomposition.
  Eigen::EigenSolver<Mat> es(adh);
  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::VectorXcd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i)
    lam(i) = std::exp(std::complex<double>(0, M_PI) * lam(i));
  return (v * lam.asDiagonal() * v.inverse()).real();
}

}  // namespace

TEST_CASE("sl2 standard grading") {
  auto alg = make_algebra("sl", 2);
  const auto check = is_euler(sl2_h(alg));
  REQUIRE(check);
  CHECK(check.grading->dims == std::array<int, 3>{1, 1, 1});
  CHECK(check.grading->spectrum_residual < 1e-10);
}

TEST_CASE("nilpotent and central elements are rejected with reasons") {
  auto alg = make_algebra("sl", 2);
  Mat e(2, 2);
  e << 0, 1, 0, 0;
  const auto nil = is_euler(AlgebraElement::from_matrix(alg, e));
  CHECK_FALSE(nil);
  CHECK(nil.reason == "not diagonalizable");

  auto gl2 = make_algebra("gl", 2);
  const auto central = is_euler(AlgebraElement::from_matrix(gl2, Mat::Identity(2, 2)));
  CHECK_FALSE(central);
  CHECK(central.reason == "central");

  const auto scaled = is_euler(sl2_h(alg) * 2.0);  // spectrum {-2, 0, 2}
  CHECK_FALSE(scaled);
  CHECK(scaled.reason == "spectrum");
}

TEST_CASE("sl4 canonical nodes have dims j(4-j)") {
  auto alg = make_algebra("sl", 4);
  for (int j = 1; j <= 3; ++j) {
    const auto h = AlgebraElement::from_matrix(alg, sl_euler_candidate(4, j));
    const auto check = is_euler(h);
    REQUIRE(check);
    CHECK(check.grading->dims[2] == j * (4 - j));
    CHECK(check.grading->dims[0] == check.grading->dims[2]);
  }
}

TEST_CASE("grading bracket law") {
  auto alg = make_algebra("sl", 3);
  const auto h = AlgebraElement::from_matrix(alg, sl_euler_candidate(3, 1));
  const auto g = is_euler(h).grading.value();
  for (int i : {-1, 0, 1})
    for (int j : {-1, 0, 1}) {
      const Mat bi = g.eigenspace_basis(i);
      const Mat bj = g.eigenspace_basis(j);
      for (int a = 0; a < bi.cols(); ++a)
        for (int b = 0; b < bj.cols(); ++b) {
          const auto br = bracket(AlgebraElement(alg, bi.col(a)),
                                  AlgebraElement(alg, bj.col(b)));
          if (std::abs(i + j) >= 2) {
            CHECK(br.norm() < 1e-8);
          } else {
            const Vec proj = g.projection(i + j) * br.coords();
            CHECK((proj - br.coords()).norm() < 1e-8);
          }
        }
    }
}

TEST_CASE("euler involution acts as the grading sign map") {
  auto alg = make_algebra("sl", 2);
  const auto g = is_euler(sl2_h(alg)).grading.value();
  const auto tau = euler_involution(g);

  CHECK((tau.apply(g.h).coords() - g.h.coords()).norm() < 1e-12);
  Mat e(2, 2), f(2, 2);
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  CHECK((tau.apply(AlgebraElement::from_matrix(alg, e)).coords() +
         AlgebraElement::from_matrix(alg, e).coords())
            .norm() < 1e-12);
  CHECK((tau.apply(AlgebraElement::from_matrix(alg, f)).coords() +
         AlgebraElement::from_matrix(alg, f).coords())
            .norm() < 1e-12);
}

TEST_CASE("involution matches exp(i pi ad h) and an explicit conjugation") {
  auto alg = make_algebra("so", 1, 2);
  const auto h = AlgebraElement::basis(alg, 0);  // boost X_01
  const auto g = is_euler(h).grading.value();
  const auto tau = euler_involution(g);

  CHECK((tau.matrix() - exp_i_pi_ad(ad_matrix(h))).norm() < 1e-6);

  Mat r = Mat::Identity(3, 3);
  r(0, 0) = r(1, 1) = -1.0;
  const Mat conj_map = adjoint_matrix(GroupElement(r, -1), alg);
  CHECK((tau.matrix() - conj_map).norm() < 1e-10);
}

TEST_CASE("involution of every classified grading squares to one") {
  for (const auto& alg :
       {make_algebra("sl", 3), make_algebra("so", 1, 3), make_algebra("sp", 2)}) {
    for (const auto& orbit : classify_euler_orbits(alg)) {
      const auto tau = euler_involution(orbit.grading);
      CHECK((tau.matrix() * tau.matrix() - Mat::Identity(alg->dim(), alg->dim())).norm() <
            1e-8);
      CHECK((tau.matrix() - exp_i_pi_ad(ad_matrix(orbit.representative))).norm() < 1e-6);
    }
  }
}

TEST_CASE("symmetric witness in sl2") {
  auto alg = make_algebra("sl", 2);
  const auto g = is_euler(sl2_h(alg)).grading.value();
  const auto cert = is_symmetric(g);
  REQUIRE(cert.witness_found);
  const auto& w = cert.witness.value();
  CHECK(w.triple_residual < 1e-7);
  CHECK(w.conjugator_residual < 1e-6);
  CHECK((bracket(g.h, w.e).coords() - w.e.coords()).norm() < 1e-6);
  CHECK((bracket(g.h, w.f).coords() + w.f.coords()).norm() < 1e-6);
}

TEST_CASE("sl3 node-1 element is not symmetric") {
  auto alg = make_algebra("sl", 3);
  const auto h = AlgebraElement::from_matrix(alg, sl_euler_candidate(3, 1));
  const auto cert = is_symmetric(is_euler(h).grading.value());
  CHECK_FALSE(cert.witness_found);
  REQUIRE(cert.classification_verdict.has_value());
  CHECK_FALSE(*cert.classification_verdict);
  CHECK_FALSE(cert.symmetric());
}

TEST_CASE("sl4 middle node is symmetric with an explicit conjugator") {
  auto alg = make_algebra("sl", 4);
  const auto h = AlgebraElement::from_matrix(alg, sl_euler_candidate(4, 2));
  const auto cert = is_symmetric(is_euler(h).grading.value());
  REQUIRE(cert.witness_found);
  CHECK(cert.witness->conjugator_residual < 1e-6);
}

TEST_CASE("symmetry is conjugation invariant") {
  auto alg = make_algebra("sl", 3);
  auto rng = make_rng(23);
  for (const int j : {1, 2}) {
    const auto h = AlgebraElement::from_matrix(alg, sl_euler_candidate(3, j));
    const bool base = is_symmetric(is_euler(h).grading.value()).symmetric();
    Vec x = 0.4 * linalg::gaussian_vector(alg->dim(), rng);
    const auto moved = adjoint_action(exp_element(AlgebraElement(alg, x)), h);
    const auto moved_check = is_euler(moved);
    REQUIRE(moved_check);
    CHECK(is_symmetric(moved_check.grading.value()).symmetric() == base);
  }
}

TEST_CASE("orbit counts match the classification") {
  for (int n = 2; n <= 6; ++n) {
    auto orbits = classify_euler_orbits(make_algebra("sl", n));
    CHECK(static_cast<int>(orbits.size()) == n - 1);
  }
  for (int d = 2; d <= 4; ++d) {
    auto orbits = classify_euler_orbits(make_algebra("so", 1, d));
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].grading.dims[2] == 1 + d - 2);  // R^{p+q-2}
  }
  auto sp = classify_euler_orbits(make_algebra("sp", 2));
  REQUIRE(sp.size() == 1);
  CHECK(sp[0].symmetry.symmetric());
  CHECK_THROWS_AS(classify_euler_orbits(make_algebra("gl", 2)), UnsupportedError);
}

TEST_CASE("sl4 symmetric pattern across nodes") {
  auto orbits = classify_euler_orbits(make_algebra("sl", 4));
  REQUIRE(orbits.size() == 3);
  // Ordered by node: only the middle node is symmetric.
  CHECK_FALSE(orbits[0].symmetry.symmetric());
  CHECK(orbits[1].symmetry.symmetric());
  CHECK_FALSE(orbits[2].symmetry.symmetric());
}

TEST_CASE("orthogonal pairs") {
  auto alg = make_algebra("sl", 2);
  const auto ga = is_euler(sl2_h(alg)).grading.value();
  Mat hb(2, 2);
  hb << 0, 0.5, 0.5, 0;
  const auto gb = is_euler(AlgebraElement::from_matrix(alg, hb)).grading.value();
  CHECK(is_orthogonal_pair(ga, gb));
  CHECK(is_orthogonal_pair(gb, ga));
  CHECK_FALSE(is_orthogonal_pair(ga, ga));

  auto so13 = make_algebra("so", 1, 3);
  Mat b1 = Mat::Zero(4, 4), b2 = Mat::Zero(4, 4);
  b1(0, 1) = b1(1, 0) = 1.0;
  b2(0, 2) = b2(2, 0) = 1.0;
  const auto g1 = is_euler(AlgebraElement::from_matrix(so13, b1)).grading.value();
  const auto g2 = is_euler(AlgebraElement::from_matrix(so13, b2)).grading.value();
  CHECK(is_orthogonal_pair(g1, g2));
  CHECK(is_orthogonal_pair(g2, g1));

  auto sl3 = make_algebra("sl", 3);
  CHECK_THROWS_AS(
      is_orthogonal_pair(ga, is_euler(AlgebraElement::from_matrix(
                                          sl3, sl_euler_candidate(3, 1)))
                                 .grading.value()),
      DomainError);
}

TEST_CASE("hermitian and tube type detection") {
  const auto sp = is_tube_type_hermitian(make_algebra("sp", 2));
  CHECK(sp.hermitian);
  CHECK(sp.tube_type);

  const auto sl3 = is_tube_type_hermitian(make_algebra("sl", 3));
  CHECK_FALSE(sl3.hermitian);
  CHECK_FALSE(sl3.tube_type);

  const auto so13 = is_tube_type_hermitian(make_algebra("so", 1, 3));
  CHECK_FALSE(so13.hermitian);

  const auto so23 = is_tube_type_hermitian(make_algebra("so", 2, 3));
  CHECK(so23.hermitian);
  CHECK(so23.tube_type);

  const auto sl2 = is_tube_type_hermitian(make_algebra("sl", 2));
  CHECK(sl2.hermitian);
  CHECK(sl2.tube_type);
}
