#include <catch2/catch_amalgamated.hpp>

#include "wedgekit/rapidity.hpp"

#include <cmath>

using namespace wedgekit;

namespace {

TestFunctionSpec gaussian(double ct, double cx, double w, double amp = 1.0) {
  return TestFunctionSpec{"g", {GaussianTerm{amp, ct, cx, w, 0.0}}};
}

/// Closed-form mass-shell transform of an isotropic Gaussian: the independent
/// oracle for the quadrature path.
CVec closed_form(const RapidityModel& m, const GaussianTerm& t, double shift = 0.0) {
  CVec out(m.grid_size());
  for (int j = 0; j < m.grid_size(); ++j) {
    const double theta = m.theta_grid()(j) - shift;
    const double q0 = m.p0(theta), q1 = m.p1(theta);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, q0 * t.center_t - q1 * t.center_x));
    out(j) = t.amplitude * t.width * t.width * phase *
             std::exp(-0.5 * t.width * t.width * (q0 * q0 + q1 * q1));
  }
  return out;
}

}  // namespace

TEST_CASE("model construction guards") {
  CHECK_THROWS_AS(RapidityModel(1.0, 1000, 20.0), DomainError);  // not a power of two
  CHECK_THROWS_AS(RapidityModel(1.0, 1024, 5.0), DomainError);   // theta_max too small
  CHECK_THROWS_AS(RapidityModel(0.0, 1024, 20.0), DomainError);
  RapidityModel m(1.0, 1024, 20.0);
  CHECK(m.spacing() == Catch::Approx(40.0 / 1024));
}

TEST_CASE("zero function maps to the zero vector") {
  RapidityModel m(1.0, 512, 20.0);
  const CVec v = m.vector_of(gaussian(0.0, 3.0, 0.4, 0.0));
  CHECK(v.norm() == 0.0);
}

TEST_CASE("quadrature matches the closed form") {
  RapidityModel m(1.0, 1024, 20.0);
  for (const auto& term : {GaussianTerm{1.0, 0.0, 3.0, 0.5, 0.0},
                           GaussianTerm{-0.7, 0.4, 2.5, 0.35, 0.0},
                           GaussianTerm{1.0, 0.0, -3.0, 0.4, 0.0}}) {
    double quad_err = 0.0;
    const CVec v = m.vector_of(TestFunctionSpec{"t", {term}}, &quad_err);
    const CVec oracle = closed_form(m, term);
    CHECK((v - oracle).norm() < 1e-10 * oracle.norm());
    CHECK(quad_err < 1e-10);
  }
}

TEST_CASE("vector norms are finite and decay in rapidity") {
  RapidityModel m(1.0, 2048, 20.0);
  const CVec v = m.vector_of(gaussian(0.0, 3.0, 0.5));
  CHECK(m.norm(v) > 0.0);
  const int n = m.grid_size();
  double edge = 0.0, center = 0.0;
  for (int j = 0; j < n; ++j) {
    const double th = std::abs(m.theta_grid()(j));
    if (th > 15.0) edge = std::max(edge, std::abs(v(j)));
    if (th < 2.0) center = std::max(center, std::abs(v(j)));
  }
  CHECK(edge < 1e-12 * center);
}

TEST_CASE("support radius metadata is validated") {
  RapidityModel m(1.0, 512, 20.0);
  TestFunctionSpec bad{"bad", {GaussianTerm{1.0, 0.0, 3.0, 0.5, 1.0}}};  // R = 2w
  CHECK_THROWS_AS(m.vector_of(bad), DomainError);
}

TEST_CASE("quadrature box guard fires for near-massless models") {
  RapidityModel m(1e-9, 256, 12.0);
  CHECK_THROWS_AS(m.vector_of(gaussian(0.0, 3.0, 0.4)), DomainError);
}

TEST_CASE("boost covariance against the analytic shift") {
  RapidityModel m(1.0, 2048, 20.0);
  const GaussianTerm t{1.0, 0.0, 3.0, 0.5, 0.0};
  const CVec v = m.vector_of(TestFunctionSpec{"t", {t}});
  for (double s : {0.35, -1.2}) {
    const CVec shifted = m.boost(v, s);
    const CVec oracle = closed_form(m, t, s);
    CHECK(m.norm(CVec(shifted - oracle)) < 1e-6 * m.norm(oracle));
  }
}

TEST_CASE("modular flow is the boost reparametrization, exactly") {
  RapidityModel m(1.0, 1024, 20.0);
  const CVec v = m.vector_of(gaussian(0.0, 3.0, 0.5));
  const CVec lhs = m.modular_flow(v, 0.21);
  const CVec rhs = m.boost(v, -2.0 * M_PI * 0.21);
  CHECK((lhs - rhs).norm() == 0.0);  // same code path by construction

  // J Delta^{it} J = Delta^{it}
  const CVec a = m.conjugate(m.modular_flow(m.conjugate(v), 0.37));
  const CVec b = m.modular_flow(v, 0.37);
  CHECK(m.norm(CVec(a - b)) < 1e-12 * m.norm(v));

  // Delta^{it} commutes with finite boosts.
  const CVec c1 = m.modular_flow(m.boost(v, 0.8), 0.13);
  const CVec c2 = m.boost(m.modular_flow(v, 0.13), 0.8);
  CHECK(m.norm(CVec(c1 - c2)) < 1e-9 * m.norm(v));
}

TEST_CASE("constant vectors: the Tomita operator reduces to conjugation") {
  RapidityModel m(1.0, 512, 20.0);
  CVec c = CVec::Constant(512, std::complex<double>(1.0, 0.5));
  const CVec s = m.tomita(c);
  CHECK(m.norm(CVec(s - c.conjugate())) < 1e-10 * m.norm(c));
}

TEST_CASE("fixed points of S: right wedge in, left wedge out") {
  RapidityModel m(1.0, 2048, 20.0);
  for (auto [c, w] : std::vector<std::pair<double, double>>{
           {3.2, 0.30}, {4.1, 0.37}, {5.0, 0.435}}) {
    CHECK(m.bw_residual(gaussian(0.0, c, w)) < 1e-3);
    CHECK(m.bw_residual(gaussian(0.0, -c, w)) > 0.1);
  }
  // The raw unbounded-operator metric at least separates the wedges coarsely.
  const CVec right = m.vector_of(gaussian(0.0, 3.2, 0.30));
  const CVec left = m.vector_of(gaussian(0.0, -3.2, 0.30));
  CHECK(m.bw_residual_raw(left) > 100.0 * m.bw_residual_raw(right));
}

TEST_CASE("bw residual improves monotonically under refinement") {
  const auto spec = gaussian(0.0, 3.5, 0.335);
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {512, 1024, 2048, 4096}) {
    RapidityModel m(1.0, n, 20.0);
    const double r = m.bw_residual(spec);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("translation covariance and light-ray commutation relations") {
  RapidityModel m(1.0, 1024, 20.0);
  const CVec v = m.vector_of(gaussian(0.0, 3.0, 0.5));

  // U(a) is a diagonal phase; J U(a) J = U(-a) exactly.
  const CVec lhs = m.conjugate(m.translate(m.conjugate(v), 0.4, -0.3));
  const CVec rhs = m.translate(v, -0.4, 0.3);
  CHECK(m.norm(CVec(lhs - rhs)) < 1e-13 * m.norm(v));

  for (int sign : {+1, -1}) {
    const auto report = rapidity_borchers_check(m, sign, {v});
    CHECK(report.reflection_residual < 1e-3);
    CHECK(report.dilation_residual < 1e-3);
  }
}

TEST_CASE("locality pairing") {
  RapidityModel m(1.0, 2048, 20.0);
  const auto f = gaussian(0.0, 3.0, 0.4);
  const auto g = gaussian(0.0, -3.0, 0.4);
  CHECK(m.locality_pairing(f, g) < 1e-6);

  // Same-wedge pairs have a genuinely nonzero symplectic form.
  const auto g2 = gaussian(0.3, 3.5, 0.4);
  CHECK(m.locality_pairing(f, g2) > 1e-7);

  CHECK(m.locality_pairing(f, gaussian(0.0, -3.0, 0.4, 0.0)) == 0.0);
}

TEST_CASE("wedge margins") {
  // The default support radius is 7.5 widths: (3.4, 0.3) fits in the wedge,
  // (3.0, 0.3) does not.
  CHECK(right_wedge_margin(gaussian(0.0, 3.4, 0.3)) > 0.0);
  CHECK(right_wedge_margin(gaussian(0.0, 3.0, 0.3)) < 0.0);
  CHECK(right_wedge_margin(gaussian(0.0, 3.4, 0.3), 0.0, 10.0) < 0.0);
  CHECK(left_wedge_margin(gaussian(0.0, -3.4, 0.3)) > 0.0);
  CHECK(left_wedge_margin(gaussian(0.0, 3.4, 0.3)) < 0.0);
}

TEST_CASE("regularity probe") {
  RapidityModel m(1.0, 1024, 20.0);
  std::vector<TestFunctionSpec> family;
  for (int i = 0; i < 6; ++i)
    family.push_back(gaussian(0.0, 4.0 + 0.45 * i, 0.3 + 0.02 * i));

  const auto base = regularity_probe(m, {}, family);
  CHECK(base.surviving == 6);
  CHECK(base.real_rank == 6);
  CHECK(base.complexified_rank == 12);
  CHECK(base.real_rank >= base.real_rank_coarse);

  const auto small = regularity_probe(m, {{0.0, 0.1}, {0.0, -0.1}}, family);
  CHECK(small.surviving == 6);
  CHECK(small.real_rank == 6);

  const auto wiped = regularity_probe(m, {{0.0, 10.0}, {0.0, -10.0}}, family);
  CHECK(wiped.surviving == 0);
  for (double nrm : wiped.norms) CHECK(nrm < 1e-10);
}

TEST_CASE("test function serialization") {
  const auto spec = TestFunctionSpec{
      "pair", {GaussianTerm{1.0, 0.1, 3.0, 0.4, 3.2}, GaussianTerm{-0.5, 0.0, 4.0, 0.5, 0.0}}};
  const auto back = test_function_from_json(test_function_to_json(spec));
  CHECK(back.name == "pair");
  REQUIRE(back.terms.size() == 2);
  CHECK(back.terms[0].support_radius == 3.2);
  CHECK(back.terms[1].radius() == Catch::Approx(7.5 * 0.5));
}
