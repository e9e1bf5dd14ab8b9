#include "acmslab/acms_point.hpp"
#include "acmslab/error.hpp"

#include <doctest.h>

using namespace acmslab;

namespace {

// φ∂x_i = ∂y_i, φ∂y_i = −∂x_i, ξ = ∂z on flat ℝ⁵.
AcmsPoint cosymplectic(double eta_scale = 1.0, double phi_scale = 1.0) {
  Matrix phi = Matrix::Zero(5, 5);
  phi(2, 0) = 1;
  phi(3, 1) = 1;
  phi(0, 2) = -1;
  phi(1, 3) = -1;
  return AcmsPoint(LinearOp(phi_scale * phi), Vector::Unit(5, 4), eta_scale * Vector::Unit(5, 4),
                   Metric::euclidean(5));
}

// The Sasakian structure on ℝ⁵ at (x1, x2, y1, y2, z).
AcmsPoint sasakian(double y1, double y2) {
  Matrix g = Matrix::Zero(5, 5);
  g(0, 0) = 0.25 + y1 * y1 / 4;
  g(0, 1) = g(1, 0) = y1 * y2 / 4;
  g(0, 4) = g(4, 0) = -y1 / 4;
  g(1, 1) = 0.25 + y2 * y2 / 4;
  g(1, 4) = g(4, 1) = -y2 / 4;
  g(2, 2) = g(3, 3) = g(4, 4) = 0.25;
  Matrix phi = Matrix::Zero(5, 5);
  phi(2, 0) = -1;
  phi(3, 1) = -1;
  phi(0, 2) = 1;
  phi(4, 2) = y1;
  phi(1, 3) = 1;
  phi(4, 3) = y2;
  Vector xi = Vector::Zero(5);
  xi(4) = 2;
  Vector eta(5);
  eta << -y1 / 2, -y2 / 2, 0, 0, 0.5;
  return AcmsPoint(LinearOp(phi), xi, eta, Metric(g));
}

}  // namespace

TEST_CASE("construction checks shapes") {
  CHECK_THROWS_AS(AcmsPoint(LinearOp::identity(4), Vector::Zero(4), Vector::Zero(4), Metric::euclidean(4)),
                  DimensionError);
  CHECK_THROWS_AS(AcmsPoint(LinearOp::identity(5), Vector::Zero(3), Vector::Zero(5), Metric::euclidean(5)),
                  DimensionError);
}

TEST_CASE("validate_acms on the cosymplectic tuple") {
  const auto report = validate_acms(cosymplectic());
  CHECK(report.verdict());
  for (const auto& c : report.checks()) CHECK(c.residual < 1e-12);
}

TEST_CASE("validate_acms detects a scaled eta and a doubled phi") {
  const auto scaled = validate_acms(cosymplectic(2.0));
  CHECK_FALSE(scaled.verdict());
  CHECK_FALSE(scaled.at("eta(xi) = 1").pass);
  CHECK(scaled.at("eta(xi) = 1").residual == doctest::Approx(1.0));

  const auto doubled = validate_acms(cosymplectic(1.0, 2.0));
  CHECK_FALSE(doubled.verdict());
  CHECK_FALSE(doubled.at("phi^2 = -I + eta(x)xi").pass);
}

TEST_CASE("validate_acms on the Sasakian tuple") {
  for (double y : {-0.7, 0.0, 0.3}) {
    const auto report = validate_acms(sasakian(y, 0.5 - y));
    CHECK(report.verdict());
    for (const auto& c : report.checks()) CHECK(c.residual < 1e-10);
  }
}

TEST_CASE("horizontal_basis spans the x, y directions") {
  const auto p = cosymplectic();
  const auto d = horizontal_basis(p);
  CHECK(d.rank() == 4);
  for (int a = 0; a < d.rank(); ++a) CHECK(std::abs(d.vector(a)(4)) < 1e-15);
  CHECK(max_abs(d.basis().transpose() * d.basis() - Matrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("horizontal_basis is g-orthonormal and annihilated by eta") {
  const auto p = sasakian(0.4, -0.9);
  const auto d = horizontal_basis(p);
  REQUIRE(d.rank() == 4);
  CHECK(max_abs(d.basis().transpose() * p.g().gram() * d.basis() - Matrix::Identity(4, 4)) < 1e-12);
  CHECK((p.eta().transpose() * d.basis()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("b_operator and contactness") {
  const auto p = cosymplectic();
  const LinearOp sym(Matrix(Eigen::VectorXd::LinSpaced(5, 1, 5).asDiagonal()));
  CHECK(max_abs(b_operator(sym, p).mat()) < 1e-15);

  const auto zero = is_contact_at_point(LinearOp::zero(4));
  CHECK_FALSE(zero.contact);
  CHECK(zero.sigma_min == 0.0);

  // On the Sasakian structure A = −φ, so B = −φ|_D, which is orthogonal.
  const auto s = sasakian(0.2, 0.1);
  const LinearOp b = b_operator(-s.phi(), s);
  const auto verdict = is_contact_at_point(b);
  CHECK(verdict.contact);
  CHECK(verdict.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("star condition") {
  const auto p = cosymplectic();
  CHECK(check_star_condition(LinearOp::zero(5), p).verdict());
  CHECK(check_star_condition(LinearOp::zero(5), p).checks().front().residual == 0.0);

  // A = −φ gives Aφ + φA = −2φ², of g-norm 2.
  const auto s = sasakian(0.3, -0.2);
  const auto report = check_star_condition(-s.phi(), s);
  CHECK_FALSE(report.verdict());
  CHECK(report.checks().front().residual == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("eta-parallel check") {
  const auto p = cosymplectic();
  CHECK(check_eta_parallel(NablaPhi(5), p).verdict());

  // (∇_Xφ)Y = g(X,Y)ξ − η(Y)X has no horizontal component on D × D.
  const auto s = sasakian(-0.5, 0.6);
  NablaPhi np(5);
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 5; ++k) {
      const Vector ei = Vector::Unit(5, i), ek = Vector::Unit(5, k);
      const Vector v = s.g().inner(ei, ek) * s.xi() - s.eta_of(ek) * ei;
      for (int j = 0; j < 5; ++j) np(i, j, k) = v(j);
    }
  }
  const auto report = check_eta_parallel(np, s);
  CHECK(report.verdict());
  CHECK(report.checks().front().residual < 1e-10);
}

TEST_CASE("dimension gate passes vacuously without the hypotheses") {
  const auto s = sasakian(0.0, 0.0);
  CHECK(dimension_gate(-s.phi(), s).verdict());
}
