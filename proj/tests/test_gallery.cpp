#include "acmslab/error.hpp"
#include "acmslab/gallery.hpp"
#include "acmslab/random.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace acmslab;
using namespace acmslab::gallery;

namespace {

Vector e(int i) { return Vector::Unit(7, i - 1); }

Vector random_unit7(Rng& rng) {
  const Vector v = gaussian_vector(rng, 7);
  return v / v.norm();
}

}  // namespace

TEST_CASE("Cayley table") {
  CHECK(max_abs(octonion_cross(e(1), e(2)) - e(3)) == 0.0);
  CHECK(max_abs(octonion_cross(e(2), e(1)) + e(3)) == 0.0);
  CHECK(max_abs(octonion_cross(e(1), e(7)) - e(6)) == 0.0);
  CHECK(max_abs(octonion_cross(e(6), e(5)) - e(3)) == 0.0);
  // Every ordered pair of distinct units has a product.
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      if (i == j) continue;
      const auto p = CayleyTable::product(i, j);
      CHECK(p.index != i);
      CHECK(p.index != j);
      CHECK(CayleyTable::product(j, i).sign == -p.sign);
    }
  }
  CHECK_THROWS_AS(CayleyTable::product(2, 2), PreconditionError);
}

TEST_CASE("cross product identities") {
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const Vector x = gaussian_vector(rng, 7), y = gaussian_vector(rng, 7), z = gaussian_vector(rng, 7);
    CHECK(octonion_cross(x, x).norm() < 1e-12);
    CHECK(max_abs(octonion_cross(x, y) + octonion_cross(y, x)) < 1e-12);
    const Vector c = octonion_cross(x, y);
    CHECK(std::abs(c.dot(x)) < 1e-12);
    CHECK(std::abs(c.squaredNorm() - (x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2))) < 1e-10);
    // x × (x × y) = −|x|²y + ⟨x, y⟩x holds for the octonion cross product.
    CHECK(max_abs(octonion_cross(x, octonion_cross(x, y)) + x.squaredNorm() * y - x.dot(y) * x) < 1e-10);
    CHECK(std::abs(octonion_cross(x, y).dot(z) - octonion_cross(y, z).dot(x)) < 1e-10);
  }
}

TEST_CASE("nearly Kahler J") {
  const LinearOp j = nearly_kahler_J(e(1));
  CHECK(max_abs(j.apply(e(2)) - e(3)) == 0.0);
  CHECK(max_abs(j.apply(e(3)) + e(2)) == 0.0);
  CHECK_THROWS_AS(nearly_kahler_J(2.0 * e(1)), PreconditionError);
  CHECK_THROWS_AS(nearly_kahler_J(Vector::Unit(6, 0)), DimensionError);

  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Vector p = random_unit7(rng);
    const LinearOp jp = nearly_kahler_J(p);
    Vector v = gaussian_vector(rng, 7), w = gaussian_vector(rng, 7);
    v -= v.dot(p) * p;
    w -= w.dot(p) * p;
    CHECK(max_abs(jp.apply(jp.apply(v)) + v) < 1e-12);
    CHECK(std::abs(jp.apply(v).dot(jp.apply(w)) - v.dot(w)) < 1e-12);
    CHECK(std::abs(jp.apply(v).dot(p)) < 1e-12);
  }
}

TEST_CASE("gallery names") {
  CHECK(names().size() == 3);
  for (const auto& n : names()) CHECK(by_name(n).dim() == 5);
  CHECK_THROWS_AS(by_name("s7"), InputError);
  CHECK(by_name("s5", DerivativeSettings::finite_difference(1e-4)).derivative().mode ==
        DerivativeMode::finite_difference);
}

TEST_CASE("gallery texts reparse to the same charts") {
  for (const auto& text : {induced_s5_text(), sasakian_r5_text(), cosymplectic_r5_text()}) {
    const Chart c = Chart::parse(text);
    CHECK(Chart::parse(c.to_text()).to_text() == c.to_text());
  }
}

TEST_CASE("S5 structure validates and matches the ambient construction") {
  const Chart chart = induced_s5_structure();
  CHECK(chart.box_lo() == -0.4);
  CHECK(chart.box_hi() == 0.4);
  for (const Vector& p : chart.sample_points(20, 13)) {
    const FieldJet j = chart.jet(p, 0);
    const AcmsPoint acms(LinearOp(j.phi), j.xi, j.eta, Metric(j.g));
    const auto report = validate_acms(acms);
    CHECK(report.verdict());
    for (const auto& c : report.checks()) CHECK(c.residual < 1e-9);

    const oracle::SphereS5 s(p);
    // The tangent image of φ(∂_j) is the tangential part of J∂_jp.
    const Matrix tangent = s.frame * j.phi;
    Matrix jt = nearly_kahler_J(s.p).mat() * s.frame;
    jt.row(6).setZero();
    CHECK(max_abs(tangent - jt) < 1e-12);
    CHECK(max_abs(s.frame * j.xi + octonion_cross(s.p, e(7))) < 1e-12);
  }
}

TEST_CASE("Sasakian and cosymplectic structures validate") {
  for (const Chart& chart : {sasakian_r5(), cosymplectic_r5()}) {
    for (const Vector& p : chart.sample_points(10, 3)) {
      const FieldJet j = chart.jet(p, 0);
      const auto report = validate_acms(AcmsPoint(LinearOp(j.phi), j.xi, j.eta, Metric(j.g)));
      CHECK(report.verdict());
      for (const auto& c : report.checks()) CHECK(c.residual < 1e-10);
    }
  }
}
