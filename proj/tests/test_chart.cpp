#include "acmslab/chart.hpp"
#include "acmslab/error.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace acmslab;

namespace {

const char* kSphere =
    "# unit 2-sphere, (theta, phi)\n"
    "dim = 2\n"
    "g[1][1] = 1\n"
    "g[2][2] = sin(x1)^2\n";

int parse_error_line(const std::string& text) {
  try {
    (void)Chart::parse(text);
  } catch (const expr::ParseError& e) {
    return e.line();
  } catch (const InputError&) {
    return -1;
  }
  return 0;
}

}  // namespace

TEST_CASE("derivative settings") {
  CHECK(DerivativeSettings::parse("symbolic").mode == DerivativeMode::symbolic);
  const auto fd = DerivativeSettings::parse("fd:1e-4");
  CHECK(fd.mode == DerivativeMode::finite_difference);
  CHECK(fd.step == 1e-4);
  CHECK(DerivativeSettings::parse(fd.to_string()).step == 1e-4);
  CHECK_THROWS_AS(DerivativeSettings::parse("fd:0"), InputError);
  CHECK_THROWS_AS(DerivativeSettings::parse("fd:-1"), InputError);
  CHECK_THROWS_AS(DerivativeSettings::parse("exact"), InputError);
}

TEST_CASE("parse a chart") {
  const Chart c = Chart::parse(kSphere, "sphere");
  CHECK(c.dim() == 2);
  CHECK(c.derivative().mode == DerivativeMode::symbolic);
  CHECK(c.box_lo() == -0.5);
  CHECK(c.box_hi() == 0.5);
  CHECK(c.g(0, 1).is_number(0));
  CHECK(c.source() == "sphere");
  const FieldJet j = c.jet(Eigen::Vector2d(std::numbers::pi / 2, 0), 1);
  CHECK(j.g(1, 1) == doctest::Approx(1.0));
  CHECK(j.dg[0](1, 1) == doctest::Approx(0.0));
}

TEST_CASE("chart parse errors") {
  CHECK(parse_error_line("dim = 2\ng[1][1] = 1 +* 2\n") == 2);
  try {
    (void)Chart::parse("dim = 2\ng[1][1] = 1 +* 2\n");
  } catch (const expr::ParseError& e) {
    CHECK(e.column() == 14);
  }
  CHECK(parse_error_line("dim = 2\n\n\nxi[1] = x3\n") == 4);
  CHECK_THROWS_AS(Chart::parse("g[1][1] = 1\ndim = 2\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("# nothing\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\ng[3][1] = 1\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\ng[1] = 1\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\nxi[1][1] = 1\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\nfoo[1] = 1\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\ng[1][1] = 1\ng[1][1] = 2\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\ndim = 3\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\nsample_box = 1, 0\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\nderivative_mode = fd:x\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = two\n"), InputError);
  CHECK_THROWS_AS(Chart::parse("dim = 2\nwhatever\n"), InputError);
}

TEST_CASE("load reports missing files and reads existing ones") {
  CHECK_THROWS_AS(Chart::load("/nonexistent/missing.chart"), InputError);
  const auto path = std::filesystem::temp_directory_path() / "acmslab_test_sphere.chart";
  {
    std::ofstream out(path);
    out << kSphere;
  }
  const Chart c = Chart::load(path);
  CHECK(c.dim() == 2);
  std::filesystem::remove(path);
}

TEST_CASE("to_text round-trips") {
  const Chart c = Chart::parse(
      "dim = 3\nderivative_mode = fd:0.001\nsample_box = -1, 2\n"
      "g[1][1] = 1 + x2^2\ng[2][2] = exp(x3)\ng[3][3] = 2\n"
      "phi[2][1] = -x1\nxi[3] = 1/2\neta[3] = 1\n");
  const Chart d = Chart::parse(c.to_text());
  CHECK(d.to_text() == c.to_text());
  CHECK(d.derivative().step == 0.001);
  CHECK(d.box_lo() == -1);
  CHECK(d.box_hi() == 2);
  CHECK(d.g(0, 0) == c.g(0, 0));
  CHECK(d.phi(1, 0) == c.phi(1, 0));
  CHECK(d.xi(2) == c.xi(2));
}

TEST_CASE("symbolic and finite-difference jets agree") {
  const Chart c = Chart::parse(
      "dim = 3\n"
      "g[1][1] = 1 + x2^2\ng[1][2] = x1*x3/3\ng[2][1] = x1*x3/3\ng[2][2] = exp(x3)\ng[3][3] = 2 + sin(x1)\n"
      "phi[2][1] = -x1*x2\nphi[1][3] = cos(x3)\nxi[3] = x1^3\neta[2] = sqrt(2 + x1)\n");
  const Chart f = c.with_mode(DerivativeSettings::finite_difference(1e-4));
  const Vector p = Eigen::Vector3d(0.3, -0.2, 0.1);
  const FieldJet a = c.jet(p, 2), b = f.jet(p, 2);
  CHECK(max_abs(a.g - b.g) == 0.0);
  for (int k = 0; k < 3; ++k) {
    CHECK(max_abs(a.dg[k] - b.dg[k]) < 1e-7);
    CHECK(max_abs(a.dphi[k] - b.dphi[k]) < 1e-7);
    for (int l = 0; l < 3; ++l) CHECK(max_abs(a.ddg[k][l] - b.ddg[k][l]) < 1e-5);
  }
  CHECK(max_abs(a.dxi - b.dxi) < 1e-7);
  CHECK(max_abs(a.deta - b.deta) < 1e-7);
  // ∂_1 η_2 = 1 / (2 sqrt(2 + x1)), ∂_1 ξ^3 = 3 x1².
  CHECK(a.deta(1, 0) == doctest::Approx(0.5 / std::sqrt(2.3)));
  CHECK(a.dxi(2, 0) == doctest::Approx(3 * 0.09));
}

TEST_CASE("domain errors name the point") {
  const Chart c = Chart::parse("dim = 1\ng[1][1] = 1/x1\n");
  CHECK_THROWS_WITH_AS((void)c.jet(Vector::Zero(1), 0), doctest::Contains("(0)"), Error);
  CHECK_THROWS_AS((void)c.jet(Vector::Zero(2), 0), DimensionError);
}

TEST_CASE("sample points are seeded and lie in the box") {
  const Chart c = Chart::parse("dim = 4\nsample_box = -0.25, 0.75\n");
  const auto a = c.sample_points(30, 5), b = c.sample_points(30, 5), d = c.sample_points(30, 6);
  REQUIRE(a.size() == 30);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    differs = differs || a[i] != d[i];
    CHECK(a[i].minCoeff() >= -0.25);
    CHECK(a[i].maxCoeff() <= 0.75);
  }
  CHECK(differs);
}
