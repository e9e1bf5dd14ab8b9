#include "acmslab/gallery.hpp"

#include "acmslab/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace acmslab::gallery {

CayleyTable::Product CayleyTable::product(int i, int j) {
  if (i < 0 || i > 6 || j < 0 || j > 6 || i == j) {
    throw PreconditionError("CayleyTable::product: needs distinct indices in 0..6");
  }
  for (const auto& t : triples) {
    const int a = t[0] - 1, b = t[1] - 1, c = t[2] - 1;
    const std::array<std::array<int, 3>, 3> cyc{{{a, b, c}, {b, c, a}, {c, a, b}}};
    for (const auto& r : cyc) {
      if (r[0] == i && r[1] == j) return {r[2], 1};
      if (r[1] == i && r[0] == j) return {r[2], -1};
    }
  }
  throw UnreachableError("CayleyTable: pair missing from the table");
}

Vector octonion_cross(const Vector& x, const Vector& y) {
  if (x.size() != 7 || y.size() != 7) throw DimensionError("octonion_cross: vectors must lie in R^7");
  Vector out = Vector::Zero(7);
  for (int i = 0; i < 7; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < 7; ++j) {
      if (i == j || y(j) == 0.0) continue;
      const auto p = CayleyTable::product(i, j);
      out(p.index) += p.sign * x(i) * y(j);
    }
  }
  return out;
}

LinearOp nearly_kahler_J(const Vector& p) {
  if (p.size() != 7) throw DimensionError("nearly_kahler_J: p must lie in R^7");
  if (std::abs(p.norm() - 1.0) > 1e-10) {
    throw PreconditionError(fmt::format("nearly_kahler_J: |p| = {:.12g}, expected 1", p.norm()));
  }
  Matrix j(7, 7);
  for (int c = 0; c < 7; ++c) j.col(c) = octonion_cross(p, Vector::Unit(7, c));
  return LinearOp(j);
}

namespace {

// Linear combination Σ coef[a] p_a of the ambient point p, as expression text.
std::string linear_text(const Vector& coef, const std::vector<std::string>& p) {
  std::string out;
  for (int a = 0; a < coef.size(); ++a) {
    if (coef(a) == 0.0 || p[a].empty()) continue;
    const char* sign = coef(a) > 0 ? (out.empty() ? "" : " + ") : (out.empty() ? "-" : " - ");
    out += sign;
    if (std::abs(coef(a)) != 1.0) out += fmt::format("{}*", std::abs(coef(a)));
    out += p[a];
  }
  return out.empty() ? "0" : out;
}

// Coefficients of (p × v)_i in terms of p_a: (p × v)_i = Σ_a C(i, a) p_a.
Matrix cross_left(const Vector& v) {
  Matrix c = Matrix::Zero(7, 7);
  for (int a = 0; a < 7; ++a) c.col(a) = octonion_cross(Vector::Unit(7, a), v);
  return c;
}

std::string header(int dim, DerivativeSettings mode, const char* box) {
  return fmt::format("dim = {}\nderivative_mode = {}\nsample_box = {}\n", dim, mode.to_string(), box);
}

}  // namespace

std::string induced_s5_text(DerivativeSettings mode) {
  const std::string radicand = "1 - x1^2 - x2^2 - x3^2 - x4^2 - x5^2";
  const std::string s = "sqrt(" + radicand + ")";
  const std::vector<std::string> p{"x1", "x2", "x3", "x4", "x5", s, ""};

  std::string out = "# S^5 in S^6, graph coordinates over x6 > 0\n" + header(5, mode, "-0.4, 0.4");
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      std::string e = fmt::format("x{}*x{}/({})", i + 1, j + 1, radicand);
      if (i == j) e = "1 + " + e;
      out += fmt::format("g[{}][{}] = {}\n", i + 1, j + 1, e);
      if (i != j) out += fmt::format("g[{}][{}] = {}\n", j + 1, i + 1, e);
    }
  }
  // φ(∂_j) = p × e_j − (x_j/s) p × e6, first five components.
  const Matrix c6 = cross_left(Vector::Unit(7, 5));
  for (int j = 0; j < 5; ++j) {
    const Matrix cj = cross_left(Vector::Unit(7, j));
    for (int i = 0; i < 5; ++i) {
      const std::string first = linear_text(cj.row(i).transpose(), p);
      const std::string second = linear_text(c6.row(i).transpose(), p);
      std::string e;
      if (first != "0") e = first;
      if (second != "0") {
        e += (e.empty() ? "-" : " - ") + fmt::format("x{}/{}*({})", j + 1, s, second);
      }
      if (!e.empty()) out += fmt::format("phi[{}][{}] = {}\n", i + 1, j + 1, e);
    }
  }
  // ξ = −p × e7 = w; η_i = w_i − (x_i/s) w_6.
  const Matrix w = -cross_left(Vector::Unit(7, 6));
  for (int i = 0; i < 5; ++i) {
    const std::string e = linear_text(w.row(i).transpose(), p);
    if (e != "0") out += fmt::format("xi[{}] = {}\n", i + 1, e);
  }
  const std::string w6 = linear_text(w.row(5).transpose(), p);
  for (int i = 0; i < 5; ++i) {
    std::string e = linear_text(w.row(i).transpose(), p);
    e = (e == "0" ? "" : e + " - ") + fmt::format("x{}/{}*({})", i + 1, s, w6);
    out += fmt::format("eta[{}] = {}\n", i + 1, e);
  }
  return out;
}

Chart induced_s5_structure(DerivativeSettings mode) { return Chart::parse(induced_s5_text(mode), "gallery:s5"); }

std::string sasakian_r5_text(DerivativeSettings mode) {
  return "# standard Sasakian structure on R^5, coordinates (x1, x2, y1, y2, z)\n" +
         header(5, mode, "-1, 1") +
         "g[1][1] = 1/4 + x3^2/4\n"
         "g[1][2] = x3*x4/4\n"
         "g[2][1] = x3*x4/4\n"
         "g[1][5] = -x3/4\n"
         "g[5][1] = -x3/4\n"
         "g[2][2] = 1/4 + x4^2/4\n"
         "g[2][5] = -x4/4\n"
         "g[5][2] = -x4/4\n"
         "g[3][3] = 1/4\n"
         "g[4][4] = 1/4\n"
         "g[5][5] = 1/4\n"
         "phi[3][1] = -1\n"
         "phi[4][2] = -1\n"
         "phi[1][3] = 1\n"
         "phi[5][3] = x3\n"
         "phi[2][4] = 1\n"
         "phi[5][4] = x4\n"
         "xi[5] = 2\n"
         "eta[1] = -x3/2\n"
         "eta[2] = -x4/2\n"
         "eta[5] = 1/2\n";
}

Chart sasakian_r5(DerivativeSettings mode) { return Chart::parse(sasakian_r5_text(mode), "gallery:sasakian_r5"); }

std::string cosymplectic_r5_text(DerivativeSettings mode) {
  return "# flat cosymplectic R^4 x R\n" + header(5, mode, "-1, 1") +
         "g[1][1] = 1\n"
         "g[2][2] = 1\n"
         "g[3][3] = 1\n"
         "g[4][4] = 1\n"
         "g[5][5] = 1\n"
         "phi[3][1] = 1\n"
         "phi[4][2] = 1\n"
         "phi[1][3] = -1\n"
         "phi[2][4] = -1\n"
         "xi[5] = 1\n"
         "eta[5] = 1\n";
}

Chart cosymplectic_r5(DerivativeSettings mode) {
  return Chart::parse(cosymplectic_r5_text(mode), "gallery:cosymplectic_r5");
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"s5", "sasakian_r5", "cosymplectic_r5"};
  return n;
}

Chart by_name(std::string_view name, DerivativeSettings mode) {
  if (name == "s5") return induced_s5_structure(mode);
  if (name == "sasakian_r5") return sasakian_r5(mode);
  if (name == "cosymplectic_r5") return cosymplectic_r5(mode);
  throw InputError(fmt::format("unknown gallery chart '{}' (known: s5, sasakian_r5, cosymplectic_r5)", name));
}

}  // namespace acmslab::gallery
