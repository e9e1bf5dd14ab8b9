#pragma once

// Coordinate charts carrying the structure tensors as expressions.
//
// Chart file format, one statement per line, '#' starts a comment:
//
//   dim = <k>
//   derivative_mode = symbolic | fd:<h>
//   sample_box = <lo>, <hi>            (optional, default -0.5, 0.5)
//   g[i][j] = <expr>
//   phi[i][j] = <expr>                 (row i, column j: phi(∂_j) = Σ_i phi[i][j] ∂_i)
//   xi[i] = <expr>
//   eta[i] = <expr>
//
// Indices are 1-based; omitted components are 0; `dim` must precede the
// component lines. Expressions use the grammar of expr.hpp with variables
// x1..x<dim>.

#include "acmslab/expr.hpp"
#include "acmslab/linalg.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace acmslab {

enum class DerivativeMode { symbolic, finite_difference };

struct DerivativeSettings {
  DerivativeMode mode = DerivativeMode::symbolic;
  double step = 0.0;  ///< finite-difference step h

  static DerivativeSettings symbolic() { return {}; }
  static DerivativeSettings finite_difference(double h) { return {DerivativeMode::finite_difference, h}; }
  /// "symbolic" or "fd:<h>"; throws InputError.
  static DerivativeSettings parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;
};

/// Field values and derivatives at a point.
/// dg[k] = ∂_k g, ddg[k][l] = ∂_k ∂_l g, dphi[k] = ∂_k φ,
/// dxi(i, k) = ∂_k ξ^i, deta(i, k) = ∂_k η_i.
struct FieldJet {
  Vector point;
  Matrix g, phi;
  Vector xi, eta;
  std::vector<Matrix> dg, dphi;
  std::vector<std::vector<Matrix>> ddg;
  Matrix dxi, deta;
};

/// "(x1, x2, ...)" with six significant digits, for error messages.
std::string format_point(const Vector& x);

class Chart {
 public:
  /// Throws InputError (ParseError for expression errors, with file line and
  /// column).
  static Chart parse(std::string_view text, const std::string& source = "<chart>");
  static Chart load(const std::filesystem::path& path);

  /// Canonical chart file text; Chart::parse(to_text()) reproduces the chart.
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] Chart with_mode(DerivativeSettings mode) const;

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const DerivativeSettings& derivative() const { return mode_; }
  [[nodiscard]] double box_lo() const { return box_lo_; }
  [[nodiscard]] double box_hi() const { return box_hi_; }
  [[nodiscard]] const std::string& source() const { return source_; }

  [[nodiscard]] const expr::Expr& g(int i, int j) const { return g_[idx(i, j)]; }
  [[nodiscard]] const expr::Expr& phi(int i, int j) const { return phi_[idx(i, j)]; }
  [[nodiscard]] const expr::Expr& xi(int i) const { return xi_[i]; }
  [[nodiscard]] const expr::Expr& eta(int i) const { return eta_[i]; }

  /// order 0: values; 1: plus first derivatives of every field; 2: plus
  /// second derivatives of g. Throws Error naming the point on domain
  /// errors.
  [[nodiscard]] FieldJet jet(const Vector& point, int order) const;

  /// Uniform samples from the sample box.
  [[nodiscard]] std::vector<Vector> sample_points(int count, std::uint64_t seed) const;

 private:
  Chart() = default;
  void prepare_symbolic();
  [[nodiscard]] std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * dim_ + j;
  }
  void eval_values(const Vector& x, Matrix& g, Matrix& phi, Vector& xi, Vector& eta) const;
  [[nodiscard]] Matrix eval_g(const Vector& x) const;

  int dim_ = 0;
  DerivativeSettings mode_;
  double box_lo_ = -0.5;
  double box_hi_ = 0.5;
  std::string source_;
  std::vector<expr::Expr> g_, phi_, xi_, eta_;

  // Symbolic derivatives, filled only in symbolic mode.
  // dg_[k][i*dim+j] = ∂_k g_ij, ddg_[k*dim+l][i*dim+j] = ∂_k ∂_l g_ij.
  std::vector<std::vector<expr::Expr>> dg_, ddg_, dphi_;
  std::vector<std::vector<expr::Expr>> dxi_, deta_;  // [k][i]
};

}  // namespace acmslab
