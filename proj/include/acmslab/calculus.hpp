#pragma once

// Levi-Civita calculus on a chart: Christoffel symbols, ∇ξ, ∇φ, curvature,
// dη, and the pointwise checks built from them.
//
// Conventions:
//   Γ^k_ij = ½ g^kl (∂_i g_jl + ∂_j g_il − ∂_l g_ij), ∇_{∂i} ∂j = Γ^k_ij ∂_k
//   R^i_jkl = ∂_k Γ^i_lj − ∂_l Γ^i_kj + Γ^i_km Γ^m_lj − Γ^i_lm Γ^m_kj,
//   R(X, Y)Z = R^i_jkl Z^j X^k Y^l
//   A = ∇ξ, A^i_j = ∂_j ξ^i + Γ^i_jk ξ^k
//   dη(X, Y) = ½(X η(Y) − Y η(X) − η([X, Y])), (dη)_ij = ½(∂_i η_j − ∂_j η_i)

#include "acmslab/acms_point.hpp"
#include "acmslab/chart.hpp"
#include "acmslab/linalg.hpp"
#include "acmslab/report.hpp"
#include "acmslab/tolerances.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace acmslab {

/// Dense rank-3 array T(a, b, c).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}
  [[nodiscard]] int dim() const { return dim_; }
  double& operator()(int a, int b, int c) { return data_[(static_cast<std::size_t>(a) * dim_ + b) * dim_ + c]; }
  [[nodiscard]] double operator()(int a, int b, int c) const {
    return data_[(static_cast<std::size_t>(a) * dim_ + b) * dim_ + c];
  }
  /// v^a = T(a, b, c) x^b y^c.
  [[nodiscard]] Vector contract(const Vector& x, const Vector& y) const;
  [[nodiscard]] double max_abs() const;
  Tensor3& operator+=(const Tensor3& other);

 private:
  int dim_ = 0;
  std::vector<double> data_;
};

/// Dense rank-4 array T(a, b, c, d).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}
  [[nodiscard]] int dim() const { return dim_; }
  double& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
  [[nodiscard]] double operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }
  [[nodiscard]] double max_abs() const;

 private:
  [[nodiscard]] std::size_t index(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * dim_ + b) * dim_ + c) * dim_ + d;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

/// Connection coefficients Γ^k_ij stored as (k, i, j).
using Christoffel = Tensor3;

/// R^i_jkl at a point together with the metric there.
class CurvatureTensor {
 public:
  CurvatureTensor(Tensor4 components, Metric g);
  [[nodiscard]] int dim() const { return r_.dim(); }
  [[nodiscard]] const Tensor4& components() const { return r_; }
  [[nodiscard]] const Metric& g() const { return g_; }
  /// R(X, Y)Z.
  [[nodiscard]] Vector apply(const Vector& x, const Vector& y, const Vector& z) const;
  /// g(R(X, Y)Z, W).
  [[nodiscard]] double form(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const;
  /// R_ijkl = g_im R^m_jkl.
  [[nodiscard]] double lowered(int i, int j, int k, int l) const;

  /// Max of |R_ijkl + R_ijlk| (antisymmetry in the last pair, i.e.
  /// R(X, Y) = −R(Y, X)).
  [[nodiscard]] double antisymmetry_residual() const;
  /// Max of |R_ijkl + R_jikl|.
  [[nodiscard]] double metric_antisymmetry_residual() const;
  /// Max of |R_ijkl − R_klij|.
  [[nodiscard]] double pair_symmetry_residual() const;
  /// Max of |R^i_jkl + R^i_klj + R^i_ljk|.
  [[nodiscard]] double bianchi_residual() const;
  /// Largest |R_ijkl|, used to scale the residuals above.
  [[nodiscard]] double scale() const;
  /// The four residuals above divided by max(1, scale()).
  [[nodiscard]] VerificationReport symmetry_report(double tolerance) const;

 private:
  Tensor4 r_;
  Tensor4 lowered_;
  Metric g_;
};

/// Random probe directions: count unit vectors per residual, from a
/// generator seeded with seed.
struct ProbeConfig {
  int count = 50;
  std::uint64_t seed = 0;
};

// Pointwise primitives on a field jet.
Christoffel christoffel(const FieldJet& jet, const Metric& g);
/// ∂_m Γ^k_ij stored as (m, k, i, j); needs a jet of order 2.
Tensor4 christoffel_derivative(const FieldJet& jet, const Metric& g);
LinearOp nabla_xi(const FieldJet& jet, const Christoffel& gamma);
NablaPhi nabla_phi(const FieldJet& jet, const Christoffel& gamma);
/// Curvature of the connection with coefficients gamma and derivatives
/// d_gamma (m, k, i, j) = ∂_m Γ^k_ij.
Tensor4 curvature_components(const Christoffel& gamma, const Tensor4& d_gamma);
CurvatureTensor riemann(const FieldJet& jet, const Metric& g);
/// (dη)_ij.
Matrix d_eta(const FieldJet& jet);

// Chart-level conveniences; these evaluate the jet themselves.
Christoffel christoffel(const Chart& chart, const Vector& point);
LinearOp nabla_xi(const Chart& chart, const Vector& point);
NablaPhi nabla_phi(const Chart& chart, const Vector& point);
CurvatureTensor riemann(const Chart& chart, const Vector& point);
Matrix d_eta(const Chart& chart, const Vector& point);

/// K = g(R(X,Y)Y,X) / (g(X,X)g(Y,Y) − g(X,Y)²). Throws PreconditionError
/// when the normalized Gram determinant is not above rank_tolerance.
double sectional_curvature(const CurvatureTensor& r, const Vector& x, const Vector& y,
                           double rank_tolerance = 1e-8);

/// Pfaffian of a skew-symmetric matrix of even order.
double pfaffian(Matrix m);

/// Coefficient of η∧(dη)ⁿ on dx¹∧…∧dx^{2n+1}.
double contact_coefficient(const Vector& eta, const Matrix& d_eta);

/// Everything computed at one point of a chart that carries an almost
/// contact metric structure.
struct LocalGeometry {
  FieldJet jet;
  Metric g;
  AcmsPoint acms;
  HorizontalSubspace horizontal;
  Christoffel gamma;
  LinearOp a;
  LinearOp b;       ///< on D, in the horizontal basis
  LinearOp b_full;  ///< ½(PAP − (PAP)*) on the tangent space, P = I − ξ⊗η
  NablaPhi nabla_phi;
  Matrix d_eta;
  std::optional<CurvatureTensor> r;
  bool symbolic = true;  ///< derivatives exact rather than finite differences

  /// Throws DimensionError for even dimension and PreconditionError when
  /// ker η does not have rank 2n; errors name the point.
  static LocalGeometry at(const Chart& chart, const Vector& point, bool with_curvature,
                          const Tolerances& tol = {});

  [[nodiscard]] double inner(const Vector& x, const Vector& y) const { return g.inner(x, y); }
  [[nodiscard]] Vector phi(const Vector& v) const { return acms.phi().apply(v); }
  [[nodiscard]] Vector apply_a(const Vector& v) const { return a.apply(v); }
  [[nodiscard]] Vector apply_b(const Vector& v) const { return b_full.apply(v); }
  [[nodiscard]] double eta(const Vector& v) const { return acms.eta_of(v); }
  /// The component in D: v − η(v)ξ.
  [[nodiscard]] Vector horizontal_part(const Vector& v) const { return v - eta(v) * acms.xi(); }
  [[nodiscard]] const CurvatureTensor& curvature() const;
  /// dη(X, Y).
  [[nodiscard]] double d_eta_of(const Vector& x, const Vector& y) const { return x.dot(d_eta * y); }
};

/// g-unit probes; horizontal ones are uniform on the unit sphere of D.
std::vector<Vector> unit_probes(const LocalGeometry& geo, int count, std::uint64_t seed);
std::vector<Vector> horizontal_probes(const LocalGeometry& geo, int count, std::uint64_t seed);

/// Top-form coefficient of η∧(dη)ⁿ at every point, cross-checked with
/// σ_min(B). Passes iff both stay above tol.contact everywhere.
VerificationReport contact_form_check(const Chart& chart, const std::vector<Vector>& points,
                                      const Tolerances& tol = {});
VerificationReport contact_form_check(const LocalGeometry& geo, const Tolerances& tol = {});

/// |(∇_Xφ)X| on horizontal and on arbitrary unit X, and ½|(∇_Xφ)Y + (∇_Yφ)X|
/// on unit pairs.
VerificationReport check_nearly_cosymplectic(const LocalGeometry& geo, const ProbeConfig& probes = {},
                                             const Tolerances& tol = {});
VerificationReport check_nearly_cosymplectic(const Chart& chart, const Vector& point,
                                             const ProbeConfig& probes = {},
                                             const Tolerances& tol = {});

/// Norm of the form g(AX,Y) + g(AY,X), and the Reeb conditions η(ξ) = 1,
/// dη(·, ξ) = 0. Does not need an almost contact metric structure, so it
/// works in any dimension.
VerificationReport check_killing(const Chart& chart, const Vector& point, const Tolerances& tol = {});

/// dη(X,Y) = g(AX,Y) on the whole tangent space.
VerificationReport check_d_eta_equals_a(const LocalGeometry& geo, const Tolerances& tol = {});

/// dη(X,Y) = g(BX,Y) on D.
VerificationReport check_bridge(const LocalGeometry& geo, const Tolerances& tol = {});

/// Right side of the curvature formula for nearly cosymplectic structures
/// of pointwise constant φ-sectional curvature c, i.e. the predicted value
/// of 4g(R(W,X)Y,Z).
double endo_rhs(const LocalGeometry& geo, double c, const Vector& w, const Vector& x, const Vector& y,
                const Vector& z);

/// Max of |4g(R(W,X)Y,Z) − rhs| over random unit 4-tuples, and the residual
/// of its horizontal specialization 3c(g(Y,X)W − g(Y,W)X) = … over
/// horizontal triples. Throws PreconditionError unless the point is nearly
/// cosymplectic.
VerificationReport endo_residual(const LocalGeometry& geo, double c, const ProbeConfig& probes = {},
                                 const Tolerances& tol = {});

/// Horizontal specialization of the curvature formula, as a vector
/// identity; returns left minus right.
Vector endo_horizontal_difference(const LocalGeometry& geo, double c, const Vector& w, const Vector& x,
                                  const Vector& y);

/// g((∇_Xφ)Y, AZ) = η(Y)g(A²X, φZ) − η(X)g(A²Y, φZ) over random unit
/// triples. Throws PreconditionError unless the point is nearly
/// cosymplectic.
VerificationReport endo_identity_residual(const LocalGeometry& geo, const ProbeConfig& probes = {},
                                          const Tolerances& tol = {});

}  // namespace acmslab
