#pragma once

// An almost contact metric structure (φ, ξ, η, g) at a single point and the
// pointwise conditions checked on it.

#include "acmslab/linalg.hpp"
#include "acmslab/report.hpp"
#include "acmslab/tolerances.hpp"

#include <vector>

namespace acmslab {

/// (∇_i φ)^j_k at a point, i.e. the components of (∇_X φ)Y.
class NablaPhi {
 public:
  NablaPhi() = default;
  explicit NablaPhi(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  [[nodiscard]] int dim() const { return dim_; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  [[nodiscard]] double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  /// (∇_X φ)Y.
  [[nodiscard]] Vector apply(const Vector& x, const Vector& y) const;
  /// The operator (∇_X φ).
  [[nodiscard]] Matrix along(const Vector& x) const;
  [[nodiscard]] double max_abs() const;

 private:
  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

/// The tuple (φ, ξ, η, g) at a point. Construction checks shapes only; the
/// axioms are checked by validate_acms.
class AcmsPoint {
 public:
  /// Throws DimensionError on inconsistent shapes or even dimension.
  AcmsPoint(LinearOp phi, Vector xi, Vector eta, Metric g);

  [[nodiscard]] int dim() const { return phi_.dim(); }
  /// n with dim = 2n + 1.
  [[nodiscard]] int half_dim() const { return (dim() - 1) / 2; }
  [[nodiscard]] const LinearOp& phi() const { return phi_; }
  [[nodiscard]] const Vector& xi() const { return xi_; }
  [[nodiscard]] const Vector& eta() const { return eta_; }
  [[nodiscard]] const Metric& g() const { return g_; }

  [[nodiscard]] double eta_of(const Vector& v) const { return eta_.dot(v); }
  /// g-orthogonal projection onto D = ker η, I − ξ⊗η.
  [[nodiscard]] Matrix horizontal_projector() const;

 private:
  LinearOp phi_;
  Vector xi_;
  Vector eta_;
  Metric g_;
};

/// A g-orthonormal basis of D_p = ker η, stored as the columns of a
/// dim × 2n matrix.
class HorizontalSubspace {
 public:
  HorizontalSubspace(Matrix basis, Metric g);

  [[nodiscard]] const Matrix& basis() const { return basis_; }
  [[nodiscard]] int rank() const { return static_cast<int>(basis_.cols()); }
  [[nodiscard]] Vector vector(int a) const { return basis_.col(a); }
  /// Matrix of the horizontal part of op on D in this basis: g(e_a, op e_b).
  [[nodiscard]] Matrix restrict(const LinearOp& op) const;
  /// Extends a 2n×2n operator on D to the tangent space, killing ξ.
  [[nodiscard]] LinearOp embed(const Matrix& small) const;
  /// Tangent vector with the given coordinates in this basis.
  [[nodiscard]] Vector from_coords(const Vector& coords) const { return basis_ * coords; }

 private:
  Matrix basis_;
  Metric g_;
};

/// One check per axiom: φ² = −I + η⊗ξ, η(ξ) = 1, metric compatibility,
/// η = g(·, ξ), and the derived φξ = 0, η∘φ = 0, rank φ = 2n. Residuals are
/// g-operator norms.
VerificationReport validate_acms(const AcmsPoint& p, const Tolerances& tol = {});

/// Projects the coordinate frame onto ker η and orthonormalizes with pivoted
/// Gram–Schmidt. Throws PreconditionError if ker η does not have rank 2n.
HorizontalSubspace horizontal_basis(const AcmsPoint& p, const Tolerances& tol = {});

/// Skew part of A restricted to D, as a 2n×2n matrix in the horizontal basis.
LinearOp b_operator(const LinearOp& a, const AcmsPoint& p, const HorizontalSubspace& d);
LinearOp b_operator(const LinearOp& a, const AcmsPoint& p);

/// Residual of φA + Aφ.
VerificationReport check_star_condition(const LinearOp& a, const AcmsPoint& p,
                                        const Tolerances& tol = {});

struct ContactVerdict {
  bool contact;
  double sigma_min;
};

/// dη|_D nondegenerate iff B invertible. B in an orthonormal basis of D.
ContactVerdict is_contact_at_point(const LinearOp& b, const Tolerances& tol = {});

/// Max over horizontal basis triples of |g((∇_X φ)Y, Z)|.
VerificationReport check_eta_parallel(const NablaPhi& nabla_phi, const AcmsPoint& p,
                                      const Tolerances& tol = {});

/// Residual of Bφ + φB on D; B given in the horizontal basis.
double b_phi_anticommutator_residual(const LinearOp& b, const AcmsPoint& p,
                                     const HorizontalSubspace& d);

/// When both Aφ + φA = 0 and contactness hold, the dimension must be
/// 1 mod 4. Reports the dimension gate; passes vacuously otherwise.
VerificationReport dimension_gate(const LinearOp& a, const AcmsPoint& p, const Tolerances& tol = {});

}  // namespace acmslab
