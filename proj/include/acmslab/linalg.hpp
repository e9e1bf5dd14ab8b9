#pragma once

// Finite-dimensional linear algebra relative to a (not necessarily
// orthonormal) frame. Every operator is stored by its frame components and
// the metric enters only through its Gram matrix.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace acmslab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Positive-definite metric given by its Gram matrix in the working frame.
class Metric {
 public:
  static constexpr double kDefaultPdTolerance = 1e-10;

  /// Throws DimensionError if gram is not square, PreconditionError if it is
  /// not symmetric or its smallest eigenvalue is not above pd_tolerance.
  explicit Metric(Matrix gram, double pd_tolerance = kDefaultPdTolerance);

  static Metric euclidean(int dim);

  [[nodiscard]] int dim() const { return static_cast<int>(gram_.rows()); }
  [[nodiscard]] const Matrix& gram() const { return gram_; }
  [[nodiscard]] const Matrix& inverse() const { return inverse_; }

  /// Lower-triangular L with gram = L Lᵀ. Columns of L⁻ᵀ form a
  /// g-orthonormal frame.
  [[nodiscard]] const Matrix& cholesky() const { return chol_; }

  [[nodiscard]] double inner(const Vector& x, const Vector& y) const;
  [[nodiscard]] double norm(const Vector& x) const;
  /// Covector g(x, ·).
  [[nodiscard]] Vector lower(const Vector& x) const { return gram_ * x; }
  /// Vector dual to the covector w.
  [[nodiscard]] Vector raise(const Vector& w) const { return inverse_ * w; }

  /// Matrix of an operator in the g-orthonormal frame L⁻ᵀ.
  [[nodiscard]] Matrix to_orthonormal(const Matrix& op) const;
  /// Matrix of a bilinear form in the g-orthonormal frame.
  [[nodiscard]] Matrix form_to_orthonormal(const Matrix& form) const;

 private:
  Matrix gram_;
  Matrix inverse_;
  Matrix chol_;
  Matrix chol_inv_;
};

/// Endomorphism of the tangent space, stored as frame components.
class LinearOp {
 public:
  LinearOp() = default;
  explicit LinearOp(Matrix mat);

  static LinearOp identity(int dim) { return LinearOp(Matrix::Identity(dim, dim)); }
  static LinearOp zero(int dim) { return LinearOp(Matrix::Zero(dim, dim)); }

  [[nodiscard]] int dim() const { return static_cast<int>(mat_.rows()); }
  [[nodiscard]] const Matrix& mat() const { return mat_; }
  [[nodiscard]] Vector apply(const Vector& v) const;

  friend LinearOp operator*(const LinearOp& a, const LinearOp& b);
  friend LinearOp operator+(const LinearOp& a, const LinearOp& b);
  friend LinearOp operator-(const LinearOp& a, const LinearOp& b);
  friend LinearOp operator*(double s, const LinearOp& a);
  friend LinearOp operator-(const LinearOp& a) { return LinearOp(-a.mat_); }

 private:
  Matrix mat_;
};

struct EigenPair {
  double value;
  Vector vector;
};

/// A* with g(Ax, y) = g(x, A*y), i.e. gram⁻¹ · matᵀ · gram.
LinearOp adjoint(const LinearOp& op, const Metric& g);

/// ½(op − op*), g-skew.
LinearOp skew_part(const LinearOp& op, const Metric& g);

/// a·b + b·a.
LinearOp anticommutator(const LinearOp& a, const LinearOp& b);

/// Spectral decomposition of a g-self-adjoint operator. Eigenvectors are
/// g-orthonormal; eigenvalues ascend, ties kept in solver order.
/// Throws PreconditionError if op is not self-adjoint within sym_tolerance
/// (relative to the size of g·op).
std::vector<EigenPair> symmetric_eigen(const LinearOp& op, const Metric& g,
                                       double sym_tolerance = 1e-9);

/// g-orthonormal basis of the orthogonal complement of span(vectors).
/// Throws PreconditionError when the input is rank deficient.
std::vector<Vector> orthonormal_complement(std::span<const Vector> vectors, const Metric& g,
                                           double rank_tolerance = 1e-8);

/// Twice-iterated modified Gram–Schmidt. Picks, at each step, the remaining
/// candidate of largest residual norm and stops after `count` vectors or
/// when that norm falls below rank_tolerance (relative to the largest
/// candidate norm). Returns the orthonormal vectors found.
std::vector<Vector> pivoted_gram_schmidt(std::span<const Vector> candidates, const Metric& g,
                                         int count, double rank_tolerance = 1e-8);

/// Removes from v its g-orthogonal projection on the (orthonormal) basis,
/// twice.
Vector project_out(const Vector& v, std::span<const Vector> orthonormal, const Metric& g);

/// Gram matrix g(v_i, v_j).
Matrix gram_matrix(std::span<const Vector> vectors, const Metric& g);

/// Induced operator 2-norm with respect to g.
double operator_norm(const Matrix& op, const Metric& g);
/// Operator 2-norm of a bilinear form with respect to g.
double form_norm(const Matrix& form, const Metric& g);
/// Dual norm of a covector.
double covector_norm(const Vector& w, const Metric& g);

/// Singular values in the g-orthonormal frame, ascending.
Vector singular_values(const LinearOp& op, const Metric& g);

/// Largest absolute entry.
double max_abs(const Matrix& m);

/// Copy of the columns of m.
std::vector<Vector> columns(const Matrix& m);
/// Matrix whose columns are the given vectors.
Matrix from_columns(std::span<const Vector> vectors, int rows);

}  // namespace acmslab
