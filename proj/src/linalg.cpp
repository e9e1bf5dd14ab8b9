#include "acmslab/linalg.hpp"

#include "acmslab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace acmslab {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

}  // namespace

Metric::Metric(Matrix gram, double pd_tolerance) : gram_(std::move(gram)) {
  require_square(gram_, "Metric");
  const double scale = 1.0 + max_abs(gram_);
  if (max_abs(gram_ - gram_.transpose()) > 1e-12 * scale) {
    throw PreconditionError("Metric: Gram matrix is not symmetric");
  }
  gram_ = 0.5 * (gram_ + gram_.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram_, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues()(0);
  if (!(lambda_min > pd_tolerance)) {
    throw PreconditionError("Metric: Gram matrix is not positive definite (smallest eigenvalue " +
                            std::to_string(lambda_min) + ")");
  }
  Eigen::LLT<Matrix> llt(gram_);
  chol_ = llt.matrixL();
  chol_inv_ = chol_.triangularView<Eigen::Lower>().solve(Matrix::Identity(dim(), dim()));
  inverse_ = chol_inv_.transpose() * chol_inv_;
  inverse_ = 0.5 * (inverse_ + inverse_.transpose());
}

Metric Metric::euclidean(int dim) { return Metric(Matrix::Identity(dim, dim)); }

double Metric::inner(const Vector& x, const Vector& y) const {
  require_same_dim(static_cast<int>(x.size()), dim(), "Metric::inner");
  require_same_dim(static_cast<int>(y.size()), dim(), "Metric::inner");
  return x.dot(gram_ * y);
}

double Metric::norm(const Vector& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

Matrix Metric::to_orthonormal(const Matrix& op) const {
  // Frame E = L⁻ᵀ; components of op in E are E⁻¹ op E = Lᵀ op L⁻ᵀ.
  return chol_.transpose() * op * chol_inv_.transpose();
}

Matrix Metric::form_to_orthonormal(const Matrix& form) const {
  return chol_inv_ * form * chol_inv_.transpose();
}

LinearOp::LinearOp(Matrix mat) : mat_(std::move(mat)) { require_square(mat_, "LinearOp"); }

Vector LinearOp::apply(const Vector& v) const {
  require_same_dim(static_cast<int>(v.size()), dim(), "LinearOp::apply");
  return mat_ * v;
}

LinearOp operator*(const LinearOp& a, const LinearOp& b) {
  require_same_dim(a.dim(), b.dim(), "LinearOp product");
  return LinearOp(a.mat_ * b.mat_);
}

LinearOp operator+(const LinearOp& a, const LinearOp& b) {
  require_same_dim(a.dim(), b.dim(), "LinearOp sum");
  return LinearOp(a.mat_ + b.mat_);
}

LinearOp operator-(const LinearOp& a, const LinearOp& b) {
  require_same_dim(a.dim(), b.dim(), "LinearOp difference");
  return LinearOp(a.mat_ - b.mat_);
}

LinearOp operator*(double s, const LinearOp& a) { return LinearOp(s * a.mat_); }

LinearOp adjoint(const LinearOp& op, const Metric& g) {
  require_same_dim(op.dim(), g.dim(), "adjoint");
  return LinearOp(g.inverse() * op.mat().transpose() * g.gram());
}

LinearOp skew_part(const LinearOp& op, const Metric& g) {
  return 0.5 * (op - adjoint(op, g));
}

LinearOp anticommutator(const LinearOp& a, const LinearOp& b) {
  require_same_dim(a.dim(), b.dim(), "anticommutator");
  return LinearOp(a.mat() * b.mat() + b.mat() * a.mat());
}

std::vector<EigenPair> symmetric_eigen(const LinearOp& op, const Metric& g, double sym_tolerance) {
  require_same_dim(op.dim(), g.dim(), "symmetric_eigen");
  // op is g-self-adjoint iff g·op is a symmetric matrix.
  const Matrix form = g.gram() * op.mat();
  const double asym = max_abs(form - form.transpose());
  if (asym > sym_tolerance * (1.0 + max_abs(form))) {
    throw PreconditionError("symmetric_eigen: operator is not self-adjoint (asymmetry " +
                            std::to_string(asym) + ")");
  }
  // Orthonormal-frame eigenproblem, then map eigenvectors back.
  const Matrix sym = g.form_to_orthonormal(0.5 * (form + form.transpose()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sym + sym.transpose()));
  const Matrix back = g.cholesky().transpose().triangularView<Eigen::Upper>().solve(
      es.eigenvectors());

  std::vector<EigenPair> pairs;
  pairs.reserve(op.dim());
  for (int i = 0; i < op.dim(); ++i) {
    pairs.push_back({es.eigenvalues()(i), back.col(i)});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
  return pairs;
}

Vector project_out(const Vector& v, std::span<const Vector> orthonormal, const Metric& g) {
  Vector r = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : orthonormal) {
      r -= g.inner(q, r) * q;
    }
  }
  return r;
}

std::vector<Vector> pivoted_gram_schmidt(std::span<const Vector> candidates, const Metric& g,
                                         int count, double rank_tolerance) {
  std::vector<Vector> residual(candidates.begin(), candidates.end());
  double scale = 0.0;
  for (const auto& c : residual) {
    require_same_dim(static_cast<int>(c.size()), g.dim(), "pivoted_gram_schmidt");
    scale = std::max(scale, g.norm(c));
  }
  std::vector<Vector> basis;
  std::vector<bool> used(residual.size(), false);
  if (scale == 0.0) return basis;

  while (static_cast<int>(basis.size()) < count) {
    int best = -1;
    double best_norm = 0.0;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (used[i]) continue;
      const double n = g.norm(residual[i]);
      if (n > best_norm) {
        best_norm = n;
        best = static_cast<int>(i);
      }
    }
    if (best < 0 || best_norm <= rank_tolerance * scale) break;
    used[best] = true;
    // Re-orthogonalize against the full basis before normalizing.
    Vector q = project_out(residual[best], basis, g);
    q /= g.norm(q);
    basis.push_back(q);
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (!used[i]) residual[i] -= g.inner(q, residual[i]) * q;
    }
  }
  return basis;
}

std::vector<Vector> orthonormal_complement(std::span<const Vector> vectors, const Metric& g,
                                           double rank_tolerance) {
  const int n = g.dim();
  const int k = static_cast<int>(vectors.size());
  if (k > n) {
    throw PreconditionError("orthonormal_complement: more vectors than dimensions");
  }
  const auto own = pivoted_gram_schmidt(vectors, g, k, rank_tolerance);
  if (static_cast<int>(own.size()) < k) {
    throw PreconditionError("orthonormal_complement: input vectors are rank deficient");
  }
  std::vector<Vector> candidates;
  candidates.reserve(n);
  for (int i = 0; i < n; ++i) {
    candidates.push_back(project_out(Vector::Unit(n, i), own, g));
  }
  auto complement = pivoted_gram_schmidt(candidates, g, n - k, 1e-12);
  if (static_cast<int>(complement.size()) != n - k) {
    throw UnreachableError("orthonormal_complement: could not complete the basis");
  }
  for (auto& v : complement) {
    v = project_out(v, own, g);
    v /= g.norm(v);
  }
  return complement;
}

Matrix gram_matrix(std::span<const Vector> vectors, const Metric& g) {
  const auto k = static_cast<Eigen::Index>(vectors.size());
  Matrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = g.inner(vectors[i], vectors[j]);
  }
  return m;
}

double operator_norm(const Matrix& op, const Metric& g) {
  require_square(op, "operator_norm");
  require_same_dim(static_cast<int>(op.rows()), g.dim(), "operator_norm");
  Eigen::JacobiSVD<Matrix> svd(g.to_orthonormal(op));
  return svd.singularValues()(0);
}

double form_norm(const Matrix& form, const Metric& g) {
  require_square(form, "form_norm");
  require_same_dim(static_cast<int>(form.rows()), g.dim(), "form_norm");
  Eigen::JacobiSVD<Matrix> svd(g.form_to_orthonormal(form));
  return svd.singularValues()(0);
}

double covector_norm(const Vector& w, const Metric& g) {
  require_same_dim(static_cast<int>(w.size()), g.dim(), "covector_norm");
  return std::sqrt(std::max(0.0, w.dot(g.inverse() * w)));
}

Vector singular_values(const LinearOp& op, const Metric& g) {
  require_same_dim(op.dim(), g.dim(), "singular_values");
  Eigen::JacobiSVD<Matrix> svd(g.to_orthonormal(op.mat()));
  Vector s = svd.singularValues();
  std::sort(s.begin(), s.end());
  return s;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<Vector> columns(const Matrix& m) {
  std::vector<Vector> out;
  out.reserve(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.emplace_back(m.col(j));
  return out;
}

Matrix from_columns(std::span<const Vector> vectors, int rows) {
  Matrix m(rows, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require_same_dim(static_cast<int>(vectors[j].size()), rows, "from_columns");
    m.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return m;
}

}  // namespace acmslab
