#include "acmslab/lemma_dim.hpp"

#include "acmslab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace acmslab {

namespace {

void require_dim(const ComplexStructuredSpace& space, const LinearOp& a, const char* what) {
  if (a.dim() != space.dim()) {
    throw DimensionError(fmt::format("{}: operator has dimension {}, space {}", what, a.dim(),
                                     space.dim()));
  }
}

double scaled(double tol, const LinearOp& a) { return tol * (1.0 + max_abs(a.mat())); }

void require_anticommuting(const ComplexStructuredSpace& space, const LinearOp& a,
                           const Tolerances& tol, const char* what) {
  const double r = anticommutation_residual(space, a);
  if (r > scaled(tol.acms, a)) {
    throw PreconditionError(fmt::format("{}: AJ + JA = 0 violated (residual {:.3e})", what, r));
  }
}

void require_skew(const ComplexStructuredSpace& space, const LinearOp& a, const Tolerances& tol,
                  const char* what) {
  const double r = skewness_residual(space, a);
  if (r > scaled(tol.acms, a)) {
    throw PreconditionError(fmt::format("{}: A is not g-skew (residual {:.3e})", what, r));
  }
}

/// Maximum |g(u_i, u_j)| over i ≠ j for the normalized vectors.
double max_off_diagonal(const std::vector<Vector>& vs, const Metric& g) {
  std::vector<Vector> unit;
  unit.reserve(vs.size());
  for (const auto& v : vs) unit.push_back(v / g.norm(v));
  const Matrix gram = gram_matrix(unit, g);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(gram(i, j)));
    }
  }
  return worst;
}

}  // namespace

ComplexStructuredSpace::ComplexStructuredSpace(LinearOp j, Metric g, const Tolerances& tol)
    : j_(std::move(j)), g_(std::move(g)) {
  if (j_.dim() != g_.dim()) throw DimensionError("ComplexStructuredSpace: dimension mismatch");
  if (j_.dim() % 2 != 0) {
    throw PreconditionError(fmt::format("ComplexStructuredSpace: dimension {} is odd", j_.dim()));
  }
  const int n = j_.dim();
  const Matrix& jm = j_.mat();
  if (max_abs(jm * jm + Matrix::Identity(n, n)) > tol.acms) {
    throw PreconditionError("ComplexStructuredSpace: J^2 != -I");
  }
  if (max_abs(jm.transpose() * g_.gram() * jm - g_.gram()) > tol.acms * (1.0 + max_abs(g_.gram()))) {
    throw PreconditionError("ComplexStructuredSpace: J is not a g-isometry");
  }
}

ComplexStructuredSpace ComplexStructuredSpace::standard(int dim) {
  if (dim <= 0 || dim % 2 != 0) {
    throw PreconditionError(fmt::format("standard complex structure needs a positive even dimension, got {}", dim));
  }
  Matrix j = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; k += 2) {
    j(k + 1, k) = 1.0;
    j(k, k + 1) = -1.0;
  }
  return ComplexStructuredSpace(LinearOp(j), Metric::euclidean(dim));
}

double anticommutation_residual(const ComplexStructuredSpace& space, const LinearOp& a) {
  require_dim(space, a, "anticommutation_residual");
  return max_abs(anticommutator(a, space.j()).mat());
}

double skewness_residual(const ComplexStructuredSpace& space, const LinearOp& a) {
  require_dim(space, a, "skewness_residual");
  return max_abs((a + adjoint(a, space.g())).mat());
}

double sigma_min(const ComplexStructuredSpace& space, const LinearOp& a) {
  require_dim(space, a, "sigma_min");
  return singular_values(a, space.g())(0);
}

double triple_gram_determinant(const ComplexStructuredSpace& space, const LinearOp& a,
                               const Vector& y) {
  const Metric& g = space.g();
  std::vector<Vector> triple = {y, space.j().apply(y), a.apply(y)};
  for (auto& v : triple) {
    const double n = g.norm(v);
    if (n == 0.0) return 0.0;
    v /= n;
  }
  return gram_matrix(triple, g).determinant();
}

Vector find_generic_vector(const ComplexStructuredSpace& space, const LinearOp& a,
                           const Tolerances& tol, std::uint64_t fallback_seed) {
  require_dim(space, a, "find_generic_vector");
  if (max_abs(a.mat()) <= tol.acms) {
    throw PreconditionError("find_generic_vector: A must be nonzero");
  }
  require_anticommuting(space, a, tol, "find_generic_vector");

  const int n = space.dim();
  auto good = [&](const Vector& y) { return triple_gram_determinant(space, a, y) > tol.rank; };

  for (int i = 0; i < n; ++i) {
    const Vector y = Vector::Unit(n, i);
    if (good(y)) return y;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector y = Vector::Unit(n, i) + Vector::Unit(n, j);
      if (good(y)) return y;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector y = Vector::Unit(n, i) + space.j().apply(Vector::Unit(n, j));
      if (good(y)) return y;
    }
  }
  Rng rng(fallback_seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Vector y = gaussian_vector(rng, n);
    if (good(y)) return y;
  }
  throw UnreachableError("find_generic_vector: search exhausted without an independent triple");
}

Vector find_orthogonal_witness(const ComplexStructuredSpace& space, const LinearOp& a,
                               const Vector& y, const Tolerances& tol) {
  require_dim(space, a, "find_orthogonal_witness");
  const Metric& g = space.g();
  const Vector jy = space.j().apply(y);
  const Vector ay = a.apply(y);
  if (triple_gram_determinant(space, a, y) <= tol.rank) {
    throw PreconditionError("find_orthogonal_witness: {Y, JY, AY} is not independent");
  }
  const std::vector<Vector> triple = {y, jy, ay};
  const auto span = pivoted_gram_schmidt(triple, g, 3, 0.0);
  const Vector jay = space.j().apply(ay);
  Vector z = project_out(jay, span, g);
  const double zn = g.norm(z);
  if (zn == 0.0) {
    throw UnreachableError("find_orthogonal_witness: JAY lies in span{Y, JY, AY}");
  }
  z /= zn;
  const double pairing = std::abs(g.inner(z, jay));
  if (pairing <= tol.witness) {
    throw UnreachableError(
        fmt::format("find_orthogonal_witness: |g(Z, JAY)| = {:.3e} below threshold", pairing));
  }
  return z;
}

std::vector<Quadruple> quadruple_decomposition(const ComplexStructuredSpace& space,
                                               const LinearOp& a, const Tolerances& tol) {
  require_dim(space, a, "quadruple_decomposition");
  require_skew(space, a, tol, "quadruple_decomposition");
  require_anticommuting(space, a, tol, "quadruple_decomposition");
  const double smin = sigma_min(space, a);
  if (smin <= tol.sing) {
    throw PreconditionError(
        fmt::format("quadruple_decomposition: A is singular (sigma_min {:.3e})", smin));
  }
  const int n = space.dim();
  if (n % 4 != 0) {
    throw PreconditionError(fmt::format(
        "quadruple_decomposition: dim {} is not divisible by 4, so a skew nonsingular A "
        "anticommuting with J cannot exist",
        n));
  }

  const Metric& g = space.g();
  const LinearOp& j = space.j();

  // Columns of q: g-orthonormal basis of the not yet decomposed subspace.
  std::vector<Vector> q;
  for (int i = 0; i < n; ++i) q.push_back(Vector::Unit(n, i));
  q = pivoted_gram_schmidt(q, g, n, 0.0);

  std::vector<Quadruple> out;
  while (!q.empty()) {
    // Right singular vectors of A on the remaining subspace are eigenvectors
    // of −A² computed without squaring the condition number.
    const Matrix qm = from_columns(q, n);
    const Matrix restricted = qm.transpose() * g.gram() * a.mat() * qm;
    Eigen::JacobiSVD<Matrix> svd(restricted, Eigen::ComputeFullV);
    const Eigen::Index last = svd.singularValues().size() - 1;
    const Vector x = qm * svd.matrixV().col(last);
    const double s = svd.singularValues()(last);
    Quadruple quad{x, j.apply(x), a.apply(x), j.apply(a.apply(x)), -s * s};
    out.push_back(quad);

    const auto used = pivoted_gram_schmidt(quad.vectors(), g, 4, 0.0);
    if (used.size() != 4) {
      throw UnreachableError("quadruple_decomposition: quadruple is not independent");
    }
    std::vector<Vector> rest;
    rest.reserve(q.size());
    for (const auto& v : q) rest.push_back(project_out(v, used, g));
    const int remaining = static_cast<int>(q.size()) - 4;
    q = pivoted_gram_schmidt(rest, g, remaining, 0.0);
    if (static_cast<int>(q.size()) != remaining) {
      throw UnreachableError("quadruple_decomposition: deflation lost rank");
    }
  }
  return out;
}

VerificationReport check_mod4(const ComplexStructuredSpace& space, const LinearOp& a,
                              const Tolerances& tol) {
  require_dim(space, a, "check_mod4");
  require_anticommuting(space, a, tol, "check_mod4");
  require_skew(space, a, tol, "check_mod4");

  VerificationReport r;
  const int n = space.dim();
  const double smin = sigma_min(space, a);
  if (n % 4 == 0) {
    if (smin <= tol.sing) {
      r.add("dim = 0 mod 4", 0.0, 0.5, Bound::below,
            fmt::format("A singular (sigma_min {:.3e}); decomposition not required", smin));
      return r;
    }
    const auto quads = quadruple_decomposition(space, a, tol);
    std::vector<Vector> all;
    for (const auto& qd : quads) {
      for (auto& v : qd.vectors()) all.push_back(v);
    }
    r.add("quadruple count = dim/4", std::abs(static_cast<double>(quads.size()) - n / 4.0), 0.5,
          Bound::below, fmt::format("{} quadruples", quads.size()));
    r.add("quadruples pairwise orthogonal", max_off_diagonal(all, space.g()), tol.quad);
    return r;
  }
  std::string detail = fmt::format("dim {} != 0 mod 4: A must be singular", n);
  if (n == 2) detail += "; degenerate dimension, a skew A anticommuting with J is zero";
  r.add("A singular (dim != 0 mod 4)", smin, tol.sing * tol.sing_slack, Bound::below, detail);
  return r;
}

ConstrainedOperatorSampler::ConstrainedOperatorSampler(const ComplexStructuredSpace& space,
                                                       bool skew)
    : space_(space), skew_(skew) {}

int ConstrainedOperatorSampler::freedom() const {
  // The sampler applies the idempotent map Q∘S, so the freedom is its trace:
  // tr(M ↦ JMJ) = tr(J)², tr(M ↦ M*) = n, tr(M ↦ JM*J) = n.
  const double n = space_.dim();
  const double tj = space_.j().mat().trace();
  const double t = skew_ ? (n * n - 2 * n + tj * tj) / 4 : (n * n + tj * tj) / 2;
  return static_cast<int>(std::lround(t));
}

LinearOp ConstrainedOperatorSampler::project(const Matrix& m) const {
  const Matrix& j = space_.j().mat();
  Matrix s = m;
  if (skew_) s = 0.5 * (m - adjoint(LinearOp(m), space_.g()).mat());
  return LinearOp(0.5 * (s + j * s * j));
}

LinearOp ConstrainedOperatorSampler::sample(Rng& rng) const {
  const int n = space_.dim();
  Matrix m(n, n);
  for (int c = 0; c < n; ++c) m.col(c) = uniform_vector(rng, n, -1.0, 1.0);
  return project(m);
}

}  // namespace acmslab
