#pragma once

// Constructive form of the anticommuting-operator lemma on a Hermitian space
// (D, J, g):
//  1. a nonzero A with AJ + JA = 0 admits Y with {Y, JY, AY} independent and
//     Z ⊥ span{Y, JY, AY} with g(Z, JAY) ≠ 0;
//  2. if A is also skew and nonsingular, D splits into g-orthogonal
//     quadruples {X, JX, AX, JAX}, so dim D ≡ 0 (mod 4).

#include "acmslab/linalg.hpp"
#include "acmslab/random.hpp"
#include "acmslab/report.hpp"
#include "acmslab/tolerances.hpp"

#include <optional>
#include <vector>

namespace acmslab {

/// Even-dimensional space with a g-orthogonal complex structure J.
class ComplexStructuredSpace {
 public:
  /// Throws PreconditionError unless J² = −I and J is a g-isometry within
  /// tol.acms.
  ComplexStructuredSpace(LinearOp j, Metric g, const Tolerances& tol = {});

  /// J e_{2k} = e_{2k+1}, J e_{2k+1} = −e_{2k}, Euclidean metric.
  static ComplexStructuredSpace standard(int dim);

  [[nodiscard]] int dim() const { return j_.dim(); }
  [[nodiscard]] const LinearOp& j() const { return j_; }
  [[nodiscard]] const Metric& g() const { return g_; }

 private:
  LinearOp j_;
  Metric g_;
};

struct Quadruple {
  Vector x, jx, ax, jax;
  double eigenvalue;  ///< shared A²-eigenvalue

  [[nodiscard]] std::vector<Vector> vectors() const { return {x, jx, ax, jax}; }
};

/// Gram determinant of the normalized triple {Y, JY, AY}; 0 if any of them
/// vanishes.
double triple_gram_determinant(const ComplexStructuredSpace& space, const LinearOp& a,
                               const Vector& y);

/// Y with {Y, JY, AY} independent. Scans e_i, then e_i + e_j, then
/// e_i + J e_j, then falls back to seeded random sampling.
/// Throws PreconditionError for A = 0 or AJ + JA ≠ 0.
Vector find_generic_vector(const ComplexStructuredSpace& space, const LinearOp& a,
                           const Tolerances& tol = {}, std::uint64_t fallback_seed = 0);

/// Unit Z: the component of JAY orthogonal to span{Y, JY, AY}, normalized.
Vector find_orthogonal_witness(const ComplexStructuredSpace& space, const LinearOp& a,
                               const Vector& y, const Tolerances& tol = {});

/// Requires A g-skew, AJ + JA = 0, A nonsingular and dim ≡ 0 (mod 4).
/// Takes the smallest right singular vector of A on the remaining subspace
/// (an eigenvector of A²), emits its quadruple, deflates, and repeats.
std::vector<Quadruple> quadruple_decomposition(const ComplexStructuredSpace& space,
                                               const LinearOp& a, const Tolerances& tol = {});

/// Mod-4 certification. dim ≡ 0 (mod 4) with nonsingular A: decomposes into
/// quadruples. dim ≢ 0 (mod 4): certifies σ_min(A) < sing·sing_slack.
VerificationReport check_mod4(const ComplexStructuredSpace& space, const LinearOp& a,
                              const Tolerances& tol = {});

/// Seeded sampler over the linear space of operators with AJ + JA = 0 (and
/// A* = −A when skew is requested). A random matrix M with entries uniform on
/// [−1, 1] is mapped by the projection M ↦ ½(S + JSJ), S = ½(M − M*) or M.
class ConstrainedOperatorSampler {
 public:
  ConstrainedOperatorSampler(const ComplexStructuredSpace& space, bool skew);
  /// Dimension of the constrained space.
  [[nodiscard]] int freedom() const;
  /// The projection onto the constrained space.
  [[nodiscard]] LinearOp project(const Matrix& m) const;
  [[nodiscard]] LinearOp sample(Rng& rng) const;

 private:
  ComplexStructuredSpace space_;
  bool skew_;
};

/// Residuals used to vet generated operators.
double anticommutation_residual(const ComplexStructuredSpace& space, const LinearOp& a);
double skewness_residual(const ComplexStructuredSpace& space, const LinearOp& a);
double sigma_min(const ComplexStructuredSpace& space, const LinearOp& a);

}  // namespace acmslab
