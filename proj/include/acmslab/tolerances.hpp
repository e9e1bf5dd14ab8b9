#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace acmslab {

/// Every numeric gate used by the checks. Keys are the names accepted by
/// `--tol key=value`.
struct Tolerances {
  double pd = 1e-10;          ///< metric positive-definiteness
  double symmetric = 1e-9;    ///< self-adjointness gate of symmetric_eigen
  double acms = 1e-9;         ///< structure axioms, closed-form inputs
  double acms_fd = 1e-5;      ///< structure identities on derivative-derived inputs
  double contact = 1e-6;      ///< σ_min(B) and η∧(dη)ⁿ coefficient
  double rank = 1e-8;         ///< Gram determinant / rank decisions
  double quad = 1e-8;         ///< quadruple orthogonality
  double sing = 1e-8;         ///< singularity of A
  double sing_slack = 1.0;    ///< κ in the singular certification σ_min < sing·κ
  double witness = 1e-8;      ///< |g(Z, JAY)|
  double star = 1e-5;         ///< condition Aφ + φA = 0
  double eta_parallel = 1e-4; ///< horizontal g((∇_Xφ)Y, Z) = 0
  double nearly = 1e-5;       ///< (∇_Xφ)X = 0
  double killing = 1e-5;      ///< ξ Killing and Reeb
  double bridge = 1e-5;       ///< dη(X,Y) = g(BX,Y), symbolic mode
  double bridge_fd = 1e-4;    ///< same, finite-difference mode
  double tilde_phi = 1e-4;    ///< (∇̃_Xφ)Y = 0 on horizontal X, Y
  double tilde = 1e-3;        ///< R̃, S-tensor, g(B) and curvature-formula residuals
  double curvature = 1e-3;    ///< horizontal sectional curvature spread / c ≠ 0 decisions
  double curv_symmetry = 1e-6;    ///< Riemann symmetries, symbolic
  double curv_symmetry_fd = 1e-3; ///< Riemann symmetries, finite differences
  double dual_mode = 1e-5;    ///< symbolic vs finite-difference agreement (relative)
  double sigma_a = 0.5;       ///< lower bound reported for σ_min(A|_D) on the S⁵ gate

  /// Throws InputError for unknown keys or non-positive values.
  void set(std::string_view key, double value);
  [[nodiscard]] double get(std::string_view key) const;
  static const std::vector<std::string>& keys();
};

}  // namespace acmslab
