#pragma once

// The connection ∇̃ = ∇ + H with
//   H(U, V) = g(AU^H, V^H)ξ − η(V)AU^H + ½η(U)BV^H,
// so that H(X, ξ) = −AX, H(X, Y) = g(AX, Y)ξ, H(ξ, X) = ½BX, H(ξ, ξ) = 0
// for horizontal X, Y. U^H = U − η(U)ξ.

#include "acmslab/calculus.hpp"

#include <functional>
#include <optional>

namespace acmslab {

struct ModifiedConnectionData {
  LocalGeometry base;
  Tensor3 h;                            ///< H^k_ij = H(∂_i, ∂_j)^k
  Christoffel tilde_gamma;              ///< Γ + H
  std::optional<CurvatureTensor> tilde_r;  ///< R̃ by differentiating Γ̃ (mode 1)

  [[nodiscard]] Vector H(const Vector& u, const Vector& v) const { return h.contract(u, v); }
  /// (∇̃_Uφ)V = (∇_Uφ)V + H(U, φV) − φH(U, V).
  [[nodiscard]] Vector nabla_tilde_phi(const Vector& u, const Vector& v) const;
  [[nodiscard]] const CurvatureTensor& tilde_curvature() const;
};

/// H^k_ij from A, B, ξ, η at a point.
Tensor3 h_tensor(const LinearOp& a, const LinearOp& b_full, const Vector& xi, const Vector& eta,
                 const Metric& g);

/// Γ̃ = Γ + H at an arbitrary point of the chart.
Christoffel tilde_christoffel(const Chart& chart, const Vector& point, const Tolerances& tol = {});

/// R̃ by central differences of Γ̃ with step h and one Richardson step.
CurvatureTensor tilde_riemann(const Chart& chart, const Vector& point, double step = 1e-4,
                              const Tolerances& tol = {});

/// with_curvature also computes R and R̃ (mode 1).
ModifiedConnectionData modified_connection(const Chart& chart, const Vector& point, bool with_curvature,
                                           const Tolerances& tol = {});

/// H-table assertions and (∇̃_Xφ)Y = 0 on horizontal probes.
VerificationReport modified_connection_report(const ModifiedConnectionData& data,
                                              const ProbeConfig& probes = {}, const Tolerances& tol = {});

/// (R̃(X,Y)Z)^H = (R(X,Y)Z)^H + g(AY,Z)AX − g(AX,Z)AY + g(BX,Y)BZ (mode 2).
/// Throws PreconditionError for non-horizontal arguments.
Vector tilde_riemann_horizontal(const ModifiedConnectionData& data, const Vector& x, const Vector& y,
                                const Vector& z);

/// S(X,Y,Z) = R̃(X,Y)φZ − φR̃(X,Y)Z using mode 1. Throws PreconditionError
/// for non-horizontal arguments.
Vector s_tensor(const ModifiedConnectionData& data, const Vector& x, const Vector& y, const Vector& z);

/// Curvature operator (X, Y, Z) ↦ R(X,Y)Z, injectable into the right sides
/// below.
using CurvatureFn = std::function<Vector(const Vector&, const Vector&, const Vector&)>;

/// Left side 2g(BX,Y)((∇̃_ξφ)Z − BφZ)^H.
Vector gb_lhs(const ModifiedConnectionData& data, const Vector& x, const Vector& y, const Vector& z);
/// Right side (R(X,Y)φZ)^H − φ(R(X,Y)Z) + g(AY,φZ)AX − g(AX,φZ)AY
/// − g(AY,Z)φAX + g(AX,Z)φAY, with R supplied by the caller.
Vector gb_rhs(const LocalGeometry& geo, const CurvatureFn& r, const Vector& x, const Vector& y,
              const Vector& z);
/// The flat specialization g(AY,φZ)AX − g(AX,φZ)AY − g(AY,Z)φAX + g(AX,Z)φAY.
Vector w_rhs(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z);
/// R(X,Y)Z = c(g(Y,Z)X − g(X,Z)Y).
CurvatureFn constant_curvature(const Metric& g, double c);

/// S(X,Y,Z) = 2g(BX,Y)(∇̃_ξφ)Z over horizontal triples.
VerificationReport eq_r_residual(const ModifiedConnectionData& data, const ProbeConfig& probes = {},
                                 const Tolerances& tol = {});
/// Horizontal parts of R̃ from mode 1 and mode 2 agree.
VerificationReport tilde_mode_agreement(const ModifiedConnectionData& data, const ProbeConfig& probes = {},
                                        const Tolerances& tol = {});
/// Both sides of the g(B) identity over horizontal triples. Throws
/// PreconditionError unless Aφ + φA = 0 and horizontal η-parallelism hold.
VerificationReport gb_identity_residual(const ModifiedConnectionData& data, const ProbeConfig& probes = {},
                                        const Tolerances& tol = {});

}  // namespace acmslab
