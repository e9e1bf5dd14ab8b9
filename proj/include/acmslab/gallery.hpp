#pragma once

// Structures with closed-form ingredients.
//
// Imaginary octonion units e1..e7 multiply by the oriented triples
//   (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5),
// e_i e_j = e_k cyclically within each triple and e_j e_i = −e_k. The cross
// product on ℝ⁷ is the bilinear extension.

#include "acmslab/chart.hpp"
#include "acmslab/linalg.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace acmslab::gallery {

struct CayleyTable {
  static constexpr std::array<std::array<int, 3>, 7> triples{{
      {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}}};

  /// e_i × e_j = sign · e_k for 0-based i ≠ j; sign is ±1.
  struct Product {
    int index;
    int sign;
  };
  static Product product(int i, int j);
};

Vector octonion_cross(const Vector& x, const Vector& y);

/// The matrix of v ↦ p × v on ℝ⁷. It preserves T_pS⁶ = p⊥, where it is the
/// nearly Kähler J_p. Throws PreconditionError unless |p| = 1 within 1e-10.
LinearOp nearly_kahler_J(const Vector& p);

/// S⁵ = S⁶ ∩ {x7 = 0} in graph coordinates over the hemisphere x6 > 0:
/// p = (x1, …, x5, sqrt(1 − |x|²), 0), φ the tangential part of J, ξ = −Jν
/// with ν = e7, η = g(·, ξ), g round. Sample box ±0.4.
std::string induced_s5_text(DerivativeSettings mode = {});
Chart induced_s5_structure(DerivativeSettings mode = {});

/// ℝ⁵ with coordinates (x1, x2, y1, y2, z) = (x1, …, x5):
/// η = ½(dz − y1 dx1 − y2 dx2), ξ = 2∂z, g = η⊗η + ¼Σ(dxᵢ² + dyᵢ²),
/// φ∂xᵢ = −∂yᵢ, φ∂yᵢ = ∂xᵢ + yᵢ∂z. Sample box ±1.
std::string sasakian_r5_text(DerivativeSettings mode = {});
Chart sasakian_r5(DerivativeSettings mode = {});

/// Flat ℝ⁴ × ℝ with η = dz, ξ = ∂z, φ∂xᵢ = ∂yᵢ, φ∂yᵢ = −∂xᵢ. Sample box ±1.
std::string cosymplectic_r5_text(DerivativeSettings mode = {});
Chart cosymplectic_r5(DerivativeSettings mode = {});

/// "s5", "sasakian_r5", "cosymplectic_r5".
const std::vector<std::string>& names();
/// Throws InputError for unknown names.
Chart by_name(std::string_view name, DerivativeSettings mode = {});

}  // namespace acmslab::gallery
