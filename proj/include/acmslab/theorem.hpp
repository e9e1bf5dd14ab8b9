#pragma once

// Sampled consistency check of the dimension theorem: under Aφ + φA = 0,
// horizontal η-parallelism of φ and contactness, constant horizontal
// sectional curvature c forces dim = 5, A|_D is invertible iff c ≠ 0, and a
// nearly cosymplectic structure has c ≠ 0.

#include "acmslab/calculus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace acmslab {

enum class TheoremVerdict { consistent, inconsistent, not_applicable };

const char* to_string(TheoremVerdict v);

struct CurvatureSurvey {
  VerificationReport checks;
  TheoremVerdict verdict = TheoremVerdict::not_applicable;
  std::string reason;            ///< why the verdict is N/A or INCONSISTENT
  int points = 0;
  int planes = 0;                ///< horizontal planes per point
  double c_mean = 0.0;
  double c_min = 0.0;
  double c_max = 0.0;
  double sigma_a_min = 0.0;      ///< min over points of σ_min(A|_D)
  bool hypotheses = false;       ///< Aφ + φA = 0, η-parallelism and contactness at every point
  bool nearly_cosymplectic = false;

  [[nodiscard]] double c_spread() const { return c_max - c_min; }
};

/// Sectional curvatures of `planes` random horizontal planes at each point.
CurvatureSurvey curvature_survey(const Chart& chart, const std::vector<Vector>& points, int planes,
                                 std::uint64_t seed, const Tolerances& tol = {});

/// Mean of K(X, φX) over horizontal unit probes at the given points.
double phi_sectional_curvature(const Chart& chart, const std::vector<Vector>& points, int probes,
                               std::uint64_t seed, const Tolerances& tol = {});

/// Smallest singular value of A restricted to D.
double sigma_min_a_horizontal(const LocalGeometry& geo);

}  // namespace acmslab
