#include "acmslab/theorem.hpp"

#include "acmslab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace acmslab {

const char* to_string(TheoremVerdict v) {
  switch (v) {
    case TheoremVerdict::consistent: return "CONSISTENT";
    case TheoremVerdict::inconsistent: return "INCONSISTENT";
    case TheoremVerdict::not_applicable: return "N/A";
  }
  return "N/A";
}

double sigma_min_a_horizontal(const LocalGeometry& geo) {
  const Matrix a_d = geo.horizontal.restrict(geo.a);
  if (a_d.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(a_d).singularValues().minCoeff();
}

CurvatureSurvey curvature_survey(const Chart& chart, const std::vector<Vector>& points, int planes,
                                 std::uint64_t seed, const Tolerances& tol) {
  if (points.empty() || planes < 1) throw PreconditionError("curvature_survey: needs points and planes");
  CurvatureSurvey s;
  s.points = static_cast<int>(points.size());
  s.planes = planes;
  s.c_min = std::numeric_limits<double>::infinity();
  s.c_max = -std::numeric_limits<double>::infinity();
  s.sigma_a_min = std::numeric_limits<double>::infinity();

  std::vector<VerificationReport> hyp;
  std::vector<VerificationReport> nearly;
  double c_sum = 0.0;
  long samples = 0;
  const ProbeConfig probes{planes, seed};
  for (const auto& p : points) {
    const LocalGeometry geo = LocalGeometry::at(chart, p, true, tol);
    VerificationReport h;
    h.append(check_star_condition(geo.a, geo.acms, tol));
    h.append(check_eta_parallel(geo.nabla_phi, geo.acms, tol));
    h.append(contact_form_check(geo, tol));
    hyp.push_back(std::move(h));
    nearly.push_back(check_nearly_cosymplectic(geo, probes, tol));

    const auto xs = horizontal_probes(geo, planes, seed + 81);
    const auto ys = horizontal_probes(geo, planes, seed + 82);
    for (int i = 0; i < planes; ++i) {
      const double k = sectional_curvature(geo.curvature(), xs[i], ys[i], tol.rank);
      c_sum += k;
      ++samples;
      s.c_min = std::min(s.c_min, k);
      s.c_max = std::max(s.c_max, k);
    }
    s.sigma_a_min = std::min(s.sigma_a_min, sigma_min_a_horizontal(geo));
  }
  s.c_mean = c_sum / static_cast<double>(samples);

  const VerificationReport hypotheses = VerificationReport::aggregate(hyp);
  s.hypotheses = hypotheses.verdict();
  s.nearly_cosymplectic = VerificationReport::aggregate(nearly).verdict();
  s.checks.append(hypotheses);

  if (!s.hypotheses) {
    s.verdict = TheoremVerdict::not_applicable;
    s.reason = "hypotheses unmet";
    return s;
  }
  const int dim = chart.dim();
  s.checks.add("dim = 1 mod 4", dim % 4 == 1 ? 0.0 : 1.0, 0.5);
  if (s.c_spread() >= tol.curvature) {
    s.checks.add("horizontal sectional curvature spread", s.c_spread(), tol.curvature);
    s.verdict = s.checks.verdict() ? TheoremVerdict::not_applicable : TheoremVerdict::inconsistent;
    s.reason = s.checks.verdict() ? "horizontal sectional curvature not constant" : "dim != 1 mod 4";
    return s;
  }
  s.checks.add("horizontal sectional curvature spread", s.c_spread(), tol.curvature);
  s.checks.add("dim = 5", std::abs(dim - 5.0), 0.5);
  const bool c_nonzero = std::abs(s.c_mean) > tol.curvature;
  if (c_nonzero) {
    s.checks.add("sigma_min(A|_D)", s.sigma_a_min, tol.sigma_a, Bound::above, "c != 0 requires A|_D invertible");
  } else {
    s.checks.add("sigma_min(A|_D)", s.sigma_a_min, tol.sing * tol.sing_slack, Bound::below,
                 "c = 0 requires A|_D singular");
  }
  if (s.nearly_cosymplectic) {
    s.checks.add("|c| (nearly cosymplectic)", std::abs(s.c_mean), tol.curvature, Bound::above);
  }
  s.verdict = s.checks.verdict() ? TheoremVerdict::consistent : TheoremVerdict::inconsistent;
  if (!s.checks.verdict()) s.reason = "conclusion violated";
  return s;
}

double phi_sectional_curvature(const Chart& chart, const std::vector<Vector>& points, int probes,
                               std::uint64_t seed, const Tolerances& tol) {
  double sum = 0.0;
  long count = 0;
  for (const auto& p : points) {
    const LocalGeometry geo = LocalGeometry::at(chart, p, true, tol);
    for (const auto& x : horizontal_probes(geo, probes, seed + 91)) {
      sum += sectional_curvature(geo.curvature(), x, geo.phi(x), tol.rank);
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace acmslab
