#include "acmslab/modified_connection.hpp"

#include "acmslab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace acmslab {

Vector ModifiedConnectionData::nabla_tilde_phi(const Vector& u, const Vector& v) const {
  return base.nabla_phi.apply(u, v) + H(u, base.phi(v)) - base.phi(H(u, v));
}

const CurvatureTensor& ModifiedConnectionData::tilde_curvature() const {
  if (!tilde_r) throw PreconditionError("ModifiedConnectionData: curvature was not computed");
  return *tilde_r;
}

Tensor3 h_tensor(const LinearOp& a, const LinearOp& b_full, const Vector& xi, const Vector& eta,
                 const Metric& g) {
  const int n = g.dim();
  const Matrix p = Matrix::Identity(n, n) - xi * eta.transpose();
  const Matrix ap = a.mat() * p;              // column i: A(∂_i)^H
  const Matrix gap = ap.transpose() * g.gram() * p;  // (i, j): g(A ∂_i^H, ∂_j^H)
  const Matrix bp = b_full.mat() * p;         // column j: B ∂_j^H
  Tensor3 h(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(k, i, j) = gap(i, j) * xi(k) - eta(j) * ap(k, i) + 0.5 * eta(i) * bp(k, j);
  return h;
}

namespace {

LinearOp b_full_of(const LinearOp& a, const Vector& xi, const Vector& eta, const Metric& g) {
  const int n = g.dim();
  const Matrix p = Matrix::Identity(n, n) - xi * eta.transpose();
  const LinearOp pap(p * a.mat() * p);
  return 0.5 * (pap - adjoint(pap, g));
}

}  // namespace

Christoffel tilde_christoffel(const Chart& chart, const Vector& point, const Tolerances& tol) {
  const FieldJet jet = chart.jet(point, 1);
  Metric g(jet.g, tol.pd);
  Christoffel gamma = christoffel(jet, g);
  const LinearOp a = nabla_xi(jet, gamma);
  gamma += h_tensor(a, b_full_of(a, jet.xi, jet.eta, g), jet.xi, jet.eta, g);
  return gamma;
}

CurvatureTensor tilde_riemann(const Chart& chart, const Vector& point, double step, const Tolerances& tol) {
  const int n = chart.dim();
  const Christoffel gamma = tilde_christoffel(chart, point, tol);
  Tensor4 d_gamma(n);
  auto central = [&](int m, double h) {
    Vector xp = point, xm = point;
    xp(m) += h;
    xm(m) -= h;
    const Christoffel gp = tilde_christoffel(chart, xp, tol);
    const Christoffel gm = tilde_christoffel(chart, xm, tol);
    Tensor3 d(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(k, i, j) = (gp(k, i, j) - gm(k, i, j)) / (2 * h);
    return d;
  };
  for (int m = 0; m < n; ++m) {
    const Tensor3 coarse = central(m, step);
    const Tensor3 fine = central(m, step / 2);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d_gamma(m, k, i, j) = (4 * fine(k, i, j) - coarse(k, i, j)) / 3;
  }
  return CurvatureTensor(curvature_components(gamma, d_gamma), Metric(chart.jet(point, 0).g, tol.pd));
}

ModifiedConnectionData modified_connection(const Chart& chart, const Vector& point, bool with_curvature,
                                           const Tolerances& tol) {
  LocalGeometry base = LocalGeometry::at(chart, point, with_curvature, tol);
  Tensor3 h = h_tensor(base.a, base.b_full, base.acms.xi(), base.acms.eta(), base.g);
  Christoffel tilde_gamma = base.gamma;
  tilde_gamma += h;
  std::optional<CurvatureTensor> tilde_r;
  if (with_curvature) tilde_r.emplace(tilde_riemann(chart, point, 1e-4, tol));
  return ModifiedConnectionData{std::move(base), std::move(h), std::move(tilde_gamma), std::move(tilde_r)};
}

VerificationReport modified_connection_report(const ModifiedConnectionData& data, const ProbeConfig& probes,
                                              const Tolerances& tol) {
  const LocalGeometry& geo = data.base;
  const Vector& xi = geo.acms.xi();
  const auto xs = horizontal_probes(geo, probes.count, probes.seed + 41);
  const auto ys = horizontal_probes(geo, probes.count, probes.seed + 42);
  double h_x_xi = 0.0, h_x_y = 0.0, h_xi_x = 0.0, tilde_phi = 0.0;
  for (int i = 0; i < probes.count; ++i) {
    const Vector& x = xs[i];
    const Vector& y = ys[i];
    h_x_xi = std::max(h_x_xi, geo.g.norm(data.H(x, xi) + geo.apply_a(x)));
    h_x_y = std::max(h_x_y, geo.g.norm(data.H(x, y) - geo.inner(geo.apply_a(x), y) * xi));
    h_xi_x = std::max(h_xi_x, geo.g.norm(data.H(xi, x) - 0.5 * geo.apply_b(x)));
    tilde_phi = std::max(tilde_phi, geo.g.norm(data.nabla_tilde_phi(x, y)));
  }
  VerificationReport rep;
  rep.add("H(xi,xi) = 0", geo.g.norm(data.H(xi, xi)), tol.tilde_phi);
  rep.add("H(X,xi) = -AX", h_x_xi, tol.tilde_phi);
  rep.add("H(X,Y) = g(AX,Y)xi", h_x_y, tol.tilde_phi);
  rep.add("H(xi,X) = BX/2", h_xi_x, tol.tilde_phi);
  rep.add("(nabla~_X phi)Y = 0 on D", tilde_phi, tol.tilde_phi);
  return rep;
}

namespace {

void require_horizontal(const LocalGeometry& geo, std::initializer_list<const Vector*> vs, const char* who) {
  for (const Vector* v : vs) {
    const double scale = std::max(1.0, geo.g.norm(*v));
    if (std::abs(geo.eta(*v)) > 1e-8 * scale) {
      throw PreconditionError(fmt::format("{}: arguments must lie in D (eta = {:.3g})", who, geo.eta(*v)));
    }
  }
}

}  // namespace

Vector tilde_riemann_horizontal(const ModifiedConnectionData& data, const Vector& x, const Vector& y,
                                const Vector& z) {
  const LocalGeometry& geo = data.base;
  require_horizontal(geo, {&x, &y, &z}, "tilde_riemann_horizontal");
  const Vector ax = geo.apply_a(x), ay = geo.apply_a(y);
  return geo.horizontal_part(geo.curvature().apply(x, y, z)) + geo.inner(ay, z) * ax - geo.inner(ax, z) * ay +
         geo.inner(geo.apply_b(x), y) * geo.apply_b(z);
}

Vector s_tensor(const ModifiedConnectionData& data, const Vector& x, const Vector& y, const Vector& z) {
  const LocalGeometry& geo = data.base;
  require_horizontal(geo, {&x, &y, &z}, "s_tensor");
  const CurvatureTensor& rt = data.tilde_curvature();
  return rt.apply(x, y, geo.phi(z)) - geo.phi(rt.apply(x, y, z));
}

Vector gb_lhs(const ModifiedConnectionData& data, const Vector& x, const Vector& y, const Vector& z) {
  const LocalGeometry& geo = data.base;
  const Vector inner = data.nabla_tilde_phi(geo.acms.xi(), z) - geo.apply_b(geo.phi(z));
  return 2 * geo.inner(geo.apply_b(x), y) * geo.horizontal_part(inner);
}

Vector gb_rhs(const LocalGeometry& geo, const CurvatureFn& r, const Vector& x, const Vector& y,
              const Vector& z) {
  const Vector pz = geo.phi(z);
  return geo.horizontal_part(r(x, y, pz)) - geo.phi(r(x, y, z)) + w_rhs(geo, x, y, z);
}

Vector w_rhs(const LocalGeometry& geo, const Vector& x, const Vector& y, const Vector& z) {
  const Vector ax = geo.apply_a(x), ay = geo.apply_a(y), pz = geo.phi(z);
  return geo.inner(ay, pz) * ax - geo.inner(ax, pz) * ay - geo.inner(ay, z) * geo.phi(ax) +
         geo.inner(ax, z) * geo.phi(ay);
}

CurvatureFn constant_curvature(const Metric& g, double c) {
  return [g, c](const Vector& x, const Vector& y, const Vector& z) -> Vector {
    return c * (g.inner(y, z) * x - g.inner(x, z) * y);
  };
}

VerificationReport eq_r_residual(const ModifiedConnectionData& data, const ProbeConfig& probes,
                                 const Tolerances& tol) {
  const LocalGeometry& geo = data.base;
  const auto xs = horizontal_probes(geo, probes.count, probes.seed + 51);
  const auto ys = horizontal_probes(geo, probes.count, probes.seed + 52);
  const auto zs = horizontal_probes(geo, probes.count, probes.seed + 53);
  double worst = 0.0;
  for (int i = 0; i < probes.count; ++i) {
    const Vector rhs = 2 * geo.inner(geo.apply_b(xs[i]), ys[i]) * data.nabla_tilde_phi(geo.acms.xi(), zs[i]);
    worst = std::max(worst, geo.g.norm(s_tensor(data, xs[i], ys[i], zs[i]) - rhs));
  }
  VerificationReport rep;
  rep.add("S(X,Y,Z) = 2g(BX,Y)(nabla~_xi phi)Z", worst, tol.tilde);
  return rep;
}

VerificationReport tilde_mode_agreement(const ModifiedConnectionData& data, const ProbeConfig& probes,
                                        const Tolerances& tol) {
  const LocalGeometry& geo = data.base;
  const auto xs = horizontal_probes(geo, probes.count, probes.seed + 61);
  const auto ys = horizontal_probes(geo, probes.count, probes.seed + 62);
  const auto zs = horizontal_probes(geo, probes.count, probes.seed + 63);
  double worst = 0.0;
  for (int i = 0; i < probes.count; ++i) {
    const Vector mode1 = geo.horizontal_part(data.tilde_curvature().apply(xs[i], ys[i], zs[i]));
    worst = std::max(worst, geo.g.norm(mode1 - tilde_riemann_horizontal(data, xs[i], ys[i], zs[i])));
  }
  VerificationReport rep;
  rep.add("(R~(X,Y)Z)^H: differentiated = algebraic", worst, tol.tilde);
  return rep;
}

VerificationReport gb_identity_residual(const ModifiedConnectionData& data, const ProbeConfig& probes,
                                        const Tolerances& tol) {
  const LocalGeometry& geo = data.base;
  const VerificationReport star = check_star_condition(geo.a, geo.acms, tol);
  const VerificationReport parallel = check_eta_parallel(geo.nabla_phi, geo.acms, tol);
  if (!star.verdict() || !parallel.verdict()) {
    throw PreconditionError(fmt::format("gb_identity_residual: hypotheses fail at point {}",
                                        format_point(geo.jet.point)));
  }
  const CurvatureTensor& r = geo.curvature();
  const CurvatureFn rf = [&r](const Vector& x, const Vector& y, const Vector& z) { return r.apply(x, y, z); };
  const auto xs = horizontal_probes(geo, probes.count, probes.seed + 71);
  const auto ys = horizontal_probes(geo, probes.count, probes.seed + 72);
  const auto zs = horizontal_probes(geo, probes.count, probes.seed + 73);
  double worst = 0.0;
  for (int i = 0; i < probes.count; ++i) {
    worst = std::max(worst, geo.g.norm(gb_lhs(data, xs[i], ys[i], zs[i]) - gb_rhs(geo, rf, xs[i], ys[i], zs[i])));
  }
  VerificationReport rep;
  rep.add("2g(BX,Y)((nabla~_xi phi)Z - B phi Z)^H = R-side", worst, tol.tilde);
  return rep;
}

}  // namespace acmslab
