#include "acmslab/calculus.hpp"

#include "acmslab/error.hpp"
#include "acmslab/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace acmslab {

Vector Tensor3::contract(const Vector& x, const Vector& y) const {
  Vector v = Vector::Zero(dim_);
  for (int a = 0; a < dim_; ++a) {
    double s = 0.0;
    for (int b = 0; b < dim_; ++b) {
      if (x(b) == 0.0) continue;
      for (int c = 0; c < dim_; ++c) s += (*this)(a, b, c) * x(b) * y(c);
    }
    v(a) = s;
  }
  return v;
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
  if (other.dim_ != dim_) throw DimensionError("Tensor3: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

CurvatureTensor::CurvatureTensor(Tensor4 components, Metric g)
    : r_(std::move(components)), lowered_(r_.dim()), g_(std::move(g)) {
  const int n = r_.dim();
  if (g_.dim() != n) throw DimensionError("CurvatureTensor: metric dimension mismatch");
  const Matrix& G = g_.gram();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += G(i, m) * r_(m, j, k, l);
          lowered_(i, j, k, l) = s;
        }
}

Vector CurvatureTensor::apply(const Vector& x, const Vector& y, const Vector& z) const {
  const int n = dim();
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (z(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (x(k) == 0.0) continue;
        for (int l = 0; l < n; ++l) s += r_(i, j, k, l) * z(j) * x(k) * y(l);
      }
    }
    out(i) = s;
  }
  return out;
}

double CurvatureTensor::form(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const {
  return g_.inner(apply(x, y, z), w);
}

double CurvatureTensor::lowered(int i, int j, int k, int l) const { return lowered_(i, j, k, l); }

double CurvatureTensor::antisymmetry_residual() const {
  const int n = dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) m = std::max(m, std::abs(lowered_(i, j, k, l) + lowered_(i, j, l, k)));
  return m;
}

double CurvatureTensor::metric_antisymmetry_residual() const {
  const int n = dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) m = std::max(m, std::abs(lowered_(i, j, k, l) + lowered_(j, i, k, l)));
  return m;
}

double CurvatureTensor::pair_symmetry_residual() const {
  const int n = dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) m = std::max(m, std::abs(lowered_(i, j, k, l) - lowered_(k, l, i, j)));
  return m;
}

double CurvatureTensor::bianchi_residual() const {
  const int n = dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          m = std::max(m, std::abs(r_(i, j, k, l) + r_(i, k, l, j) + r_(i, l, j, k)));
  return m;
}

double CurvatureTensor::scale() const { return lowered_.max_abs(); }

VerificationReport CurvatureTensor::symmetry_report(double tolerance) const {
  const double s = std::max(1.0, scale());
  VerificationReport rep;
  rep.add("R(X,Y) = -R(Y,X)", antisymmetry_residual() / s, tolerance);
  rep.add("R_ijkl = -R_jikl", metric_antisymmetry_residual() / s, tolerance);
  rep.add("R_ijkl = R_klij", pair_symmetry_residual() / s, tolerance);
  rep.add("first Bianchi identity", bianchi_residual() / s, tolerance);
  return rep;
}

Christoffel christoffel(const FieldJet& jet, const Metric& g) {
  const int n = g.dim();
  if (jet.dg.size() != static_cast<std::size_t>(n)) {
    throw PreconditionError("christoffel: jet of order >= 1 required");
  }
  // First kind: Γ_lij = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij).
  Tensor3 first(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        first(l, i, j) = 0.5 * (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));
  const Matrix& ginv = g.inverse();
  Christoffel gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * first(l, i, j);
        gamma(k, i, j) = s;
      }
  return gamma;
}

Tensor4 christoffel_derivative(const FieldJet& jet, const Metric& g) {
  const int n = g.dim();
  if (jet.ddg.size() != static_cast<std::size_t>(n)) {
    throw PreconditionError("christoffel_derivative: jet of order 2 required");
  }
  const Matrix& ginv = g.inverse();
  Tensor3 first(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        first(l, i, j) = 0.5 * (jet.dg[i](j, l) + jet.dg[j](i, l) - jet.dg[l](i, j));

  Tensor4 out(n);
  for (int m = 0; m < n; ++m) {
    // ∂_m g⁻¹ = −g⁻¹ (∂_m g) g⁻¹
    const Matrix dginv = -ginv * jet.dg[m] * ginv;
    const auto& dd = jet.ddg[m];
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            const double dfirst = 0.5 * (dd[i](j, l) + dd[j](i, l) - dd[l](i, j));
            s += dginv(k, l) * first(l, i, j) + ginv(k, l) * dfirst;
          }
          out(m, k, i, j) = s;
        }
  }
  return out;
}

LinearOp nabla_xi(const FieldJet& jet, const Christoffel& gamma) {
  const int n = gamma.dim();
  Matrix a = jet.dxi;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) a(i, j) += gamma(i, j, k) * jet.xi(k);
  return LinearOp(a);
}

NablaPhi nabla_phi(const FieldJet& jet, const Christoffel& gamma) {
  const int n = gamma.dim();
  NablaPhi out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = jet.dphi[i](j, k);
        for (int l = 0; l < n; ++l) s += gamma(j, i, l) * jet.phi(l, k) - gamma(l, i, k) * jet.phi(j, l);
        out(i, j, k) = s;
      }
  return out;
}

Tensor4 curvature_components(const Christoffel& gamma, const Tensor4& d_gamma) {
  const int n = gamma.dim();
  Tensor4 r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = d_gamma(k, i, l, j) - d_gamma(l, i, k, j);
          for (int m = 0; m < n; ++m) s += gamma(i, k, m) * gamma(m, l, j) - gamma(i, l, m) * gamma(m, k, j);
          r(i, j, k, l) = s;
        }
  return r;
}

CurvatureTensor riemann(const FieldJet& jet, const Metric& g) {
  const Christoffel gamma = christoffel(jet, g);
  return CurvatureTensor(curvature_components(gamma, christoffel_derivative(jet, g)), g);
}

Matrix d_eta(const FieldJet& jet) {
  // deta(i, k) = ∂_k η_i, so ∂_i η_j = deta(j, i).
  return 0.5 * (jet.deta.transpose() - jet.deta);
}

namespace {

Metric metric_at(const FieldJet& jet, const Tolerances& tol = {}) {
  try {
    return Metric(jet.g, tol.pd);
  } catch (const PreconditionError& e) {
    throw PreconditionError(fmt::format("{} at point {}", e.what(), format_point(jet.point)));
  }
}

}  // namespace

Christoffel christoffel(const Chart& chart, const Vector& point) {
  const FieldJet jet = chart.jet(point, 1);
  return christoffel(jet, metric_at(jet));
}

LinearOp nabla_xi(const Chart& chart, const Vector& point) {
  const FieldJet jet = chart.jet(point, 1);
  return nabla_xi(jet, christoffel(jet, metric_at(jet)));
}

NablaPhi nabla_phi(const Chart& chart, const Vector& point) {
  const FieldJet jet = chart.jet(point, 1);
  return nabla_phi(jet, christoffel(jet, metric_at(jet)));
}

CurvatureTensor riemann(const Chart& chart, const Vector& point) {
  const FieldJet jet = chart.jet(point, 2);
  return riemann(jet, metric_at(jet));
}

Matrix d_eta(const Chart& chart, const Vector& point) { return d_eta(chart.jet(point, 1)); }

double sectional_curvature(const CurvatureTensor& r, const Vector& x, const Vector& y,
                           double rank_tolerance) {
  const Metric& g = r.g();
  const double xx = g.inner(x, x);
  const double yy = g.inner(y, y);
  const double xy = g.inner(x, y);
  const double det = xx * yy - xy * xy;
  if (!(xx > 0.0 && yy > 0.0) || det / (xx * yy) <= rank_tolerance) {
    throw PreconditionError("sectional_curvature: X and Y do not span a 2-plane");
  }
  return r.form(x, y, y, x) / det;
}

double pfaffian(Matrix m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || n % 2 != 0) throw DimensionError("pfaffian: needs a square matrix of even order");
  double result = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index pivot = k + 1;
    for (Eigen::Index j = k + 2; j < n; ++j) {
      if (std::abs(m(k, j)) > std::abs(m(k, pivot))) pivot = j;
    }
    if (pivot != k + 1) {
      m.row(k + 1).swap(m.row(pivot));
      m.col(k + 1).swap(m.col(pivot));
      result = -result;
    }
    const double a = m(k, k + 1);
    if (a == 0.0) return 0.0;
    result *= a;
    for (Eigen::Index i = k + 2; i < n; ++i) {
      const double c = m(k, i) / a;
      if (c == 0.0) continue;
      m.row(i) -= c * m.row(k + 1);
      m.col(i) -= c * m.col(k + 1);
    }
  }
  return result;
}

double contact_coefficient(const Vector& eta, const Matrix& d_eta) {
  const Eigen::Index dim = eta.size();
  if (dim % 2 == 0 || d_eta.rows() != dim || d_eta.cols() != dim) {
    throw DimensionError("contact_coefficient: needs odd dimension and matching shapes");
  }
  const Eigen::Index n = (dim - 1) / 2;
  double factorial = 1.0;
  for (Eigen::Index i = 2; i <= n; ++i) factorial *= static_cast<double>(i);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (eta(k) == 0.0) continue;
    Matrix minor(dim - 1, dim - 1);
    for (Eigen::Index i = 0, mi = 0; i < dim; ++i) {
      if (i == k) continue;
      for (Eigen::Index j = 0, mj = 0; j < dim; ++j) {
        if (j == k) continue;
        minor(mi, mj++) = d_eta(i, j);
      }
      ++mi;
    }
    sum += (k % 2 == 0 ? 1.0 : -1.0) * eta(k) * pfaffian(minor);
  }
  return factorial * sum;
}

LocalGeometry LocalGeometry::at(const Chart& chart, const Vector& point, bool with_curvature,
                                const Tolerances& tol) {
  FieldJet jet = chart.jet(point, with_curvature ? 2 : 1);
  Metric g = metric_at(jet, tol);
  try {
    AcmsPoint acms(LinearOp(jet.phi), jet.xi, jet.eta, g);
    HorizontalSubspace d = horizontal_basis(acms, tol);
    Christoffel gamma = christoffel(jet, g);
    LinearOp a = nabla_xi(jet, gamma);
    LinearOp b = b_operator(a, acms, d);
    const Matrix p = acms.horizontal_projector();
    const LinearOp pap(p * a.mat() * p);
    LinearOp b_full = 0.5 * (pap - adjoint(pap, g));
    NablaPhi np = acmslab::nabla_phi(jet, gamma);
    Matrix de = acmslab::d_eta(jet);
    std::optional<CurvatureTensor> r;
    if (with_curvature) r.emplace(curvature_components(gamma, christoffel_derivative(jet, g)), g);
    return LocalGeometry{std::move(jet), g, std::move(acms), std::move(d), std::move(gamma),
                         std::move(a), std::move(b), std::move(b_full), std::move(np), std::move(de),
                         std::move(r), chart.derivative().mode == DerivativeMode::symbolic};
  } catch (const DimensionError& e) {
    throw DimensionError(fmt::format("{} at point {}", e.what(), format_point(point)));
  } catch (const PreconditionError& e) {
    throw PreconditionError(fmt::format("{} at point {}", e.what(), format_point(point)));
  }
}

const CurvatureTensor& LocalGeometry::curvature() const {
  if (!r) throw PreconditionError("LocalGeometry: curvature was not computed");
  return *r;
}

std::vector<Vector> unit_probes(const LocalGeometry& geo, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_unit(rng, geo.g));
  return out;
}

std::vector<Vector> horizontal_probes(const LocalGeometry& geo, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  const int r = geo.horizontal.rank();
  for (int i = 0; i < count; ++i) {
    Vector c = gaussian_vector(rng, r);
    c /= c.norm();
    out.push_back(geo.horizontal.from_coords(c));
  }
  return out;
}

VerificationReport contact_form_check(const LocalGeometry& geo, const Tolerances& tol) {
  VerificationReport rep;
  rep.add("eta^(deta)^n coefficient", std::abs(contact_coefficient(geo.jet.eta, geo.d_eta)), tol.contact,
          Bound::above);
  rep.add("sigma_min(B)", is_contact_at_point(geo.b, tol).sigma_min, tol.contact, Bound::above);
  return rep;
}

VerificationReport contact_form_check(const Chart& chart, const std::vector<Vector>& points,
                                      const Tolerances& tol) {
  if (chart.dim() % 2 == 0) throw DimensionError("contact_form_check: dimension must be odd");
  std::vector<VerificationReport> reports;
  reports.reserve(points.size());
  for (const auto& p : points) {
    const LocalGeometry geo = LocalGeometry::at(chart, p, false, tol);
    reports.push_back(contact_form_check(geo, tol));
  }
  return VerificationReport::aggregate(reports);
}

VerificationReport check_nearly_cosymplectic(const LocalGeometry& geo, const ProbeConfig& probes,
                                             const Tolerances& tol) {
  double horizontal = 0.0;
  for (const auto& x : horizontal_probes(geo, probes.count, probes.seed)) {
    horizontal = std::max(horizontal, geo.g.norm(geo.nabla_phi.apply(x, x)));
  }
  const auto xs = unit_probes(geo, probes.count, probes.seed);
  const auto ys = unit_probes(geo, probes.count, probes.seed + 1);
  double full = 0.0;
  double symmetrized = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Vector& x = xs[i];
    const Vector& y = ys[i];
    full = std::max(full, geo.g.norm(geo.nabla_phi.apply(x, x)));
    symmetrized = std::max(
        symmetrized, 0.5 * geo.g.norm(geo.nabla_phi.apply(x, y) + geo.nabla_phi.apply(y, x)));
  }
  VerificationReport rep;
  rep.add("(nabla_X phi)X = 0, X in D", horizontal, tol.nearly);
  rep.add("(nabla_X phi)X = 0", full, tol.nearly);
  rep.add("(nabla_X phi)Y + (nabla_Y phi)X = 0", symmetrized, tol.nearly);
  return rep;
}

VerificationReport check_nearly_cosymplectic(const Chart& chart, const Vector& point,
                                             const ProbeConfig& probes, const Tolerances& tol) {
  return check_nearly_cosymplectic(LocalGeometry::at(chart, point, false, tol), probes, tol);
}

VerificationReport check_killing(const Chart& chart, const Vector& point, const Tolerances& tol) {
  const FieldJet jet = chart.jet(point, 1);
  const Metric g = metric_at(jet, tol);
  const LinearOp a = nabla_xi(jet, christoffel(jet, g));
  const Matrix ga = g.gram() * a.mat();
  const Matrix de = d_eta(jet);
  VerificationReport rep;
  rep.add("g(nabla_X xi, Y) + g(nabla_Y xi, X) = 0", form_norm(ga + ga.transpose(), g), tol.killing);
  rep.add("eta(xi) = 1", std::abs(jet.eta.dot(jet.xi) - 1.0), tol.killing);
  rep.add("deta(X, xi) = 0", covector_norm(de * jet.xi, g), tol.killing);
  return rep;
}

VerificationReport check_d_eta_equals_a(const LocalGeometry& geo, const Tolerances& tol) {
  // g(AX, Y) = Xᵀ Aᵀ G Y.
  const Matrix diff = geo.d_eta - geo.a.mat().transpose() * geo.g.gram();
  VerificationReport rep;
  rep.add("deta(X,Y) = g(AX,Y)", form_norm(diff, geo.g), geo.symbolic ? tol.bridge : tol.bridge_fd);
  return rep;
}

VerificationReport check_bridge(const LocalGeometry& geo, const Tolerances& tol) {
  const Matrix& e = geo.horizontal.basis();
  // The horizontal basis is orthonormal, so the spectral norm of the
  // restricted form is its g-norm on D.
  const Matrix deta_d = e.transpose() * geo.d_eta * e;
  const Matrix gb = geo.b.mat().transpose();  // (a, b) -> g(B e_a, e_b)
  VerificationReport rep;
  const Matrix diff = deta_d - gb;
  const double residual = diff.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(diff).singularValues()(0);
  rep.add("deta(X,Y) = g(BX,Y) on D", residual, geo.symbolic ? tol.bridge : tol.bridge_fd);
  return rep;
}

double endo_rhs(const LocalGeometry& geo, double c, const Vector& w, const Vector& x, const Vector& y,
                const Vector& z) {
  auto ip = [&](const Vector& a, const Vector& b) { return geo.inner(a, b); };
  const auto& np = geo.nabla_phi;
  const Vector aw = geo.apply_a(w), ax = geo.apply_a(x), ay = geo.apply_a(y), az = geo.apply_a(z);
  const double ew = geo.eta(w), ex = geo.eta(x), ey = geo.eta(y), ez = geo.eta(z);
  const Vector py = geo.phi(y), pz = geo.phi(z), px = geo.phi(x);

  const double nabla_terms = ip(np.apply(w, z), np.apply(x, y)) - ip(np.apply(w, y), np.apply(x, z)) -
                             2 * ip(np.apply(w, x), np.apply(y, z));
  const double a_terms = ip(aw, z) * ip(ax, y) - ip(aw, y) * ip(ax, z) - 2 * ip(aw, x) * ip(ay, z);
  const double eta_terms =
      -ew * ey * ip(ax, az) + ew * ez * ip(ax, ay) + ex * ey * ip(aw, az) - ex * ez * ip(aw, ay);
  const double c_terms = ip(x, y) * ip(z, w) - ip(z, x) * ip(y, w) + ez * ex * ip(y, w) -
                         ey * ex * ip(z, w) + ey * ew * ip(z, x) - ez * ew * ip(y, x) +
                         ip(py, x) * ip(pz, w) - ip(pz, x) * ip(py, w) - 2 * ip(pz, y) * ip(px, w);
  return nabla_terms + a_terms + eta_terms + c * c_terms;
}

Vector endo_horizontal_difference(const LocalGeometry& geo, double c, const Vector& w, const Vector& x,
                                  const Vector& y) {
  auto ip = [&](const Vector& a, const Vector& b) { return geo.inner(a, b); };
  const Vector aw = geo.apply_a(w), ax = geo.apply_a(x), ay = geo.apply_a(y);
  const Vector pw = geo.phi(w), px = geo.phi(x), py = geo.phi(y);
  const Vector lhs = 3 * c * (ip(y, x) * w - ip(y, w) * x);
  const Vector rhs = -ip(py, ax) * geo.phi(aw) + ip(py, aw) * geo.phi(ax) + 2 * ip(px, aw) * geo.phi(ay) +
                     ip(ax, y) * aw - ip(aw, y) * ax - 2 * ip(aw, x) * ay +
                     c * (-ip(x, py) * pw + ip(py, w) * px + 2 * ip(px, w) * py);
  return lhs - rhs;
}

namespace {

void require_nearly(const LocalGeometry& geo, const ProbeConfig& probes, const Tolerances& tol,
                    const char* who) {
  const VerificationReport gate = check_nearly_cosymplectic(geo, probes, tol);
  if (!gate.verdict()) {
    double worst = 0.0;
    for (const auto& c : gate.checks()) worst = std::max(worst, c.residual);
    throw PreconditionError(fmt::format("{}: structure is not nearly cosymplectic at point {} (residual {:.3g})",
                                        who, format_point(geo.jet.point), worst));
  }
}

}  // namespace

VerificationReport endo_residual(const LocalGeometry& geo, double c, const ProbeConfig& probes,
                                 const Tolerances& tol) {
  require_nearly(geo, probes, tol, "endo_residual");
  const CurvatureTensor& r = geo.curvature();
  const auto ws = unit_probes(geo, probes.count, probes.seed + 11);
  const auto xs = unit_probes(geo, probes.count, probes.seed + 12);
  const auto ys = unit_probes(geo, probes.count, probes.seed + 13);
  const auto zs = unit_probes(geo, probes.count, probes.seed + 14);
  double full = 0.0;
  for (int i = 0; i < probes.count; ++i) {
    const double lhs = 4 * r.form(ws[i], xs[i], ys[i], zs[i]);
    full = std::max(full, std::abs(lhs - endo_rhs(geo, c, ws[i], xs[i], ys[i], zs[i])));
  }
  const auto hw = horizontal_probes(geo, probes.count, probes.seed + 21);
  const auto hx = horizontal_probes(geo, probes.count, probes.seed + 22);
  const auto hy = horizontal_probes(geo, probes.count, probes.seed + 23);
  double horizontal = 0.0;
  for (int i = 0; i < probes.count; ++i) {
    horizontal = std::max(horizontal, geo.g.norm(endo_horizontal_difference(geo, c, hw[i], hx[i], hy[i])));
  }
  VerificationReport rep;
  rep.add("4g(R(W,X)Y,Z) = curvature formula", full, tol.tilde);
  rep.add("horizontal curvature formula", horizontal, tol.tilde);
  return rep;
}

VerificationReport endo_identity_residual(const LocalGeometry& geo, const ProbeConfig& probes,
                                          const Tolerances& tol) {
  require_nearly(geo, probes, tol, "endo_identity_residual");
  const auto xs = unit_probes(geo, probes.count, probes.seed + 31);
  const auto ys = unit_probes(geo, probes.count, probes.seed + 32);
  const auto zs = unit_probes(geo, probes.count, probes.seed + 33);
  const Matrix a2 = geo.a.mat() * geo.a.mat();
  double worst = 0.0;
  for (int i = 0; i < probes.count; ++i) {
    const Vector& x = xs[i];
    const Vector& y = ys[i];
    const Vector& z = zs[i];
    const Vector pz = geo.phi(z);
    const double lhs = geo.inner(geo.nabla_phi.apply(x, y), geo.apply_a(z));
    const double rhs = geo.eta(y) * geo.inner(a2 * x, pz) - geo.eta(x) * geo.inner(a2 * y, pz);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  VerificationReport rep;
  rep.add("g((nabla_X phi)Y, AZ) = eta(Y)g(A^2X, phiZ) - eta(X)g(A^2Y, phiZ)", worst, tol.tilde);
  return rep;
}

}  // namespace acmslab
