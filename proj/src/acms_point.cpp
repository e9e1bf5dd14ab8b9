#include "acmslab/acms_point.hpp"

#include "acmslab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace acmslab {

namespace {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

Vector NablaPhi::apply(const Vector& x, const Vector& y) const { return along(x) * y; }

Matrix NablaPhi::along(const Vector& x) const {
  if (x.size() != dim_) throw DimensionError("NablaPhi::along: dimension mismatch");
  Matrix m = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) m(j, k) += x(i) * (*this)(i, j, k);
    }
  }
  return m;
}

double NablaPhi::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

AcmsPoint::AcmsPoint(LinearOp phi, Vector xi, Vector eta, Metric g)
    : phi_(std::move(phi)), xi_(std::move(xi)), eta_(std::move(eta)), g_(std::move(g)) {
  const int n = phi_.dim();
  if (xi_.size() != n || eta_.size() != n || g_.dim() != n) {
    throw DimensionError(fmt::format("AcmsPoint: inconsistent shapes (phi {}, xi {}, eta {}, g {})",
                                     n, xi_.size(), eta_.size(), g_.dim()));
  }
  if (n % 2 == 0) {
    throw DimensionError(fmt::format("AcmsPoint: dimension must be odd, got {}", n));
  }
}

Matrix AcmsPoint::horizontal_projector() const {
  return Matrix::Identity(dim(), dim()) - xi_ * eta_.transpose();
}

HorizontalSubspace::HorizontalSubspace(Matrix basis, Metric g)
    : basis_(std::move(basis)), g_(std::move(g)) {
  if (basis_.rows() != g_.dim()) throw DimensionError("HorizontalSubspace: dimension mismatch");
}

Matrix HorizontalSubspace::restrict(const LinearOp& op) const {
  return basis_.transpose() * g_.gram() * op.mat() * basis_;
}

LinearOp HorizontalSubspace::embed(const Matrix& small) const {
  if (small.rows() != rank() || small.cols() != rank()) {
    throw DimensionError("HorizontalSubspace::embed: expected a square matrix of size rank()");
  }
  return LinearOp(basis_ * small * basis_.transpose() * g_.gram());
}

VerificationReport validate_acms(const AcmsPoint& p, const Tolerances& tol) {
  const int n = p.dim();
  const Matrix& phi = p.phi().mat();
  const Matrix& G = p.g().gram();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix xi_eta = p.xi() * p.eta().transpose();

  VerificationReport r;
  r.add("phi^2 = -I + eta(x)xi", operator_norm(phi * phi + id - xi_eta, p.g()), tol.acms);
  r.add("eta(xi) = 1", std::abs(p.eta().dot(p.xi()) - 1.0), tol.acms);
  r.add("g(phiX,phiY) = g(X,Y) - eta(X)eta(Y)",
        form_norm(phi.transpose() * G * phi - G + p.eta() * p.eta().transpose(), p.g()), tol.acms);
  r.add("eta(X) = g(X,xi)", covector_norm(p.eta() - G * p.xi(), p.g()), tol.acms);
  r.add("phi xi = 0", p.g().norm(phi * p.xi()), tol.acms);
  r.add("eta o phi = 0", covector_norm(phi.transpose() * p.eta(), p.g()), tol.acms);

  const Vector s = singular_values(p.phi(), p.g());
  const double cutoff = 1e-6 * std::max(1.0, s(s.size() - 1));
  const auto rank = std::count_if(s.begin(), s.end(), [&](double v) { return v > cutoff; });
  r.add("rank(phi) = 2n", std::abs(static_cast<double>(rank) - (n - 1)), 0.5, Bound::below,
        fmt::format("rank {}, sigma_min {:.3e}", rank, s(0)));
  return r;
}

HorizontalSubspace horizontal_basis(const AcmsPoint& p, const Tolerances& tol) {
  const int n = p.dim();
  const Matrix proj = p.horizontal_projector();
  std::vector<Vector> candidates;
  candidates.reserve(n);
  for (int i = 0; i < n; ++i) candidates.push_back(proj * Vector::Unit(n, i));
  auto basis = pivoted_gram_schmidt(candidates, p.g(), n - 1, tol.rank);
  if (static_cast<int>(basis.size()) != n - 1) {
    throw PreconditionError(fmt::format("horizontal_basis: ker eta has numerical rank {} (expected {})",
                                        basis.size(), n - 1));
  }
  // Remove any residual ξ-component left by rounding.
  for (auto& v : basis) {
    v -= p.eta_of(v) * p.xi();
    v /= p.g().norm(v);
  }
  return HorizontalSubspace(from_columns(basis, n), p.g());
}

LinearOp b_operator(const LinearOp& a, const AcmsPoint& p, const HorizontalSubspace& d) {
  if (a.dim() != p.dim()) throw DimensionError("b_operator: dimension mismatch");
  const Matrix m = d.restrict(a);
  return LinearOp(0.5 * (m - m.transpose()));
}

LinearOp b_operator(const LinearOp& a, const AcmsPoint& p) {
  return b_operator(a, p, horizontal_basis(p));
}

VerificationReport check_star_condition(const LinearOp& a, const AcmsPoint& p,
                                        const Tolerances& tol) {
  if (a.dim() != p.dim()) throw DimensionError("check_star_condition: dimension mismatch");
  VerificationReport r;
  r.add("A phi + phi A = 0", operator_norm(anticommutator(p.phi(), a).mat(), p.g()), tol.star);
  return r;
}

ContactVerdict is_contact_at_point(const LinearOp& b, const Tolerances& tol) {
  Eigen::JacobiSVD<Matrix> svd(b.mat());
  const double sigma = svd.singularValues().minCoeff();
  return {sigma > tol.contact, sigma};
}

VerificationReport check_eta_parallel(const NablaPhi& nabla_phi, const AcmsPoint& p,
                                      const Tolerances& tol) {
  if (nabla_phi.dim() != p.dim()) throw DimensionError("check_eta_parallel: dimension mismatch");
  const auto d = horizontal_basis(p, tol);
  const Matrix& e = d.basis();
  double worst = 0.0;
  for (int a = 0; a < d.rank(); ++a) {
    const Matrix m = e.transpose() * p.g().gram() * nabla_phi.along(e.col(a)) * e;
    worst = std::max(worst, max_abs(m));
  }
  VerificationReport r;
  r.add("g((nabla_X phi)Y, Z) = 0 on D", worst, tol.eta_parallel);
  return r;
}

double b_phi_anticommutator_residual(const LinearOp& b, const AcmsPoint& p,
                                     const HorizontalSubspace& d) {
  const Matrix phi_d = d.restrict(p.phi());
  return spectral_norm(b.mat() * phi_d + phi_d * b.mat());
}

VerificationReport dimension_gate(const LinearOp& a, const AcmsPoint& p, const Tolerances& tol) {
  VerificationReport r;
  const auto star = check_star_condition(a, p, tol);
  const auto contact = is_contact_at_point(b_operator(a, p, horizontal_basis(p, tol)), tol);
  if (!star.verdict() || !contact.contact) {
    r.add("dim = 1 mod 4", 0.0, 0.5, Bound::below, "hypotheses unmet");
    return r;
  }
  r.add("dim = 1 mod 4", p.dim() % 4 == 1 ? 0.0 : 1.0, 0.5, Bound::below,
        fmt::format("dim {}", p.dim()));
  return r;
}

}  // namespace acmslab
