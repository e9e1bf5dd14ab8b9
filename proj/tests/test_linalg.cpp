#include "acmslab/error.hpp"
#include "acmslab/linalg.hpp"
#include "acmslab/random.hpp"

#include <doctest.h>

using namespace acmslab;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix random_matrix(Rng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.col(i) = uniform_vector(rng, n, -1.0, 1.0);
  return m;
}

Metric random_metric(Rng& rng, int n) {
  const Matrix m = random_matrix(rng, n);
  return Metric(m * m.transpose() + Matrix::Identity(n, n));
}

}  // namespace

TEST_CASE("metric rejects bad Gram matrices") {
  CHECK_THROWS_AS(Metric(Matrix::Zero(2, 3)), DimensionError);
  CHECK_THROWS_AS(Metric(mat2(1, 1, 0, 1)), PreconditionError);
  CHECK_THROWS_AS(Metric(mat2(1, 0, 0, -1)), PreconditionError);
  CHECK_THROWS_AS(Metric(mat2(1, 0, 0, 0)), PreconditionError);
}

TEST_CASE("adjoint") {
  const Metric g(Matrix(Eigen::Vector2d(1, 2).asDiagonal()));
  const LinearOp a(mat2(0, 1, 0, 0));
  const LinearOp star = adjoint(a, g);
  CHECK(max_abs(star.mat() - mat2(0, 0, 0.5, 0)) < 1e-15);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Vector ei = Vector::Unit(2, i), ej = Vector::Unit(2, j);
      CHECK(g.inner(a.apply(ei), ej) == doctest::Approx(g.inner(ei, star.apply(ej))));
    }
  }
  CHECK(max_abs(adjoint(LinearOp::identity(2), g).mat() - Matrix::Identity(2, 2)) < 1e-15);
  const LinearOp s(mat2(0, 3, -3, 0));
  CHECK(max_abs(adjoint(s, Metric::euclidean(2)).mat() + s.mat()) == 0.0);
}

TEST_CASE("adjoint is an involution and reverses products") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const Metric g = random_metric(rng, n);
    const LinearOp a(random_matrix(rng, n)), b(random_matrix(rng, n));
    CHECK(max_abs(adjoint(adjoint(a, g), g).mat() - a.mat()) < 1e-10);
    CHECK(max_abs(adjoint(a * b, g).mat() - (adjoint(b, g) * adjoint(a, g)).mat()) < 1e-10);
    const Vector x = uniform_vector(rng, n, -1, 1), y = uniform_vector(rng, n, -1, 1);
    CHECK(std::abs(g.inner(a.apply(x), y) - g.inner(x, adjoint(a, g).apply(y))) < 1e-10);
  }
}

TEST_CASE("skew_part") {
  const Metric e = Metric::euclidean(2);
  CHECK(max_abs(skew_part(LinearOp(mat2(1, 2, 0, 1)), e).mat() - mat2(0, 1, -1, 0)) < 1e-15);
  CHECK(max_abs(skew_part(LinearOp(mat2(1, 2, 2, 5)), e).mat()) == 0.0);
  Rng rng(3);
  const Metric g = random_metric(rng, 4);
  const LinearOp k = skew_part(LinearOp(random_matrix(rng, 4)), g);
  CHECK(max_abs(skew_part(k, g).mat() - k.mat()) < 1e-12);
  CHECK(max_abs((adjoint(k, g) + k).mat()) < 1e-12);
}

TEST_CASE("anticommutator") {
  const LinearOp j(mat2(0, -1, 1, 0));
  const LinearOp r(mat2(1, 0, 0, -1));
  CHECK(max_abs(anticommutator(j, r).mat()) == 0.0);
  const LinearOp b(mat2(1, 2, 3, 4));
  CHECK(max_abs(anticommutator(LinearOp::identity(2), b).mat() - 2.0 * b.mat()) == 0.0);
  CHECK(max_abs(anticommutator(j, j).mat() + 2.0 * Matrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("symmetric_eigen") {
  const Metric e = Metric::euclidean(3);
  const auto pairs = symmetric_eigen(LinearOp(Matrix(Eigen::Vector3d(3, 1, 2).asDiagonal())), e);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].value == doctest::Approx(1));
  CHECK(pairs[1].value == doctest::Approx(2));
  CHECK(pairs[2].value == doctest::Approx(3));
  CHECK(std::abs(std::abs(pairs[0].vector(1)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(pairs[1].vector(2)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(pairs[2].vector(0)) - 1.0) < 1e-12);

  for (const auto& p : symmetric_eigen(LinearOp::zero(3), e)) CHECK(p.value == 0.0);

  CHECK_THROWS_AS(symmetric_eigen(LinearOp(mat2(0, 1, 0, 0)), Metric::euclidean(2)), PreconditionError);
}

TEST_CASE("symmetric_eigen on a non-Euclidean metric gives g-orthonormal eigenvectors") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 4;
    const Metric g = random_metric(rng, n);
    const LinearOp m(random_matrix(rng, n));
    const LinearOp sym = 0.5 * (m + adjoint(m, g));
    const auto pairs = symmetric_eigen(sym, g);
    std::vector<Vector> vs;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      vs.push_back(pairs[k].vector);
      CHECK(g.norm(sym.apply(pairs[k].vector) - pairs[k].value * pairs[k].vector) < 1e-9);
      if (k > 0) CHECK(pairs[k - 1].value <= pairs[k].value);
    }
    CHECK(max_abs(gram_matrix(vs, g) - Matrix::Identity(n, n)) < 1e-9);
  }
}

TEST_CASE("orthonormal_complement") {
  const Metric e = Metric::euclidean(3);
  const std::vector<Vector> one{Vector::Unit(3, 0)};
  const auto comp = orthonormal_complement(one, e);
  REQUIRE(comp.size() == 2);
  for (const auto& v : comp) CHECK(std::abs(v(0)) < 1e-15);
  CHECK(max_abs(gram_matrix(comp, e) - Matrix::Identity(2, 2)) < 1e-14);

  const std::vector<Vector> full{Vector::Unit(3, 0), Vector::Unit(3, 1), Vector::Unit(3, 2)};
  CHECK(orthonormal_complement(full, e).empty());

  const std::vector<Vector> dependent{Vector::Unit(3, 0), 2.0 * Vector::Unit(3, 0)};
  CHECK_THROWS_AS(orthonormal_complement(dependent, e), PreconditionError);

  Rng rng(5);
  const Metric g = random_metric(rng, 6);
  const std::vector<Vector> two{uniform_vector(rng, 6, -1, 1), uniform_vector(rng, 6, -1, 1)};
  const auto c = orthonormal_complement(two, g);
  REQUIRE(c.size() == 4);
  CHECK(max_abs(gram_matrix(c, g) - Matrix::Identity(4, 4)) < 1e-12);
  for (const auto& v : c) {
    for (const auto& w : two) CHECK(std::abs(g.inner(v, w)) < 1e-12);
  }
}

TEST_CASE("norms in the g-orthonormal frame") {
  const Metric g(Matrix(Eigen::Vector2d(4, 1).asDiagonal()));
  // e1 has g-length 2, so the operator swapping e1 and e2 scales by 2 and 1/2.
  CHECK(operator_norm(mat2(0, 1, 1, 0), g) == doctest::Approx(2.0));
  const Vector sv = singular_values(LinearOp(mat2(0, 1, 1, 0)), g);
  CHECK(sv(0) == doctest::Approx(0.5));
  CHECK(sv(1) == doctest::Approx(2.0));
  CHECK(covector_norm(Eigen::Vector2d(2, 0), g) == doctest::Approx(1.0));
  CHECK(form_norm(g.gram(), g) == doctest::Approx(1.0));
}

TEST_CASE("pivoted Gram-Schmidt stops at the rank") {
  const Metric e = Metric::euclidean(3);
  const std::vector<Vector> c{Vector::Unit(3, 0), Vector::Unit(3, 0) + 1e-14 * Vector::Unit(3, 1),
                              Vector::Unit(3, 2)};
  const auto basis = pivoted_gram_schmidt(c, e, 3);
  CHECK(basis.size() == 2);
}
