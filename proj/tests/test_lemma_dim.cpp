#include "acmslab/error.hpp"
#include "acmslab/lemma_dim.hpp"

#include <doctest.h>

using namespace acmslab;

namespace {

// J: e1 → e2 → −e1, e3 → e4 → −e3; A: e1 → e3, e2 → −e4, e3 → −e1, e4 → e2.
ComplexStructuredSpace example_space() {
  Matrix j = Matrix::Zero(4, 4);
  j(1, 0) = 1;
  j(0, 1) = -1;
  j(3, 2) = 1;
  j(2, 3) = -1;
  return ComplexStructuredSpace(LinearOp(j), Metric::euclidean(4));
}

LinearOp example_a() {
  Matrix a = Matrix::Zero(4, 4);
  a(2, 0) = 1;
  a(3, 1) = -1;
  a(0, 2) = -1;
  a(1, 3) = 1;
  return LinearOp(a);
}

// The standard structure transported by a random frame change T:
// J' = T J T⁻¹, g' = T⁻ᵀ T⁻¹.
ComplexStructuredSpace skewed_space(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix t(n, n);
  for (int c = 0; c < n; ++c) t.col(c) = uniform_vector(rng, n, -1, 1);
  t += 2.0 * Matrix::Identity(n, n);
  const Matrix ti = t.inverse();
  const Matrix j = t * ComplexStructuredSpace::standard(n).j().mat() * ti;
  Matrix gram = ti.transpose() * ti;
  gram = 0.5 * (gram + gram.transpose());
  return ComplexStructuredSpace(LinearOp(j), Metric(gram));
}

// Dimension of {A : AJ + JA = 0 (, A* = −A)} from the singular values of the
// vectorized constraint system.
int constraint_nullity(const ComplexStructuredSpace& space, bool skew) {
  const int n = space.dim();
  const Matrix& j = space.j().mat();
  const Matrix& g = space.g().gram();
  const int rows = skew ? 2 * n * n : n * n;
  Matrix sys = Matrix::Zero(rows, n * n);
  for (int col = 0; col < n * n; ++col) {
    Matrix e = Matrix::Zero(n, n);
    e(col % n, col / n) = 1.0;
    Matrix c = e * j + j * e;
    sys.block(0, col, n * n, 1) = Eigen::Map<Vector>(c.data(), n * n);
    if (skew) {
      Matrix s = g * e + e.transpose() * g;
      sys.block(n * n, col, n * n, 1) = Eigen::Map<Vector>(s.data(), n * n);
    }
  }
  const Vector sv = Eigen::JacobiSVD<Matrix>(sys).singularValues();
  int nullity = n * n;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > 1e-9 * sv(0)) --nullity;
  }
  return nullity;
}

}  // namespace

TEST_CASE("complex structured space validation") {
  CHECK_THROWS_AS(ComplexStructuredSpace::standard(3), PreconditionError);
  CHECK_THROWS_AS(ComplexStructuredSpace(LinearOp::identity(2), Metric::euclidean(2)), PreconditionError);
  const auto s = ComplexStructuredSpace::standard(6);
  CHECK(max_abs((s.j() * s.j()).mat() + Matrix::Identity(6, 6)) == 0.0);
}

TEST_CASE("dim-4 example: generic vector, witness and decomposition") {
  const auto space = example_space();
  const LinearOp a = example_a();
  CHECK(anticommutation_residual(space, a) == 0.0);
  CHECK(skewness_residual(space, a) == 0.0);

  const Vector y = find_generic_vector(space, a);
  CHECK(max_abs(y - Vector::Unit(4, 0)) < 1e-15);
  CHECK(triple_gram_determinant(space, a, y) == doctest::Approx(1.0));

  const Vector z = find_orthogonal_witness(space, a, y);
  CHECK(max_abs(z - Vector::Unit(4, 3)) < 1e-15);
  const Vector jay = space.j().apply(a.apply(y));
  CHECK(space.g().inner(z, jay) == doctest::Approx(1.0));

  const auto quads = quadruple_decomposition(space, a);
  REQUIRE(quads.size() == 1);
  const auto vs = quads[0].vectors();
  const Matrix gram = gram_matrix(vs, space.g());
  CHECK(max_abs(gram - Matrix(gram.diagonal().asDiagonal())) < 1e-10);

  const auto report = check_mod4(space, a);
  CHECK(report.verdict());
  CHECK(report.at("quadruple count = dim/4").detail == "1 quadruples");
}

TEST_CASE("witness is the normalized JAY when it is already orthogonal") {
  const auto space = example_space();
  const LinearOp a = 3.0 * example_a();
  const Vector y = Vector::Unit(4, 0);
  const Vector jay = space.j().apply(a.apply(y));
  const Vector z = find_orthogonal_witness(space, a, y);
  CHECK(max_abs(z - jay / jay.norm()) < 1e-15);
}

TEST_CASE("preconditions") {
  const auto space = example_space();
  CHECK_THROWS_WITH_AS(find_generic_vector(space, LinearOp::zero(4)), doctest::Contains("A must be nonzero"),
                       PreconditionError);
  CHECK_THROWS_AS(find_generic_vector(space, LinearOp::identity(4)), PreconditionError);
  // Non-skew: a g-symmetric A anticommuting with J.
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = 1;
  s(1, 1) = -1;
  s(2, 2) = 1;
  s(3, 3) = -1;
  CHECK(anticommutation_residual(space, LinearOp(s)) == 0.0);
  CHECK_THROWS_AS(quadruple_decomposition(space, LinearOp(s)), PreconditionError);
  CHECK_THROWS_AS(check_mod4(space, LinearOp(s)), PreconditionError);
}

TEST_CASE("sampler dimension matches the constraint null space") {
  for (int n : {2, 4, 6, 8}) {
    for (bool skew : {false, true}) {
      const auto std_space = ComplexStructuredSpace::standard(n);
      CHECK(ConstrainedOperatorSampler(std_space, skew).freedom() == constraint_nullity(std_space, skew));
      const auto tilted = skewed_space(n, 100 + n);
      CHECK(ConstrainedOperatorSampler(tilted, skew).freedom() == constraint_nullity(tilted, skew));
    }
  }
}

TEST_CASE("sampler output satisfies the constraints and the projection is idempotent") {
  for (int n : {4, 6, 10}) {
    const auto space = skewed_space(n, 7 * n);
    for (bool skew : {false, true}) {
      const ConstrainedOperatorSampler sampler(space, skew);
      Rng rng(n);
      for (int t = 0; t < 20; ++t) {
        const LinearOp a = sampler.sample(rng);
        CHECK(anticommutation_residual(space, a) < 1e-12);
        if (skew) CHECK(skewness_residual(space, a) < 1e-12);
        CHECK(max_abs(sampler.project(a.mat()).mat() - a.mat()) < 1e-12);
      }
    }
  }
}

TEST_CASE("part 1 on random anticommuting operators, dim 8") {
  const auto space = ComplexStructuredSpace::standard(8);
  const ConstrainedOperatorSampler sampler(space, false);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const LinearOp a = sampler.sample(rng);
    const Vector y = find_generic_vector(space, a, {}, seed);
    CHECK(triple_gram_determinant(space, a, y) > 1e-8);
    const Vector z = find_orthogonal_witness(space, a, y);
    CHECK(std::abs(space.g().inner(z, space.j().apply(a.apply(y)))) > 1e-8);
    for (const Vector& v : {y, space.j().apply(y), a.apply(y)}) CHECK(std::abs(space.g().inner(z, v)) < 1e-10);
  }
}

TEST_CASE("part 2: quadruples in dim 8 on a tilted metric") {
  const auto space = skewed_space(8, 42);
  const ConstrainedOperatorSampler sampler(space, true);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const LinearOp a = sampler.sample(rng);
    REQUIRE(sigma_min(space, a) > 1e-6);
    const auto quads = quadruple_decomposition(space, a);
    CHECK(quads.size() == 2);
    std::vector<Vector> all;
    for (const auto& q : quads) {
      CHECK(max_abs(space.j().apply(q.x) - q.jx) < 1e-10);
      CHECK(max_abs(a.apply(q.x) - q.ax) < 1e-10);
      for (auto& v : q.vectors()) all.push_back(v / space.g().norm(v));
    }
    const Matrix gram = gram_matrix(all, space.g());
    CHECK(max_abs(gram - Matrix::Identity(8, 8)) < 1e-8);
    // A in the orthonormal quadruple basis is block diagonal with 4x4 blocks.
    const Matrix basis = from_columns(all, 8);
    const Matrix block = basis.transpose() * space.g().gram() * a.mat() * basis;
    double off_block = 0.0;
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        if (r / 4 != c / 4) off_block = std::max(off_block, std::abs(block(r, c)));
      }
    }
    CHECK(off_block < 1e-8);
    for (const auto& q : quads) {
      CHECK(q.eigenvalue < 0.0);
      CHECK(std::abs(space.g().inner(q.ax, q.ax) + q.eigenvalue * space.g().inner(q.x, q.x)) < 1e-8);
    }
  }
}

TEST_CASE("contrapositive: skew anticommuting operators are singular in dim 2 mod 4") {
  for (int n : {2, 6, 10}) {
    const auto space = ComplexStructuredSpace::standard(n);
    const ConstrainedOperatorSampler sampler(space, true);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng(seed);
      const LinearOp a = sampler.sample(rng);
      CHECK(sigma_min(space, a) < 1e-8);
      CHECK(check_mod4(space, a).verdict());
    }
  }
}
