#include <doctest.h>

#include <limits>

#include "lvlab/linalg.hpp"
#include "lvlab/zoo.hpp"
#include "oracles.hpp"

using namespace lvlab;

TEST_CASE("operator norm closed forms") {
  CHECK(operator_norm(RealMatrix::Identity(4, 4)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(RealMatrix::Ones(6, 3)) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-12));
  CHECK(operator_norm(RealMatrix::Zero(3, 5)) == 0.0);
}

TEST_CASE("operator norm matches the dense spectrum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix m = gen_random(20, 10, EntryDist::Gaussian, seed);
    const double tol = 1e-10;
    const double s1 = singular_values(m)[0];
    CHECK(std::abs(operator_norm(m, tol) - s1) / s1 <= tol);
    CHECK(oracle::rel_err(s1, oracle::top_singular(m)) < 1e-12);
  }
}

TEST_CASE("power iteration escapes a start orthogonal to the top eigenvector") {
  // The all-ones start is orthogonal to (1, -1), the top eigenvector here.
  RealMatrix b(2, 2);
  b << 1.0, -1.0, -1.0, 1.0;
  b += 0.5 * RealMatrix::Identity(2, 2);
  auto apply = [&](const RealVector& x, RealVector& y) { y = b * x; };
  const auto res = power_iteration<double>(apply, 2, {});
  CHECK(res.lambda == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("singular values closed forms") {
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const auto s = singular_values(d);
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[1] == doctest::Approx(1.0));
  const auto ones = singular_values(RealMatrix::Ones(4, 4));
  CHECK(ones[0] == doctest::Approx(4.0));
  for (Index i = 1; i < 4; ++i) CHECK(ones[i] == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("Frobenius identity for the Dirichlet matrix") {
  const auto s = singular_values(gen_dirichlet(8, 16));
  CHECK(s.values.squaredNorm() == doctest::Approx(128.0).epsilon(1e-9));
}

TEST_CASE("dense cap") {
  const ComplexMatrix big = ComplexMatrix::Ones(kDenseCap + 1, kDenseCap + 1);
  CHECK_THROWS_AS(singular_values(big), Error);
  try {
    singular_values(big);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("invalid inputs are rejected") {
  ComplexMatrix m = ComplexMatrix::Ones(2, 2);
  m(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(operator_norm(m), Error);
  CHECK_THROWS_AS(operator_norm(ComplexMatrix::Ones(2, 2), 0.0), Error);
  CHECK_THROWS_AS(schatten_norm(ComplexMatrix::Ones(2, 2), 0.5), Error);
}

TEST_CASE("Schatten norms") {
  CHECK(schatten_norm(RealMatrix::Identity(3, 3), 2.0) == doctest::Approx(std::sqrt(3.0)));
  for (double p : {1.0, 2.0, 3.5, 10.0, std::numeric_limits<double>::infinity()})
    CHECK(schatten_norm(RealMatrix::Ones(4, 4), p) == doctest::Approx(4.0).epsilon(1e-9));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix m = gen_random(10, 6, EntryDist::UnitComplex, seed);
    const double direct = std::pow(std::real(oracle::trace_power(m, 2)), 0.25);
    CHECK(schatten_norm(m, 4.0) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("Gram matrix") {
  CHECK(gram(RealMatrix::Identity(3, 3)).isApprox(ComplexMatrix::Identity(3, 3)));
  const GramMatrix a = gram(gen_random(5, 8, EntryDist::UnitComplex, 7));
  for (Index i = 0; i < 5; ++i) CHECK(std::real(a(i, i)) == doctest::Approx(8.0).epsilon(1e-12));
  const GramMatrix d = gram(gen_dirichlet(8, 12));
  for (Index i = 0; i < 12; ++i) CHECK(std::real(d(i, i)) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("property: norm inequalities on 100 random matrices") {
  Rng shape(99);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto T = static_cast<Index>(1 + shape.below(15));
    const auto N = static_cast<Index>(1 + shape.below(15));
    const auto dist = static_cast<EntryDist>(seed % 3);
    const ComplexMatrix m = gen_random(T, N, dist, seed);
    const double op = operator_norm(m, 1e-10);
    CHECK(op <= schatten_norm(m, 2.0) * (1.0 + 1e-12));
    CHECK(std::abs(op - operator_norm(ComplexMatrix(m.adjoint()), 1e-10)) <= 1e-9 * std::max(op, 1.0));
    const double s1 = singular_values(m)[0];
    CHECK(std::abs(op - s1) <= 1e-10 * s1);
    CHECK(std::abs(std::real(gram(m).trace()) - m.squaredNorm()) <= 1e-9 * m.squaredNorm());
    const GramMatrix a = gram(m);
    CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("principal minor eigenvalue") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = 2.0;
  h(1, 1) = 5.0;
  h(2, 2) = 1.0;
  CHECK(principal_lambda_max(h, {0, 2}) == doctest::Approx(2.0));
  CHECK(principal_lambda_max(h, {1}) == doctest::Approx(5.0));
}
