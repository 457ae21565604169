#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lvlab/majorant.hpp"

using namespace lvlab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TrigPolynomial integer_poly(int degree, Rng& rng, bool positive = false) {
  TrigPolynomial d;
  for (int n = 0; n <= degree; ++n)
    if (n == 0 || rng.uniform() < 0.6) d.freqs.freqs.push_back(kTwoPi * n);
  d.coeffs.resize(d.freqs.size());
  for (Index i = 0; i < d.coeffs.size(); ++i) {
    const double mod = rng.uniform();
    d.coeffs(i) = positive ? Complex(mod, 0.0) : mod * rng.unit_complex();
  }
  return d;
}

TrigPolynomial dirichlet_poly(Index N, Rng& rng) {
  TrigPolynomial d{dirichlet_frequencies(N), ComplexVector(N)};
  for (Index i = 0; i < N; ++i) d.coeffs(i) = rng.uniform() * rng.unit_complex();
  return d;
}

}  // namespace

TEST_CASE("majorize") {
  Rng rng(1);
  const TrigPolynomial pos = integer_poly(10, rng, true);
  CHECK(majorize(pos).coeffs == pos.coeffs);
  const TrigPolynomial d = integer_poly(10, rng);
  const TrigPolynomial m = majorize(d);
  CHECK(m(0.0).real() == doctest::Approx(d.coeffs.cwiseAbs().sum()));
  CHECK(std::abs(m(0.0)) >= std::abs(d(0.0)));
  CHECK(majorize(m).coeffs == m.coeffs);
  TrigPolynomial bad = d;
  bad.coeffs.conservativeResize(bad.coeffs.size() - 1);
  CHECK_THROWS_AS(validate_trig(bad), Error);
}

TEST_CASE("property: circle majorant inequality on 200 random polynomials") {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const TrigPolynomial d = integer_poly(1 + static_cast<int>(rng.below(32)), rng);
    const int s = 1 + trial % 3;
    const MajorantVerdict v = circle_majorant_check(d, s);
    CHECK(v.holds);
    CHECK(v.lhs <= v.rhs * (1.0 + 1e-9));
    if (s == 1) {
      CHECK(v.lhs == doctest::Approx(d.coeffs.squaredNorm()).epsilon(1e-12));
      CHECK(v.lhs == doctest::Approx(v.rhs).epsilon(1e-12));
    }
  }
  const TrigPolynomial pos = integer_poly(12, rng, true);
  const MajorantVerdict eq = circle_majorant_check(pos, 3);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-12));
}

TEST_CASE("circle integral against quadrature") {
  Rng rng(3);
  const TrigPolynomial d = integer_poly(6, rng);
  const int s = 2;
  // |D|^4 has degree <= 24, so a 64-point rule is exact.
  double quad = 0.0;
  for (int k = 0; k < 64; ++k) quad += std::pow(std::abs(d(k / 64.0)), 2 * s) / 64.0;
  CHECK(circle_majorant_check(d, s).lhs == doctest::Approx(quad).epsilon(1e-10));
  TrigPolynomial frac = d;
  frac.freqs.freqs[0] += 0.5;
  CHECK_THROWS_AS(circle_majorant_check(frac, 1), Error);
}

TEST_CASE("property: difference-set majorant inequality on 200 random inputs") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const TrigPolynomial d = dirichlet_poly(8 + static_cast<Index>(rng.below(16)), rng);
    std::vector<double> tees;
    for (int i = 0; i < 8; ++i) tees.push_back(100.0 * rng.uniform());
    const int s = 1 + trial % 2;
    const MajorantVerdict v = diffset_majorant_check(d, tees, s);
    CHECK(v.holds);
    double lhs = 0.0;
    for (double a : tees)
      for (double b : tees) lhs += std::pow(std::abs(d(a - b)), 2 * s);
    CHECK(v.lhs == doctest::Approx(lhs).epsilon(1e-10));
  }
  const TrigPolynomial d = dirichlet_poly(10, rng);
  const MajorantVerdict single = diffset_majorant_check(d, {3.0}, 2);
  CHECK(single.lhs == doctest::Approx(std::pow(std::abs(d(0.0)), 4)));
  CHECK(single.rhs == doctest::Approx(std::pow(d.coeffs.cwiseAbs().sum(), 4)));
  const TrigPolynomial m = majorize(d);
  const MajorantVerdict eq = diffset_majorant_check(m, {0.0, 1.5, 7.0}, 2);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-12));
}

TEST_CASE("Dirichlet majorant profile") {
  const MajorantProfile p = dirichlet_majorant_profile(64, 512, 0.25);
  CHECK(p.points.front().t == 0.0);
  CHECK(p.points.front().value == doctest::Approx(64.0));
  CHECK(p.max_value < 64.0);
  CHECK(p.argmax_t >= 1.0);
  CHECK(p.ratio_to_sqrt_n == doctest::Approx(p.max_value / 8.0));
  for (Index n : {16, 24, 32, 48, 96}) CHECK(dirichlet_majorant_profile(n, 4.0 * n, 0.25).max_value < n);

  // |D(-t)| = |conj(D(t))|
  TrigPolynomial d{dirichlet_frequencies(20), ComplexVector::Ones(20)};
  for (double t : {1.3, 7.7, 40.2}) CHECK(std::abs(d(-t)) == doctest::Approx(std::abs(d(t))).epsilon(1e-12));
}

TEST_CASE("AP energy bound") {
  CHECK(symmetric_ap(0.5, 2) == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const TrigPolynomial d = dirichlet_poly(16, rng);
    const double alpha = 0.1 + 5.0 * rng.uniform();
    const int J = static_cast<int>(rng.below(9));
    const int s = 1 + trial % 2;
    const APEnergyVerdict v = ap_energy_bound_check(d, alpha, J, s);
    CHECK(v.holds);
    const APEnergyVerdict w = ap_energy_bound_check(d, symmetric_ap(alpha, J), s);
    CHECK(w.sum_on_w == doctest::Approx(v.sum_on_w));
    CHECK(w.hb_bound == doctest::Approx(v.hb_bound));
  }
  const TrigPolynomial d = dirichlet_poly(12, rng);
  const APEnergyVerdict zero = ap_energy_bound_check(d, 1.0, 0, 2);
  CHECK(zero.sum_on_w == doctest::Approx(std::pow(std::abs(d(0.0)), 4)));
  CHECK(zero.sum_on_w <= std::pow(std::abs(majorize(d)(0.0)), 4));
  CHECK(ap_energy_bound_check(majorize(d), 0.7, 4, 1).holds);
  CHECK_THROWS_AS(ap_energy_bound_check(d, {0.0, 1.0, 3.0}, 1), Error);
  TrigPolynomial big = d;
  big.coeffs(0) = 2.0;
  CHECK_THROWS_AS(ap_energy_bound_check(big, 1.0, 2, 1), Error);
}
