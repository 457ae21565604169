#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lvlab/zoo.hpp"
#include "oracles.hpp"

using namespace lvlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an lvlab::Error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("Dirichlet entries") {
  const ComplexMatrix m = gen_dirichlet(4, 3);
  CHECK(std::abs(m(0, 0) - std::polar(1.0, std::log(5.0))) < 1e-15);
  const ComplexMatrix big = gen_dirichlet(9, 13);
  CHECK((big.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
  CHECK(std::pow(operator_norm(gen_dirichlet(8, 8)), 2) <= 80.0);
}

TEST_CASE("AC entries and squares") {
  const ComplexMatrix m = gen_ac(4, 2);
  CHECK(std::abs(m(0, 3) - std::polar(1.0, std::sqrt(2.0))) < 1e-15);
  const FrequencySet phi = ac_frequencies(100);
  for (Index mm = 11; mm * mm <= 200; ++mm)
    CHECK(phi.freqs[static_cast<std::size_t>(mm * mm - 101)] == doctest::Approx(mm / 10.0).epsilon(1e-15));
}

TEST_CASE("frequency-set matrices") {
  FrequencySet zero{{0.0}, "zero"};
  CHECK(gen_freqset(zero, 5).isApprox(ComplexMatrix::Ones(5, 1)));
  const ComplexMatrix via_set = gen_freqset(dirichlet_frequencies(8), 12);
  CHECK((via_set - gen_dirichlet(8, 12)).cwiseAbs().maxCoeff() <= 1e-12);

  const Index T = 12;
  FrequencySet dft{{}, "dft"};
  for (Index k = 0; k < T; ++k) dft.freqs.push_back(2.0 * std::numbers::pi * k / T);
  const auto s = singular_values(gen_freqset(dft, T));
  for (Index i = 0; i < T; ++i) CHECK(s[i] == doctest::Approx(std::sqrt(12.0)).epsilon(1e-10));
  CHECK_THROWS_AS(gen_freqset(FrequencySet{}, 3), Error);
}

TEST_CASE("random families") {
  const ComplexMatrix pm = gen_random(30, 20, EntryDist::PlusMinusOne, 4);
  CHECK((pm.imag().array() == 0.0).all());
  CHECK((pm.real().array().abs() == 1.0).all());
  const ComplexMatrix uc = gen_random(30, 20, EntryDist::UnitComplex, 4);
  CHECK((uc.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK(gen_random(7, 5, EntryDist::Gaussian, 11) == gen_random(7, 5, EntryDist::Gaussian, 11));
  CHECK(gen_random(7, 5, EntryDist::Gaussian, 11) != gen_random(7, 5, EntryDist::Gaussian, 12));
  CHECK(parse_entry_dist("pm1") == EntryDist::PlusMinusOne);
  CHECK_THROWS_AS(parse_entry_dist("cauchy"), Error);
}

TEST_CASE("Gaussian operator norm interval over 50 seeds") {
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double op = operator_norm(gen_random(200, 100, EntryDist::Gaussian, seed));
    inside += (op >= 0.5 * std::sqrt(200.0) && op <= 2.5 * std::sqrt(200.0)) ? 1 : 0;
  }
  CHECK(inside >= 50 * 99 / 100);
}

TEST_CASE("Haar orthogonal matrix") {
  Rng rng(3);
  const RealMatrix o = haar_orthogonal(16, rng);
  CHECK((o.transpose() * o - RealMatrix::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("planted instance structure") {
  PlantedParams p;
  p.seed = 17;
  const PlantedInstance inst = gen_planted(p);
  CHECK(inst.rows == 512);
  CHECK(inst.support_size == planted_support_size(p));
  CHECK(static_cast<Index>(inst.support.size()) == inst.support_size);
  CHECK(inst.support_size ==
        static_cast<Index>(std::llround(std::pow(64.0, 1.5 + 1.0 - 1.7 - 0.01))));
  for (Index t = 0; t < inst.rows; ++t) {
    if (!std::binary_search(inst.support.begin(), inst.support.end(), t)) CHECK(inst.sparse_vector(t) == 0.0);
  }
  CHECK(inst.a.col(0) == inst.sparse_vector);
  // Same arithmetic path, so the reconstruction is exact.
  CHECK((inst.a * inst.o).cast<Complex>() == inst.matrix);
  const ComplexVector mv = inst.matrix * inst.input_witness.cast<Complex>();
  const RealVector target = std::sqrt(64.0) * inst.sparse_vector;
  CHECK((mv.real() - target).norm() <= 1e-9 * target.norm());
  CHECK(mv.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(gen_planted(p).matrix == inst.matrix);
}

TEST_CASE("planted errors") {
  PlantedParams p;
  p.N = 4;
  p.alpha = 1.1;
  p.sigma = 0.99;
  p.epsilon = 1.0;
  CHECK(kind_of([&] { gen_planted(p); }) == ErrorKind::DegenerateSize);
  PlantedParams bad;
  bad.alpha = 2.5;
  CHECK(kind_of([&] { gen_planted(bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("planted variance reading") {
  PlantedParams p;
  p.seed = 5;
  p.scale = PlantedScale::Variance;
  const PlantedInstance inst = gen_planted(p);
  PlantedParams q = p;
  q.scale = PlantedScale::StdDev;
  const PlantedInstance sd = gen_planted(q);
  const double ratio = static_cast<double>(inst.rows) / static_cast<double>(inst.support_size);
  // Same draws; only the scale differs.
  CHECK(sd.sparse_vector.norm() / inst.sparse_vector.norm() == doctest::Approx(std::pow(ratio, 0.25)));
}

TEST_CASE("periodic Schrodinger matrix") {
  const ComplexMatrix m = gen_periodic_schrodinger(8, 2);
  CHECK(m.rows() == 17 * 64);
  CHECK(m.cols() == 17);
  CHECK((m.col(8).array() - Complex(1.0, 0.0)).abs().maxCoeff() < 1e-15);
  const ComplexMatrix g = m.adjoint() * m;
  const double rows = static_cast<double>(m.rows());
  CHECK((g - rows * ComplexMatrix::Identity(17, 17)).cwiseAbs().maxCoeff() < 1e-9 * rows);
  CHECK(singular_values(m).values.squaredNorm() == doctest::Approx(rows * 17.0).epsilon(1e-9));
  CHECK(kind_of([] { gen_periodic_schrodinger(4, 3); }) == ErrorKind::Unsupported);
  CHECK(kind_of([] { gen_periodic_schrodinger(33, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("almost counterexample at sigma = 3/4") {
  const CounterexampleInstance inst = gen_almost_counterexample(100, 1000.0, 0.75);
  CHECK(inst.witness_times.size() == 16);
  CHECK(inst.squares_available == 4);  // 121, 144, 169, 196
  CHECK(inst.progression_len == 4);
  const double predicted = std::pow(100.0, 0.25) * 4.0;
  CHECK(inst.predicted == doctest::Approx(predicted).epsilon(1e-15));
  CHECK(std::abs(inst.evaluate(0.0)) == doctest::Approx(predicted).epsilon(1e-14));
  for (double t : inst.witness_times) CHECK(std::abs(inst.evaluate(t)) == doctest::Approx(predicted).epsilon(1e-9));
  for (std::size_t k = 1; k < inst.witness_times.size(); ++k)
    CHECK(inst.witness_times[k] - inst.witness_times[k - 1] >= 1.0);
  const double l2 = inst.coeffs.squaredNorm();
  CHECK(l2 == doctest::Approx(std::sqrt(100.0) * 4.0));
  CHECK(l2 <= 100.0);
  CHECK(inst.matrix.rows() == 1000);
  // The matrix route agrees with direct evaluation at integer times.
  const ComplexVector y = inst.matrix * inst.coeffs;
  CHECK(std::abs(y(62) - inst.evaluate(63.0)) < 1e-9);
}

TEST_CASE("almost counterexample below 3/4 and options") {
  const CounterexampleInstance inst = gen_almost_counterexample(100, 500.0, 0.6);
  CHECK(inst.progression_len == 3);
  CHECK(inst.coeffs.squaredNorm() == doctest::Approx(100.0));
  const CounterexampleInstance rounded = gen_almost_counterexample(100, 500.0, 0.75, true);
  for (double t : rounded.witness_times) CHECK(t == std::round(t));
  CHECK(kind_of([] { gen_almost_counterexample(1, 10.0, 0.75); }) == ErrorKind::NoSquares);
  CHECK(kind_of([] { gen_almost_counterexample(100, 10.0, 0.9); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: l2 budget whenever L <= sqrt(N)") {
  for (Index N = 2; N <= 400; N += 7) {
    const CounterexampleInstance inst = gen_almost_counterexample(N, 10.0, 0.75);
    const double l2 = inst.coeffs.squaredNorm();
    CHECK(l2 == doctest::Approx(std::sqrt(static_cast<double>(N)) * inst.progression_len));
    if (static_cast<double>(inst.progression_len) <= std::sqrt(static_cast<double>(N))) CHECK(l2 <= N * (1 + 1e-12));
  }
}

TEST_CASE("fat arithmetic progression") {
  const FatAPInstance inst = gen_fat_ap(256, 1024.0, 256);
  CHECK(inst.interval_len == 8);
  CHECK(std::abs(inst.evaluate(0.0)) == doctest::Approx(8.0));
  REQUIRE(!inst.empirical_star.empty());
  CHECK(inst.empirical_star.front().lo == 0.0);
  CHECK(inst.fattening_radius > 0.0);
  CHECK(inst.progression_step == doctest::Approx(2.0 * std::numbers::pi * 260.5).epsilon(0.01));
  const double step = inst.progression_step;
  for (const auto& iv : inst.empirical_star) {
    for (double t : {iv.lo, iv.hi}) {
      const double resid = std::abs(t - step * std::round(t / step));
      CHECK(resid <= step / 4.0);
    }
  }
  CHECK(inst.coeffs.sum() == 8.0);
  CHECK(kind_of([] { gen_fat_ap(256, 1024.0, 100); }) == ErrorKind::IntervalOutOfRange);
  CHECK(kind_of([] { gen_fat_ap(256, 1024.0, 510); }) == ErrorKind::IntervalOutOfRange);
  CHECK(kind_of([] { gen_fat_ap(16, 1024.0, 16); }) == ErrorKind::IntervalOutOfRange);
}

TEST_CASE("fat AP sees the progression when the scan is long enough") {
  const FatAPInstance inst = gen_fat_ap(64, 64.0, 64, 0.25);
  CHECK(inst.interval_len == 8);
  // Step about 2 pi * 68 < T is not reached here; check the one at 0 only.
  CHECK(inst.empirical_star.front().lo == 0.0);
}
