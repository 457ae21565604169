#include <doctest.h>

#include <cmath>

#include "lvlab/oracle.hpp"
#include "lvlab/zoo.hpp"
#include "oracles.hpp"

using namespace lvlab;

TEST_CASE("ssv_exact examples") {
  const ComplexMatrix m = gen_random(9, 4, EntryDist::Gaussian, 3);
  CHECK(oracle::rel_err(ssv_exact(m, 9).value, oracle::top_singular(m)) < 1e-10);
  const GramMatrix a = gram(m);
  CHECK(oracle::rel_err(ssv_exact(m, 1).value, std::sqrt(a.diagonal().real().maxCoeff())) < 1e-12);
  const SsvResult id = ssv_exact(RealMatrix::Identity(4, 4).cast<Complex>(), 2);
  CHECK(id.value == doctest::Approx(1.0));
  CHECK(id.argmax.indices == std::vector<Index>{0, 1});  // lexicographically smallest of the ties
  CHECK_THROWS_AS(ssv_exact(gen_random(60, 2, EntryDist::Gaussian, 1), 30), Error);
  CHECK_THROWS_AS(ssv_exact(m, 0), Error);
  CHECK_THROWS_AS(ssv_exact(m, 10), Error);
}

TEST_CASE("ssv_exact against the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const ComplexMatrix m = gen_random(9, 4, static_cast<EntryDist>(seed % 3), seed);
    const GramMatrix a = gram(m);
    for (Index s = 1; s <= 9; ++s) {
      const SsvResult r = ssv_exact(m, s);
      CHECK(oracle::rel_err(r.value, oracle::ssv(m, s)) < 1e-10);
      CHECK(r.argmax.size() == s);
      CHECK(oracle::rel_err(subset_norm(a, r.argmax), r.value) < 1e-12);
    }
  }
}

TEST_CASE("ssv_exact does not depend on the thread count") {
  const ComplexMatrix m = gen_random(16, 6, EntryDist::UnitComplex, 5);
  for (Index s : {3, 5, 8}) {
    const SsvResult one = ssv_exact(m, s, 1);
    for (int threads : {2, 3, 8}) {
      const SsvResult many = ssv_exact(m, s, threads);
      CHECK(many.value == one.value);
      CHECK(many.argmax == one.argmax);
    }
  }
  // Exact ties across blocks: every pair of rows of a repeated row matrix is optimal.
  const ComplexMatrix rep = ComplexMatrix::Ones(12, 3);
  CHECK(ssv_exact(rep, 4, 5).argmax.indices == std::vector<Index>{0, 1, 2, 3});
}

TEST_CASE("ssv_search head-to-head with the exact value") {
  int equal = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ComplexMatrix m = gen_random(16, 8, EntryDist::UnitComplex, 100 + seed);
    const double exact = ssv_exact(m, 4).value;
    const SsvResult found = ssv_search(m, 4, seed, 2000);
    CHECK(found.value <= exact * (1.0 + 1e-12));
    equal += std::abs(found.value - exact) <= 1e-10 * exact ? 1 : 0;
  }
  CHECK(equal >= 40);

  const ComplexMatrix m = gen_random(20, 5, EntryDist::Gaussian, 8);
  CHECK(ssv_search(m, 1, 3, 50).value == doctest::Approx(ssv_exact(m, 1).value).epsilon(1e-12));
  const SsvResult a = ssv_search(m, 6, 11, 500);
  const SsvResult b = ssv_search(m, 6, 11, 500);
  CHECK(a.value == b.value);
  CHECK(a.argmax == b.argmax);
}

TEST_CASE("subset validation") {
  CHECK_THROWS_AS(validate_subset(RowSubset{}, 4), Error);
  CHECK_THROWS_AS(validate_subset(RowSubset{{1, 1}}, 4), Error);
  CHECK_THROWS_AS(validate_subset(RowSubset{{2, 1}}, 4), Error);
  CHECK_THROWS_AS(validate_subset(RowSubset{{0, 4}}, 4), Error);
  CHECK_NOTHROW(validate_subset(RowSubset{{0, 3}}, 4));
}

TEST_CASE("focusing on a single row") {
  const ComplexMatrix m = gen_random(20, 16, EntryDist::UnitComplex, 2);
  const Witness w = witness_focusing(m, RowSubset{{7}}, 1.0, 15.5);
  CHECK(std::abs((m * w.input)(7) - 16.0) < 1e-12);
  CHECK(std::find(w.achieved.indices.begin(), w.achieved.indices.end(), 7) != w.achieved.indices.end());
  CHECK(w.norm_linf == doctest::Approx(1.0));
  CHECK(w.norm_l2 == doctest::Approx(4.0));
}

TEST_CASE("focusing achieves most of U") {
  const Index T = 256;
  const Index N = 64;
  const double sigma = 0.8;
  const Index u_size = static_cast<Index>(std::llround(std::pow(N, 2.0 - 2.0 * sigma)));
  CHECK(u_size == 5);
  const double lambda = 0.5 * std::pow(N, sigma);
  int good = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ComplexMatrix m = gen_random(T, N, EntryDist::UnitComplex, 500 + seed);
    Rng rng(seed);
    RowSubset u;
    while (u.size() < u_size) {
      const Index t = static_cast<Index>(rng.below(T));
      if (std::find(u.indices.begin(), u.indices.end(), t) == u.indices.end()) u.indices.push_back(t);
    }
    std::sort(u.indices.begin(), u.indices.end());
    const Witness w = witness_focusing(m, u, std::pow(N, sigma - 1.0), lambda);
    Index hit = 0;
    for (Index t : u.indices)
      hit += std::binary_search(w.achieved.indices.begin(), w.achieved.indices.end(), t) ? 1 : 0;
    good += 2 * hit >= u_size ? 1 : 0;
  }
  CHECK(good >= 45);
}

TEST_CASE("clipping is applied and recorded") {
  const ComplexMatrix m = gen_random(30, 10, EntryDist::UnitComplex, 4);
  RowSubset u{{0, 1, 2, 3, 4, 5}};
  const Witness raw = witness_focusing(m, u, 1.0, 1.0, false);
  CHECK(raw.norm_linf > 1.0);
  CHECK_FALSE(raw.clipped);
  const Witness clip = witness_focusing(m, u, 1.0, 1.0, true);
  CHECK(clip.clipped);
  CHECK(clip.norm_linf <= 1.0 + 1e-15);
  for (Index j = 0; j < 10; ++j) {
    if (std::abs(raw.input(j)) > 1.0)
      CHECK(std::abs(std::arg(clip.input(j)) - std::arg(raw.input(j))) < 1e-12);
    else
      CHECK(clip.input(j) == raw.input(j));
  }
}

TEST_CASE("property: witness soundness is recomputed independently") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ComplexMatrix m = gen_random(40, 12, static_cast<EntryDist>(seed % 3), seed);
    const double lambda = 1.0 + static_cast<double>(seed % 7);
    const Witness w = seed % 2 ? witness_random(m, lambda, InputNorm::Linf, 1.0, seed, 5)
                               : witness_focusing(m, RowSubset{{static_cast<Index>(seed % 40)}}, 0.5, lambda);
    const ComplexVector y = m * w.input;
    std::vector<Index> expect;
    for (Index t = 0; t < 40; ++t)
      if (std::abs(y(t)) > lambda) expect.push_back(t);
    CHECK(w.achieved.indices == expect);
    CHECK(w.norm_l2 == doctest::Approx(w.input.norm()));
    CHECK(w.norm_linf == doctest::Approx(w.input.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("random signs cover most rows of a random sign matrix") {
  const Index T = 128;
  const Index N = 64;
  const double lambda = 0.1 * std::sqrt(static_cast<double>(N));
  // For +-1 data (Mb)_t is an even integer; it vanishes with probability
  // C(64, 32) / 2^64 ~ 0.099, which caps the attainable coverage near 0.9.
  double coverage_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix m = gen_random(T, N, EntryDist::PlusMinusOne, seed);
    const Witness w = witness_random(m, lambda, InputNorm::Linf, 1.0, seed, 20);
    const double coverage = static_cast<double>(w.achieved.size()) / T;
    CHECK(coverage >= 0.85);
    coverage_sum += coverage;
  }
  CHECK(coverage_sum / 10.0 <= 0.97);

  const ComplexMatrix m = gen_random(T, N, EntryDist::PlusMinusOne, 1);
  CHECK(witness_random(m, N * 1.0 + 1e-9, InputNorm::Linf, 1.0, 3, 20).achieved.size() == 0);
  const Witness a = witness_random(m, lambda, InputNorm::L2, 8.0, 4, 5);
  const Witness b = witness_random(m, lambda, InputNorm::L2, 8.0, 4, 5);
  CHECK(a.input == b.input);
  CHECK(a.norm_l2 == doctest::Approx(8.0));
}

TEST_CASE("witness JSON") {
  const ComplexMatrix m = gen_random(6, 3, EntryDist::UnitComplex, 1);
  const Witness w = witness_focusing(m, RowSubset{{2}}, 1.0, 2.0);
  const nlohmann::json j = to_json(w);
  CHECK(j["b"]["re"].size() == 3);
  CHECK(j["b"]["im"].size() == 3);
  CHECK(j["lambda"] == 2.0);
  REQUIRE(j["achieved"].size() == w.achieved.indices.size());
  for (std::size_t i = 0; i < w.achieved.indices.size(); ++i)
    CHECK(j["achieved"][i] == w.achieved.indices[i] + 1);  // 1-based on disk
  CHECK(std::find(j["achieved"].begin(), j["achieved"].end(), 3) != j["achieved"].end());
  CHECK(j.contains("norms"));
  CHECK(parse_input_norm("l2") == InputNorm::L2);
  CHECK_THROWS_AS(parse_input_norm("l3"), Error);
}
