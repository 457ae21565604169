#include "lvlab/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace lvlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix exp_sum_matrix(const std::vector<double>& freqs, Index T) {
  ComplexMatrix m(T, static_cast<Index>(freqs.size()));
  for (Index c = 0; c < m.cols(); ++c) {
    const double xi = freqs[static_cast<std::size_t>(c)];
    for (Index r = 0; r < T; ++r) {
      const double phase = static_cast<double>(r + 1) * xi;
      m(r, c) = Complex(std::cos(phase), std::sin(phase));
    }
  }
  return m;
}

Index isqrt(Index n) {
  auto r = static_cast<Index>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

FrequencySet dirichlet_frequencies(Index N) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  FrequencySet phi{{}, "dirichlet"};
  phi.freqs.reserve(static_cast<std::size_t>(N));
  for (Index n = N + 1; n <= 2 * N; ++n) phi.freqs.push_back(std::log(static_cast<double>(n)));
  return phi;
}

FrequencySet ac_frequencies(Index N) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  FrequencySet phi{{}, "ac"};
  phi.freqs.reserve(static_cast<std::size_t>(N));
  const double dn = static_cast<double>(N);
  for (Index n = N + 1; n <= 2 * N; ++n) phi.freqs.push_back(std::sqrt(static_cast<double>(n) / dn));
  return phi;
}

ComplexMatrix gen_dirichlet(Index N, Index T) {
  require(N >= 2 && T >= 1, ErrorKind::InvalidArgument, "gen_dirichlet needs N >= 2, T >= 1");
  return exp_sum_matrix(dirichlet_frequencies(N).freqs, T);
}

ComplexMatrix gen_ac(Index N, Index T) {
  require(N >= 2 && T >= 1, ErrorKind::InvalidArgument, "gen_ac needs N >= 2, T >= 1");
  return exp_sum_matrix(ac_frequencies(N).freqs, T);
}

ComplexMatrix gen_freqset(const FrequencySet& phi, Index T) {
  require(!phi.freqs.empty(), ErrorKind::InvalidArgument, "frequency set is empty");
  require(T >= 1, ErrorKind::InvalidArgument, "T must be >= 1");
  for (double xi : phi.freqs)
    require(std::isfinite(xi), ErrorKind::InvalidArgument, "non-finite frequency");
  return exp_sum_matrix(phi.freqs, T);
}

EntryDist parse_entry_dist(const std::string& name) {
  if (name == "unit-complex" || name == "unit") return EntryDist::UnitComplex;
  if (name == "pm1") return EntryDist::PlusMinusOne;
  if (name == "gaussian") return EntryDist::Gaussian;
  throw Error(ErrorKind::InvalidArgument, "unknown distribution '" + name + "'");
}

std::string to_string(EntryDist dist) {
  switch (dist) {
    case EntryDist::UnitComplex: return "unit-complex";
    case EntryDist::PlusMinusOne: return "pm1";
    case EntryDist::Gaussian: return "gaussian";
  }
  return "unknown";
}

ComplexMatrix gen_random(Index T, Index N, EntryDist dist, std::uint64_t seed) {
  require(T >= 1 && N >= 1, ErrorKind::InvalidArgument, "gen_random needs T, N >= 1");
  Rng rng(seed);
  ComplexMatrix m(T, N);
  // Row-major fill so that a prefix of rows does not depend on N.
  for (Index r = 0; r < T; ++r) {
    for (Index c = 0; c < N; ++c) {
      switch (dist) {
        case EntryDist::UnitComplex: m(r, c) = rng.unit_complex(); break;
        case EntryDist::PlusMinusOne: m(r, c) = rng.sign(); break;
        case EntryDist::Gaussian: m(r, c) = rng.normal(); break;
      }
    }
  }
  return m;
}

RealMatrix haar_orthogonal(Index n, Rng& rng) {
  RealMatrix g(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) g(r, c) = rng.normal();
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  const RealMatrix& r = qr.matrixQR();
  for (Index c = 0; c < n; ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }
  return q;
}

Index planted_rows(const PlantedParams& p) {
  return static_cast<Index>(std::llround(std::pow(static_cast<double>(p.N), p.alpha)));
}

Index planted_support_size(const PlantedParams& p) {
  return static_cast<Index>(std::llround(
      std::pow(static_cast<double>(p.N), p.alpha + 1.0 - 2.0 * p.sigma - p.epsilon)));
}

PlantedInstance gen_planted(const PlantedParams& p) {
  require(p.N >= 2, ErrorKind::InvalidArgument, "planted model needs N >= 2");
  require(p.alpha > 1.0 && p.alpha < 2.0, ErrorKind::InvalidArgument, "alpha must lie in (1, 2)");
  require(p.sigma > 0.5 && p.sigma < 1.0, ErrorKind::InvalidArgument, "sigma must lie in (1/2, 1)");
  require(p.epsilon > 0.0, ErrorKind::InvalidArgument, "epsilon must be > 0");
  const Index T = planted_rows(p);
  const Index S = planted_support_size(p);
  require(T >= p.N, ErrorKind::DegenerateSize, "T = round(N^alpha) must be >= N");
  require(S >= 1 && S <= T, ErrorKind::DegenerateSize,
          "support size S = " + std::to_string(S) + " outside [1, T]");

  Rng rng(p.seed);
  PlantedInstance inst;
  inst.params = p;
  inst.rows = T;
  inst.support_size = S;

  // Partial Fisher-Yates for the support.
  std::vector<Index> perm(static_cast<std::size_t>(T));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < S; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(T - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  inst.support.assign(perm.begin(), perm.begin() + S);
  std::sort(inst.support.begin(), inst.support.end());

  const double ratio = static_cast<double>(T) / static_cast<double>(S);
  const double scale = (p.scale == PlantedScale::StdDev) ? std::sqrt(ratio) : std::pow(ratio, 0.25);
  inst.sparse_vector = RealVector::Zero(T);
  for (Index j : inst.support) inst.sparse_vector(j) = scale * rng.normal();

  inst.a.resize(T, p.N);
  inst.a.col(0) = inst.sparse_vector;
  for (Index r = 0; r < T; ++r)
    for (Index c = 1; c < p.N; ++c) inst.a(r, c) = rng.normal();

  inst.o = haar_orthogonal(p.N, rng);
  inst.matrix = (inst.a * inst.o).cast<Complex>();
  inst.input_witness = std::sqrt(static_cast<double>(p.N)) * inst.o.row(0).transpose();
  return inst;
}

ComplexMatrix gen_periodic_schrodinger(Index nfreq, int d) {
  require(d >= 2, ErrorKind::InvalidArgument, "dimension must be >= 2");
  require(d == 2, ErrorKind::Unsupported, "only d = 2 is supported");
  require(nfreq >= 1 && nfreq <= 32, ErrorKind::InvalidArgument, "Nfreq must lie in [1, 32]");
  const Index N = nfreq;
  const Index xs = 2 * N + 1;
  const Index ts = N * N;
  ComplexMatrix m(xs * ts, 2 * N + 1);
  for (Index c = 0; c < m.cols(); ++c) {
    const Index n = c - N;
    for (Index a = 0; a < xs; ++a) {
      for (Index b = 0; b < ts; ++b) {
        // Reduce the integer phase numerator exactly before scaling.
        const Index num = ((n * a % xs) * ts + (n * n % ts) * xs) % (xs * ts);
        const double phase = kTwoPi * static_cast<double>(num) / static_cast<double>(xs * ts);
        m(a * ts + b, c) = Complex(std::cos(phase), std::sin(phase));
      }
    }
  }
  return m;
}

Complex CounterexampleInstance::evaluate(double t) const {
  Complex acc(0.0, 0.0);
  const double dn = static_cast<double>(N);
  for (Index c = 0; c < coeffs.size(); ++c) {
    if (coeffs(c) == Complex(0.0, 0.0)) continue;
    const double xi = std::sqrt(static_cast<double>(N + 1 + c) / dn);
    acc += coeffs(c) * Complex(std::cos(t * xi), std::sin(t * xi));
  }
  return acc;
}

CounterexampleInstance gen_almost_counterexample(Index N, double T, double sigma,
                                                 bool integer_times) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  require(T >= 1.0, ErrorKind::InvalidArgument, "T must be >= 1");
  require(sigma >= 0.5 && sigma <= 0.75, ErrorKind::InvalidArgument, "sigma must lie in [1/2, 3/4]");
  const Index m_lo = isqrt(N) + 1;  // smallest m with m^2 > N
  const Index m_hi = isqrt(2 * N);  // largest m with m^2 <= 2N
  require(m_hi >= m_lo, ErrorKind::NoSquares, "(N, 2N] contains no perfect square");

  CounterexampleInstance inst;
  inst.N = N;
  inst.T = T;
  inst.sigma = sigma;
  inst.squares_available = m_hi - m_lo + 1;
  const double dn = static_cast<double>(N);
  if (sigma == 0.75) {
    inst.progression_len = inst.squares_available;
    inst.height = std::pow(dn, 0.25);
  } else {
    const auto want = static_cast<Index>(std::llround(std::pow(dn, 2.0 * (sigma - 0.5))));
    inst.progression_len = std::clamp<Index>(want, 1, inst.squares_available);
    inst.height = std::sqrt(dn / static_cast<double>(inst.progression_len));
  }
  inst.coeffs = ComplexVector::Zero(N);
  for (Index m = m_lo; m < m_lo + inst.progression_len; ++m) inst.coeffs(m * m - N - 1) = inst.height;
  inst.predicted = inst.height * static_cast<double>(inst.progression_len);

  const double period = kTwoPi * std::sqrt(dn);
  for (Index k = 0; static_cast<double>(k) * period <= T; ++k) {
    const double t = static_cast<double>(k) * period;
    inst.witness_times.push_back(integer_times ? std::round(t) : t);
  }
  inst.matrix = gen_ac(N, std::max<Index>(1, static_cast<Index>(std::floor(T))));
  return inst;
}

Complex FatAPInstance::evaluate(double t) const {
  Complex acc(0.0, 0.0);
  for (Index k = 1; k <= interval_len; ++k) {
    const double phase = t * std::log(static_cast<double>(interval_start + k));
    acc += Complex(std::cos(phase), std::sin(phase));
  }
  return acc;
}

Index fat_ap_critical_length(Index N, double T) {
  return static_cast<Index>(std::llround(static_cast<double>(N) / std::sqrt(T)));
}

FatAPInstance gen_fat_ap(Index N, double T, Index interval_start, double scan_step) {
  require(N >= 2 && T >= 1.0, ErrorKind::InvalidArgument, "gen_fat_ap needs N >= 2, T >= 1");
  require(scan_step > 0.0, ErrorKind::InvalidArgument, "scan step must be positive");
  const Index L = fat_ap_critical_length(N, T);
  require(L >= 2, ErrorKind::IntervalOutOfRange, "critical length round(N T^{-1/2}) is below 2");
  require(interval_start >= N && interval_start + L <= 2 * N, ErrorKind::IntervalOutOfRange,
          "interval must lie inside (N, 2N]");
  require(T / scan_step <= 1e7, ErrorKind::BudgetExceeded, "scan budget exceeded");

  FatAPInstance inst;
  inst.N = N;
  inst.T = T;
  inst.interval_start = interval_start;
  inst.interval_len = L;
  inst.scan_step = scan_step;
  inst.coeffs = RealVector::Zero(N);
  for (Index k = 1; k <= L; ++k) inst.coeffs(interval_start + k - N - 1) = 1.0;
  const double spread = std::log(static_cast<double>(interval_start + L) /
                                 static_cast<double>(interval_start + 1));
  inst.progression_step = kTwoPi * static_cast<double>(L - 1) / spread;

  const double cut = 0.5 * static_cast<double>(L);
  const auto steps = static_cast<Index>(std::floor(T / scan_step));
  bool inside = false;
  for (Index i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * scan_step;
    const bool large = std::abs(inst.evaluate(t)) >= cut;
    if (large && !inside) inst.empirical_star.push_back({t, t});
    if (large) inst.empirical_star.back().hi = t;
    inside = large;
  }
  if (!inst.empirical_star.empty() && inst.empirical_star.front().lo == 0.0)
    inst.fattening_radius = inst.empirical_star.front().hi;
  return inst;
}

}  // namespace lvlab
