#include "lvlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace lvlab {

namespace {

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

std::vector<double> pair_differences(const FrequencySet& phi) {
  require(!phi.freqs.empty(), ErrorKind::InvalidArgument, "frequency set is empty");
  const double n = static_cast<double>(phi.freqs.size());
  require(n * n <= 1e8, ErrorKind::BudgetExceeded, "|Phi|^2 exceeds 1e8");
  std::vector<double> out;
  out.reserve(phi.freqs.size() * phi.freqs.size());
  for (double a : phi.freqs)
    for (double b : phi.freqs) out.push_back(a - b);
  return out;
}

}  // namespace

void validate_integer_set(const IntegerSet& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    require(w[i] >= 0, ErrorKind::InvalidArgument, "integer set must be non-negative");
    require(i == 0 || w[i - 1] < w[i], ErrorKind::InvalidArgument, "integer set must be strictly increasing");
  }
}

Complex fourier_of_set(const IntegerSet& w, double xi, int sign) {
  validate_integer_set(w);
  require(sign == 1 || sign == -1, ErrorKind::InvalidArgument, "sign must be +1 or -1");
  Complex acc(0.0, 0.0);
  for (long long t : w) {
    const double ph = static_cast<double>(sign) * xi * static_cast<double>(t);
    acc += Complex(std::cos(ph), std::sin(ph));
  }
  return acc;
}

std::uint64_t additive_energy(const IntegerSet& w) {
  validate_integer_set(w);
  require(w.size() <= 100000, ErrorKind::CapExceeded, "|W| exceeds 1e5");
  if (w.empty()) return 0;
  std::unordered_map<long long, std::uint64_t> reps;
  reps.reserve(w.size() * 2);
  for (long long a : w)
    for (long long b : w) ++reps[a + b];
  std::uint64_t e = 0;
  for (const auto& [sum, r] : reps) e += r * r;
  return e;
}

std::uint64_t additive_energy_dft(const IntegerSet& w, long long grid_len) {
  validate_integer_set(w);
  if (w.empty()) return 0;
  require(grid_len > 2 * w.back(), ErrorKind::GridTooSmall, "grid length must exceed 2 max(W)");
  require(static_cast<double>(grid_len) * static_cast<double>(w.size()) <= 1e9, ErrorKind::BudgetExceeded,
          "DFT budget exceeded");
  // Roots of unity indexed by (k t mod L) keep every phase exact.
  std::vector<Complex> roots(static_cast<std::size_t>(grid_len));
  const double base = 2.0 * std::numbers::pi / static_cast<double>(grid_len);
  for (long long m = 0; m < grid_len; ++m) {
    roots[static_cast<std::size_t>(m)] = std::polar(1.0, base * static_cast<double>(m));
  }
  double acc = 0.0;
  for (long long k = 0; k < grid_len; ++k) {
    Complex s(0.0, 0.0);
    for (long long t : w) s += roots[static_cast<std::size_t>((k * t) % grid_len)];
    const double a2 = std::norm(s);
    acc += a2 * a2;
  }
  return static_cast<std::uint64_t>(std::llround(acc / static_cast<double>(grid_len)));
}

CyclicDiffMultiset::CyclicDiffMultiset(const FrequencySet& phi, int r) : freqs_(phi.freqs), r_(r) {
  require(!freqs_.empty(), ErrorKind::InvalidArgument, "frequency set is empty");
  require(r >= 1, ErrorKind::InvalidArgument, "r must be >= 1");
  reset();
}

void CyclicDiffMultiset::reset() {
  idx_.assign(static_cast<std::size_t>(r_), 0);
  done_ = false;
}

double CyclicDiffMultiset::count() const {
  return std::pow(static_cast<double>(freqs_.size()), r_);
}

bool CyclicDiffMultiset::next(std::vector<double>& out) {
  if (done_) return false;
  out.resize(static_cast<std::size_t>(r_));
  for (int k = 0; k < r_; ++k) {
    const std::size_t nxt = static_cast<std::size_t>((k + 1) % r_);
    out[static_cast<std::size_t>(k)] = freqs_[idx_[static_cast<std::size_t>(k)]] - freqs_[idx_[nxt]];
  }
  int pos = r_ - 1;
  while (pos >= 0) {
    auto& d = idx_[static_cast<std::size_t>(pos)];
    if (++d < freqs_.size()) break;
    d = 0;
    --pos;
  }
  if (pos < 0) done_ = true;
  return true;
}

std::vector<std::vector<double>> CyclicDiffMultiset::materialize() {
  require(count() <= 1e8, ErrorKind::BudgetExceeded, "|Phi|^r exceeds 1e8");
  reset();
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(count()));
  std::vector<double> t;
  while (next(t)) out.push_back(t);
  reset();
  return out;
}

Complex schatten_trace_fourier(const FrequencySet& phi, const IntegerSet& w, int r) {
  validate_integer_set(w);
  require(!phi.freqs.empty(), ErrorKind::InvalidArgument, "frequency set is empty");
  require(r >= 1, ErrorKind::InvalidArgument, "r must be >= 1");
  const std::size_t n = phi.freqs.size();
  require(std::pow(static_cast<double>(n), r) <= 1e8, ErrorKind::BudgetExceeded, "|Phi|^r exceeds 1e8");
  // W^ at every pairwise difference; the tuple walk below only indexes it.
  std::vector<Complex> hat(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) hat[a * n + b] = fourier_of_set(w, phi.freqs[a] - phi.freqs[b], -1);

  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  Complex total(0.0, 0.0);
  while (true) {
    Complex prod(1.0, 0.0);
    for (int k = 0; k < r; ++k) {
      prod *= hat[idx[static_cast<std::size_t>(k)] * n + idx[static_cast<std::size_t>((k + 1) % r)]];
    }
    total += prod;
    int pos = r - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == n) idx[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return total;
}

ComplexMatrix freqset_rows(const FrequencySet& phi, const IntegerSet& w) {
  validate_integer_set(w);
  require(!w.empty() && !phi.freqs.empty(), ErrorKind::InvalidArgument, "empty frequency or row set");
  ComplexMatrix m(static_cast<Index>(w.size()), phi.size());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      m(r, c) = std::polar(1.0, static_cast<double>(w[static_cast<std::size_t>(r)]) *
                                    phi.freqs[static_cast<std::size_t>(c)]);
  return m;
}

double DensityProfile::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid_step;
}

DensityProfile density_profile(const FrequencySet& phi, double delta, Index grid_len) {
  require(delta > 0.0, ErrorKind::InvalidArgument, "delta must be positive");
  require(grid_len >= 2, ErrorKind::InvalidArgument, "grid must have at least two points");
  const std::vector<double> diffs = pair_differences(phi);
  const auto [lo_it, hi_it] = std::minmax_element(diffs.begin(), diffs.end());
  const double cut = 8.0 * delta;
  DensityProfile d;
  d.delta = delta;
  d.grid_start = *lo_it - cut;
  d.grid_step = (*hi_it - *lo_it + 2.0 * cut) / static_cast<double>(grid_len - 1);
  d.values.assign(static_cast<std::size_t>(grid_len), 0.0);
  const double norm = 1.0 / (delta * std::sqrt(2.0 * std::numbers::pi));
  for (double tau : diffs) {
    const auto first = static_cast<Index>(std::max(0.0, std::ceil((tau - cut - d.grid_start) / d.grid_step)));
    const auto last = std::min<Index>(grid_len - 1,
                                      static_cast<Index>(std::floor((tau + cut - d.grid_start) / d.grid_step)));
    for (Index i = first; i <= last; ++i) {
      const double z = (d.grid_point(static_cast<std::size_t>(i)) - tau) / delta;
      d.values[static_cast<std::size_t>(i)] += norm * std::exp(-0.5 * z * z);
    }
  }
  return d;
}

SpikeReport spike_report_for(const FrequencySet& phi, Index N, Index T, double delta) {
  require(N >= 1 && T >= 1, ErrorKind::InvalidArgument, "N and T must be positive");
  require(delta > 0.0, ErrorKind::InvalidArgument, "delta must be positive");
  SpikeReport rep;
  rep.cap = (2 * T + N - 1) / N;
  rep.window_half_width = kSpikeHalfWidth * delta;
  for (long long p = 1; p <= rep.cap; ++p) {
    for (long long q = 1; q <= rep.cap; ++q) {
      if (std::gcd(p, q) != 1) continue;
      Spike s;
      s.p = p;
      s.q = q;
      s.location = std::log(static_cast<double>(p) / static_cast<double>(q));
      // n1 = p m and n2 = q m with both in (N, 2N].
      const long long big = std::max(p, q);
      const long long small = std::min(p, q);
      const long long m_lo = N / small + 1;
      const long long m_hi = 2 * N / big;
      s.multiplicity = std::max(0LL, m_hi - m_lo + 1);
      rep.spikes.push_back(s);
    }
  }
  std::sort(rep.spikes.begin(), rep.spikes.end(),
            [](const Spike& a, const Spike& b) { return a.location < b.location; });

  // Windows, clipped at the midpoints between neighbouring spikes.
  std::vector<double> lo(rep.spikes.size());
  std::vector<double> hi(rep.spikes.size());
  for (std::size_t k = 0; k < rep.spikes.size(); ++k) {
    const double x = rep.spikes[k].location;
    lo[k] = x - rep.window_half_width;
    hi[k] = x + rep.window_half_width;
    if (k > 0) lo[k] = std::max(lo[k], 0.5 * (x + rep.spikes[k - 1].location));
    if (k + 1 < rep.spikes.size()) hi[k] = std::min(hi[k], 0.5 * (x + rep.spikes[k + 1].location));
  }

  const std::vector<double> diffs = pair_differences(phi);
  rep.total_mass = static_cast<double>(diffs.size());
  const double reach = 8.0 * delta;
  for (double tau : diffs) {
    auto k = static_cast<std::size_t>(
        std::lower_bound(hi.begin(), hi.end(), tau - reach) - hi.begin());
    for (; k < rep.spikes.size() && lo[k] <= tau + reach; ++k) {
      rep.spikes[k].mass += gaussian_cdf((hi[k] - tau) / delta) - gaussian_cdf((lo[k] - tau) / delta);
    }
  }
  double window_len = 0.0;
  for (std::size_t k = 0; k < rep.spikes.size(); ++k) {
    rep.spike_mass += rep.spikes[k].mass;
    window_len += hi[k] - lo[k];
  }
  rep.residual_mass = rep.total_mass - rep.spike_mass;
  const auto [mn, mx] = std::minmax_element(diffs.begin(), diffs.end());
  const double covered = std::max(*mx - *mn - window_len, delta);
  rep.smooth_level = rep.residual_mass / covered;
  return rep;
}

SpikeReport spike_report(Index N, Index T, double delta) {
  return spike_report_for(dirichlet_frequencies(N), N, T, delta);
}

void write_density_csv(std::ostream& os, const DensityProfile& d) {
  os << "grid,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < d.values.size(); ++i) os << d.grid_point(i) << ',' << d.values[i] << '\n';
}

void write_spikes_csv(std::ostream& os, const SpikeReport& s) {
  os << "p,q,location,mass,multiplicity\n";
  os.precision(17);
  for (const auto& sp : s.spikes)
    os << sp.p << ',' << sp.q << ',' << sp.location << ',' << sp.mass << ',' << sp.multiplicity << '\n';
}

}  // namespace lvlab
