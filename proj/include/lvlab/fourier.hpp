#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lvlab/linalg.hpp"
#include "lvlab/zoo.hpp"

namespace lvlab {

/// Strictly increasing non-negative integers.
using IntegerSet = std::vector<long long>;

void validate_integer_set(const IntegerSet& w);

/// W^(xi) = sum_{t in W} e^{sign i xi t}; sign is +1 or -1.
Complex fourier_of_set(const IntegerSet& w, double xi, int sign = +1);

/// E(W) = #{(t1, t2, t3, t4) in W^4 : t1 + t2 = t3 + t4}, via the sumset histogram.
std::uint64_t additive_energy(const IntegerSet& w);

/// (1/L) sum_k |W^(2 pi k / L)|^4, rounded; exact when L > 2 max(W).
std::uint64_t additive_energy_dft(const IntegerSet& w, long long grid_len);

/// Lazily walks all |Phi|^r tuples (xi_1 - xi_2, ..., xi_r - xi_1) in
/// odometer order, last index fastest. Each tuple appears with multiplicity.
class CyclicDiffMultiset {
 public:
  CyclicDiffMultiset(const FrequencySet& phi, int r);

  /// Writes the next tuple into `out`; false once exhausted.
  bool next(std::vector<double>& out);
  void reset();
  double count() const;

  /// All tuples at once; refuses more than 1e8 of them.
  std::vector<std::vector<double>> materialize();

 private:
  std::vector<double> freqs_;
  int r_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
};

/// Fourier side of the moment identity: sum over xi_1..xi_r in Phi of
/// W^(xi_1 - xi_2) ... W^(xi_r - xi_1), with W^(xi) = sum_t e^{-i t xi}.
Complex schatten_trace_fourier(const FrequencySet& phi, const IntegerSet& w, int r);

/// Rows t in W of M_Phi; the dense side of the same identity.
ComplexMatrix freqset_rows(const FrequencySet& phi, const IntegerSet& w);

struct DensityProfile {
  double grid_start = 0.0;
  double grid_step = 0.0;
  std::vector<double> values;
  double delta = 0.0;

  double grid_point(std::size_t i) const { return grid_start + grid_step * static_cast<double>(i); }
  double integral() const;
};

/// Gaussian-smoothed density (standard deviation delta, truncated at 8 delta)
/// of the pairwise difference multiset Phi - Phi on `grid_len` points.
DensityProfile density_profile(const FrequencySet& phi, double delta, Index grid_len);

struct Spike {
  double location = 0.0;  ///< ln(p / q)
  long long p = 0;
  long long q = 0;
  double mass = 0.0;          ///< smoothed difference mass in the spike window
  long long multiplicity = 0; ///< #{(n1, n2) in (N, 2N]^2 : n1 q = n2 p}
};

struct SpikeReport {
  std::vector<Spike> spikes;
  double total_mass = 0.0;
  double spike_mass = 0.0;
  double residual_mass = 0.0;
  double smooth_level = 0.0;
  double window_half_width = 0.0;
  long long cap = 0;

  double spike_to_residual() const { return spike_mass / residual_mass; }
};

/// Window half-width in kernel standard deviations.
inline constexpr double kSpikeHalfWidth = 3.0;

/// Spikes of the smoothed difference density of `phi` at ln(p/q), p, q
/// coprime and at most ceil(2T/N).
SpikeReport spike_report_for(const FrequencySet& phi, Index N, Index T, double delta);
/// The same for the Dirichlet frequencies {ln n : N < n <= 2N}.
SpikeReport spike_report(Index N, Index T, double delta);

void write_density_csv(std::ostream& os, const DensityProfile& d);
void write_spikes_csv(std::ostream& os, const SpikeReport& s);

}  // namespace lvlab
