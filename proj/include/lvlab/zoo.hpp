#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lvlab/linalg.hpp"

namespace lvlab {

/// Column convention for the exponential-sum families: n = N+1, ..., 2N.
/// Row convention: row r (0-based) is the time t = r + 1.

/// Finite multiset of real frequencies (radians per unit t).
struct FrequencySet {
  std::vector<double> freqs;
  std::string label;

  Index size() const { return static_cast<Index>(freqs.size()); }
};

/// {ln n : N < n <= 2N}
FrequencySet dirichlet_frequencies(Index N);
/// {sqrt(n / N) : N < n <= 2N}
FrequencySet ac_frequencies(Index N);

/// (M_Dir)_{t,n} = e^{i t ln n}
ComplexMatrix gen_dirichlet(Index N, Index T);
/// (M_AC)_{t,n} = e^{i t sqrt(n/N)}
ComplexMatrix gen_ac(Index N, Index T);
/// (M_Phi)_{t,xi} = e^{i t xi}, t = 1..T
ComplexMatrix gen_freqset(const FrequencySet& phi, Index T);

enum class EntryDist { UnitComplex, PlusMinusOne, Gaussian };

EntryDist parse_entry_dist(const std::string& name);
std::string to_string(EntryDist dist);

/// I.i.d. entries; bit-reproducible for a fixed (dist, seed).
ComplexMatrix gen_random(Index T, Index N, EntryDist dist, std::uint64_t seed);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of diag(R) folded into Q.
RealMatrix haar_orthogonal(Index n, Rng& rng);

/// How the planted coordinates w_j ~ N(0, (T/S)^{1/2}) are read.
enum class PlantedScale {
  StdDev,    ///< (T/S)^{1/2} is the standard deviation; ||w||^2 ~ T.
  Variance,  ///< (T/S)^{1/2} is the variance; |w_j| ~ (T/S)^{1/4}.
};

struct PlantedParams {
  Index N = 64;
  double alpha = 1.5;
  double sigma = 0.85;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  PlantedScale scale = PlantedScale::StdDev;
};

/// Rows T = round(N^alpha) and planted support size S = round(N^{alpha+1-2sigma-eps}).
Index planted_rows(const PlantedParams& p);
Index planted_support_size(const PlantedParams& p);

struct PlantedInstance {
  ComplexMatrix matrix;           ///< A O, real-valued
  RealMatrix a;                   ///< first column w, other entries N(0,1)
  RealMatrix o;                   ///< Haar orthogonal N x N
  std::vector<Index> support;     ///< W, 0-based rows, increasing
  RealVector sparse_vector;       ///< w, zero off the support
  RealVector input_witness;       ///< v = O^T (sqrt(N) e_1)
  PlantedParams params;
  Index rows = 0;
  Index support_size = 0;
};

PlantedInstance gen_planted(const PlantedParams& p);

/// Periodic Schrodinger matrix for d = 2: columns n = -N..N, rows (x, t) with
/// x on the grid Z/(2N+1) and t on Z/N^2; entry e^{2 pi i (n x + n^2 t)}.
/// Row index is x_index * N^2 + t_index.
ComplexMatrix gen_periodic_schrodinger(Index nfreq, int d = 2);

struct CounterexampleInstance {
  ComplexMatrix matrix;              ///< M_AC with rows t = 1..floor(T)
  ComplexVector coeffs;              ///< b_n on columns n = N+1..2N
  std::vector<double> witness_times; ///< 2 pi sqrt(N) k in [0, T]
  Index N = 0;
  double T = 0.0;
  double sigma = 0.0;
  Index squares_available = 0;       ///< L = #{m^2 in (N, 2N]}
  Index progression_len = 0;         ///< squares actually used
  double height = 0.0;               ///< common value of the non-zero b_n
  double predicted = 0.0;            ///< |D~(t)| at every witness time

  /// D~(t) = sum_n b_n e^{i t sqrt(n/N)}
  Complex evaluate(double t) const;
};

/// sigma = 3/4 follows the square-indexed construction exactly; sigma < 3/4
/// keeps the first round(N^{2 sigma - 1}) squares at height filling the l^2
/// budget. With `integer_times` the witness times are rounded to integers.
CounterexampleInstance gen_almost_counterexample(Index N, double T, double sigma,
                                                 bool integer_times = false);

struct TimeInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FatAPInstance {
  Index N = 0;
  double T = 0.0;
  Index interval_start = 0;      ///< I = {start+1, ..., start+L}
  Index interval_len = 0;        ///< L
  RealVector coeffs;             ///< indicator of I on columns N+1..2N
  double progression_step = 0.0; ///< 2 pi / (mean log-spacing of I)
  double fattening_radius = 0.0; ///< half-width of the component through 0
  double scan_step = 0.25;
  std::vector<TimeInterval> empirical_star;  ///< {t in [0,T] : |D_I(t)| >= L/2}

  /// D_{I,0}(t) = sum_{n in I} e^{i t ln n}
  Complex evaluate(double t) const;
};

/// Critical-length interval L = round(N T^{-1/2}).
Index fat_ap_critical_length(Index N, double T);

FatAPInstance gen_fat_ap(Index N, double T, Index interval_start, double scan_step = 0.25);

}  // namespace lvlab
