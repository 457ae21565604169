#pragma once

#include <json.hpp>

#include <cstdint>
#include <vector>

#include "lvlab/linalg.hpp"

namespace lvlab {

/// Strictly increasing row indices, 0-based in memory and 1-based on disk.
struct RowSubset {
  std::vector<Index> indices;

  Index size() const { return static_cast<Index>(indices.size()); }
  bool operator==(const RowSubset&) const = default;
};

/// Throws unless `w` is non-empty, strictly increasing and inside [0, T).
void validate_subset(const RowSubset& w, Index T);

struct SsvResult {
  double value = 0.0;  ///< max ||M_W|| over |W| = S
  RowSubset argmax;
};

/// Largest number of subsets ssv_exact will enumerate.
inline constexpr double kEnumerationCap = 1e7;

double binomial(Index n, Index k);

/// Exact maximum by enumeration. Ties go to the lexicographically smallest
/// subset; the result does not depend on `threads`.
SsvResult ssv_exact(const ComplexMatrix& m, Index s, int threads = 1);

/// Steepest-ascent single-swap local search from random starts. `iters`
/// bounds the number of subsets evaluated. Always a lower bound on ssv_exact.
SsvResult ssv_search(const ComplexMatrix& m, Index s, std::uint64_t seed, int iters);

/// ||M_W|| for a given subset, evaluated the same way as the oracles.
double subset_norm(const GramMatrix& a, const RowSubset& w);

struct Witness {
  ComplexVector input;
  double lambda = 0.0;
  RowSubset achieved;  ///< {t : |(Mb)_t| > lambda}; may be empty
  double norm_l2 = 0.0;
  double norm_linf = 0.0;
  bool clipped = false;
};

/// {t : |(Mb)_t| > lambda}
RowSubset achieved_set(const ComplexMatrix& m, const ComplexVector& b, double lambda);

/// b = scale * sum_{t in U} conj(M_t); with `clip_linf`, entries of modulus
/// above 1 are scaled back onto the unit circle.
Witness witness_focusing(const ComplexMatrix& m, const RowSubset& u, double scale, double lambda,
                         bool clip_linf = false);

enum class InputNorm { L2, Linf };

InputNorm parse_input_norm(const std::string& name);

/// Best of `iters` random inputs: random signs times `budget` (Linf), or a
/// Gaussian vector rescaled to l2 norm `budget` (L2).
Witness witness_random(const ComplexMatrix& m, double lambda, InputNorm norm, double budget,
                       std::uint64_t seed, int iters);

nlohmann::json to_json(const RowSubset& w);
nlohmann::json to_json(const Witness& w);

}  // namespace lvlab
