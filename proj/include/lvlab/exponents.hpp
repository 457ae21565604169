#pragma once

#include <json.hpp>

#include <optional>
#include <string>

namespace lvlab {

/// Exponents e in |W| <~ N^e for T = N^alpha, lambda = N^sigma.
struct ExponentTable {
  double alpha = 0.0;
  double sigma = 0.0;
  double basic = 0.0;               ///< alpha + 1 - 2 sigma
  std::optional<double> gm;         ///< 18/5 - 4 sigma, only at alpha = 6/5
  double dhpt = 0.0;                ///< 3 - 4 sigma + alpha / 2
  double montgomery = 0.0;          ///< 2 - 2 sigma
  double montgomery_lq = 0.0;       ///< alpha (2 - 2 sigma)
  double mmstar_threshold = 0.75;   ///< MM^* is sharp above this sigma
  double lowdeg_threshold = 0.0;    ///< 1 - alpha / 4
};

ExponentTable exponent_table(double alpha, double sigma);

nlohmann::json to_json(const ExponentTable& t);
std::string format_text(const ExponentTable& t);

}  // namespace lvlab
