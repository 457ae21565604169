#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lvlab/linalg.hpp"
#include "lvlab/zoo.hpp"

namespace lvlab {

enum class Statistic { Opnorm, OffdiagMax, SchattenFlatR3, ColL4 };

Statistic parse_statistic(const std::string& name);
std::string to_string(Statistic s);

struct StatValue {
  Statistic statistic;
  double value;
};

/// opnorm = ||M||, offdiag_max = max_{i != i'} |(MM^*)_{ii'}|,
/// schatten_flat_r3 = norm of the flattened order-3 remainder tensor,
/// col_l4 = max_n sum_t |M_tn|^4 / N.
std::vector<StatValue> compute_stats(const ComplexMatrix& m, const std::vector<Statistic>& which);

struct ExperimentConfig {
  Index N = 64;
  std::vector<double> alpha_grid{1.5};
  std::vector<double> sigma_grid{0.85};
  double epsilon = 0.01;
  int trials = 10;
  std::uint64_t base_seed = 0;
  std::vector<Statistic> statistics{Statistic::Opnorm, Statistic::OffdiagMax, Statistic::ColL4};
  PlantedScale scale = PlantedScale::StdDev;
};

void validate_config(const ExperimentConfig& c);
nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);
/// FNV-1a of the canonical JSON dump, as hex.
std::string config_hash(const ExperimentConfig& c);

enum class Arm { Random, Planted };

std::string to_string(Arm a);

/// Seed for one instance, from (base seed, alpha index, sigma index, trial, arm).
std::uint64_t trial_seed(const ExperimentConfig& c, std::size_t alpha_idx, std::size_t sigma_idx, int trial,
                         Arm arm);

struct StatRow {
  std::size_t alpha_idx = 0;
  std::size_t sigma_idx = 0;
  double alpha = 0.0;
  double sigma = 0.0;
  int trial = 0;
  Arm arm = Arm::Random;
  Statistic statistic = Statistic::Opnorm;
  double value = 0.0;  ///< NaN when the instance failed
};

struct CellError {
  std::size_t alpha_idx = 0;
  std::size_t sigma_idx = 0;
  int trial = 0;
  Arm arm = Arm::Random;
  std::string message;
};

struct StatTable {
  ExperimentConfig config;
  std::vector<StatRow> rows;
  std::vector<CellError> errors;

  /// Values for one (cell, arm, statistic), in trial order, failures skipped.
  std::vector<double> values(std::size_t alpha_idx, std::size_t sigma_idx, Arm arm, Statistic s) const;
};

/// Each (cell, trial) yields one Gaussian and one planted instance. Output is
/// identical for every `threads`.
StatTable run_experiment(const ExperimentConfig& config, int threads = 1);

/// Mann-Whitney AUC: P(plant > ran) + P(plant = ran) / 2.
double auc(const std::vector<double>& scores_ran, const std::vector<double>& scores_plant);

/// Columns alpha,sigma,trial,arm,statistic,value.
void write_stat_table_csv(std::ostream& os, const StatTable& t);
/// Config, its hash, the per-instance seeds and recorded failures.
nlohmann::json stat_table_sidecar(const StatTable& t);
/// AUC per cell and statistic.
nlohmann::json auc_summary(const StatTable& t);

}  // namespace lvlab
