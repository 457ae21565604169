#include "lvlab/planted_lab.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "lvlab/certify.hpp"

namespace lvlab {

Statistic parse_statistic(const std::string& name) {
  if (name == "opnorm") return Statistic::Opnorm;
  if (name == "offdiag_max") return Statistic::OffdiagMax;
  if (name == "schatten_flat_r3") return Statistic::SchattenFlatR3;
  if (name == "col_l4") return Statistic::ColL4;
  throw Error(ErrorKind::InvalidArgument, "unknown statistic '" + name + "'");
}

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::Opnorm: return "opnorm";
    case Statistic::OffdiagMax: return "offdiag_max";
    case Statistic::SchattenFlatR3: return "schatten_flat_r3";
    case Statistic::ColL4: return "col_l4";
  }
  return "unknown";
}

std::string to_string(Arm a) { return a == Arm::Random ? "ran" : "plant"; }

std::vector<StatValue> compute_stats(const ComplexMatrix& m, const std::vector<Statistic>& which) {
  validate_matrix(m);
  std::vector<StatValue> out;
  std::optional<GramMatrix> a;
  auto need_gram = [&]() -> const GramMatrix& {
    if (!a) a = gram(m);
    return *a;
  };
  for (Statistic s : which) {
    double v = 0.0;
    switch (s) {
      case Statistic::Opnorm:
        v = operator_norm(m, 1e-10);
        break;
      case Statistic::OffdiagMax: {
        const GramMatrix& g = need_gram();
        for (Index j = 0; j < g.cols(); ++j)
          for (Index i = 0; i < j; ++i) v = std::max(v, std::abs(g(i, j)));
        break;
      }
      case Statistic::SchattenFlatR3:
        require(m.rows() <= kSchattenCapR3, ErrorKind::CapExceeded,
                "schatten_flat_r3 needs T <= " + std::to_string(kSchattenCapR3));
        v = flat_norm(need_gram(), 3, 1e-8);
        break;
      case Statistic::ColL4:
        v = m.cwiseAbs2().cwiseAbs2().colwise().sum().maxCoeff() / static_cast<double>(m.cols());
        break;
    }
    out.push_back({s, v});
  }
  return out;
}

void validate_config(const ExperimentConfig& c) {
  require(c.N >= 2, ErrorKind::InvalidArgument, "N must be >= 2");
  require(!c.alpha_grid.empty() && !c.sigma_grid.empty(), ErrorKind::InvalidArgument, "grids must be non-empty");
  for (double a : c.alpha_grid) require(a > 1.0 && a < 2.0, ErrorKind::InvalidArgument, "alpha must lie in (1, 2)");
  for (double s : c.sigma_grid)
    require(s > 0.5 && s < 1.0, ErrorKind::InvalidArgument, "sigma must lie in (1/2, 1)");
  require(c.epsilon > 0.0, ErrorKind::InvalidArgument, "epsilon must be > 0");
  require(c.trials >= 1, ErrorKind::InvalidArgument, "trials must be >= 1");
  require(!c.statistics.empty(), ErrorKind::InvalidArgument, "no statistics requested");
  const double count = 2.0 * static_cast<double>(c.alpha_grid.size() * c.sigma_grid.size()) * c.trials;
  require(count <= 1e4, ErrorKind::BudgetExceeded, "experiment exceeds 1e4 matrices");
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json stats = nlohmann::json::array();
  for (Statistic s : c.statistics) stats.push_back(to_string(s));
  return {{"N", c.N},
          {"alpha_grid", c.alpha_grid},
          {"sigma_grid", c.sigma_grid},
          {"epsilon", c.epsilon},
          {"trials", c.trials},
          {"base_seed", c.base_seed},
          {"statistics", stats},
          {"planted_scale", c.scale == PlantedScale::StdDev ? "stddev" : "variance"}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.N = j.value("N", c.N);
    c.alpha_grid = j.value("alpha_grid", c.alpha_grid);
    c.sigma_grid = j.value("sigma_grid", c.sigma_grid);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.trials = j.value("trials", c.trials);
    c.base_seed = j.value("base_seed", c.base_seed);
    if (j.contains("statistics")) {
      c.statistics.clear();
      for (const auto& s : j.at("statistics")) c.statistics.push_back(parse_statistic(s.get<std::string>()));
    }
    const std::string scale = j.value("planted_scale", std::string("stddev"));
    if (scale == "stddev") {
      c.scale = PlantedScale::StdDev;
    } else if (scale == "variance") {
      c.scale = PlantedScale::Variance;
    } else {
      throw Error(ErrorKind::InvalidArgument, "planted_scale must be 'stddev' or 'variance'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed experiment config: ") + e.what());
  }
  validate_config(c);
  return c;
}

std::string config_hash(const ExperimentConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t trial_seed(const ExperimentConfig& c, std::size_t alpha_idx, std::size_t sigma_idx, int trial,
                         Arm arm) {
  return derive_seed(c.base_seed, {static_cast<std::uint64_t>(alpha_idx), static_cast<std::uint64_t>(sigma_idx),
                                   static_cast<std::uint64_t>(trial), arm == Arm::Random ? 0ULL : 1ULL});
}

std::vector<double> StatTable::values(std::size_t alpha_idx, std::size_t sigma_idx, Arm arm, Statistic s) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.alpha_idx == alpha_idx && r.sigma_idx == sigma_idx && r.arm == arm && r.statistic == s &&
        !std::isnan(r.value))
      out.push_back(r.value);
  return out;
}

StatTable run_experiment(const ExperimentConfig& config, int threads) {
  validate_config(config);
  struct Task {
    std::size_t ai, si;
    int trial;
    Arm arm;
  };
  std::vector<Task> tasks;
  for (std::size_t ai = 0; ai < config.alpha_grid.size(); ++ai)
    for (std::size_t si = 0; si < config.sigma_grid.size(); ++si)
      for (int t = 0; t < config.trials; ++t)
        for (Arm arm : {Arm::Random, Arm::Planted}) tasks.push_back({ai, si, t, arm});

  const std::size_t nstat = config.statistics.size();
  std::vector<double> values(tasks.size() * nstat, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> failures(tasks.size());

  auto run_one = [&](std::size_t k) {
    const Task& task = tasks[k];
    const double alpha = config.alpha_grid[task.ai];
    const double sigma = config.sigma_grid[task.si];
    const std::uint64_t seed = trial_seed(config, task.ai, task.si, task.trial, task.arm);
    try {
      ComplexMatrix m;
      if (task.arm == Arm::Random) {
        PlantedParams p{config.N, alpha, sigma, config.epsilon, seed, config.scale};
        m = gen_random(planted_rows(p), config.N, EntryDist::Gaussian, seed);
      } else {
        m = gen_planted({config.N, alpha, sigma, config.epsilon, seed, config.scale}).matrix;
      }
      const auto stats = compute_stats(m, config.statistics);
      for (std::size_t s = 0; s < nstat; ++s) values[k * nstat + s] = stats[s].value;
    } catch (const Error& e) {
      failures[k] = std::string(lvlab::to_string(e.kind())) + ": " + e.what();
    }
  };

  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  if (nt == 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) run_one(k);
      });
    for (auto& th : pool) th.join();
  }

  StatTable table;
  table.config = config;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const Task& task = tasks[k];
    for (std::size_t s = 0; s < nstat; ++s) {
      table.rows.push_back({task.ai, task.si, config.alpha_grid[task.ai], config.sigma_grid[task.si], task.trial,
                            task.arm, config.statistics[s], values[k * nstat + s]});
    }
    if (!failures[k].empty()) table.errors.push_back({task.ai, task.si, task.trial, task.arm, failures[k]});
  }
  return table;
}

double auc(const std::vector<double>& scores_ran, const std::vector<double>& scores_plant) {
  require(!scores_ran.empty() && !scores_plant.empty(), ErrorKind::InvalidArgument,
          "both score lists must be non-empty");
  double wins = 0.0;
  for (double p : scores_plant) {
    for (double r : scores_ran) {
      if (p > r) {
        wins += 1.0;
      } else if (p == r) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(scores_ran.size()) * static_cast<double>(scores_plant.size()));
}

void write_stat_table_csv(std::ostream& os, const StatTable& t) {
  os << "alpha,sigma,trial,arm,statistic,value\n";
  char buf[64];
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.value);
    os << r.alpha << ',' << r.sigma << ',' << r.trial << ',' << to_string(r.arm) << ','
       << to_string(r.statistic) << ',' << buf << '\n';
  }
}

nlohmann::json stat_table_sidecar(const StatTable& t) {
  nlohmann::json seeds = nlohmann::json::array();
  for (std::size_t ai = 0; ai < t.config.alpha_grid.size(); ++ai)
    for (std::size_t si = 0; si < t.config.sigma_grid.size(); ++si)
      for (int tr = 0; tr < t.config.trials; ++tr)
        for (Arm arm : {Arm::Random, Arm::Planted})
          seeds.push_back({{"alpha_idx", ai},
                           {"sigma_idx", si},
                           {"trial", tr},
                           {"arm", to_string(arm)},
                           {"seed", trial_seed(t.config, ai, si, tr, arm)}});
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : t.errors)
    errors.push_back({{"alpha_idx", e.alpha_idx},
                      {"sigma_idx", e.sigma_idx},
                      {"trial", e.trial},
                      {"arm", to_string(e.arm)},
                      {"message", e.message}});
  return {{"config", to_json(t.config)}, {"config_hash", config_hash(t.config)}, {"seeds", seeds},
          {"errors", errors}};
}

nlohmann::json auc_summary(const StatTable& t) {
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t ai = 0; ai < t.config.alpha_grid.size(); ++ai) {
    for (std::size_t si = 0; si < t.config.sigma_grid.size(); ++si) {
      const double alpha = t.config.alpha_grid[ai];
      nlohmann::json c = {{"alpha", alpha},
                          {"sigma", t.config.sigma_grid[si]},
                          {"lowdeg_threshold", 1.0 - alpha / 4.0}};
      nlohmann::json aucs = nlohmann::json::object();
      for (Statistic s : t.config.statistics) {
        const auto ran = t.values(ai, si, Arm::Random, s);
        const auto plant = t.values(ai, si, Arm::Planted, s);
        if (ran.empty() || plant.empty()) {
          aucs[to_string(s)] = nullptr;
        } else {
          aucs[to_string(s)] = auc(ran, plant);
        }
      }
      c["auc"] = aucs;
      cells.push_back(c);
    }
  }
  return {{"cells", cells}, {"label", "exploratory"}};
}

}  // namespace lvlab
