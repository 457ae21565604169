#include "lvlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "lvlab/certify.hpp"
#include "lvlab/exponents.hpp"
#include "lvlab/fourier.hpp"
#include "lvlab/majorant.hpp"
#include "lvlab/matrix_io.hpp"
#include "lvlab/oracle.hpp"
#include "lvlab/planted_lab.hpp"
#include "lvlab/zoo.hpp"

namespace lvlab {

namespace {

using json = nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string manifest;
};

// Family-based matrix input shared by gen, certify and oracle.
struct MatrixSpec {
  std::string matrix_path;
  std::string family = "dirichlet";
  Index N = 8;
  Index T = 16;
  std::string dist = "unit-complex";
  double alpha = 1.5;
  double sigma = 0.85;
  double epsilon = 0.01;
  std::string scale = "stddev";
};

struct RunContext {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

PlantedScale parse_scale(const std::string& s) {
  if (s == "stddev") return PlantedScale::StdDev;
  if (s == "variance") return PlantedScale::Variance;
  throw Error(ErrorKind::InvalidArgument, "scale must be 'stddev' or 'variance'");
}

void add_matrix_options(CLI::App* sub, MatrixSpec& mspec, bool allow_file) {
  if (allow_file) sub->add_option("--matrix", mspec.matrix_path, "Matrix CSV file (overrides --family)");
  sub->add_option("--family", mspec.family, "dirichlet | ac | random | planted | schrodinger | counterexample")
      ->capture_default_str();
  sub->add_option("--N", mspec.N, "Degree / column parameter")->capture_default_str();
  sub->add_option("--T", mspec.T, "Row count")->capture_default_str();
  sub->add_option("--dist", mspec.dist, "unit-complex | pm1 | gaussian")->capture_default_str();
  sub->add_option("--alpha", mspec.alpha, "Planted: T = N^alpha")->capture_default_str();
  sub->add_option("--sigma", mspec.sigma, "Planted / counterexample sigma")->capture_default_str();
  sub->add_option("--epsilon", mspec.epsilon, "Planted epsilon")->capture_default_str();
  sub->add_option("--scale", mspec.scale, "Planted coordinate scale: stddev | variance")->capture_default_str();
}

LabeledMatrix build_matrix(const MatrixSpec& mspec, std::uint64_t seed, RunContext& ctx) {
  if (!mspec.matrix_path.empty()) {
    ctx.inputs.push_back(mspec.matrix_path);
    return load_matrix_csv(mspec.matrix_path);
  }
  const std::string& f = mspec.family;
  if (f == "dirichlet") return {gen_dirichlet(mspec.N, mspec.T), "dirichlet"};
  if (f == "ac") return {gen_ac(mspec.N, mspec.T), "ac"};
  if (f == "random") {
    const EntryDist d = parse_entry_dist(mspec.dist);
    return {gen_random(mspec.T, mspec.N, d, seed), "random-" + to_string(d)};
  }
  if (f == "planted") {
    return {gen_planted({mspec.N, mspec.alpha, mspec.sigma, mspec.epsilon, seed, parse_scale(mspec.scale)}).matrix,
            "planted"};
  }
  if (f == "schrodinger") return {gen_periodic_schrodinger(mspec.N, 2), "schrodinger"};
  if (f == "counterexample") {
    return {gen_almost_counterexample(mspec.N, static_cast<double>(mspec.T), mspec.sigma).matrix, "ac"};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + f + "'");
}

// Writes `text` to the --out path, or to `out` when none was given.
void emit(const Globals& g, RunContext& ctx, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::Io, "cannot open '" + g.out + "' for writing");
  os << text;
  require(static_cast<bool>(os), ErrorKind::Io, "write to '" + g.out + "' failed");
  ctx.outputs.push_back(g.out);
}

void write_side_file(const std::string& path, const std::string& text, RunContext& ctx) {
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::Io, "cannot open '" + path + "' for writing");
  os << text;
  ctx.outputs.push_back(path);
}

json envelope(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"tool_version", LVLAB_VERSION}};
}

json parameter_record(const CLI::App* app) {
  json params = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1 && opt->get_type_size() != 0) {
        params[name] = res.front();
      } else if (opt->get_type_size() == 0) {
        params[name] = true;
      } else {
        params[name] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

// ---- gen -------------------------------------------------------------------

void run_gen(const Globals& g, const MatrixSpec& mspec, bool integer_times, RunContext& ctx, std::ostream& out) {
  std::ostringstream csv;
  if (mspec.family == "planted") {
    const PlantedInstance inst =
        gen_planted({mspec.N, mspec.alpha, mspec.sigma, mspec.epsilon, g.seed, parse_scale(mspec.scale)});
    write_matrix_csv(csv, inst.matrix, "planted");
    emit(g, ctx, out, csv.str());
    if (!g.out.empty()) {
      json w = envelope("gen");
      RowSubset support{inst.support};
      w["support"] = to_json(support);
      w["sparse_vector"] = std::vector<double>(inst.sparse_vector.data(),
                                               inst.sparse_vector.data() + inst.sparse_vector.size());
      w["input_witness"] = std::vector<double>(inst.input_witness.data(),
                                               inst.input_witness.data() + inst.input_witness.size());
      w["rows"] = inst.rows;
      w["support_size"] = inst.support_size;
      write_side_file(g.out + ".witness.json", w.dump(2) + "\n", ctx);
    }
    return;
  }
  if (mspec.family == "counterexample") {
    const CounterexampleInstance inst =
        gen_almost_counterexample(mspec.N, static_cast<double>(mspec.T), mspec.sigma, integer_times);
    write_matrix_csv(csv, inst.matrix, "ac");
    emit(g, ctx, out, csv.str());
    if (!g.out.empty()) {
      json w = envelope("gen");
      std::vector<double> re;
      for (Index n = 0; n < inst.coeffs.size(); ++n) re.push_back(inst.coeffs(n).real());
      w["coeffs"] = re;
      w["witness_times"] = inst.witness_times;
      w["squares_available"] = inst.squares_available;
      w["progression_len"] = inst.progression_len;
      w["height"] = inst.height;
      w["predicted"] = inst.predicted;
      write_side_file(g.out + ".witness.json", w.dump(2) + "\n", ctx);
    }
    return;
  }
  const LabeledMatrix m = build_matrix(mspec, g.seed, ctx);
  write_matrix_csv(csv, m.matrix, m.kind);
  emit(g, ctx, out, csv.str());
}

// ---- certify ---------------------------------------------------------------

struct CertifyOptions {
  std::vector<std::string> methods{"operator", "mmstar"};
  std::vector<double> lambdas;
  std::vector<double> sigmas;
  double budget = 0.0;
  int k = 2;
  std::vector<int> rs{3};
};

void run_certify(const Globals& g, const MatrixSpec& mspec, const CertifyOptions& o, RunContext& ctx,
                 std::ostream& out) {
  const LabeledMatrix lm = build_matrix(mspec, g.seed, ctx);
  const ComplexMatrix& m = lm.matrix;
  const double dn = static_cast<double>(m.cols());
  const double budget = o.budget > 0.0 ? o.budget : dn;
  std::vector<double> lambdas = o.lambdas;
  for (double s : o.sigmas) lambdas.push_back(std::pow(dn, s));
  if (lambdas.empty()) lambdas.push_back(std::pow(dn, 0.75));

  std::vector<Certificate> certs;
  for (const std::string& name : o.methods) {
    if (name == "operator") {
      certs.push_back(cert_operator(m));
    } else if (name == "power") {
      certs.push_back(cert_power(m, o.k, false));
    } else if (name == "power-corrected") {
      certs.push_back(cert_power(m, 2, true));
    } else if (name == "mmstar") {
      certs.push_back(cert_mmstar(m));
    } else if (name == "schatten") {
      for (int r : o.rs) certs.push_back(cert_schatten(m, r));
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown method '" + name + "'");
    }
  }
  json doc = envelope("certify");
  doc["dims"] = {{"T", m.rows()}, {"N", m.cols()}};
  doc["kind"] = lm.kind;
  doc["budget_sq"] = budget;
  json arr = json::array();
  for (const Certificate& c : certs) {
    json entry;
    entry["certificate"] = to_json(c);
    json bounds = json::array();
    for (double lam : lambdas) {
      json b = to_json(evaluate(c, lam, budget));
      b["lambda"] = lam;
      bounds.push_back(b);
    }
    entry["bounds"] = bounds;
    arr.push_back(entry);
  }
  doc["certificates"] = arr;
  emit(g, ctx, out, doc.dump(2) + "\n");
}

// ---- oracle ----------------------------------------------------------------

struct OracleOptions {
  Index s_min = 1;
  Index s_max = 0;
  std::string mode = "exact";
  int iters = 2000;
};

void run_oracle(const Globals& g, const MatrixSpec& mspec, const OracleOptions& o, RunContext& ctx,
                std::ostream& out) {
  const LabeledMatrix lm = build_matrix(mspec, g.seed, ctx);
  const Index T = lm.matrix.rows();
  const Index s_max = o.s_max > 0 ? o.s_max : T;
  require(o.s_min >= 1 && o.s_min <= s_max && s_max <= T, ErrorKind::InvalidArgument,
          "need 1 <= s-min <= s-max <= T");
  require(o.mode == "exact" || o.mode == "search", ErrorKind::InvalidArgument, "mode must be exact or search");
  std::ostringstream csv;
  csv << "S,value,subset\n";
  csv.precision(17);
  for (Index s = o.s_min; s <= s_max; ++s) {
    const SsvResult r = (o.mode == "exact")
                            ? ssv_exact(lm.matrix, s, g.threads)
                            : ssv_search(lm.matrix, s, derive_seed(g.seed, {static_cast<std::uint64_t>(s)}), o.iters);
    csv << s << ',' << r.value << ',';
    for (std::size_t i = 0; i < r.argmax.indices.size(); ++i) csv << (i ? " " : "") << r.argmax.indices[i] + 1;
    csv << '\n';
  }
  emit(g, ctx, out, csv.str());
}

// ---- energy ----------------------------------------------------------------

void run_energy(const Globals& g, const std::string& set_path, long long grid_len, RunContext& ctx,
                std::ostream& out) {
  ctx.inputs.push_back(set_path);
  std::vector<long long> w = load_integer_set(set_path);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  validate_integer_set(w);
  const long long L = grid_len > 0 ? grid_len : (w.empty() ? 1 : 2 * w.back() + 1);
  const std::uint64_t e = additive_energy(w);
  const std::uint64_t e_dft = additive_energy_dft(w, L);
  json doc = envelope("energy");
  doc["size"] = w.size();
  doc["energy"] = e;
  doc["energy_dft"] = e_dft;
  doc["grid_len"] = L;
  doc["agree"] = (e == e_dft);
  emit(g, ctx, out, doc.dump(2) + "\n");
}

// ---- density ---------------------------------------------------------------

struct DensityOptions {
  std::string family = "dirichlet";
  Index N = 64;
  Index T = 0;
  double delta = 0.0;
  Index grid_len = 4096;
  std::string profile_path;
  std::string spikes_path;
};

void run_density(const Globals& g, const DensityOptions& o, RunContext& ctx, std::ostream& out) {
  const Index T = o.T > 0 ? o.T : static_cast<Index>(std::llround(std::pow(static_cast<double>(o.N), 1.2)));
  const double delta = o.delta > 0.0 ? o.delta : 1.0 / static_cast<double>(T);
  FrequencySet phi;
  if (o.family == "dirichlet") {
    phi = dirichlet_frequencies(o.N);
  } else if (o.family == "ac") {
    phi = ac_frequencies(o.N);
  } else {
    throw Error(ErrorKind::InvalidArgument, "density family must be dirichlet or ac");
  }
  const SpikeReport rep = spike_report_for(phi, o.N, T, delta);
  if (!o.profile_path.empty()) {
    std::ostringstream csv;
    write_density_csv(csv, density_profile(phi, delta, o.grid_len));
    write_side_file(o.profile_path, csv.str(), ctx);
  }
  if (!o.spikes_path.empty()) {
    std::ostringstream csv;
    write_spikes_csv(csv, rep);
    write_side_file(o.spikes_path, csv.str(), ctx);
  }
  json doc = envelope("density");
  doc["family"] = o.family;
  doc["N"] = o.N;
  doc["T"] = T;
  doc["delta"] = delta;
  doc["spike_cap"] = rep.cap;
  doc["spike_count"] = rep.spikes.size();
  doc["total_mass"] = rep.total_mass;
  doc["spike_mass"] = rep.spike_mass;
  doc["residual_mass"] = rep.residual_mass;
  doc["smooth_level"] = rep.smooth_level;
  doc["spike_to_residual"] = rep.spike_to_residual();
  emit(g, ctx, out, doc.dump(2) + "\n");
}

// ---- majorant --------------------------------------------------------------

struct MajorantOptions {
  std::string check = "circle";
  int s = 2;
  int degree = 16;
  Index N = 64;
  double T = 512.0;
  double step = 0.25;
  int size = 8;
  double tmax = 100.0;
  double alpha_step = 1.0;
  int J = 4;
  std::string profile_path;
};

TrigPolynomial random_trig(const std::vector<double>& freqs, Rng& rng, bool unit) {
  TrigPolynomial d;
  d.freqs.freqs = freqs;
  d.coeffs.resize(static_cast<Index>(freqs.size()));
  for (Index k = 0; k < d.coeffs.size(); ++k) {
    d.coeffs(k) = unit ? rng.unit_complex() * rng.uniform() : Complex(rng.normal(), rng.normal());
  }
  return d;
}

void run_majorant(const Globals& g, const MajorantOptions& o, RunContext& ctx, std::ostream& out) {
  Rng rng(g.seed);
  json doc = envelope("majorant");
  doc["check"] = o.check;
  auto verdict = [&](const MajorantVerdict& v) {
    doc["lhs"] = v.lhs;
    doc["rhs"] = v.rhs;
    doc["holds"] = v.holds;
  };
  if (o.check == "circle") {
    require(o.degree >= 0, ErrorKind::InvalidArgument, "degree must be >= 0");
    std::vector<double> freqs;
    for (int n = 0; n <= o.degree; ++n) freqs.push_back(2.0 * std::numbers::pi * n);
    doc["s"] = o.s;
    doc["degree"] = o.degree;
    verdict(circle_majorant_check(random_trig(freqs, rng, false), o.s));
  } else if (o.check == "diffset") {
    require(o.size >= 1, ErrorKind::InvalidArgument, "size must be >= 1");
    const TrigPolynomial d = random_trig(dirichlet_frequencies(o.N).freqs, rng, false);
    std::vector<double> tees;
    for (int i = 0; i < o.size; ++i) tees.push_back(o.tmax * rng.uniform());
    doc["s"] = o.s;
    doc["tees"] = tees;
    verdict(diffset_majorant_check(d, tees, o.s));
  } else if (o.check == "ap") {
    const TrigPolynomial d = random_trig(dirichlet_frequencies(o.N).freqs, rng, true);
    const APEnergyVerdict v = ap_energy_bound_check(d, o.alpha_step, o.J, o.s);
    doc["s"] = o.s;
    doc["J"] = o.J;
    doc["alpha_step"] = o.alpha_step;
    doc["sum_on_w"] = v.sum_on_w;
    doc["hb_bound"] = v.hb_bound;
    doc["holds"] = v.holds;
  } else if (o.check == "profile") {
    const MajorantProfile p = dirichlet_majorant_profile(o.N, o.T, o.step);
    doc["N"] = o.N;
    doc["T"] = o.T;
    doc["step"] = o.step;
    doc["max_value"] = p.max_value;
    doc["argmax_t"] = p.argmax_t;
    doc["ratio_to_sqrt_n"] = p.ratio_to_sqrt_n;
    doc["below_trivial"] = p.max_value < static_cast<double>(o.N);
    if (!o.profile_path.empty()) {
      std::ostringstream csv;
      csv << "t,value\n";
      csv.precision(17);
      for (const auto& pt : p.points) csv << pt.t << ',' << pt.value << '\n';
      write_side_file(o.profile_path, csv.str(), ctx);
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "check must be circle, diffset, ap or profile");
  }
  emit(g, ctx, out, doc.dump(2) + "\n");
}

// ---- planted ---------------------------------------------------------------

void run_planted(const Globals& g, const std::string& config_path, const std::string& sidecar_path,
                 RunContext& ctx, std::ostream& out) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    ctx.inputs.push_back(config_path);
    std::ifstream is(config_path);
    require(static_cast<bool>(is), ErrorKind::Io, "cannot open '" + config_path + "'");
    json j;
    try {
      is >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("config is not JSON: ") + e.what());
    }
    if (!j.contains("base_seed")) j["base_seed"] = g.seed;
    cfg = config_from_json(j);
  } else {
    cfg.base_seed = g.seed;
    validate_config(cfg);
  }
  const StatTable table = run_experiment(cfg, g.threads);
  std::ostringstream csv;
  write_stat_table_csv(csv, table);
  emit(g, ctx, out, csv.str());
  std::string side = sidecar_path;
  if (side.empty() && !g.out.empty()) side = g.out + ".sidecar.json";
  if (!side.empty()) {
    json doc = envelope("planted");
    doc.update(stat_table_sidecar(table));
    doc["auc"] = auc_summary(table);
    write_side_file(side, doc.dump(2) + "\n", ctx);
  }
}

// ---- exponents -------------------------------------------------------------

void run_exponents(const Globals& g, double alpha, double sigma, const std::string& format, RunContext& ctx,
                   std::ostream& out) {
  const ExponentTable t = exponent_table(alpha, sigma);
  if (format == "text") {
    emit(g, ctx, out, format_text(t));
  } else if (format == "json") {
    json doc = envelope("exponents");
    doc.update(to_json(t));
    emit(g, ctx, out, doc.dump(2) + "\n");
  } else {
    throw Error(ErrorKind::InvalidArgument, "format must be json or text");
  }
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  json doc = {{"schema_version", kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}};
  err << doc.dump() << '\n';
}

std::uint64_t default_seed() {
  const char* env = std::getenv("LVLAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lvlab: large value laboratory", "lvlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(LVLAB_VERSION));

  Globals g;
  g.seed = default_seed();
  app.add_option("--seed", g.seed, "Base seed (default from LVLAB_SEED, else 0)")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads; outputs do not depend on it")
      ->capture_default_str()
      ->check(CLI::Range(1, 1024));
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--manifest", g.manifest, "Manifest path (default: <out>.manifest.json)");

  MatrixSpec mspec;
  bool integer_times = false;
  auto* gen = app.add_subcommand("gen", "Generate a matrix as CSV");
  add_matrix_options(gen, mspec, false);
  gen->add_flag("--integer-times", integer_times, "Counterexample: round witness times to integers");

  CertifyOptions copt;
  auto* certify = app.add_subcommand("certify", "Certified large value bounds");
  add_matrix_options(certify, mspec, true);
  certify->add_option("--methods", copt.methods, "operator,power,power-corrected,mmstar,schatten")
      ->delimiter(',')
      ->capture_default_str();
  certify->add_option("--lambda", copt.lambdas, "Thresholds")->delimiter(',');
  certify->add_option("--sigmas", copt.sigmas, "Thresholds as lambda = N^sigma")->delimiter(',');
  certify->add_option("--budget", copt.budget, "Input budget B^2 (default N)");
  certify->add_option("--k", copt.k, "Tensor power for the power method")->capture_default_str();
  certify->add_option("--r", copt.rs, "Schatten orders")->delimiter(',')->capture_default_str();

  OracleOptions oopt;
  auto* oracle = app.add_subcommand("oracle", "Sparse singular values over a range of S");
  add_matrix_options(oracle, mspec, true);
  oracle->add_option("--s-min", oopt.s_min, "Smallest S")->capture_default_str();
  oracle->add_option("--s-max", oopt.s_max, "Largest S (default T)");
  oracle->add_option("--mode", oopt.mode, "exact | search")->capture_default_str();
  oracle->add_option("--iters", oopt.iters, "Search budget")->capture_default_str();

  std::string set_path;
  long long grid_len = 0;
  auto* energy = app.add_subcommand("energy", "Additive energy with a DFT cross-check");
  energy->add_option("--set", set_path, "Newline-delimited integers")->required();
  energy->add_option("--grid-len", grid_len, "DFT length (default 2 max + 1)");

  DensityOptions dopt;
  auto* density = app.add_subcommand("density", "Difference density and spike report");
  density->add_option("--family", dopt.family, "dirichlet | ac")->capture_default_str();
  density->add_option("--N", dopt.N, "Degree")->capture_default_str();
  density->add_option("--T", dopt.T, "Length scale (default round(N^1.2))");
  density->add_option("--delta", dopt.delta, "Smoothing scale (default 1/T)");
  density->add_option("--grid-len", dopt.grid_len, "Profile grid points")->capture_default_str();
  density->add_option("--profile", dopt.profile_path, "Write the profile CSV here");
  density->add_option("--spikes", dopt.spikes_path, "Write the spike CSV here");

  MajorantOptions mopt;
  auto* majorant = app.add_subcommand("majorant", "Majorant inequality checks");
  majorant->add_option("--check", mopt.check, "circle | diffset | ap | profile")->capture_default_str();
  majorant->add_option("--s", mopt.s, "Moment exponent")->capture_default_str();
  majorant->add_option("--degree", mopt.degree, "circle: degree")->capture_default_str();
  majorant->add_option("--N", mopt.N, "Dirichlet degree")->capture_default_str();
  majorant->add_option("--T", mopt.T, "profile: scan length")->capture_default_str();
  majorant->add_option("--step", mopt.step, "profile: grid step")->capture_default_str();
  majorant->add_option("--size", mopt.size, "diffset: |T|")->capture_default_str();
  majorant->add_option("--tmax", mopt.tmax, "diffset: times drawn from [0, tmax]")->capture_default_str();
  majorant->add_option("--alpha-step", mopt.alpha_step, "ap: progression step")->capture_default_str();
  majorant->add_option("--J", mopt.J, "ap: half-length")->capture_default_str();
  majorant->add_option("--profile", mopt.profile_path, "profile: write CSV here");

  std::string config_path;
  std::string sidecar_path;
  auto* planted = app.add_subcommand("planted", "Planted-vs-random statistics");
  planted->add_option("--config", config_path, "Experiment config JSON");
  planted->add_option("--sidecar", sidecar_path, "Sidecar JSON (default <out>.sidecar.json)");

  double ex_alpha = 1.2;
  double ex_sigma = 0.75;
  std::string ex_format = "json";
  auto* exponents = app.add_subcommand("exponents", "Exponent table");
  exponents->add_option("--alpha", ex_alpha, "T = N^alpha")->capture_default_str();
  exponents->add_option("--sigma", ex_sigma, "lambda = N^sigma")->capture_default_str();
  exponents->add_option("--format", ex_format, "json | text")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", e.what());
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  RunContext ctx;
  ctx.command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (sub == gen) {
      run_gen(g, mspec, integer_times, ctx, out);
    } else if (sub == certify) {
      run_certify(g, mspec, copt, ctx, out);
    } else if (sub == oracle) {
      run_oracle(g, mspec, oopt, ctx, out);
    } else if (sub == energy) {
      run_energy(g, set_path, grid_len, ctx, out);
    } else if (sub == density) {
      run_density(g, dopt, ctx, out);
    } else if (sub == majorant) {
      run_majorant(g, mopt, ctx, out);
    } else if (sub == planted) {
      run_planted(g, config_path, sidecar_path, ctx, out);
    } else {
      run_exponents(g, ex_alpha, ex_sigma, ex_format, ctx, out);
    }
  } catch (const Error& e) {
    report_error(err, std::string(to_string(e.kind())), e.what());
    return e.kind() == ErrorKind::InvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    report_error(err, "Internal", e.what());
    return 1;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest = envelope(ctx.command);
  manifest["parameters"] = parameter_record(sub);
  manifest["global"] = {{"seed", g.seed}, {"threads", g.threads}, {"out", g.out}};
  manifest["seeds"] = {{"base", g.seed}};
  manifest["inputs"] = ctx.inputs;
  manifest["outputs"] = ctx.outputs;
  manifest["wall_time_seconds"] = wall;
  std::vector<std::string> argv_record(args.begin(), args.end());
  manifest["argv"] = argv_record;
  const std::string mpath =
      !g.manifest.empty() ? g.manifest : (!g.out.empty() ? g.out + ".manifest.json" : ctx.command + ".manifest.json");
  std::ofstream ms(mpath);
  if (!ms) {
    report_error(err, "Io", "cannot write manifest '" + mpath + "'");
    return 1;
  }
  ms << manifest.dump(2) << '\n';
  return 0;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace lvlab
