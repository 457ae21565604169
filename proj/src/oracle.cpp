#include "lvlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace lvlab {

namespace {

// Cheap upper bounds on lambda_max of the principal minor.
double minor_upper_bound(const GramMatrix& a, const std::vector<Index>& idx) {
  double gersh = 0.0;
  double frob = 0.0;
  for (Index i : idx) {
    double row = 0.0;
    for (Index j : idx) {
      const double v = std::abs(a(i, j));
      row += v;
      frob += v * v;
    }
    gersh = std::max(gersh, row);
  }
  return std::min(gersh, std::sqrt(frob));
}

bool better(double v, const std::vector<Index>& w, double best, const std::vector<Index>& best_w) {
  if (v > best) return true;
  return v == best && w < best_w;
}

// Colex successor; false once the last subset has been passed.
bool next_colex(std::vector<Index>& c, Index n) {
  const auto k = static_cast<Index>(c.size());
  for (Index j = 0; j < k; ++j) {
    const Index limit = (j + 1 < k) ? c[static_cast<std::size_t>(j + 1)] : n;
    if (c[static_cast<std::size_t>(j)] + 1 < limit) {
      ++c[static_cast<std::size_t>(j)];
      for (Index i = 0; i < j; ++i) c[static_cast<std::size_t>(i)] = i;
      return true;
    }
  }
  return false;
}

// Subset of rank `rank` in colex order.
std::vector<Index> unrank_colex(double rank, Index k) {
  std::vector<Index> c(static_cast<std::size_t>(k));
  for (Index i = k; i >= 1; --i) {
    Index x = i - 1;
    while (binomial(x + 1, i) <= rank) ++x;
    c[static_cast<std::size_t>(i - 1)] = x;
    rank -= binomial(x, i);
  }
  return c;
}

struct BlockResult {
  double lambda = -1.0;
  std::vector<Index> subset;
};

BlockResult enumerate_block(const GramMatrix& a, Index s, double first, double count) {
  BlockResult out;
  std::vector<Index> c = unrank_colex(first, s);
  for (double done = 0; done < count; ++done) {
    if (minor_upper_bound(a, c) * (1.0 + 1e-12) >= out.lambda) {
      const double lam = principal_lambda_max(a, c);
      // Colex order is not lexicographic, so equal values need the explicit tie-break.
      if (better(lam, c, out.lambda, out.subset)) {
        out.lambda = lam;
        out.subset = c;
      }
    }
    if (!next_colex(c, a.rows())) break;
  }
  return out;
}

}  // namespace

void validate_subset(const RowSubset& w, Index T) {
  require(!w.indices.empty(), ErrorKind::InvalidArgument, "row subset must be non-empty");
  for (std::size_t i = 0; i < w.indices.size(); ++i) {
    require(w.indices[i] >= 0 && w.indices[i] < T, ErrorKind::InvalidArgument, "row index out of range");
    require(i == 0 || w.indices[i - 1] < w.indices[i], ErrorKind::InvalidArgument,
            "row subset must be strictly increasing");
  }
}

double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (Index i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(out);
}

double subset_norm(const GramMatrix& a, const RowSubset& w) {
  validate_subset(w, a.rows());
  return std::sqrt(std::max(principal_lambda_max(a, w.indices), 0.0));
}

SsvResult ssv_exact(const ComplexMatrix& m, Index s, int threads) {
  validate_matrix(m);
  const Index T = m.rows();
  require(s >= 1 && s <= T, ErrorKind::InvalidArgument, "S must lie in [1, T]");
  const double total = binomial(T, s);
  require(total <= kEnumerationCap, ErrorKind::CapExceeded,
          "C(T, S) = " + std::to_string(total) + " exceeds the enumeration cap");
  const GramMatrix a = gram(m);
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(std::min(total, 64.0))));

  std::vector<BlockResult> parts(static_cast<std::size_t>(nt));
  const double per = std::ceil(total / nt);
  auto work = [&](int t) {
    const double first = per * t;
    if (first >= total) return;
    parts[static_cast<std::size_t>(t)] = enumerate_block(a, s, first, std::min(per, total - first));
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  BlockResult best;
  for (const auto& p : parts)
    if (!p.subset.empty() && better(p.lambda, p.subset, best.lambda, best.subset)) best = p;
  return {std::sqrt(std::max(best.lambda, 0.0)), RowSubset{best.subset}};
}

SsvResult ssv_search(const ComplexMatrix& m, Index s, std::uint64_t seed, int iters) {
  validate_matrix(m);
  const Index T = m.rows();
  require(s >= 1 && s <= T, ErrorKind::InvalidArgument, "S must lie in [1, T]");
  require(iters >= 1, ErrorKind::InvalidArgument, "iters must be >= 1");
  const GramMatrix a = gram(m);
  Rng rng(seed);
  long budget = iters;
  double best = -1.0;
  std::vector<Index> best_w;

  while (budget > 0) {
    std::vector<Index> perm(static_cast<std::size_t>(T));
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = 0; i < s; ++i) {
      const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(T - i)));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    std::vector<Index> cur(perm.begin(), perm.begin() + s);
    std::sort(cur.begin(), cur.end());
    double cur_val = principal_lambda_max(a, cur);
    --budget;
    if (better(cur_val, cur, best, best_w)) {
      best = cur_val;
      best_w = cur;
    }
    bool improved = true;
    while (improved && budget > 0) {
      improved = false;
      double step_val = cur_val;
      std::vector<Index> step_w;
      for (std::size_t out = 0; out < cur.size() && budget > 0; ++out) {
        for (Index in = 0; in < T && budget > 0; ++in) {
          if (std::binary_search(cur.begin(), cur.end(), in)) continue;
          std::vector<Index> cand = cur;
          cand[out] = in;
          std::sort(cand.begin(), cand.end());
          const double v = principal_lambda_max(a, cand);
          --budget;
          if (v > step_val) {
            step_val = v;
            step_w = cand;
          }
        }
      }
      if (!step_w.empty()) {
        cur = step_w;
        cur_val = step_val;
        improved = true;
        if (better(cur_val, cur, best, best_w)) {
          best = cur_val;
          best_w = cur;
        }
      }
    }
  }
  return {std::sqrt(std::max(best, 0.0)), RowSubset{best_w}};
}

RowSubset achieved_set(const ComplexMatrix& m, const ComplexVector& b, double lambda) {
  require(b.size() == m.cols(), ErrorKind::InvalidArgument, "input length must equal N");
  const ComplexVector y = m * b;
  RowSubset out;
  for (Index t = 0; t < y.size(); ++t)
    if (std::abs(y(t)) > lambda) out.indices.push_back(t);
  return out;
}

namespace {

Witness make_witness(const ComplexMatrix& m, ComplexVector b, double lambda, bool clipped) {
  Witness w;
  w.achieved = achieved_set(m, b, lambda);
  w.norm_l2 = b.norm();
  w.norm_linf = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
  w.input = std::move(b);
  w.lambda = lambda;
  w.clipped = clipped;
  return w;
}

}  // namespace

Witness witness_focusing(const ComplexMatrix& m, const RowSubset& u, double scale, double lambda,
                         bool clip_linf) {
  validate_matrix(m);
  validate_subset(u, m.rows());
  require(std::isfinite(scale) && std::isfinite(lambda), ErrorKind::InvalidArgument,
          "scale and lambda must be finite");
  ComplexVector b = ComplexVector::Zero(m.cols());
  for (Index t : u.indices) b += m.row(t).adjoint();
  b *= scale;
  bool clipped = false;
  if (clip_linf) {
    for (Index n = 0; n < b.size(); ++n) {
      const double mod = std::abs(b(n));
      if (mod > 1.0) {
        b(n) /= mod;
        clipped = true;
      }
    }
  }
  return make_witness(m, std::move(b), lambda, clipped);
}

InputNorm parse_input_norm(const std::string& name) {
  if (name == "l2") return InputNorm::L2;
  if (name == "linf") return InputNorm::Linf;
  throw Error(ErrorKind::InvalidArgument, "norm must be 'l2' or 'linf'");
}

Witness witness_random(const ComplexMatrix& m, double lambda, InputNorm norm, double budget,
                       std::uint64_t seed, int iters) {
  validate_matrix(m);
  require(budget > 0.0 && std::isfinite(budget), ErrorKind::InvalidArgument, "budget must be positive");
  require(iters >= 1, ErrorKind::InvalidArgument, "iters must be >= 1");
  Rng rng(seed);
  Witness best;
  bool have = false;
  for (int it = 0; it < iters; ++it) {
    ComplexVector b(m.cols());
    if (norm == InputNorm::Linf) {
      for (Index n = 0; n < b.size(); ++n) b(n) = budget * rng.sign();
    } else {
      for (Index n = 0; n < b.size(); ++n) b(n) = rng.normal();
      b *= budget / b.norm();
    }
    Witness w = make_witness(m, std::move(b), lambda, false);
    if (!have || w.achieved.size() > best.achieved.size()) {
      best = std::move(w);
      have = true;
    }
  }
  return best;
}

nlohmann::json to_json(const RowSubset& w) {
  nlohmann::json j = nlohmann::json::array();
  for (Index i : w.indices) j.push_back(i + 1);
  return j;
}

nlohmann::json to_json(const Witness& w) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Index n = 0; n < w.input.size(); ++n) {
    re.push_back(w.input(n).real());
    im.push_back(w.input(n).imag());
  }
  return {{"b", {{"re", re}, {"im", im}}},
          {"lambda", w.lambda},
          {"achieved", to_json(w.achieved)},
          {"norms", {{"l2", w.norm_l2}, {"linf", w.norm_linf}}},
          {"clipped", w.clipped}};
}

}  // namespace lvlab
