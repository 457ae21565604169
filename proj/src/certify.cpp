#include "lvlab/certify.hpp"

#include <cmath>
#include <limits>
#include <type_traits>

namespace lvlab {

namespace {

// Computed constants are nudged upward so rounding in the eigensolver never
// makes a certificate unsound.
constexpr double kInflate = 1.0 + 1e-10;

// Dense matricization is used for the flattened norm while it stays this small.
constexpr Index kFlatDenseEntries = Index{1} << 20;

double sound_floor(double x) {
  return std::floor(x + 1e-9 * std::max(1.0, x));
}

double max_diag(const GramMatrix& a) {
  return a.diagonal().real().maxCoeff();
}

void check_gram_dims(const GramMatrix& a) {
  require(a.rows() >= 1 && a.rows() == a.cols(), ErrorKind::InvalidArgument,
          "Gram matrix must be square and non-empty");
}

// Largest w in [0, inf) with h(w) <= 0 for the increasing function h.
template <typename H>
double increasing_root(H&& h, double hi) {
  double lo = 0.0;
  while (h(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) <= 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

double PowerConstants::effective() const {
  if (!diag_corrected) return tensor_opnorm_sq;
  const double corrected = (simple_part + residual_norm) * (simple_part + residual_norm);
  return std::min(tensor_opnorm_sq, corrected);
}

std::string Certificate::method() const {
  switch (constants.index()) {
    case 0: return "operator";
    case 1: return "power";
    case 2: return "mmstar";
    default: return "schatten";
  }
}

Certificate cert_operator(const ComplexMatrix& m, double tol) {
  validate_matrix(m);
  Certificate c{m.rows(), m.cols(), OperatorConstants{}};
  const double s1 = operator_norm(m, tol);
  std::get<OperatorConstants>(c.constants).opnorm_sq = s1 * s1 * (1.0 + std::max(1e-10, 10.0 * tol));
  return c;
}

ComplexMatrix tensor_power(const ComplexMatrix& m, int k) {
  validate_matrix(m);
  require(k >= 1, ErrorKind::InvalidArgument, "tensor power needs k >= 1");
  const double cols = std::pow(static_cast<double>(m.cols()), k);
  require(cols <= 1e6, ErrorKind::CapExceeded, "N^k exceeds 1e6 explicit tensor columns");
  ComplexMatrix out = m;
  for (int step = 1; step < k; ++step) {
    ComplexMatrix next(m.rows(), out.cols() * m.cols());
    for (Index a = 0; a < out.cols(); ++a)
      for (Index b = 0; b < m.cols(); ++b)
        next.col(a * m.cols() + b) = out.col(a).cwiseProduct(m.col(b));
    out.swap(next);
  }
  return out;
}

GramMatrix tensor_power_gram(const ComplexMatrix& m, int k) {
  require(k >= 1, ErrorKind::InvalidArgument, "tensor power needs k >= 1");
  const GramMatrix a = gram(m);
  GramMatrix out = a;
  for (int step = 1; step < k; ++step) out = out.cwiseProduct(a);
  return out;
}

Certificate cert_power(const ComplexMatrix& m, int k, bool diag_corrected, double tol) {
  validate_matrix(m);
  require(k >= 2, ErrorKind::InvalidArgument, "power method needs k >= 2");
  require(!diag_corrected || k == 2, ErrorKind::Unsupported, "diagonal correction needs k = 2");
  const bool real = m.imag().cwiseAbs().maxCoeff() == 0.0;
  require(!diag_corrected || real, ErrorKind::Unsupported,
          "diagonal correction needs a real-valued matrix");

  Certificate c{m.rows(), m.cols(), PowerConstants{}};
  auto& pc = std::get<PowerConstants>(c.constants);
  pc.k = k;
  pc.diag_corrected = diag_corrected;
  const double inflate = 1.0 + std::max(1e-10, 10.0 * tol);
  const GramMatrix g = tensor_power_gram(m, k);
  pc.tensor_opnorm_sq = hermitian_lambda_max(g, tol) * inflate;

  if (diag_corrected) {
    const double dn = static_cast<double>(m.cols());
    // M^{(x)2} applied to the duplicated-index vector is (M o M) 1.
    const ComplexVector u = m.cwiseProduct(m) * ComplexVector::Ones(m.cols()) / std::sqrt(dn);
    pc.simple_part = u.norm() / std::sqrt(dn) * kInflate;
    GramMatrix resid = g - u * u.adjoint();
    for (Index i = 0; i < resid.rows(); ++i) resid(i, i) = std::real(resid(i, i));
    // Cancellation in g - uu^* leaves an absolute error of order eps ||g||.
    const double lam = std::max(hermitian_lambda_max(resid, tol), 0.0);
    pc.residual_norm = std::sqrt(lam * inflate + 1e-13 * pc.tensor_opnorm_sq);
  }
  return c;
}

Certificate cert_mmstar(const ComplexMatrix& m) {
  const GramMatrix a = gram(m);
  Certificate c{m.rows(), m.cols(), MMStarConstants{}};
  auto& mc = std::get<MMStarConstants>(c.constants);
  mc.diag_max = max_diag(a) * kInflate;
  double off = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < j; ++i) off = std::max(off, std::abs(a(i, j)));
  mc.offdiag_max = off * kInflate;
  return c;
}

Complex schatten_form(const GramMatrix& a, const std::vector<ComplexVector>& vs) {
  check_gram_dims(a);
  require(!vs.empty(), ErrorKind::InvalidArgument, "Schatten form needs r >= 1 vectors");
  for (const auto& v : vs)
    require(v.size() == a.rows(), ErrorKind::InvalidArgument, "form argument has wrong length");
  ComplexMatrix p = vs[0].asDiagonal() * a;
  for (std::size_t k = 1; k < vs.size(); ++k) p = p * (vs[k].asDiagonal() * a);
  return p.trace();
}

Complex schatten_delta_form(const GramMatrix& a, const std::vector<ComplexVector>& vs) {
  Complex diag(0.0, 0.0);
  const int r = static_cast<int>(vs.size());
  const Complex total = schatten_form(a, vs);
  for (Index i = 0; i < a.rows(); ++i) {
    Complex prod = std::pow(std::real(a(i, i)), r);
    for (const auto& v : vs) prod *= v(i);
    diag += prod;
  }
  return total - diag;
}

Index flat_rows(Index T, int r) { return r == 4 ? T * T : T; }

Index flat_cols(Index T, int r) {
  switch (r) {
    case 2: return T;
    case 3:
    case 4: return T * T;
  }
  throw Error(ErrorKind::InvalidArgument, "flattening needs r in {2, 3, 4}");
}

ComplexVector flat_apply(const GramMatrix& a, int r, const ComplexVector& x) {
  check_gram_dims(a);
  const Index T = a.rows();
  require(x.size() == flat_cols(T, r), ErrorKind::InvalidArgument, "flattened input has wrong length");
  if (r == 2) {
    ComplexMatrix k = a.cwiseAbs2().cast<Complex>();
    k.diagonal().setZero();
    return k * x;
  }
  Eigen::Map<const ComplexMatrix> X(x.data(), T, T);
  const ComplexMatrix ax = a.cwiseProduct(X);
  if (r == 3) {
    // y_i = (A (A o X) A)_ii
    const ComplexMatrix left = a * ax;
    ComplexVector y = left.cwiseProduct(a.transpose()).rowwise().sum();
    for (Index i = 0; i < T; ++i) y(i) -= std::pow(std::real(a(i, i)), 3) * X(i, i);
    return y;
  }
  ComplexMatrix Y = a.cwiseProduct((a * ax * a).transpose());
  for (Index i = 0; i < T; ++i) Y(i, i) -= std::pow(std::real(a(i, i)), 4) * X(i, i);
  return Eigen::Map<ComplexVector>(Y.data(), T * T);
}

ComplexVector flat_adjoint(const GramMatrix& a, int r, const ComplexVector& y) {
  check_gram_dims(a);
  const Index T = a.rows();
  require(y.size() == flat_rows(T, r), ErrorKind::InvalidArgument, "flattened output has wrong length");
  if (r == 2) return flat_apply(a, 2, y);  // real symmetric
  if (r == 3) {
    ComplexMatrix X = a.conjugate().cwiseProduct(a * y.asDiagonal() * a);
    for (Index i = 0; i < T; ++i) X(i, i) -= std::pow(std::real(a(i, i)), 3) * y(i);
    return Eigen::Map<ComplexVector>(X.data(), T * T);
  }
  Eigen::Map<const ComplexMatrix> Y(y.data(), T, T);
  ComplexMatrix X = a.conjugate().cwiseProduct(a * a.cwiseProduct(Y.transpose()) * a);
  for (Index i = 0; i < T; ++i) X(i, i) -= std::pow(std::real(a(i, i)), 4) * Y(i, i);
  return Eigen::Map<ComplexVector>(X.data(), T * T);
}

ComplexMatrix flat_dense(const GramMatrix& a, int r) {
  check_gram_dims(a);
  const Index T = a.rows();
  const Index rows = flat_rows(T, r);
  const Index cols = flat_cols(T, r);
  require(static_cast<double>(rows) * static_cast<double>(cols) <= 1.6e7, ErrorKind::CapExceeded,
          "dense matricization too large");
  ComplexMatrix out(rows, cols);
  const auto diag_pow = [&](Index i) { return std::pow(std::real(a(i, i)), r); };
  if (r == 2) {
    for (Index j = 0; j < T; ++j)
      for (Index i = 0; i < T; ++i) out(i, j) = (i == j) ? Complex(0.0) : Complex(std::norm(a(i, j)));
  } else if (r == 3) {
    for (Index k = 0; k < T; ++k)
      for (Index j = 0; j < T; ++j)
        for (Index i = 0; i < T; ++i) {
          Complex v = a(i, j) * a(j, k) * a(k, i);
          if (i == j && j == k) v -= diag_pow(i);
          out(i, j + k * T) = v;
        }
  } else {
    for (Index l = 0; l < T; ++l)
      for (Index k = 0; k < T; ++k)
        for (Index j = 0; j < T; ++j)
          for (Index i = 0; i < T; ++i) {
            Complex v = a(i, j) * a(j, k) * a(k, l) * a(l, i);
            if (i == j && j == k && k == l) v -= diag_pow(i);
            out(i + j * T, k + l * T) = v;
          }
  }
  return out;
}

double flat_norm(const GramMatrix& a, int r, double tol) {
  check_gram_dims(a);
  const Index T = a.rows();
  const Index rows = flat_rows(T, r);
  const Index cols = flat_cols(T, r);
  if (rows * cols <= kFlatDenseEntries && std::min(rows, cols) <= kDenseCap) {
    const ComplexMatrix f = flat_dense(a, r);
    const ComplexMatrix g = (rows <= cols) ? ComplexMatrix(f * f.adjoint()) : ComplexMatrix(f.adjoint() * f);
    return std::sqrt(std::max(hermitian_lambda_max(g, 1e-12), 0.0));
  }
  PowerIterationOptions opt;
  opt.tol = tol;
  auto apply = [&](const ComplexVector& x, ComplexVector& y) { y = flat_adjoint(a, r, flat_apply(a, r, x)); };
  return std::sqrt(power_iteration<Complex>(apply, cols, opt).lambda);
}

Certificate cert_schatten(const ComplexMatrix& m, int r, double tol) {
  validate_matrix(m);
  require(r >= 2 && r <= 4, ErrorKind::InvalidArgument, "Schatten certificate needs r in {2, 3, 4}");
  require(tol > 0.0 && tol < 1.0, ErrorKind::InvalidArgument, "tol must lie in (0, 1)");
  const Index T = m.rows();
  if (r == 2) {
    require(T <= 4096, ErrorKind::CapExceeded, "r = 2 needs T <= 4096");
  } else if (r == 3) {
    require(T <= kSchattenCapR3, ErrorKind::CapExceeded, "r = 3 needs T <= " + std::to_string(kSchattenCapR3));
  } else {
    require(T <= kSchattenCapR4, ErrorKind::CapExceeded, "r = 4 needs T <= " + std::to_string(kSchattenCapR4));
  }
  const GramMatrix a = gram(m);
  Certificate c{m.rows(), m.cols(), SchattenConstants{}};
  auto& sc = std::get<SchattenConstants>(c.constants);
  sc.r = r;
  sc.diag_const = max_diag(a) * kInflate;
  sc.flat_norm = flat_norm(a, r, tol) * (1.0 + std::max(1e-10, 10.0 * tol)) +
                 1e-13 * std::pow(sc.diag_const, r);
  return c;
}

double minor_norm_sq_bound(const Certificate& cert, Index s) {
  require(s >= 1 && s <= cert.T, ErrorKind::InvalidArgument, "cardinality must lie in [1, T]");
  const double ds = static_cast<double>(s);
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, OperatorConstants>) {
          return k.opnorm_sq;
        } else if constexpr (std::is_same_v<K, PowerConstants>) {
          // Hoelder: sum_W |y|^2 <= |W|^{1-1/k} (sum |y|^{2k})^{1/k}.
          return std::pow(ds, 1.0 - 1.0 / k.k) * std::pow(k.effective(), 1.0 / k.k);
        } else if constexpr (std::is_same_v<K, MMStarConstants>) {
          return k.diag_max + (ds - 1.0) * k.offdiag_max;
        } else {
          const double d = std::pow(k.diag_const, k.r) * ds + k.flat_norm * std::pow(ds, 0.5 * k.r);
          return std::pow(d, 1.0 / k.r);
        }
      },
      cert.constants);
}

LVBound evaluate(const Certificate& cert, double lambda, double b_budget_sq) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::InvalidArgument, "lambda must be positive");
  require(b_budget_sq > 0.0 && std::isfinite(b_budget_sq), ErrorKind::InvalidArgument,
          "input budget must be positive");
  const double lam2 = lambda * lambda;
  const double inf = std::numeric_limits<double>::infinity();
  LVBound out;

  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, OperatorConstants>) {
          out.raw = k.opnorm_sq * b_budget_sq / lam2;
          out.binding_constraint = "operator-norm";
        } else if constexpr (std::is_same_v<K, PowerConstants>) {
          const double ratio = b_budget_sq / lam2;
          out.raw = k.effective() * std::pow(ratio, k.k);
          out.binding_constraint =
              (k.diag_corrected && k.effective() < k.tensor_opnorm_sq) ? "diag-corrected-tensor" : "tensor-norm";
        } else if constexpr (std::is_same_v<K, MMStarConstants>) {
          const double cb = k.offdiag_max * b_budget_sq;
          if (lam2 > cb) {
            out.raw = std::max(k.diag_max - k.offdiag_max, 0.0) * b_budget_sq / (lam2 - cb);
            out.binding_constraint = "gram-diagonal-and-offdiagonal";
          } else {
            out.raw = inf;
            out.binding_constraint = "offdiagonal-coherence";
          }
        } else {
          const double r = k.r;
          const double x = std::pow(lam2 / b_budget_sq, r);
          const double d0r = std::pow(k.diag_const, r);
          auto h = [&](double w) {
            if (w <= 0.0) return -inf;
            return std::pow(w, 0.5 * r) * x - d0r * std::pow(w, 1.0 - 0.5 * r) - k.flat_norm;
          };
          out.raw = increasing_root(h, static_cast<double>(std::max<Index>(cert.T, 1)));
          if (std::isfinite(out.raw)) {
            const double w = out.raw;
            out.binding_constraint =
                (d0r * w >= k.flat_norm * std::pow(w, 0.5 * r)) ? "schatten-diagonal" : "schatten-flattened";
          } else {
            out.binding_constraint = "schatten-flattened";
          }
        }
      },
      cert.constants);

  const double T = static_cast<double>(cert.T);
  if (!std::isfinite(out.raw)) {
    out.unbounded = true;
    out.max_w = cert.T;
    return out;
  }
  const double floored = sound_floor(out.raw);
  if (floored >= T) {
    out.max_w = cert.T;
    out.binding_constraint += ",clamped-to-T";
  } else {
    out.max_w = static_cast<Index>(floored);
  }
  return out;
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json j;
  j["method"] = cert.method();
  j["dims"] = {{"T", cert.T}, {"N", cert.N}};
  nlohmann::json c;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, OperatorConstants>) {
          c["opnorm_sq"] = k.opnorm_sq;
        } else if constexpr (std::is_same_v<K, PowerConstants>) {
          c["k"] = k.k;
          c["diag_corrected"] = k.diag_corrected;
          c["tensor_opnorm_sq"] = k.tensor_opnorm_sq;
          if (k.diag_corrected) {
            c["simple_part"] = k.simple_part;
            c["residual_norm"] = k.residual_norm;
          }
        } else if constexpr (std::is_same_v<K, MMStarConstants>) {
          c["diag_max"] = k.diag_max;
          c["offdiag_max"] = k.offdiag_max;
        } else {
          c["r"] = k.r;
          c["diag_const"] = k.diag_const;
          c["flat_norm"] = k.flat_norm;
        }
      },
      cert.constants);
  j["constants"] = c;
  j["tool_version"] = LVLAB_VERSION;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    Certificate cert;
    cert.T = j.at("dims").at("T").get<Index>();
    cert.N = j.at("dims").at("N").get<Index>();
    const auto& c = j.at("constants");
    const std::string method = j.at("method").get<std::string>();
    if (method == "operator") {
      cert.constants = OperatorConstants{c.at("opnorm_sq").get<double>()};
    } else if (method == "power") {
      PowerConstants pc;
      pc.k = c.at("k").get<int>();
      pc.diag_corrected = c.at("diag_corrected").get<bool>();
      pc.tensor_opnorm_sq = c.at("tensor_opnorm_sq").get<double>();
      if (pc.diag_corrected) {
        pc.simple_part = c.at("simple_part").get<double>();
        pc.residual_norm = c.at("residual_norm").get<double>();
      }
      cert.constants = pc;
    } else if (method == "mmstar") {
      cert.constants = MMStarConstants{c.at("diag_max").get<double>(), c.at("offdiag_max").get<double>()};
    } else if (method == "schatten") {
      cert.constants = SchattenConstants{c.at("r").get<int>(), c.at("diag_const").get<double>(),
                                         c.at("flat_norm").get<double>()};
    } else {
      throw Error(ErrorKind::Parse, "unknown certificate method '" + method + "'");
    }
    require(cert.T >= 1 && cert.N >= 1, ErrorKind::Parse, "certificate dims must be positive");
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed certificate: ") + e.what());
  }
}

nlohmann::json to_json(const LVBound& bound) {
  nlohmann::json j;
  j["max_w"] = bound.max_w;
  j["unbounded"] = bound.unbounded;
  if (std::isfinite(bound.raw)) {
    j["raw_bound"] = bound.raw;
  } else {
    j["raw_bound"] = nullptr;
  }
  j["binding_constraint"] = bound.binding_constraint;
  return j;
}

}  // namespace lvlab
