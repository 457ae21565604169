#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "lvlab/error.hpp"
#include "lvlab/random.hpp"

namespace lvlab {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A = M M^*, Hermitian T x T.
using GramMatrix = Eigen::MatrixXcd;

/// Largest min(T, N) handed to the dense Hermitian eigensolver.
inline constexpr Index kDenseCap = 512;

/// Singular values s_1 >= s_2 >= ... >= s_min(T,N) >= 0.
struct SingularSpectrum {
  RealVector values;

  Index size() const { return values.size(); }
  double operator[](Index i) const { return values(i); }
};

template <typename Derived>
void validate_matrix(const Eigen::MatrixBase<Derived>& m) {
  require(m.rows() >= 1 && m.cols() >= 1, ErrorKind::InvalidArgument,
          "matrix must have at least one row and one column");
  require(m.allFinite(), ErrorKind::InvalidArgument, "matrix has non-finite entries");
}

template <typename Derived>
double frobenius_sq(const Eigen::MatrixBase<Derived>& m) {
  return m.squaredNorm();
}

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t perturb_seed = 0x9d2c5680u;
};

template <typename Scalar>
struct PowerIterationResult {
  double lambda = 0.0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a Hermitian positive semidefinite operator given only
/// by its action `apply(x, y)` (y <- B x).
///
/// Starts from the normalized all-ones vector. Once successive Rayleigh
/// quotients agree to the stopping threshold, the iterate is perturbed by a
/// fixed-seed random vector and iterated to convergence again; this catches a
/// start vector orthogonal to the top eigenspace. The larger of the two
/// Rayleigh quotients is returned.
template <typename Scalar, typename Apply>
PowerIterationResult<Scalar> power_iteration(Apply&& apply, Index dim,
                                             const PowerIterationOptions& opt = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  require(dim >= 1, ErrorKind::InvalidArgument, "power iteration needs dim >= 1");
  // Successive quotients of a slowly converging iteration differ by much less
  // than their distance to the limit, hence the tighter internal threshold.
  const double stop = std::max(opt.tol * 1e-2, 4e-16);

  PowerIterationResult<Scalar> out;
  Vec x = Vec::Ones(dim) / std::sqrt(static_cast<double>(dim));
  Vec y(dim);
  double best = -1.0;
  Vec best_vec = x;
  int total = 0;

  for (int phase = 0; phase < 2; ++phase) {
    if (phase == 1) {
      Rng rng(opt.perturb_seed);
      Vec r(dim);
      for (Index i = 0; i < dim; ++i) {
        if constexpr (std::is_same_v<Scalar, Complex>) {
          r(i) = Complex(rng.normal(), rng.normal());
        } else {
          r(i) = rng.normal();
        }
      }
      x = x + 1e-2 * r / r.norm();
      x.normalize();
    }
    apply(x, y);
    double theta = std::real(x.dot(y));
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it, ++total) {
      const double ny = y.norm();
      if (ny == 0.0) {
        theta = 0.0;
        converged = true;
        break;
      }
      x = y / ny;
      apply(x, y);
      const double next = std::real(x.dot(y));
      if (std::abs(next - theta) <= stop * std::max(std::abs(next), 1e-300)) {
        theta = next;
        converged = true;
        break;
      }
      theta = next;
    }
    out.converged = (phase == 0) ? converged : (out.converged && converged);
    if (theta > best) {
      best = theta;
      best_vec = x;
    }
  }
  out.lambda = std::max(best, 0.0);
  out.vector = best_vec;
  out.iterations = total;
  return out;
}

/// ||M|| = s_1(M) by power iteration on the smaller of M^*M and MM^*.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  require(tol > 0.0 && tol < 1.0, ErrorKind::InvalidArgument, "tol must lie in (0, 1)");
  validate_matrix(m);
  const auto& mat = m.derived();
  PowerIterationOptions opt;
  opt.tol = tol;
  if (mat.cols() <= mat.rows()) {
    auto apply = [&](const Vec& x, Vec& y) { y.noalias() = mat.adjoint() * (mat * x); };
    return std::sqrt(power_iteration<Scalar>(apply, mat.cols(), opt).lambda);
  }
  auto apply = [&](const Vec& x, Vec& y) { y.noalias() = mat * (mat.adjoint() * x); };
  return std::sqrt(power_iteration<Scalar>(apply, mat.rows(), opt).lambda);
}

template <typename Derived>
GramMatrix gram(const Eigen::MatrixBase<Derived>& m) {
  validate_matrix(m);
  GramMatrix a = m.template cast<Complex>() * m.template cast<Complex>().adjoint();
  // Exact Hermitian symmetry and a real diagonal.
  for (Index i = 0; i < a.rows(); ++i) {
    a(i, i) = Complex(std::real(a(i, i)), 0.0);
    for (Index j = i + 1; j < a.cols(); ++j) a(j, i) = std::conj(a(i, j));
  }
  return a;
}

/// Full spectrum via the Hermitian eigendecomposition of the smaller Gram.
template <typename Derived>
SingularSpectrum singular_values(const Eigen::MatrixBase<Derived>& m) {
  validate_matrix(m);
  const Index k = std::min(m.rows(), m.cols());
  require(k <= kDenseCap, ErrorKind::CapExceeded,
          "min(T, N) = " + std::to_string(k) + " exceeds the dense cap " +
              std::to_string(kDenseCap));
  ComplexMatrix mc = m.template cast<Complex>();
  ComplexMatrix g = (m.rows() <= m.cols()) ? ComplexMatrix(mc * mc.adjoint())
                                           : ComplexMatrix(mc.adjoint() * mc);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
  SingularSpectrum out;
  out.values.resize(k);
  // Eigenvalues below the solver's backward error are indistinguishable from 0.
  const double top = std::max(es.eigenvalues()(k - 1), 0.0);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(k) * top;
  for (Index i = 0; i < k; ++i) {
    const double ev = es.eigenvalues()(k - 1 - i);
    out.values(i) = ev > floor ? std::sqrt(ev) : 0.0;
  }
  return out;
}

/// Schatten p-norm; p = infinity gives s_1.
template <typename Derived>
double schatten_norm(const Eigen::MatrixBase<Derived>& m, double p) {
  require(p >= 1.0, ErrorKind::InvalidArgument, "Schatten exponent must be >= 1");
  const SingularSpectrum s = singular_values(m);
  if (std::isinf(p)) return s[0];
  if (s[0] == 0.0) return 0.0;
  // Scale by s_1 to keep large powers in range.
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) acc += std::pow(s[i] / s[0], p);
  return s[0] * std::pow(acc, 1.0 / p);
}

/// Largest eigenvalue of a Hermitian PSD matrix: dense solver up to
/// kDenseCap, power iteration above.
double hermitian_lambda_max(const ComplexMatrix& h, double tol = 1e-12);

/// Largest eigenvalue of a Hermitian matrix restricted to the index set `idx`.
double principal_lambda_max(const ComplexMatrix& h, const std::vector<Index>& idx);

}  // namespace lvlab
