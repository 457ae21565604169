#include "lvlab/linalg.hpp"

namespace lvlab {

double hermitian_lambda_max(const ComplexMatrix& h, double tol) {
  require(h.rows() == h.cols() && h.rows() >= 1, ErrorKind::InvalidArgument,
          "hermitian_lambda_max needs a non-empty square matrix");
  if (h.rows() <= kDenseCap) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(h.rows() - 1);
  }
  PowerIterationOptions opt;
  opt.tol = tol;
  auto apply = [&](const ComplexVector& x, ComplexVector& y) { y.noalias() = h * x; };
  return power_iteration<Complex>(apply, h.rows(), opt).lambda;
}

double principal_lambda_max(const ComplexMatrix& h, const std::vector<Index>& idx) {
  const Index s = static_cast<Index>(idx.size());
  require(s >= 1, ErrorKind::InvalidArgument, "empty index set");
  if (s == 1) return std::real(h(idx[0], idx[0]));
  ComplexMatrix minor(s, s);
  for (Index a = 0; a < s; ++a)
    for (Index b = 0; b < s; ++b) minor(a, b) = h(idx[a], idx[b]);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(minor, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(s - 1);
}

}  // namespace lvlab
