#pragma once

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

#include "lvlab/linalg.hpp"

namespace lvlab {

struct OperatorConstants {
  double opnorm_sq = 0.0;
};

struct PowerConstants {
  int k = 2;
  bool diag_corrected = false;
  double tensor_opnorm_sq = 0.0;  ///< ||M^{(x)k}||^2
  double simple_part = 0.0;       ///< ||(M o M) 1|| / N
  double residual_norm = 0.0;     ///< norm of M^{(x)2} off the duplicated direction
  /// (simple_part + residual_norm)^2 when corrected; tensor_opnorm_sq otherwise.
  double effective() const;
};

struct MMStarConstants {
  double diag_max = 0.0;     ///< d = max_i A_ii
  double offdiag_max = 0.0;  ///< c = max_{i != i'} |A_ii'|
};

struct SchattenConstants {
  int r = 2;
  double diag_const = 0.0;  ///< D0 = max_i A_ii
  double flat_norm = 0.0;   ///< F >= ||S^Delta_{M,r}||
};

using CertificateConstants =
    std::variant<OperatorConstants, PowerConstants, MMStarConstants, SchattenConstants>;

struct Certificate {
  Index T = 0;
  Index N = 0;
  CertificateConstants constants;

  std::string method() const;
};

/// Upper bound on a large value count. `raw` is the evaluation rule before
/// flooring and clamping (infinite when unbounded).
struct LVBound {
  Index max_w = 0;
  bool unbounded = false;
  double raw = 0.0;
  std::string binding_constraint;
};

Certificate cert_operator(const ComplexMatrix& m, double tol = 1e-12);
Certificate cert_power(const ComplexMatrix& m, int k, bool diag_corrected, double tol = 1e-12);
Certificate cert_mmstar(const ComplexMatrix& m);
Certificate cert_schatten(const ComplexMatrix& m, int r, double tol = 1e-10);

/// Largest |W| consistent with |W| lambda^2 <= sum_{t in W} |(Mb)_t|^2 for some ||b||^2 <= B^2.
LVBound evaluate(const Certificate& cert, double lambda, double b_budget_sq);

/// The certificate's bound on ||M_W||^2 over all |W| = s, before solving for |W|.
double minor_norm_sq_bound(const Certificate& cert, Index s);

/// Explicit T x N^k tensor power, column (j_1, ..., j_k) at j_1 N^{k-1} + ... + j_k.
ComplexMatrix tensor_power(const ComplexMatrix& m, int k);

/// (MM^*)^{o k}, the Gram matrix of M^{(x)k}.
GramMatrix tensor_power_gram(const ComplexMatrix& m, int k);

/// S_{M,r}(v_1, ..., v_r) = Trace(D_1 A D_2 A ... D_r A) with A = MM^*, D_k = diag(v_k).
Complex schatten_form(const GramMatrix& a, const std::vector<ComplexVector>& vs);
/// S^Delta_{M,r} = S_{M,r} minus the diagonal tensor with entries A_ii^r.
Complex schatten_delta_form(const GramMatrix& a, const std::vector<ComplexVector>& vs);

/// Flattened S^Delta_{M,r}: r = 2, 3 as T x T^{r-1}; r = 4 as T^2 x T^2.
/// Inputs and outputs are column-stacked T x T blocks where the flattening
/// side has T^2 entries; X(j, k) pairs with the tensor slots (j, k).
Index flat_rows(Index T, int r);
Index flat_cols(Index T, int r);
ComplexVector flat_apply(const GramMatrix& a, int r, const ComplexVector& x);
ComplexVector flat_adjoint(const GramMatrix& a, int r, const ComplexVector& y);
/// Dense matricization, for cross-checks at small T.
ComplexMatrix flat_dense(const GramMatrix& a, int r);
/// ||flattened S^Delta_{M,r}||: exact dense route at small sizes, power iteration otherwise.
double flat_norm(const GramMatrix& a, int r, double tol = 1e-10);

/// Largest T accepted by cert_schatten for r = 3, 4.
inline constexpr Index kSchattenCapR3 = 256;
inline constexpr Index kSchattenCapR4 = 128;

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LVBound& bound);

}  // namespace lvlab
