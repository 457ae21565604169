#pragma once

#include <vector>

#include "lvlab/linalg.hpp"
#include "lvlab/zoo.hpp"

namespace lvlab {

/// D(t) = sum_xi b_xi e^{i t xi}
struct TrigPolynomial {
  FrequencySet freqs;
  ComplexVector coeffs;

  Complex operator()(double t) const;
};

void validate_trig(const TrigPolynomial& d);

/// Coefficients replaced by their moduli.
TrigPolynomial majorize(const TrigPolynomial& d);

struct MajorantVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// int_0^1 |D|^{2s} against int_0^1 |D_major|^{2s} for frequencies in 2 pi Z,
/// both computed exactly from the coefficients of D^s.
MajorantVerdict circle_majorant_check(const TrigPolynomial& d, int s);

/// sum_{t1, t2 in tees} |D(t1 - t2)|^{2s} against the same for D_major.
MajorantVerdict diffset_majorant_check(const TrigPolynomial& d, const std::vector<double>& tees, int s);

struct ProfilePoint {
  double t = 0.0;
  double value = 0.0;
};

struct MajorantProfile {
  std::vector<ProfilePoint> points;  ///< t = 0, step, 2 step, ... <= T
  double max_value = 0.0;            ///< over 1 <= t <= T
  double argmax_t = 0.0;
  double ratio_to_sqrt_n = 0.0;
};

/// |sum_{N < n <= 2N} e^{i t ln n}| sampled on [0, T].
MajorantProfile dirichlet_majorant_profile(Index N, double T, double step = 0.25);

struct APEnergyVerdict {
  double sum_on_w = 0.0;
  double hb_bound = 0.0;
  bool holds = false;
};

/// W = {j alpha : |j| <= J}, given explicitly; NotAnAP unless it has that shape.
APEnergyVerdict ap_energy_bound_check(const TrigPolynomial& d, const std::vector<double>& w, int s);
APEnergyVerdict ap_energy_bound_check(const TrigPolynomial& d, double alpha, int J, int s);

/// {j alpha : -J <= j <= J} in increasing order for alpha > 0.
std::vector<double> symmetric_ap(double alpha, int J);

}  // namespace lvlab
