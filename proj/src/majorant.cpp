#include "lvlab/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lvlab {

namespace {

constexpr double kSlack = 1e-9;

bool within(double lhs, double rhs) { return lhs <= rhs + kSlack * std::max(std::abs(rhs), 1e-300); }

}  // namespace

void validate_trig(const TrigPolynomial& d) {
  require(d.freqs.size() == d.coeffs.size(), ErrorKind::InvalidArgument,
          "frequency and coefficient counts differ");
  require(d.coeffs.size() >= 1, ErrorKind::InvalidArgument, "trigonometric polynomial is empty");
}

Complex TrigPolynomial::operator()(double t) const {
  Complex acc(0.0, 0.0);
  for (Index k = 0; k < coeffs.size(); ++k)
    acc += coeffs(k) * std::polar(1.0, t * freqs.freqs[static_cast<std::size_t>(k)]);
  return acc;
}

TrigPolynomial majorize(const TrigPolynomial& d) {
  validate_trig(d);
  TrigPolynomial out = d;
  out.coeffs = d.coeffs.cwiseAbs().cast<Complex>();
  out.freqs.label = d.freqs.label + "-major";
  return out;
}

MajorantVerdict circle_majorant_check(const TrigPolynomial& d, int s) {
  validate_trig(d);
  require(s >= 1, ErrorKind::InvalidArgument, "s must be >= 1");
  std::vector<long long> n(d.freqs.freqs.size());
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double x = d.freqs.freqs[k] / (2.0 * std::numbers::pi);
    const double r = std::round(x);
    require(std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x)), ErrorKind::NonIntegerFrequencies,
            "frequencies must lie in 2 pi Z");
    n[k] = static_cast<long long>(r);
  }
  const auto [lo_it, hi_it] = std::minmax_element(n.begin(), n.end());
  const long long lo = *lo_it;
  const long long span = *hi_it - lo;
  require(static_cast<double>(span) * s <= 1e6, ErrorKind::BudgetExceeded, "s * degree exceeds 1e6");

  auto moment = [&](const ComplexVector& b) {
    std::vector<Complex> base(static_cast<std::size_t>(span + 1), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n.size(); ++k) base[static_cast<std::size_t>(n[k] - lo)] += b(static_cast<Index>(k));
    std::vector<Complex> power = base;
    for (int step = 1; step < s; ++step) {
      std::vector<Complex> next(power.size() + base.size() - 1, Complex(0.0, 0.0));
      for (std::size_t i = 0; i < power.size(); ++i) {
        if (power[i] == Complex(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += power[i] * base[j];
      }
      power.swap(next);
    }
    // Parseval on the circle of length one.
    double acc = 0.0;
    for (const auto& c : power) acc += std::norm(c);
    return acc;
  };
  MajorantVerdict v;
  v.lhs = moment(d.coeffs);
  v.rhs = moment(d.coeffs.cwiseAbs().cast<Complex>());
  v.holds = within(v.lhs, v.rhs);
  return v;
}

MajorantVerdict diffset_majorant_check(const TrigPolynomial& d, const std::vector<double>& tees, int s) {
  validate_trig(d);
  require(s >= 1, ErrorKind::InvalidArgument, "s must be >= 1");
  require(!tees.empty(), ErrorKind::InvalidArgument, "time set is empty");
  const double work = static_cast<double>(tees.size()) * static_cast<double>(tees.size()) *
                      static_cast<double>(d.coeffs.size());
  require(work <= 1e8, ErrorKind::BudgetExceeded, "|T|^2 |Phi| exceeds 1e8");
  const TrigPolynomial major = majorize(d);
  MajorantVerdict v;
  for (double t1 : tees) {
    for (double t2 : tees) {
      v.lhs += std::pow(std::norm(d(t1 - t2)), s);
      v.rhs += std::pow(std::norm(major(t1 - t2)), s);
    }
  }
  v.holds = within(v.lhs, v.rhs);
  return v;
}

MajorantProfile dirichlet_majorant_profile(Index N, double T, double step) {
  require(N >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  require(T >= 0.0 && step > 0.0, ErrorKind::InvalidArgument, "need T >= 0 and step > 0");
  require(T / step <= 1e7, ErrorKind::BudgetExceeded, "scan budget T / step exceeds 1e7");
  const FrequencySet phi = dirichlet_frequencies(N);
  MajorantProfile prof;
  const auto count = static_cast<Index>(std::floor(T / step + 1e-9));
  prof.points.reserve(static_cast<std::size_t>(count + 1));
  for (Index i = 0; i <= count; ++i) {
    const double t = static_cast<double>(i) * step;
    Complex acc(0.0, 0.0);
    for (double xi : phi.freqs) acc += std::polar(1.0, t * xi);
    const double v = std::abs(acc);
    prof.points.push_back({t, v});
    if (t >= 1.0 && v > prof.max_value) {
      prof.max_value = v;
      prof.argmax_t = t;
    }
  }
  prof.ratio_to_sqrt_n = prof.max_value / std::sqrt(static_cast<double>(N));
  return prof;
}

std::vector<double> symmetric_ap(double alpha, int J) {
  require(alpha > 0.0 && J >= 0, ErrorKind::InvalidArgument, "need alpha > 0 and J >= 0");
  std::vector<double> w;
  for (int j = -J; j <= J; ++j) w.push_back(static_cast<double>(j) * alpha);
  return w;
}

APEnergyVerdict ap_energy_bound_check(const TrigPolynomial& d, const std::vector<double>& w, int s) {
  validate_trig(d);
  require(s >= 1, ErrorKind::InvalidArgument, "s must be >= 1");
  require(d.coeffs.cwiseAbs().maxCoeff() <= 1.0 + 1e-12, ErrorKind::InvalidArgument,
          "coefficients must satisfy |b| <= 1");
  require(!w.empty() && w.size() % 2 == 1, ErrorKind::NotAnAP, "W must be {j alpha : |j| <= J}");
  const int J = static_cast<int>(w.size() / 2);
  const double alpha = J > 0 ? w[static_cast<std::size_t>(J) + 1] : 0.0;
  for (int j = -J; j <= J; ++j) {
    const double expect = static_cast<double>(j) * alpha;
    require(std::abs(w[static_cast<std::size_t>(j + J)] - expect) <= 1e-9 * std::max(1.0, std::abs(expect)),
            ErrorKind::NotAnAP, "W must be {j alpha : |j| <= J}");
  }
  require(J == 0 || alpha > 0.0, ErrorKind::NotAnAP, "AP step must be positive");
  const TrigPolynomial major = majorize(d);
  APEnergyVerdict v;
  for (double t : w) v.sum_on_w += std::pow(std::norm(d(t)), s);
  double pair_sum = 0.0;
  for (double t1 : w)
    for (double t2 : w) pair_sum += std::pow(std::norm(major(t1 - t2)), s);
  // j alpha is hit 2J + 1 - |j| >= J + 1 times as a difference in W - W.
  v.hb_bound = pair_sum / static_cast<double>(J + 1);
  v.holds = v.sum_on_w <= v.hb_bound * (1.0 + kSlack);
  return v;
}

APEnergyVerdict ap_energy_bound_check(const TrigPolynomial& d, double alpha, int J, int s) {
  return ap_energy_bound_check(d, symmetric_ap(alpha, J), s);
}

}  // namespace lvlab
