#include "monolat/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>

namespace monolat {

Ratio Ratio::reduced(long long n, long long d) {
  if (n <= 0 || d <= 0) throw std::invalid_argument("Ratio: numerator and denominator must be positive");
  const long long g = std::gcd(n, d);
  return Ratio{n / g, d / g};
}

bool operator==(const Ratio& a, const Ratio& b) { return a.num == b.num && a.den == b.den; }

bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }

ReducedModel::ReducedModel(double R_, double rho_) : R(R_), rho(rho_) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("ReducedModel: R must be positive and finite");
  if (!(std::fabs(rho) <= 1.0)) throw std::invalid_argument("ReducedModel: rho must lie in [-1, 1]");
}

CanonicalForm canonicalize(const ReducedModel& m) {
  const bool swap = m.R < 1.0;
  const bool reflect = m.rho < 0.0;
  return CanonicalForm{ReducedModel(swap ? 1.0 / m.R : m.R, reflect ? -m.rho : m.rho), swap, reflect};
}

bool StencilSpec::contains(long long num, long long den) const {
  const Ratio r = Ratio::reduced(num, den);
  return std::binary_search(ratios.begin(), ratios.end(), r);
}

bool StencilSpec::contains_value(double R, double rel_tol) const {
  for (const Ratio& r : ratios) {
    const double v = r.value();
    if (std::fabs(R - v) <= rel_tol * std::max(1.0, std::fabs(v))) return true;
  }
  return false;
}

StencilSpec ratio_set(int s) {
  if (s < 1) throw std::invalid_argument("ratio_set: s must be a positive integer");
  std::set<Ratio> seen;
  for (long long i = 1; i <= s; ++i)
    for (long long j = 1; j <= s; ++j) seen.insert(Ratio::reduced(i, j));
  StencilSpec spec;
  spec.s = s;
  spec.ratios.assign(seen.begin(), seen.end());
  return spec;
}

LatticeConfig::LatticeConfig(double h_, double H_, double k_) : h(h_), H(H_), k(k_) {
  if (!(h > 0.0) || !(H > 0.0) || !(k > 0.0))
    throw std::invalid_argument("LatticeConfig: h, H, k must all be positive");
}

TransitionKernel::TransitionKernel(int s_, double lambda_)
    : s(s_), lambda(lambda_), p(static_cast<std::size_t>((2 * s_ + 1) * (2 * s_ + 1)), 0.0) {
  if (s_ < 1) throw std::invalid_argument("TransitionKernel: s must be >= 1");
  if (!(lambda_ > 0.0)) throw std::invalid_argument("TransitionKernel: lambda must be positive");
}

double TransitionKernel::at(int i, int j) const {
  if (std::abs(i) > s || std::abs(j) > s) throw std::out_of_range("TransitionKernel::at");
  return p[static_cast<std::size_t>((i + s) * side() + (j + s))];
}

double& TransitionKernel::at(int i, int j) {
  if (std::abs(i) > s || std::abs(j) > s) throw std::out_of_range("TransitionKernel::at");
  return p[static_cast<std::size_t>((i + s) * side() + (j + s))];
}

double TransitionKernel::mass() const {
  double m = 0.0;
  for (double v : p) m += v;
  return m;
}

double classification_tolerance(double threshold) { return 1e-10 * std::max(1.0, std::fabs(threshold)); }

MonotonicityError::MonotonicityError(const std::string& msg, std::vector<std::pair<double, double>> g)
    : std::runtime_error(msg), samples(std::move(g)) {}

DriftBudgetError::DriftBudgetError(const std::string& msg, double k_max)
    : std::runtime_error(msg), admissible_k(k_max) {}

}  // namespace monolat
