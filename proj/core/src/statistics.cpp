#include "latred/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace latred {

std::string to_string(ReferenceCdf ref) {
  return ref == ReferenceCdf::kUniform01 ? "uniform01" : "std_normal";
}

double reference_cdf(ReferenceCdf ref, double x) {
  switch (ref) {
    case ReferenceCdf::kUniform01: return std::clamp(x, 0.0, 1.0);
    case ReferenceCdf::kStdNormal: return 0.5 * std::erfc(-x / std::numbers::sqrt2);
  }
  return 0.0;
}

double ks_statistic(std::span<const double> samples, ReferenceCdf ref) {
  if (samples.size() < 2) throw std::invalid_argument("ks_statistic: need at least two samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = reference_cdf(ref, sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  // 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2); converges fast for x > 0.2.
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_squared_statistic(std::span<const std::uint64_t> observed,
                             std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi_squared_statistic: size mismatch");
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("chi_squared_statistic: expected <= 0");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

double chi_squared_pvalue(double statistic, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi_squared_pvalue: dof must be positive");
  const boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace latred
