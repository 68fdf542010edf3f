#include "latred/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latred {

double smoothing_sigma(std::size_t n, double eps) {
  if (n == 0) throw std::invalid_argument("smoothing_sigma: n must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("smoothing_sigma: eps must lie in (0, 1/2)");
  }
  const double pi = std::numbers::pi;
  return std::sqrt(std::log(2.0 * static_cast<double>(n) * (1.0 + 1.0 / eps)) /
                   (2.0 * pi * pi));
}

double smoothing_eps_profile(double x) {
  if (!(x >= 1.0)) throw std::invalid_argument("smoothing_eps_profile: x must be >= 1");
  const double l = std::log(x);
  return std::exp(-l * l);
}

SmoothingParams SmoothingParams::make(std::size_t n, double eps) {
  return {n, eps, smoothing_sigma(n, eps)};
}

Vector sample_normal_vec(std::span<const double> mu, double sigma, Rng& rng) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_normal_vec: sigma must be positive");
  Vector out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) out[i] = mu[i] + sigma * rng.normal();
  return out;
}

// --- discrete Gaussian ---------------------------------------------------------

DiscreteGaussianSpec DiscreteGaussianSpec::make(Vector shift, double s) {
  DiscreteGaussianSpec spec{std::move(shift), s, static_cast<std::int64_t>(std::ceil(8.0 * s)) + 1};
  spec.validate();
  return spec;
}

void DiscreteGaussianSpec::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("DiscreteGaussianSpec: s must be positive");
  }
  if (tail_cut < static_cast<std::int64_t>(std::ceil(8.0 * s))) {
    throw std::invalid_argument("DiscreteGaussianSpec: tail_cut must be >= ceil(8 s)");
  }
  for (double c : shift) {
    if (!(c >= 0.0 && c < 1.0)) {
      throw std::invalid_argument("DiscreteGaussianSpec: shift must lie in [0, 1)^n");
    }
  }
}

DiscreteGaussian1D::DiscreteGaussian1D(double shift, double s, std::int64_t tail_cut)
    : shift_(shift), tail_cut_(tail_cut) {
  if (!(s > 0.0)) throw std::invalid_argument("DiscreteGaussian1D: s must be positive");
  if (tail_cut < 0) throw std::invalid_argument("DiscreteGaussian1D: negative tail_cut");
  const std::size_t size = static_cast<std::size_t>(2 * tail_cut + 1);
  mass_.resize(size);
  cdf_.resize(size);
  const double scale = std::numbers::pi / (s * s);
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double x = shift + static_cast<double>(static_cast<std::int64_t>(i) - tail_cut);
    mass_[i] = std::exp(-scale * x * x);
    total += mass_[i];
  }
  double running = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    mass_[i] /= total;
    running += mass_[i];
    cdf_[i] = running;
  }
  cdf_.back() = 1.0;
}

std::int64_t DiscreteGaussian1D::sample(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = static_cast<std::int64_t>(std::min<std::ptrdiff_t>(
      it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
  return idx - tail_cut_;
}

double DiscreteGaussian1D::probability(std::int64_t k) const {
  if (k < -tail_cut_ || k > tail_cut_) return 0.0;
  return mass_[static_cast<std::size_t>(k + tail_cut_)];
}

std::int64_t sample_discrete_gaussian_offset(double shift, double s, Rng& rng) {
  const auto tail = static_cast<std::int64_t>(std::ceil(8.0 * s)) + 1;
  return DiscreteGaussian1D(shift, s, tail).sample(rng);
}

Vector sample_discrete_gaussian_coset(const DiscreteGaussianSpec& spec, Rng& rng) {
  spec.validate();
  Vector out(spec.shift.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const DiscreteGaussian1D table(spec.shift[i], spec.s, spec.tail_cut);
    out[i] = spec.shift[i] + static_cast<double>(table.sample(rng));
  }
  return out;
}

// --- spectral norm -------------------------------------------------------------

namespace {

// Largest eigenvalue of a symmetric matrix by cyclic Jacobi.
double max_symmetric_eigenvalue(Matrix g) {
  const std::size_t n = g.rows();
  double scale = 0.0;
  for (double v : g.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += g(p, q) * g(p, q);
    if (std::sqrt(off) <= 1e-15 * scale) {
      double best = g(0, 0);
      for (std::size_t i = 1; i < n; ++i) best = std::max(best, g(i, i));
      return best;
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (g(p, q) == 0.0) continue;
        const double theta = (g(q, q) - g(p, p)) / (2.0 * g(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double gkp = g(k, p);
          const double gkq = g(k, q);
          g(k, p) = c * gkp - s * gkq;
          g(k, q) = s * gkp + c * gkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double gpk = g(p, k);
          const double gqk = g(q, k);
          g(p, k) = c * gpk - s * gqk;
          g(q, k) = s * gpk + c * gqk;
        }
      }
  }
  throw std::runtime_error("spectral_norm: Jacobi iteration did not converge");
}

}  // namespace

double spectral_norm(const Matrix& a) {
  if (a.empty()) return 0.0;
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw std::runtime_error("spectral_norm: non-finite entry");
  }
  const bool wide = a.rows() <= a.cols();
  const std::size_t k = wide ? a.rows() : a.cols();
  const std::size_t len = wide ? a.cols() : a.rows();
  Matrix g(k, k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p; q < k; ++q) {
      double acc = 0.0;
      for (std::size_t l = 0; l < len; ++l) {
        acc += wide ? a(p, l) * a(q, l) : a(l, p) * a(l, q);
      }
      g(p, q) = acc;
      g(q, p) = acc;
    }
  return std::sqrt(std::max(0.0, max_symmetric_eigenvalue(std::move(g))));
}

// --- tail checks -----------------------------------------------------------------

TailCheckReport check_gaussian_tails(std::size_t n, std::size_t m, std::size_t trials, Rng& rng) {
  if (n == 0 || trials == 0) throw std::invalid_argument("check_gaussian_tails: empty input");
  if (m < 16 * n) throw std::invalid_argument("check_gaussian_tails: requires m >= 16 n");
  TailCheckReport report;
  report.n = n;
  report.m = m;
  report.trials = trials;

  const double sigma_limit = 1.5 * std::sqrt(static_cast<double>(m));
  const double norm_limit = std::sqrt(2.5) * std::sqrt(static_cast<double>(n));
  Rng mat_rng = rng.fork("tails.matrix");
  Rng vec_rng = rng.fork("tails.vector");
  Matrix a(n, m);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (double& v : a.data()) v = mat_rng.normal();
    if (spectral_norm(a) > sigma_limit) ++report.sigma_exceed;
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = vec_rng.normal();
      sq += x * x;
    }
    if (std::sqrt(sq) >= norm_limit) ++report.norm_exceed;
  }

  const double dn = static_cast<double>(n);
  const double dt = static_cast<double>(trials);
  auto allowed = [dt](double bound) {
    const double p = std::min(bound, 1.0);
    return bound + 3.0 * std::sqrt(p * (1.0 - p) / dt);
  };
  report.sigma_bound = 2.0 * std::exp(-dn / 2.0);
  report.sigma_rate = static_cast<double>(report.sigma_exceed) / dt;
  report.sigma_allowed = allowed(report.sigma_bound);
  report.sigma_pass = report.sigma_rate <= report.sigma_allowed;
  report.norm_bound = std::exp(-dn / 4.0);
  report.norm_rate = static_cast<double>(report.norm_exceed) / dt;
  report.norm_allowed = allowed(report.norm_bound);
  report.norm_pass = report.norm_rate <= report.norm_allowed;
  return report;
}

}  // namespace latred
