#include "latred/lemma_checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "latred/crt.hpp"
#include "latred/gaussian.hpp"
#include "latred/npp_reduction.hpp"
#include "latred/sbp_reduction.hpp"
#include "latred/solvers.hpp"
#include "latred/statistics.hpp"

namespace latred {

namespace {

StatReport ks_report(std::string test, std::size_t n, std::size_t m, std::span<const double> samples,
                     ReferenceCdf ref, bool power) {
  StatReport r;
  r.test = std::move(test);
  r.n = n;
  r.m = m;
  r.samples = samples.size();
  r.statistic = ks_statistic(samples, ref);
  r.threshold = power ? kKsPowerThreshold : kKsThreshold;
  r.pass = power ? r.statistic > r.threshold : r.statistic <= r.threshold;
  return r;
}

StatReport count_report(std::string test, std::size_t samples, std::size_t failures) {
  StatReport r;
  r.test = std::move(test);
  r.samples = samples;
  r.statistic = static_cast<double>(failures);
  r.threshold = 0.0;
  r.pass = failures == 0;
  return r;
}

}  // namespace

StatReport check_discrete_gaussian_tv(double shift, double s, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("check_discrete_gaussian_tv: no samples");
  const auto tail = static_cast<std::int64_t>(std::ceil(8.0 * s)) + 1;
  const DiscreteGaussian1D table(shift, s, tail);
  const auto size = static_cast<std::size_t>(2 * tail + 1);
  std::vector<double> counts(size, 0.0);
  for (std::size_t k = 0; k < samples; ++k) {
    counts[static_cast<std::size_t>(table.sample(rng) + tail)] += 1.0;
  }
  std::vector<double> exact(size);
  for (std::size_t i = 0; i < size; ++i) {
    counts[i] /= static_cast<double>(samples);
    exact[i] = table.probability(static_cast<std::int64_t>(i) - tail);
  }
  StatReport r;
  r.test = "discrete_gaussian_tv";
  r.n = 1;
  r.samples = samples;
  r.statistic = total_variation(counts, exact);
  r.threshold = 0.01;
  r.pass = r.statistic <= r.threshold;
  return r;
}

StatReport check_gaussianization(std::size_t n, double eps, std::size_t samples, Rng& rng) {
  const double sigma = smoothing_sigma(n, eps);
  const double s = sigma * std::sqrt(2.0 * std::numbers::pi);
  const auto tail = static_cast<std::int64_t>(std::ceil(8.0 * s)) + 1;
  Rng shift_rng = rng.fork("shift");
  Rng dg_rng = rng.fork("discrete");
  std::vector<double> pooled;
  pooled.reserve(samples + n);
  while (pooled.size() < samples) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = shift_rng.uniform01();
      const DiscreteGaussian1D table(v, s, tail);
      pooled.push_back((v + static_cast<double>(table.sample(dg_rng))) / sigma);
    }
  }
  return ks_report("gaussianization_ks", n, 0, pooled, ReferenceCdf::kStdNormal, false);
}

StatReport check_smoothing_uniform(const PlantedIncGDDInstance& inst, double sigma_factor,
                                   double eps, std::size_t samples, Rng& rng, bool power) {
  const std::size_t n = inst.dimension();
  const double factor = sigma_factor > 0.0 ? sigma_factor : smoothing_sigma(n, eps);
  const double sigma = factor * inst.lambda_n;
  const Basis& b = inst.pair.b();
  Rng mu_rng = rng.fork("mu");
  Vector mu(n);
  for (double& v : mu) v = inst.lambda_n * (2.0 * mu_rng.uniform01() - 1.0);
  Rng x_rng = rng.fork("x");
  std::vector<double> pooled;
  pooled.reserve(samples + n);
  while (pooled.size() < samples) {
    const Vector x = sample_normal_vec(mu, sigma, x_rng);
    const Vector coords = multiply(b.inverse_matrix(), x);
    for (double c : coords) pooled.push_back(frac(c));
  }
  return ks_report(power ? "smoothing_uniform_power" : "smoothing_uniform_ks", n, 0, pooled,
                   ReferenceCdf::kUniform01, power);
}

std::vector<StatReport> check_tails(std::size_t n, std::size_t m, std::size_t trials, Rng& rng) {
  const TailCheckReport t = check_gaussian_tails(n, m, trials, rng);
  StatReport sigma{"tail_sigma_max", n, m, trials, t.sigma_rate, t.sigma_allowed, t.sigma_pass};
  StatReport norm{"tail_norm", n, m, trials, t.norm_rate, t.norm_allowed, t.norm_pass};
  return {sigma, norm};
}

StatReport check_coset_uniformity(const SublatticePair& pair, std::size_t draws, Rng& rng) {
  const std::uint64_t index = pair.index().convert_to<std::uint64_t>();
  std::map<IntVector, std::uint64_t> counts;
  for (std::size_t k = 0; k < draws; ++k) ++counts[*sample_coset_uniform(pair, rng).coeffs];
  StatReport r;
  r.test = "coset_chi2_pvalue";
  r.n = pair.b().dimension();
  r.m = index;
  r.samples = draws;
  r.threshold = 0.01;
  if (counts.size() > index) {
    r.statistic = 0.0;  // more distinct representatives than cosets
    r.pass = false;
    return r;
  }
  std::vector<std::uint64_t> observed;
  for (const auto& [key, c] : counts) observed.push_back(c);
  observed.resize(index, 0);
  if (index == 1) {
    r.statistic = 1.0;
    r.pass = true;
    return r;
  }
  const std::vector<double> expected(index, static_cast<double>(draws) / static_cast<double>(index));
  r.statistic = chi_squared_pvalue(chi_squared_statistic(observed, expected),
                                   static_cast<double>(index - 1));
  r.pass = r.statistic >= r.threshold;
  return r;
}

std::vector<StatReport> check_sbp_distribution(const PlantedIncGDDInstance& inst, std::uint64_t m,
                                               double sigma1_factor, std::size_t samples, Rng& rng,
                                               bool power) {
  const std::size_t n = inst.dimension();
  if (n < 2) throw std::invalid_argument("check_sbp_distribution: n must be >= 2");
  SbpParams params;
  params.m = m;
  params.sigma1 = sigma1_factor * inst.lambda_n;
  params.sigma2 = std::log(static_cast<double>(n));
  params.gamma = sbp_gamma(n, m);
  params.kappa_target = sbp_kappa_target(n, m, params.eps);
  params.regime = Regime::kOverride;
  params.override_m = m;
  std::vector<double> tilde;
  std::vector<double> gauss;
  for (std::uint64_t build = 0; tilde.size() < samples; ++build) {
    Rng brng = rng.fork("build", build);
    const auto [instance, tr] = build_sbp_instance(inst, params, brng);
    tilde.insert(tilde.end(), tr.a_tilde.data().begin(), tr.a_tilde.data().end());
    gauss.insert(gauss.end(), instance.a.data().begin(), instance.a.data().end());
  }
  std::vector<StatReport> out;
  out.push_back(ks_report(power ? "sbp_a_tilde_uniform_power" : "sbp_a_tilde_uniform_ks", n, m, tilde,
                          ReferenceCdf::kUniform01, power));
  if (!power) out.push_back(ks_report("sbp_a_normal_ks", n, m, gauss, ReferenceCdf::kStdNormal, false));
  return out;
}

std::vector<StatReport> check_npp_distribution(const PlantedIncGDDInstance& inst, std::uint64_t m,
                                               double sigma1_factor, std::size_t samples, Rng& rng,
                                               bool power) {
  const std::size_t n = inst.dimension();
  NppParams params;
  params.m = m;
  params.sigma1 = sigma1_factor * inst.lambda_n;
  params.sigma2 = std::log(static_cast<double>(m));
  params.gamma = npp_gamma(m);
  params.kappa_target = npp_kappa_target(m, params.eps);
  params.regime = Regime::kOverride;
  params.override_m = m;
  std::vector<double> ys;
  std::vector<double> as;
  std::vector<double> mods;
  for (std::uint64_t build = 0; ys.size() < samples; ++build) {
    Rng brng = rng.fork("build", build);
    const auto [instance, tr] = build_npp_instance(inst, params, brng);
    ys.insert(ys.end(), tr.y.begin(), tr.y.end());
    as.insert(as.end(), instance.a.begin(), instance.a.end());
    mods.insert(mods.end(), tr.a_mod.data().begin(), tr.a_mod.data().end());
  }
  std::vector<StatReport> out;
  if (power) {
    // The CRT map spreads even a concentrated A over [0, 1), so y keeps
    // looking uniform at small sigma1; the power check runs on A itself.
    out.push_back(ks_report("npp_a_uniform_power", n, m, mods, ReferenceCdf::kUniform01, true));
    return out;
  }
  out.push_back(ks_report("npp_y_uniform_ks", n, m, ys, ReferenceCdf::kUniform01, false));
  out.push_back(ks_report("npp_a_normal_ks", n, m, as, ReferenceCdf::kStdNormal, false));
  return out;
}

namespace {

std::size_t check_crt_tuple(const std::vector<std::uint64_t>& p) {
  const CrtSystem crt = crt_build(p);
  const std::size_t n = p.size();
  const auto q = crt.q.convert_to<std::uint64_t>();
  std::vector<std::uint64_t> stride(n);
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < n; ++i) {
    stride[i] = acc;
    acc *= p[i];
  }
  std::size_t failures = 0;
  std::vector<std::uint32_t> digits(q * n);
  std::vector<std::uint64_t> image(q);
  std::vector<char> hit(q, 0);
  std::vector<std::int64_t> a(n);
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<std::int64_t>((idx / stride[i]) % p[i]);
      digits[idx * n + i] = static_cast<std::uint32_t>(a[i]);
    }
    const BigInt k = crt.forward(a);
    if (k < 0 || k >= crt.q) {
      ++failures;
      continue;
    }
    image[idx] = k.convert_to<std::uint64_t>();
    if (hit[image[idx]]++) ++failures;  // not injective
    if (crt.inverse_numerators(k) != a) ++failures;
  }
  // Roundtrip from the range side; the rational interface is exercised for
  // the smaller moduli, where its normalization cost stays negligible.
  for (std::uint64_t k = 0; k < q; ++k) {
    if (crt.forward(crt.inverse_numerators(BigInt(k))) != k) ++failures;
    if (q <= 210) {
      const Rational z(BigInt(k), crt.q);
      if (crt.forward(crt_inverse(z, crt)) != z) ++failures;
    }
  }
  // All pairs (x, y). y runs through the domain as an odometer while the
  // index of x + y is updated digit by digit.
  std::vector<std::uint64_t> dy(n);
  std::vector<std::uint64_t> ds(n);
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t sum = x;
    for (std::size_t i = 0; i < n; ++i) {
      dy[i] = 0;
      ds[i] = digits[x * n + i];
    }
    for (std::uint64_t y = 0; y < q; ++y) {
      std::uint64_t expect = image[x] + image[y];
      if (expect >= q) expect -= q;
      if (image[sum] != expect) ++failures;
      for (std::size_t i = 0; i < n; ++i) {
        ++ds[i];
        sum += stride[i];
        if (ds[i] == p[i]) {
          ds[i] = 0;
          sum -= p[i] * stride[i];
        }
        if (++dy[i] < p[i]) break;
        dy[i] = 0;
      }
    }
  }
  return failures;
}

}  // namespace

StatReport check_crt_exhaustive(std::uint64_t max_q) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t v = 2; v <= max_q; ++v)
    if (is_prime_u64(v)) primes.push_back(v);
  std::size_t tuples = 0;
  std::size_t failures = 0;
  std::vector<std::uint64_t> tuple;
  auto extend = [&](auto&& self, std::size_t start, std::uint64_t product) -> void {
    for (std::size_t i = start; i < primes.size(); ++i) {
      if (product * primes[i] > max_q) break;
      tuple.push_back(primes[i]);
      ++tuples;
      failures += check_crt_tuple(tuple);
      self(self, i + 1, product * primes[i]);
      tuple.pop_back();
    }
  };
  extend(extend, 0, 1);
  StatReport r = count_report("crt_exhaustive_failures", tuples, failures);
  r.m = max_q;
  return r;
}

StatReport check_rounding_bound(std::size_t cases, Rng& rng) {
  std::size_t failures = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const auto m = static_cast<std::uint64_t>(rng.uniform_int(static_cast<std::int64_t>(n), 32));
    const auto p = select_primes(n, m);
    const double min_p = static_cast<double>(*std::min_element(p.begin(), p.end()));
    if (static_cast<double>(n * m) / min_p > 1.0 / 16.0) ++failures;
    Matrix a(n, m);
    for (double& v : a.data()) v = rng.uniform01();
    const SmallIntMatrix fl = floor_p_numerators(a, p);
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const int x = rng.uniform_int(0, 1) == 0 ? -1 : 1;
        row += (a(i, j) - static_cast<double>(fl(i, j)) / static_cast<double>(p[i])) * x;
      }
      lhs += std::abs(row);
    }
    const double rhs = static_cast<double>(n) / min_p * static_cast<double>(m);
    if (lhs > rhs) ++failures;
  }
  return count_report("rounding_bound_violations", cases, failures);
}

StatReport check_kk_against_optimum(std::size_t cases, std::size_t max_m, Rng& rng) {
  std::size_t failures = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_m)));
    Vector a(m);
    for (double& v : a) v = rng.uniform01();
    const SolverOutput kk = karmarkar_karp(a);
    const SolverOutput best = brute_force_npp(a);
    double ax = 0.0;
    for (std::size_t j = 0; j < m; ++j) ax += a[j] * kk.x[j];
    if (kk.value < best.value - 1e-12) ++failures;
    if (std::abs(std::abs(ax) - kk.value) > 1e-9) ++failures;
  }
  StatReport r = count_report("kk_vs_optimum_violations", cases, failures);
  r.m = max_m;
  return r;
}

std::vector<std::string> stats_suite_names() {
  return {"discrete_gaussian", "gaussianization", "smoothing", "tails", "coset",
          "sbp_distribution", "npp_distribution", "crt", "rounding", "kk"};
}

std::vector<StatReport> run_stats_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "all") {
    std::vector<StatReport> all;
    for (const auto& name : stats_suite_names()) {
      auto part = run_stats_suite(name, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  const Rng root(seed);
  Rng rng = root.fork(suite);
  std::vector<StatReport> out;
  constexpr std::size_t kSamples = 100000;
  if (suite == "discrete_gaussian") {
    std::size_t idx = 0;
    for (double shift : {0.0, 0.25, 0.5, 0.75})
      for (double s : {1.0, 2.5066, 5.0}) {
        Rng r = rng.fork("case", idx++);
        out.push_back(check_discrete_gaussian_tv(shift, s, kSamples, r));
      }
  } else if (suite == "gaussianization") {
    for (std::size_t n : {1, 4, 16}) {
      Rng r = rng.fork("n", n);
      out.push_back(check_gaussianization(n, kCheckEps, kSamples, r));
    }
  } else if (suite == "smoothing") {
    std::size_t idx = 0;
    for (InstanceProfile profile : {InstanceProfile::kDiagonal, InstanceProfile::kRotated}) {
      const auto inst = generate_planted_instance(4, profile, 1.0, seed);
      Rng r = rng.fork("case", idx++);
      out.push_back(check_smoothing_uniform(inst, 0.0, kCheckEps, kSamples, r));
      Rng rp = rng.fork("case", idx++);
      out.push_back(check_smoothing_uniform(inst, 0.05, kCheckEps, kSamples, rp, true));
    }
  } else if (suite == "tails") {
    Rng r16 = rng.fork("n", 16);
    auto a = check_tails(16, 256, 10000, r16);
    Rng r1 = rng.fork("n", 1);
    auto b = check_tails(1, 16, 10000, r1);
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
  } else if (suite == "coset") {
    const std::vector<SublatticePair> pairs = {
        SublatticePair(Basis::from_integers(IntegerMatrix::identity(2)), IntegerMatrix{{2, 0}, {0, 2}}),
        SublatticePair(Basis::from_integers(IntegerMatrix::identity(1)), IntegerMatrix{{3}}),
        SublatticePair(Basis::from_integers(IntegerMatrix{{1, 1}, {0, 1}}), IntegerMatrix{{2, 1}, {0, 3}}),
        generate_planted_instance(4, InstanceProfile::kRotated, 1.0, seed).pair,
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Rng r = rng.fork("pair", i);
      out.push_back(check_coset_uniformity(pairs[i], kSamples, r));
    }
  } else if (suite == "sbp_distribution") {
    const auto inst = generate_planted_instance(4, InstanceProfile::kDiagonal, 1.0, seed);
    const double factor = smoothing_sigma(4, smoothing_eps_profile(4.0));
    Rng r = rng.fork("smooth");
    out = check_sbp_distribution(inst, 355, factor, kSamples, r);
    Rng rp = rng.fork("power");
    auto p = check_sbp_distribution(inst, 355, 0.05, kSamples, rp, true);
    out.insert(out.end(), p.begin(), p.end());
  } else if (suite == "npp_distribution") {
    const auto inst = generate_planted_instance(2, InstanceProfile::kDiagonal, 1.0, seed);
    const double factor = smoothing_sigma(2, smoothing_eps_profile(64.0));
    Rng r = rng.fork("smooth");
    out = check_npp_distribution(inst, 64, factor, kSamples, r);
    Rng rp = rng.fork("power");
    auto p = check_npp_distribution(inst, 64, 0.05, kSamples, rp, true);
    out.insert(out.end(), p.begin(), p.end());
  } else if (suite == "crt") {
    out.push_back(check_crt_exhaustive(2310));
  } else if (suite == "rounding") {
    out.push_back(check_rounding_bound(1000, rng));
  } else if (suite == "kk") {
    out.push_back(check_kk_against_optimum(1000, 20, rng));
  } else {
    throw std::invalid_argument("unknown stats suite: " + suite);
  }
  return out;
}

}  // namespace latred
