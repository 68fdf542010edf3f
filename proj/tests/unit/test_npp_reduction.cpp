#include "latred/npp_reduction.hpp"

#include <cmath>
#include <cstdio>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "gtest/gtest.h"

namespace latred {
namespace {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

BigInt npp_m_oracle(unsigned n, const Dec50& eps) {
  Dec50 e = 10 * pow(Dec50(n), 1 / (1 + eps));
  const Dec50 r = round(e);
  if (abs(e - r) < Dec50(1e-12)) e = r;
  return BigInt(ceil(pow(Dec50(2), e)).convert_to<std::string>());
}

PlantedIncGDDInstance instance(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  return generate_planted_instance(n, InstanceProfile::kDiagonal, npp_gamma(m), seed);
}

NppTranscript transcript(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  const auto inst = instance(n, m, seed);
  const NppParams params = derive_npp_params(inst, 1.0, m);
  Rng rng(seed);
  return build_npp_instance(inst, params, rng).second;
}

// Copies column `from` of every per-column field onto column `to`.
void duplicate_column(NppTranscript& tr, std::size_t from, std::size_t to) {
  for (std::size_t i = 0; i < tr.u.rows(); ++i) {
    tr.u(i, to) = tr.u(i, from);
    tr.v(i, to) = tr.v(i, from);
    tr.v_coeffs(i, to) = tr.v_coeffs(i, from);
    tr.a_mod(i, to) = tr.a_mod(i, from);
    tr.a_floor(i, to) = tr.a_floor(i, from);
  }
  tr.grid[to] = tr.grid[from];
  tr.f[to] = tr.f[from];
  tr.y[to] = tr.y[from];
  tr.k[to] = tr.k[from];
  tr.a[to] = tr.a[from];
}

TEST(NppParams, FormulaAgainstDecimalOracle) {
  EXPECT_EQ(npp_formula_m(1, 1.0), std::optional<std::uint64_t>(1024));
  for (unsigned n = 1; n <= 4; ++n) {
    for (double eps : {1.0, 2.0, 3.0, 0.5}) {
      const auto m = npp_formula_m(n, eps);
      ASSERT_TRUE(m);
      EXPECT_EQ(BigInt(*m), npp_m_oracle(n, Dec50(eps))) << n << " " << eps;
    }
  }
}

TEST(NppParams, FormulaRegimeAtDimensionOne) {
  const auto inst = instance(1, 1024, 1);
  const NppParams p = derive_npp_params(inst, 1.0);
  EXPECT_EQ(p.m, 1024u);
  EXPECT_EQ(p.regime, Regime::kPaperParams);
  EXPECT_NEAR(p.sigma2, std::log(1024.0), 1e-12);
  EXPECT_NEAR(p.gamma, 4.0 * 1024 * std::log(1024.0), 1e-9);
  // (log2 1024)^{3} = 1000
  EXPECT_DOUBLE_EQ(p.kappa_target, std::pow(2.0, -1000.0) * 32.0);
  EXPECT_DOUBLE_EQ(p.sigma1, inst.r / 4096.0);
}

TEST(NppParams, LargeDimensionNeedsOverride) {
  // 2^(10 sqrt 5) is past 2^20
  const auto inst = instance(5, 12, 1);
  EXPECT_THROW(derive_npp_params(inst, 1.0), std::invalid_argument);
  EXPECT_EQ(derive_npp_params(inst, 1.0, 12).regime, Regime::kOverride);
  EXPECT_THROW(derive_npp_params(inst, 1.0, 1), std::invalid_argument);
}

TEST(NppBuild, SupportAndGridConsistency) {
  const NppTranscript tr = transcript(2, 12, 3);
  EXPECT_EQ(tr.crt.p, select_primes(2, 12));
  EXPECT_TRUE(crt_modulus_bound_holds(tr.crt, 2, 12));
  const double q = to_double(tr.crt.q);
  for (std::size_t j = 0; j < tr.m(); ++j) {
    EXPECT_GE(tr.y[j], 0.0);
    EXPECT_LT(tr.y[j], 1.0);
    EXPECT_GE(tr.f[j], 0.0);
    EXPECT_LT(tr.f[j], 1.0 / q);
    // g_j / q is the CRT image of the j-th column of floor_p(A)
    std::vector<std::int64_t> col(2);
    for (std::size_t i = 0; i < 2; ++i) {
      col[i] = tr.a_floor(i, j);
      EXPECT_GE(tr.a_mod(i, j), 0.0);
      EXPECT_LT(tr.a_mod(i, j), 1.0);
      EXPECT_EQ(col[i], static_cast<std::int64_t>(std::floor(tr.a_mod(i, j) * static_cast<double>(tr.crt.p[i]))));
    }
    EXPECT_EQ(tr.crt.forward(std::span<const std::int64_t>(col)), tr.grid[j]);
    EXPECT_NEAR(balanced_mod1(tr.y[j] - (to_double(Rational(tr.grid[j], tr.crt.q)) + tr.f[j])), 0.0, 1e-12);
  }
}

TEST(NppExtract, ZeroDiscrepancyLandsOnGrid) {
  NppTranscript tr = transcript(2, 4, 4);
  duplicate_column(tr, 0, 1);
  duplicate_column(tr, 2, 3);
  const std::vector<int> x{1, -1, 1, -1};
  const NppExtraction ext = extract_short_vector_npp(tr, x);
  EXPECT_EQ(ext.e_prime, 0.0);
  EXPECT_EQ(ext.e_double_prime, 0.0);
  EXPECT_EQ(ext.grid_residue, 0);
  EXPECT_EQ(ext.snap, SnapStatus::kSnapped);
  EXPECT_EQ(ext.snap_distance, 0.0);
  EXPECT_EQ(ext.phi_inverse_l1, 0.0);
  EXPECT_FALSE(ext.wraparound);
  EXPECT_TRUE(ext.within_sufficient);
  EXPECT_TRUE(ext.slack_budget_ok);
  EXPECT_EQ(ext.integrality_residual, 0.0);
  EXPECT_TRUE(lattice_membership(tr.inst.pair.b(), ext.s));
}

TEST(NppExtract, ExactnessChainForRandomSigns) {
  Rng xr(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const NppTranscript tr = transcript(n, 6 + seed % 7, seed);
    std::vector<int> x(tr.m());
    for (int& v : x) v = xr.uniform_int(0, 1) == 0 ? -1 : 1;
    const NppExtraction ext = extract_short_vector_npp(tr, x);
    EXPECT_EQ(ext.integrality_residual, 0.0);
    EXPECT_TRUE(lattice_membership(tr.inst.pair.b(), ext.s)) << "seed " << seed;
    EXPECT_LE(ext.rounding_slack, 1.0 / 16.0);
    EXPECT_LE(ext.snap_distance, 1.0 / (4.0 * to_double(tr.crt.q)));
    EXPECT_TRUE(ext.chain_ok) << "seed " << seed;
    for (const Rational& h : ext.phi_inverse) {
      EXPECT_GT(h, Rational(-1, 2));
      EXPECT_LE(h, Rational(1, 2));
    }
  }
}

TEST(NppExtract, PoorSolutionFlagsWraparound) {
  int flagged = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const NppTranscript tr = transcript(2, 12, 100 + seed);
    const NppExtraction ext = extract_short_vector_npp(tr, std::vector<int>(12, 1));
    EXPECT_FALSE(ext.within_sufficient);
    if (ext.wraparound) {
      ++flagged;
      EXPECT_FALSE(ext.slack_budget_ok);
    }
    // membership does not depend on the size of e''
    EXPECT_TRUE(lattice_membership(tr.inst.pair.b(), ext.s));
  }
  EXPECT_GE(flagged, 18);
}

TEST(NppExtract, CorruptedFractionalPartThrows) {
  NppTranscript tr = transcript(2, 12, 6);
  tr.f[0] += 0.4 / to_double(tr.crt.q);
  EXPECT_THROW(extract_short_vector_npp(tr, std::vector<int>(12, 1)), std::runtime_error);
}

TEST(NppExtract, RejectsNonSignVectors) {
  const NppTranscript tr = transcript(2, 6, 7);
  EXPECT_THROW(extract_short_vector_npp(tr, std::vector<int>{1, 0, 1, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(extract_short_vector_npp(tr, std::vector<int>(5, 1)), std::invalid_argument);
}

TEST(NppReduction, BruteForceAtDeskScale) {
  const auto solver = make_solver({SolverKind::kBruteNpp});
  int first = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = instance(2, 12, 500 + seed);
    const NppParams params = derive_npp_params(inst, 1.0, 12);
    Rng rng(seed);
    const ReductionResult res = run_npp_reduction(inst, params, *solver, 1, rng);
    ASSERT_EQ(res.log.size(), 1u);
    EXPECT_TRUE(res.log[0].member);
    first += res.verified ? 1 : 0;
  }
  EXPECT_GE(first, 40);
}

TEST(NppReduction, KarmarkarKarpAgainstBruteForce) {
  const auto brute = make_solver({SolverKind::kBruteNpp});
  const auto kk = make_solver({SolverKind::kKarmarkarKarp});
  int brute_ok = 0;
  int kk_ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = instance(2, 12, 600 + seed);
    const NppParams params = derive_npp_params(inst, 1.0, 12);
    Rng r1(seed);
    Rng r2(seed);
    const ReductionResult b = run_npp_reduction(inst, params, *brute, 1, r1);
    const ReductionResult k = run_npp_reduction(inst, params, *kk, 1, r2);
    brute_ok += b.verified ? 1 : 0;
    kk_ok += k.verified ? 1 : 0;
    EXPECT_TRUE(k.log[0].extracted);
    // same instance, so the exact solver never does worse
    EXPECT_LE(b.log[0].solver_value, k.log[0].solver_value + 1e-12);
  }
  EXPECT_GE(brute_ok, 16);
  std::printf("brute verified %d/20, karmarkar_karp verified %d/20\n", brute_ok, kk_ok);
}

TEST(NppReduction, DimensionOneCollapses) {
  const auto solver = make_solver({SolverKind::kBruteNpp});
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = instance(1, 10, 700 + seed);
    const NppParams params = derive_npp_params(inst, 1.0, 10);
    Rng rng(seed);
    const NppTranscript tr = build_npp_instance(inst, params, rng).second;
    ASSERT_EQ(tr.crt.size(), 1u);
    EXPECT_EQ(tr.crt.q, BigInt(tr.crt.p[0]));
    EXPECT_EQ(tr.crt.c[0], 1);
    Rng rr(seed);
    ok += run_npp_reduction(inst, params, *solver, 3, rr).verified ? 1 : 0;
  }
  EXPECT_GE(ok, 9);
}

TEST(NppReduction, RequiresPmOneSolver) {
  const auto solver = make_solver({SolverKind::kBruteSbp, Alphabet::ternary()});
  const auto inst = instance(2, 8, 1);
  const NppParams params = derive_npp_params(inst, 1.0, 8);
  Rng rng(1);
  EXPECT_THROW(run_npp_reduction(inst, params, *solver, 1, rng), std::invalid_argument);
}

TEST(NppReduction, AlwaysFailIsReportedPerAttempt) {
  const auto solver = make_solver({SolverKind::kAlwaysFail});
  const auto inst = instance(2, 12, 9);
  const NppParams params = derive_npp_params(inst, 1.0, 12);
  Rng rng(2);
  const ReductionResult res = run_npp_reduction(inst, params, *solver, 4, rng);
  for (const auto& rec : res.log) {
    EXPECT_TRUE(rec.extracted);
    EXPECT_TRUE(rec.member);
    EXPECT_TRUE(rec.wraparound || rec.valid);
  }
}

}  // namespace
}  // namespace latred
