#include "latred/sbp_reduction.hpp"

#include <cmath>
#include <map>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "gtest/gtest.h"

namespace latred {
namespace {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

// ceil((8 ln n n^{3/2 + eps})^{1/eps}) in decimal arithmetic, independent of
// the binary-float evaluation in the library.
BigInt sbp_m_oracle(unsigned n, const Dec50& eps) {
  const Dec50 dn(n);
  const Dec50 inner = 8 * log(dn) * pow(dn, Dec50(3) / 2 + eps);
  return BigInt(ceil(pow(inner, 1 / eps)).convert_to<std::string>());
}

PlantedIncGDDInstance instance(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  return generate_planted_instance(n, InstanceProfile::kDiagonal, sbp_gamma(n, m), seed);
}

SbpTranscript transcript(std::size_t n, std::uint64_t m, std::uint64_t seed,
                         TargetEmbedding emb = {}) {
  const auto inst = instance(n, m, seed);
  const SbpParams params = derive_sbp_params(inst, 1.0, m);
  Rng rng(seed);
  return build_sbp_instance(inst, params, rng, emb).second;
}

std::vector<int> random_pm(std::size_t m, Rng& rng) {
  std::vector<int> x(m);
  for (int& v : x) v = rng.uniform_int(0, 1) == 0 ? -1 : 1;
  return x;
}

TEST(SbpParams, DimensionFourEpsOne) {
  auto inst = instance(4, 355, 1);
  inst.r = 1420.0;
  const SbpParams p = derive_sbp_params(inst, 1.0);
  EXPECT_EQ(p.m, 355u);
  EXPECT_EQ(BigInt(p.m), sbp_m_oracle(4, Dec50(1)));
  EXPECT_EQ(p.regime, Regime::kPaperParams);
  EXPECT_NEAR(p.sigma2, std::log(4.0), 1e-15);
  EXPECT_DOUBLE_EQ(p.sigma1, 1.0);
  EXPECT_NEAR(p.gamma, 4.0 * 355.0 * std::log(4.0), 1e-9);
  EXPECT_NEAR(p.gamma, 1968.6, 0.1);
  EXPECT_NEAR(p.kappa_target, std::pow(4.0 / 355.0, 1.5) * std::sqrt(355.0), 1e-12);
}

TEST(SbpParams, SixteenHalfNeedsOverride) {
  const auto inst = instance(16, 64, 2);
  const auto m = sbp_formula_m(16, 0.5);
  ASSERT_TRUE(m);
  EXPECT_EQ(BigInt(*m), sbp_m_oracle(16, Dec50(1) / 2));
  EXPECT_GT(*m, kDefaultMBudget);
  try {
    derive_sbp_params(inst, 0.5);
    FAIL() << "expected the budget error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("override_m"), std::string::npos);
  }
}

TEST(SbpParams, FormulaAcrossGrid) {
  // eps values exactly representable in both number systems
  for (unsigned n = 2; n <= 6; ++n) {
    for (double eps : {1.0, 1.5, 2.0, 4.0}) {
      const auto m = sbp_formula_m(n, eps);
      ASSERT_TRUE(m);
      EXPECT_EQ(BigInt(*m), sbp_m_oracle(n, Dec50(eps))) << "n = " << n << " eps = " << eps;
    }
  }
}

TEST(SbpParams, OverrideKeepsSigmaOneRule) {
  auto inst = instance(2, 24, 3);
  inst.r = 96.0;
  const SbpParams p = derive_sbp_params(inst, 1.0, 24);
  EXPECT_EQ(p.m, 24u);
  EXPECT_EQ(p.regime, Regime::kOverride);
  EXPECT_DOUBLE_EQ(p.sigma1, 1.0);
}

TEST(SbpParams, Errors) {
  const auto one = generate_planted_instance(1, InstanceProfile::kDiagonal, 1.0, 1);
  EXPECT_THROW(derive_sbp_params(one, 1.0, 8), std::invalid_argument);
  const auto inst = instance(3, 12, 1);
  EXPECT_THROW(derive_sbp_params(inst, 0.0, 12), std::invalid_argument);
  EXPECT_THROW(derive_sbp_params(inst, 1.0, 2), std::invalid_argument);
}

TEST(SbpBuild, SupportAndExactW) {
  const SbpTranscript tr = transcript(3, 16, 4);
  const Matrix w = tr.w();
  for (std::size_t i = 0; i < tr.a_tilde.data().size(); ++i) {
    const double a = tr.a_tilde.data()[i];
    EXPECT_GE(a, 0.0);
    EXPECT_LT(a, 1.0);
    EXPECT_NEAR(tr.a.data()[i] * tr.params.sigma2, w.data()[i], 1e-12);
  }
}

TEST(SbpBuild, SameRngSameTranscript) {
  const SbpTranscript a = transcript(2, 12, 5);
  const SbpTranscript b = transcript(2, 12, 5);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.k, b.k);
}

TEST(SbpExtract, MembershipForRandomSigns) {
  Rng xr(6);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const SbpTranscript tr = transcript(n, 8 + seed % 5, seed);
    const auto x = random_pm(tr.m(), xr);
    const SbpExtraction ext = extract_short_vector(tr, x);
    ASSERT_TRUE(lattice_membership(tr.inst.pair.b(), ext.s, 1e-6)) << "seed " << seed;
    EXPECT_LT(ext.integrality_residual, 1e-6);
    EXPECT_TRUE(ext.chain_ok) << "seed " << seed;
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

TEST(SbpExtract, IdentityLatticeAllOnes) {
  PlantedOptions opt;
  opt.diagonal = {1, 1, 1};
  opt.sublattice_scale = 1;
  const auto inst = generate_planted_instance(3, InstanceProfile::kDiagonal, sbp_gamma(3, 10), 9, opt);
  const SbpParams params = derive_sbp_params(inst, 1.0, 10);
  Rng rng(9);
  const SbpTranscript tr = build_sbp_instance(inst, params, rng).second;
  const std::vector<int> ones(10, 1);
  const SbpExtraction ext = extract_short_vector(tr, ones);
  const Vector ux = multiply(tr.u, ones);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(ext.s[i], ux[i] + ext.e_prime[i], 1e-9);
    EXPECT_NEAR(ext.s[i], std::round(ext.s[i]), 1e-6);
  }
}

TEST(SbpExtract, GlobalSignDoesNotChangeS) {
  Rng xr(10);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SbpTranscript tr = transcript(2, 10, seed);
    auto x = random_pm(10, xr);
    const SbpExtraction pos = extract_short_vector(tr, x);
    for (int& v : x) v = -v;
    const SbpExtraction neg = extract_short_vector(tr, x);
    EXPECT_EQ(pos.sign, -neg.sign);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(pos.s[i], neg.s[i], 1e-9);
  }
}

TEST(SbpExtract, NegativeScaleSignTrick) {
  // Target embedded at column 3 with scale -2; x_3 = -2 matches the guess.
  Rng xr(11);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SbpTranscript tr = transcript(2, 8, seed, {3, -2});
    std::vector<int> x(8);
    for (int& v : x) v = static_cast<int>(xr.uniform_int(-2, 2));
    x[3] = -2;
    const SbpExtraction ext = extract_short_vector(tr, x);
    EXPECT_EQ(ext.sign, 1);
    EXPECT_TRUE(ext.guess_matched);
    EXPECT_TRUE(lattice_membership(tr.inst.pair.b(), ext.s));
    EXPECT_TRUE(ext.chain_ok);
    x[3] = 2;
    const SbpExtraction flipped = extract_short_vector(tr, x);
    EXPECT_EQ(flipped.sign, -1);
    EXPECT_TRUE(flipped.guess_matched);
    x[3] = 1;
    EXPECT_FALSE(extract_short_vector(tr, x).guess_matched);
  }
}

TEST(SbpExtract, RejectsZeroAndWrongLength) {
  const SbpTranscript tr = transcript(2, 8, 12, {0, 1});
  EXPECT_THROW(extract_short_vector(tr, std::vector<int>(8, 0)), std::invalid_argument);
  EXPECT_THROW(extract_short_vector(tr, std::vector<int>(7, 1)), std::invalid_argument);
}

TEST(GuessEmbedding, UniformOverColumnsAndScales) {
  const Rng root(13);
  std::map<std::size_t, int> cols;
  std::map<int, int> scales;
  constexpr int kDraws = 8000;
  for (int i = 0; i < kDraws; ++i) {
    const auto emb = guess_embedding(Alphabet::bounded(2), 8, root.fork("attempt", i));
    ++cols[emb.column];
    ++scales[emb.scale];
  }
  ASSERT_EQ(cols.size(), 8u);
  for (const auto& [c, k] : cols) EXPECT_NEAR(k / double(kDraws), 1.0 / 8, 0.02);
  ASSERT_EQ(scales.size(), 4u);
  EXPECT_EQ(scales.count(0), 0u);
  for (const auto& [s, k] : scales) EXPECT_NEAR(k / double(kDraws), 0.25, 0.025);
  EXPECT_EQ(guess_embedding(Alphabet::pm_one(), 8, root).column, 0u);
}

TEST(SbpReduction, BruteForceVerifiesFirstAttempt) {
  const auto solver = make_solver({SolverKind::kBruteSbp});
  int first = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = instance(2, 16, 1000 + seed);
    const SbpParams params = derive_sbp_params(inst, 1.0, 16);
    Rng rng(seed);
    const ReductionResult res = run_sbp_reduction(inst, params, *solver, 1, rng);
    if (res.verified) {
      ++first;
      ASSERT_TRUE(res.s);
      EXPECT_TRUE(verify_incgdd_solution(inst, *res.s).valid);
    }
  }
  EXPECT_GE(first, 45);
}

// Wraps the exact solver and, with probability 1 - p, returns all ones
// instead. Draws the coin from the solver stream.
class DegradedSolver final : public Solver {
 public:
  explicit DegradedSolver(double p) : p_(p) {}
  SolverOutput solve(const Matrix& a, double, Rng& rng) const override {
    if (rng.uniform01() < p_) return brute_force_sbp(a);
    SolverOutput out;
    out.x.assign(a.cols(), 1);
    out.solver = "degraded";
    return out;
  }
  std::string name() const override { return "degraded"; }
  Alphabet alphabet() const override { return Alphabet::pm_one(); }

 private:
  double p_;
};

TEST(SbpReduction, DegradedSolverSucceedsWithinFortyAttempts) {
  const DegradedSolver solver(0.2);
  int ok = 0;
  double attempts = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = instance(2, 12, 2000 + seed);
    const SbpParams params = derive_sbp_params(inst, 1.0, 12);
    Rng rng(seed);
    const ReductionResult res = run_sbp_reduction(inst, params, solver, 40, rng);
    ok += res.verified ? 1 : 0;
    attempts += static_cast<double>(res.attempts);
  }
  // 0.8^40 < 2e-4 per run
  EXPECT_EQ(ok, 50);
  EXPECT_GT(attempts / 50.0, 2.0);
}

TEST(SbpReduction, AlwaysFailExhaustsAttempts) {
  const auto solver = make_solver({SolverKind::kAlwaysFail});
  int exhausted = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = instance(2, 12, 3000 + seed);
    const SbpParams params = derive_sbp_params(inst, 1.0, 12);
    Rng rng(seed);
    const ReductionResult res = run_sbp_reduction(inst, params, *solver, 5, rng);
    if (!res.verified) {
      ++exhausted;
      EXPECT_EQ(res.attempts, 5u);
      EXPECT_EQ(res.log.size(), 5u);
      for (const auto& rec : res.log) EXPECT_FALSE(rec.failure.empty());
    }
  }
  EXPECT_GE(exhausted, 18);
}

TEST(SbpReduction, TernaryGuessingStillVerifies) {
  const auto solver = make_solver({SolverKind::kBruteSbp, Alphabet::ternary()});
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = instance(2, 10, 4000 + seed);
    const SbpParams params = derive_sbp_params(inst, 1.0, 10);
    Rng rng(seed);
    const ReductionResult res = run_sbp_reduction(inst, params, *solver, 10, rng);
    ok += res.verified ? 1 : 0;
    for (const auto& rec : res.log) {
      if (rec.failure == "guess") EXPECT_FALSE(rec.guess_matched);
    }
  }
  EXPECT_GE(ok, 16);
}

TEST(SbpReduction, InvalidSolverOutputIsLogged) {
  class Short final : public Solver {
   public:
    SolverOutput solve(const Matrix&, double, Rng&) const override { return {{1}, 0.0, "short", 0}; }
    std::string name() const override { return "short"; }
    Alphabet alphabet() const override { return Alphabet::pm_one(); }
  };
  const auto inst = instance(2, 8, 5);
  const SbpParams params = derive_sbp_params(inst, 1.0, 8);
  Rng rng(1);
  const ReductionResult res = run_sbp_reduction(inst, params, Short{}, 3, rng);
  EXPECT_FALSE(res.verified);
  ASSERT_EQ(res.log.size(), 3u);
  EXPECT_EQ(res.log[0].failure, "invalid_solution");
}

}  // namespace
}  // namespace latred
