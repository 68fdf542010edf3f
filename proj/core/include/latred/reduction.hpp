#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latred/lattice.hpp"
#include "latred/numeric_types.hpp"
#include "latred/rng.hpp"
#include "latred/solvers.hpp"

namespace latred {

/// Whether a reduction runs with the asymptotic parameter block or with a
/// user-supplied m, in which case the final norm guarantee is only checked
/// empirically.
enum class Regime { kPaperParams, kOverride };

std::string to_string(Regime regime);

/// Column of U that carries the target, and the guessed value of x at that
/// column. u_column is drawn with mean t / scale. The pm_one pipeline always
/// uses {0, 1}.
struct TargetEmbedding {
  std::size_t column = 0;
  int scale = 1;
};

/// One pass of build -> solve -> check -> extract -> verify.
struct AttemptRecord {
  std::size_t attempt = 0;
  double solver_value = 0.0;  // recomputed from the instance, not trusted
  double kappa_target = 0.0;
  bool kappa_ok = false;
  bool extracted = false;
  bool member = false;
  double dist = 0.0;
  double bound = 0.0;
  bool valid = false;
  bool error_budget_ok = false;
  bool guess_matched = true;
  bool wraparound = false;
  std::string failure;  // empty on success
};

struct ReductionResult {
  std::optional<Vector> s;
  std::size_t attempts = 0;
  bool verified = false;
  std::vector<AttemptRecord> log;
};

/// Embedding for one attempt: {0, 1} for pm_one; otherwise a uniform column,
/// and for bounded alphabets a uniform scale in {-B..B} \ {0}. Draws from
/// attempt_rng.fork("guess").
TargetEmbedding guess_embedding(const Alphabet& alphabet, std::size_t m, const Rng& attempt_rng);

/// n x m matrix with i.i.d. N(0, sigma1^2) entries, except that the embedding
/// column has mean t / scale.
Matrix sample_target_columns(const PlantedIncGDDInstance& inst, std::size_t m, double sigma1,
                             const TargetEmbedding& embedding, Rng& rng);

/// m independent uniform coset samples of L(B) mod P(S), with coefficient
/// vectors in terms of B.
struct CosetBatch {
  Matrix v;
  SmallIntMatrix coeffs;
};
CosetBatch sample_coset_columns(const SublatticePair& pair, std::size_t m, Rng& rng);

/// S^{-1}(V + U) mod Z^n, column-wise.
Matrix reduce_mod_sublattice(const SublatticePair& pair, const Matrix& v, const Matrix& u);

/// Largest distance from an entry of S^{-1}(V + U) x + e to Z^n. Zero up to
/// rounding whenever e is the error vector of an exact solution.
double integrality_residual(const SublatticePair& pair, const Matrix& v, const Matrix& u,
                            std::span<const int> x, std::span<const double> e);

}  // namespace latred
