#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latred/numeric_types.hpp"
#include "latred/rng.hpp"

namespace latred {

/// Allowed entries for a solution vector x.
///   pm_one:  x in {-1, +1}^m
///   ternary: x in {-1, 0, +1}^m, x != 0
///   bounded: x in {-B, ..., B}^m, x != 0
class Alphabet {
 public:
  enum class Kind { kPmOne, kTernary, kBounded };

  static Alphabet pm_one() { return Alphabet(Kind::kPmOne, 1); }
  static Alphabet ternary() { return Alphabet(Kind::kTernary, 1); }
  static Alphabet bounded(int bound);
  /// "pm_one", "ternary" or "bounded:<B>".
  static Alphabet parse(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  int bound() const noexcept { return bound_; }
  bool allows_zero() const noexcept { return kind_ != Kind::kPmOne; }
  bool contains(int v) const noexcept;
  std::string name() const;

  /// Checks that x is a valid solution over this alphabet (right entries and,
  /// for the zero-allowing alphabets, not all-zero).
  bool admits(std::span<const int> x) const noexcept;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Alphabet(Kind kind, int bound) : kind_(kind), bound_(bound) {}
  Kind kind_;
  int bound_;
};

struct SolverOutput {
  std::vector<int> x;
  double value = 0.0;  // as reported by the solver; callers recompute
  std::string solver;
  std::uint64_t budget_used = 0;
};

/// ||A x||_inf.
double discrepancy(const Matrix& a, std::span<const int> x);

/// Exact minimizer of ||A x||_inf over the alphabet by depth-first
/// enumeration in lexicographic order (-B < ... < B), with the global sign
/// fixed so the first nonzero entry is positive. Ties keep the
/// lexicographically smallest x. Throws std::invalid_argument above the
/// enumeration cap (m <= 30 for pm_one, (2B+1)^m <= 5e7 otherwise).
SolverOutput brute_force_sbp(const Matrix& a, const Alphabet& alphabet = Alphabet::pm_one());

/// brute_force_sbp on the 1 x m matrix a^T.
SolverOutput brute_force_npp(std::span<const double> a);

/// Karmarkar-Karp largest differencing. The sign vector realizing the final
/// residue is recovered by 2-coloring the differencing forest: each step
/// makes the smaller of the two combined items take the opposite sign of the
/// larger. Equal values are combined in order of creation.
SolverOutput karmarkar_karp(std::span<const double> a);

/// Best of `budget` uniform draws from the alphabet. With dedup (pm_one only)
/// draws are distinct after sign normalization, so budget >= 2^(m-1) covers
/// the whole space. Stops early once the value is <= stop_at.
SolverOutput random_search(const Matrix& a, const Alphabet& alphabet, std::uint64_t budget,
                           Rng& rng, bool dedup = false,
                           std::optional<double> stop_at = std::nullopt);

/// Average-case solver contract: given the instance and the discrepancy
/// target, return a best-effort x. Success is judged by the caller.
/// Implementations are deterministic given (input, rng state).
class Solver {
 public:
  virtual ~Solver() = default;
  virtual SolverOutput solve(const Matrix& a, double kappa_target, Rng& rng) const = 0;
  virtual std::string name() const = 0;
  virtual Alphabet alphabet() const = 0;
};

enum class SolverKind { kBruteSbp, kBruteNpp, kKarmarkarKarp, kRandomSearch, kAlwaysFail };

std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& name);

struct SolverSpec {
  SolverKind kind = SolverKind::kBruteSbp;
  Alphabet alphabet = Alphabet::pm_one();
  std::uint64_t budget = 4096;  // random_search draws
  bool dedup = false;
};

/// Throws std::invalid_argument for unsupported kind/alphabet combinations
/// (Karmarkar-Karp and brute_npp are pm_one only).
std::unique_ptr<Solver> make_solver(const SolverSpec& spec);

}  // namespace latred
