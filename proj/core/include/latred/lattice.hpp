#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latred/hnf.hpp"
#include "latred/numeric_types.hpp"
#include "latred/rng.hpp"

namespace latred {

/// Default tolerance for deciding that B^{-1} s is integral.
inline constexpr double kMembershipTolerance = 1e-6;

/// Invertible n x n lattice basis with exact rational entries. Columns are the
/// basis vectors. The exact inverse is computed once at construction and a
/// double copy of both B and B^{-1} is cached for applying to float vectors.
class Basis {
 public:
  /// Throws std::invalid_argument if the matrix is empty, non-square or
  /// singular.
  explicit Basis(RationalMatrix entries);

  static Basis from_integers(const IntegerMatrix& entries);

  std::size_t dimension() const noexcept { return exact_.rows(); }
  const RationalMatrix& exact() const noexcept { return exact_; }
  const RationalMatrix& exact_inverse() const noexcept { return inverse_; }
  const Rational& determinant() const noexcept { return det_; }
  const Matrix& matrix() const noexcept { return approx_; }
  const Matrix& inverse_matrix() const noexcept { return approx_inverse_; }

  friend bool operator==(const Basis& a, const Basis& b) { return a.exact_ == b.exact_; }

 private:
  RationalMatrix exact_;
  RationalMatrix inverse_;
  Rational det_;
  Matrix approx_;
  Matrix approx_inverse_;
};

/// A point of L(B), optionally with its integer coefficient vector z (v = B z).
struct LatticeVector {
  Vector coords;
  std::optional<IntVector> coeffs;
};

/// Bases B and S with L(S) a full-rank sublattice of L(B), witnessed by the
/// integer matrix M with S = B M.
class SublatticePair {
 public:
  SublatticePair(Basis b, const IntegerMatrix& m);

  /// Recovers M = B^{-1} S; throws std::invalid_argument if M is not integral.
  static SublatticePair from_bases(Basis b, Basis s);

  const Basis& b() const noexcept { return b_; }
  const Basis& s() const noexcept { return s_; }
  const IntegerMatrix& m() const noexcept { return m_; }
  const HermiteForm& hermite() const noexcept { return hermite_; }
  /// |det M| = [L(B) : L(S)].
  const BigInt& index() const noexcept { return index_; }

  /// Maps an integer coset label z (0 <= z_i < H(i, i)) to the coefficient
  /// vector c, in terms of B, of the unique representative of B z + L(S)
  /// inside P(S).
  IntVector coset_representative(const IntVector& label) const;

 private:
  Basis b_;
  Basis s_;
  IntegerMatrix m_;
  IntegerMatrix adjugate_;  // adj(M), signed so that M * adj = index * I
  BigInt index_;
  HermiteForm hermite_;
};

enum class InstanceProfile { kDiagonal, kQary, kRotated };

std::string to_string(InstanceProfile profile);
InstanceProfile instance_profile_from_string(const std::string& name);

/// Worst-case IncGDD input (B, S, t, r) with the planted value of lambda_n.
struct PlantedIncGDDInstance {
  SublatticePair pair;
  Vector t;
  double r = 0.0;
  double lambda_n = 0.0;  // <= 0 when unknown (ingested arbitrary basis)
  double gamma = 1.0;
  InstanceProfile profile = InstanceProfile::kDiagonal;
  std::uint64_t seed = 0;

  std::size_t dimension() const noexcept { return pair.b().dimension(); }
  bool lambda_known() const noexcept { return lambda_n > 0.0; }
  /// The precondition r > gamma * lambda_n; true when lambda_n is unknown.
  bool radius_condition_holds() const noexcept {
    return !lambda_known() || r > gamma * lambda_n;
  }
};

struct PlantedOptions {
  /// r = radius_factor * gamma * lambda_n; must exceed 1.
  double radius_factor = 2.0;
  /// S = B * diag(sublattice_scale); the index of L(S) in L(B) is scale^n.
  std::int64_t sublattice_scale = 2;
  /// t is uniform in [-target_box * lambda_n, target_box * lambda_n]^n.
  double target_box = 4.0;
  /// Explicit diagonal for the diagonal/rotated profiles. When empty each
  /// entry is drawn uniformly from {1, ..., 4}.
  std::vector<std::int64_t> diagonal;
  /// Prime modulus for the q-ary profile; 0 picks one from {5, 7, 11, 13}.
  std::int64_t modulus = 0;
};

// --- operations ------------------------------------------------------------

/// y = B frac(B^{-1} x), the representative of x in P(B).
Vector mod_parallelepiped(const Basis& b, std::span<const double> x);

/// round(B^{-1} s) when every coordinate of B^{-1} s is within tau of an
/// integer, otherwise nullopt.
std::optional<IntVector> lattice_membership(const Basis& b, std::span<const double> s,
                                            double tau = kMembershipTolerance);

/// Uniform element of L(B) mod P(S): draws a label uniform over the Hermite
/// normal form box of M and reduces B z into P(S) exactly.
LatticeVector sample_coset_uniform(const SublatticePair& pair, Rng& rng);

/// lambda_n of L(B) by enumerating every lattice point of norm <= radius and
/// greedily collecting independent vectors in order of length. Intended for
/// n <= 4; returns nullopt when fewer than n independent vectors fit.
std::optional<double> successive_minimum_by_enumeration(const Basis& b, double radius);

PlantedIncGDDInstance generate_planted_instance(std::size_t n, InstanceProfile profile,
                                                double gamma, std::uint64_t seed,
                                                const PlantedOptions& options = {});

struct IncGDDVerdict {
  bool valid = false;
  bool member = false;
  double dist = 0.0;
  double bound = 0.0;
  std::optional<IntVector> coeffs;
};

/// valid iff s is in L(B) (within tau) and ||s - t||_2 <= r + ||S|| / 8.
IncGDDVerdict verify_incgdd_solution(const PlantedIncGDDInstance& inst,
                                     std::span<const double> s,
                                     double tau = kMembershipTolerance);

}  // namespace latred
