#include "latred/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "latred/gaussian.hpp"

namespace latred {

std::string to_string(Regime regime) {
  return regime == Regime::kPaperParams ? "paper_params" : "override";
}

TargetEmbedding guess_embedding(const Alphabet& alphabet, std::size_t m, const Rng& attempt_rng) {
  TargetEmbedding embedding;
  if (alphabet.kind() == Alphabet::Kind::kPmOne) return embedding;
  Rng g = attempt_rng.fork("guess");
  embedding.column = static_cast<std::size_t>(g.uniform_int(0, static_cast<std::int64_t>(m) - 1));
  if (alphabet.kind() == Alphabet::Kind::kBounded) {
    const auto z = static_cast<int>(g.uniform_int(1, alphabet.bound()));
    embedding.scale = g.uniform_int(0, 1) == 0 ? -z : z;
  }
  return embedding;
}

Matrix sample_target_columns(const PlantedIncGDDInstance& inst, std::size_t m, double sigma1,
                             const TargetEmbedding& embedding, Rng& rng) {
  const std::size_t n = inst.dimension();
  if (embedding.column >= m) throw std::invalid_argument("target embedding column out of range");
  if (embedding.scale == 0) throw std::invalid_argument("target embedding scale must be nonzero");
  Matrix u(n, m);
  const Vector zero(n, 0.0);
  Vector shifted(n);
  for (std::size_t i = 0; i < n; ++i) shifted[i] = inst.t[i] / embedding.scale;
  for (std::size_t j = 0; j < m; ++j) {
    const Vector col = sample_normal_vec(j == embedding.column ? shifted : zero, sigma1, rng);
    u.set_col(j, col);
  }
  return u;
}

CosetBatch sample_coset_columns(const SublatticePair& pair, std::size_t m, Rng& rng) {
  const std::size_t n = pair.b().dimension();
  CosetBatch batch{Matrix(n, m), SmallIntMatrix(n, m)};
  for (std::size_t j = 0; j < m; ++j) {
    const LatticeVector v = sample_coset_uniform(pair, rng);
    batch.v.set_col(j, v.coords);
    batch.coeffs.set_col(j, *v.coeffs);
  }
  return batch;
}

Matrix reduce_mod_sublattice(const SublatticePair& pair, const Matrix& v, const Matrix& u) {
  const Matrix& s_inv = pair.s().inverse_matrix();
  Matrix out(v.rows(), v.cols());
  Vector col(v.rows());
  for (std::size_t j = 0; j < v.cols(); ++j) {
    for (std::size_t i = 0; i < v.rows(); ++i) col[i] = v(i, j) + u(i, j);
    const Vector coords = multiply(s_inv, col);
    for (std::size_t i = 0; i < v.rows(); ++i) out(i, j) = frac(coords[i]);
  }
  return out;
}

double integrality_residual(const SublatticePair& pair, const Matrix& v, const Matrix& u,
                            std::span<const int> x, std::span<const double> e) {
  const std::size_t n = v.rows();
  Vector combo(n, 0.0);
  for (std::size_t j = 0; j < v.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) combo[i] += (v(i, j) + u(i, j)) * x[j];
  const Vector coords = multiply(pair.s().inverse_matrix(), combo);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = coords[i] + e[i];
    worst = std::max(worst, std::abs(z - std::round(z)));
  }
  return worst;
}

}  // namespace latred
