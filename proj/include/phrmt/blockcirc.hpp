#pragma once

// Circulants whose entries are 2x2 blocks: Gaussian blocks [[a, -b], [c, a]]
// and the Ising-form row (A, B, ..., B, B^dagger). Eigenvalues come from the
// block-Fourier reduction: the 2N spectrum is the union of the spectra of
//   Ahat_l = sum_p A_p exp(2 pi i p l / N),  l = 0..N-1.

#include <cstdint>
#include <vector>

#include "phrmt/circulant.hpp"
#include "phrmt/random.hpp"
#include "phrmt/types.hpp"

namespace phrmt {

using Block2 = Matrix2;

class BlockCirculant {
 public:
  explicit BlockCirculant(std::vector<Block2> blocks);

  Eigen::Index blocks() const { return static_cast<Eigen::Index>(blocks_.size()); }
  Eigen::Index dimension() const { return 2 * blocks(); }
  const std::vector<Block2>& first_block_row() const { return blocks_; }
  const Block2& block(Eigen::Index i, Eigen::Index j) const;

  ComplexMatrix dense() const;

 private:
  std::vector<Block2> blocks_;
};

/// Block version of the generalized parity: Pauli sigma_x at block
/// (j, (N - j) mod N), zero blocks elsewhere.
RealMatrix sigma_parity(Eigen::Index n);

/// max |Sigma B Sigma^-1 - B^dagger|.
double pseudo_orthogonality_residual_block(const BlockCirculant& b);

/// The N reduced 2x2 matrices Ahat_l.
std::vector<Block2> reduced_blocks(const BlockCirculant& b);

/// 2N eigenvalues (both eigenvalues of Ahat_0, then Ahat_1, ...), tagged
/// numerically.
Spectrum eigenvalues_block(const BlockCirculant& b);

Block2 gaussian_block(double a, double b, double c);
BlockCirculant sample_gaussian_blocks(Eigen::Index n, RandomStream& rng);

struct IsingParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// Row (A, B, ..., B, B^dagger) with A = [[a1, i a2], [-i a2, a1]] and
/// B = [[-1/2, i b1], [i b2, -1/2]]. Throws std::domain_error for N < 3.
BlockCirculant ising_block_circulant(Eigen::Index n, const IsingParams& params);
/// a1, a2, b1, b2 i.i.d. N(0, scale^2).
BlockCirculant sample_ising_blocks(Eigen::Index n, RandomStream& rng, double scale = 1.0);

enum class BlockKind { gaussian, ising };

struct BlockEnsembleOptions {
  BlockKind kind = BlockKind::gaussian;
  double ising_scale = 1.0;
  GenericPairing pairing = GenericPairing::all_pairs;
};

SpacingClasses block_spacing_ensemble(Eigen::Index n, std::size_t count, std::uint64_t seed,
                                      unsigned threads = 0,
                                      const BlockEnsembleOptions& options = {});

}  // namespace phrmt
