#include "phrmt/blockcirc.hpp"

#include <stdexcept>

#include "phrmt/parallel.hpp"
#include "phrmt/pseudo2x2.hpp"
#include "phrmt/specfun.hpp"

namespace phrmt {
namespace {
constexpr Complex kI{0.0, 1.0};
}

BlockCirculant::BlockCirculant(std::vector<Block2> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.size() < 2) throw std::invalid_argument("block circulant needs N >= 2");
  for (const auto& b : blocks_) {
    if (!b.allFinite()) throw std::invalid_argument("block entries must be finite");
  }
}

const Block2& BlockCirculant::block(Eigen::Index i, Eigen::Index j) const {
  const Eigen::Index n = blocks();
  return blocks_[static_cast<std::size_t>(((j - i) % n + n) % n)];
}

ComplexMatrix BlockCirculant::dense() const {
  const Eigen::Index n = blocks();
  ComplexMatrix m(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m.block<2, 2>(2 * i, 2 * j) = block(i, j);
  }
  return m;
}

RealMatrix sigma_parity(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("sigma_parity: N must be >= 2");
  RealMatrix sigma = RealMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index k = (n - j) % n;
    sigma(2 * j, 2 * k + 1) = 1.0;
    sigma(2 * j + 1, 2 * k) = 1.0;
  }
  return sigma;
}

double pseudo_orthogonality_residual_block(const BlockCirculant& b) {
  const ComplexMatrix m = b.dense();
  const ComplexMatrix sigma = sigma_parity(b.blocks()).cast<Complex>();
  return (sigma * m * sigma - m.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<Block2> reduced_blocks(const BlockCirculant& b) {
  const Eigen::Index n = b.blocks();
  const auto& row = b.first_block_row();
  std::vector<Block2> out(static_cast<std::size_t>(n));
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      ComplexVector entry(n);
      for (Eigen::Index p = 0; p < n; ++p) entry[p] = row[static_cast<std::size_t>(p)](r, c);
      const ComplexVector transformed = dft(entry);
      for (Eigen::Index l = 0; l < n; ++l) out[static_cast<std::size_t>(l)](r, c) = transformed[l];
    }
  }
  return out;
}

Spectrum eigenvalues_block(const BlockCirculant& b) {
  const auto reduced = reduced_blocks(b);
  ComplexVector eigs(b.dimension());
  for (std::size_t l = 0; l < reduced.size(); ++l) {
    const auto [plus, minus] = eigenvalues2(reduced[l]);
    eigs[static_cast<Eigen::Index>(2 * l)] = plus;
    eigs[static_cast<Eigen::Index>(2 * l + 1)] = minus;
  }
  return classify_numerically(eigs);
}

Block2 gaussian_block(double a, double b, double c) {
  Block2 m;
  m << a, -b, c, a;
  return m;
}

BlockCirculant sample_gaussian_blocks(Eigen::Index n, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("sample_gaussian_blocks: N must be >= 2");
  std::vector<Block2> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = rng.normal();
    const double b = rng.normal();
    const double c = rng.normal();
    blocks.push_back(gaussian_block(a, b, c));
  }
  return BlockCirculant(std::move(blocks));
}

BlockCirculant ising_block_circulant(Eigen::Index n, const IsingParams& p) {
  if (n < 3) throw std::domain_error("Ising-form row (A, B, ..., B^dagger) needs N >= 3");
  Block2 a;
  a << p.a1, kI * p.a2, -kI * p.a2, p.a1;
  Block2 b;
  b << -0.5, kI * p.b1, kI * p.b2, -0.5;
  std::vector<Block2> blocks(static_cast<std::size_t>(n), b);
  blocks.front() = a;
  blocks.back() = b.adjoint();
  return BlockCirculant(std::move(blocks));
}

BlockCirculant sample_ising_blocks(Eigen::Index n, RandomStream& rng, double scale) {
  if (n < 3) throw std::domain_error("Ising-form row (A, B, ..., B^dagger) needs N >= 3");
  IsingParams p;
  p.a1 = rng.normal(0.0, scale);
  p.a2 = rng.normal(0.0, scale);
  p.b1 = rng.normal(0.0, scale);
  p.b2 = rng.normal(0.0, scale);
  return ising_block_circulant(n, p);
}

SpacingClasses block_spacing_ensemble(Eigen::Index n, std::size_t count, std::uint64_t seed,
                                      unsigned threads, const BlockEnsembleOptions& options) {
  if (count == 0) throw std::invalid_argument("block_spacing_ensemble: count must be >= 1");
  const std::size_t chunks = chunk_count(count);
  std::vector<SpacingClasses> parts(chunks);
  parallel_for_chunks(chunks, threads, [&](std::size_t chunk) {
    RandomStream rng(seed, chunk);
    const std::size_t begin = chunk * kRealizationsPerChunk;
    const std::size_t todo = std::min(kRealizationsPerChunk, count - begin);
    for (std::size_t i = 0; i < todo; ++i) {
      const BlockCirculant b = options.kind == BlockKind::gaussian
                                   ? sample_gaussian_blocks(n, rng)
                                   : sample_ising_blocks(n, rng, options.ising_scale);
      parts[chunk].append(classify_spacings(eigenvalues_block(b), options.pairing));
    }
  });
  SpacingClasses out;
  for (const auto& part : parts) out.append(part);
  return out;
}

}  // namespace phrmt
