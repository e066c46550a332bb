#pragma once

// Random cyclic (circulant) matrices: construction, generalized parity,
// Fourier eigenvalues, spacing classification and the three exact spacing
// laws of the real Gaussian circulant ensemble.
//
// Indices are zero-based in code. Eigenvalue l (zero-based) is
//   E_l = sum_p a_p exp(2 pi i p l / N),
// E_0 is the sum of the first row, and E_l pairs with E_{(N - l) mod N}.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "phrmt/random.hpp"
#include "phrmt/specfun.hpp"
#include "phrmt/stats.hpp"
#include "phrmt/types.hpp"

namespace phrmt {

/// N x N circulant stored as its first row; row r of the full matrix is the
/// first row cyclically shifted right by r.
template <typename Scalar>
class BasicCirculant {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicCirculant(Vector first_row) : row_(std::move(first_row)) {
    if (row_.size() < 2) throw std::invalid_argument("circulant needs N >= 2");
    if (!row_.allFinite()) throw std::invalid_argument("circulant entries must be finite");
  }

  Eigen::Index size() const { return row_.size(); }
  const Vector& first_row() const { return row_; }

  Scalar operator()(Eigen::Index i, Eigen::Index j) const {
    const Eigen::Index n = size();
    return row_[((j - i) % n + n) % n];
  }

  Matrix dense() const {
    const Eigen::Index n = size();
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = (*this)(i, j);
    }
    return m;
  }

 private:
  Vector row_;
};

using Circulant = BasicCirculant<double>;

/// Eigenvalues of any circulant: the DFT of its first row.
template <typename Scalar>
ComplexVector circulant_eigenvalues(const BasicCirculant<Scalar>& c) {
  return dft(c.first_row());
}

enum class EigenKind { real, conj_pair };

/// Eigenvalues with their real / conjugate-pair tags. partner[i] == i for
/// real eigenvalues.
struct Spectrum {
  ComplexVector eigs;
  std::vector<EigenKind> kinds;
  std::vector<Eigen::Index> partner;

  Eigen::Index size() const { return eigs.size(); }
  std::size_t real_count() const;
};

/// Tags by numerical search: |Im E| <= tol * scale marks a real eigenvalue,
/// |E_i - conj(E_j)| <= tol * scale pairs two complex ones, with
/// scale = max(1, max |E|). Unmatched complex values are left as their own
/// partner with kind conj_pair and take part only in rc/generic pairs.
Spectrum classify_numerically(const ComplexVector& eigs, double rel_tol = 1e-9);

/// Permutation matrix with eta(0,0) = 1 and eta(j, N - j) = 1; eta^2 = I.
RealMatrix generalized_parity(Eigen::Index n);

/// Unitary Fourier matrix U(j, l) = exp(2 pi i j l / N) / sqrt(N).
ComplexMatrix fourier_matrix(Eigen::Index n);

/// max |eta M eta^-1 - M^T|.
double pseudo_orthogonality_residual(const Circulant& c);

/// Spectrum of a real circulant tagged by the pairing rule l <-> N - l.
/// Paired values are exact conjugates and real-tagged values have zero
/// imaginary part.
Spectrum eigenvalues(const Circulant& c);

/// Tr M^T M = N sum a_p^2.
double trace_norm(const Circulant& c);

/// Entries i.i.d. N(0, 1 / (2 N A)), i.e. weight exp(-A Tr M^T M).
Circulant sample_circulant(Eigen::Index n, double a, RandomStream& rng);
std::vector<Circulant> sample_ensemble(Eigen::Index n, double a, std::size_t count,
                                       RandomStream& rng);

enum class GenericPairing { all_pairs, nearest_neighbor };

struct SpacingClasses {
  SpacingSample cc{SpacingClass::cc, {}, false};
  SpacingSample rc{SpacingClass::rc, {}, false};
  SpacingSample generic{SpacingClass::generic, {}, false};

  void append(const SpacingClasses& other);
};

/// cc: |E - conj(E)| once per conjugate pair. rc: |E_real - E| for every
/// (real, complex) pair. generic: |E_i - E_j| for unordered complex pairs
/// that are not conjugate partners, or with nearest_neighbor the distance
/// from each complex eigenvalue to its closest such neighbour.
SpacingClasses classify_spacings(const Spectrum& spec,
                                 GenericPairing pairing = GenericPairing::all_pairs);

/// Unit-mean densities and CDFs of the three spacing classes.
double pdf_cc(double z);
double cdf_cc(double z);
double pdf_rc(double z);
double cdf_rc(double z);
double pdf_generic(double s);
double cdf_generic(double s);

/// 2F1(3/4, 5/4; 1; 1/4), the constant of the rc law.
double rc_constant();

/// -A (E_0^2 [+ E_{N/2}^2] + sum_{other i} E_i E_{N-i}): the log of the
/// unnormalised eigenvalue weight. Throws std::domain_error when the sum is
/// not real.
double jpdf_log(const Spectrum& spec, double a);

/// Samples `count` circulants and pools their spacing classes. Chunked by
/// realization; the result depends only on the arguments, not on threads.
SpacingClasses cyclic_spacing_ensemble(Eigen::Index n, double a, std::size_t count,
                                       std::uint64_t seed, unsigned threads = 0,
                                       GenericPairing pairing = GenericPairing::all_pairs);

}  // namespace phrmt
