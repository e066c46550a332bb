#pragma once

// Biased random walks on a periodic lattice. The transition matrix is a
// column-stochastic circulant, so every state evolves in the shared Fourier
// eigenbasis: p(t) = sum_l c_l lambda_l^t e_l.
//
// Also the ensemble-averaged relaxation of occupation probabilities when the
// transition matrix is drawn from the random circulant ensemble, in closed
// form, as a two-term large-t expansion, and as a Monte Carlo estimate.

#include <cstdint>
#include <optional>

#include "phrmt/circulant.hpp"
#include "phrmt/random.hpp"
#include "phrmt/types.hpp"

namespace phrmt {

/// A hop row a_0..a_{N-1}: a_k is the probability weight the transition
/// matrix places k sites to the right of the diagonal.
class WalkConfig {
 public:
  /// Nearest-neighbour walk with first row (1 - w, p w, 0, ..., 0, (1 - p) w).
  static WalkConfig biased(Eigen::Index sites, double w, double p);
  static WalkConfig general(RealVector hop_row);

  Eigen::Index sites() const { return row_.size(); }
  const RealVector& hop_row() const { return row_; }

 private:
  explicit WalkConfig(RealVector row);
  RealVector row_;
};

struct WalkState {
  std::int64_t t = 0;
  RealVector probs;
};

WalkState delta_state(Eigen::Index sites, Eigen::Index site);
WalkState uniform_state(Eigen::Index sites);

Circulant transition_matrix(const WalkConfig& cfg);

/// Advances `p0` by `steps` using powers of the Fourier eigenvalues. Values
/// below zero from rounding are clamped to 0.
WalkState evolve_spectral(const WalkConfig& cfg, const WalkState& p0, std::int64_t steps);

/// -sum p_i ln p_i in units of k_B, with 0 ln 0 = 0.
double entropy(const WalkState& state);

/// Largest eigenvalue modulus over the non-stationary modes l = 1..N-1.
double second_eigenvalue_modulus(const WalkConfig& cfg);

/// Smallest t with |lambda_2|^t <= tolerance, which bounds
/// max_i |p_i(t) - 1/N| for every initial distribution. nullopt when
/// |lambda_2| = 1 (no spectral gap).
std::optional<std::int64_t> mixing_time(const WalkConfig& cfg, double tolerance);

/// p_j(t) - 1/N = (1/N) sum_n p_n(0) sum_{l>=1} lambda_l^t Omega_{jn}^l with
/// Omega_{jn} = exp(2 pi i (j - n) / N), for an arbitrary spectrum whose
/// stationary eigenvalue lambda_0 = 1 sits at index 0. Zero-based site j.
double occupation_deviation(const ComplexVector& spectrum, const RealVector& p0, Eigen::Index j,
                            std::int64_t t);

/// 1 / (erf(sqrt(pi)/2) - exp(-pi/4)).
double rmt_decay_normalization();

/// N <p~_j(t)> = (2/sqrt(pi))^{1+t} gamma((3+t)/2, pi/4) / (erf(sqrt(pi)/2) - e^{-pi/4}).
/// The N-scaled value is independent of N; `n` is validated only.
double rmt_decay_closed_form(std::int64_t t, Eigen::Index n);

/// <p~_j(t)> itself, i.e. the closed form divided by N.
double rmt_decay_average(std::int64_t t, Eigen::Index n);

/// (pi/4) e^{-pi/4} / (erf(sqrt(pi)/2) - e^{-pi/4}) [2/(t+3) + pi/((t+3)(t+5))].
double rmt_decay_asymptotic(std::int64_t t);

/// Modulus of one non-stationary eigenvalue: density proportional to
/// r^2 exp(-pi r^2 / 4) on [0, 1], i.e. the Rayleigh weight (pi r / 2)
/// exp(-pi r^2 / 4) per unit area of the unit disc.
double sample_eigenvalue_modulus(RandomStream& rng);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t realizations = 0;
};

/// Each realization draws the moduli of the N - 1 non-stationary
/// eigenvalues from sample_eigenvalue_modulus and records the mean decay
/// magnitude (1/(N-1)) sum_l |lambda_l|^t of the relaxation modes. Uniform
/// phases do not enter |lambda^t|. The estimate is the average over
/// realizations and converges to rmt_decay_closed_form.
MonteCarloEstimate rmt_decay_monte_carlo(Eigen::Index n, std::int64_t t,
                                         std::size_t realizations, RandomStream& rng);
MonteCarloEstimate rmt_decay_monte_carlo(Eigen::Index n, std::int64_t t,
                                         std::size_t realizations, std::uint64_t seed,
                                         unsigned threads = 0);

}  // namespace phrmt
