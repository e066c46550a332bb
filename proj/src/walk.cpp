#include "phrmt/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "phrmt/parallel.hpp"
#include "phrmt/specfun.hpp"
#include "phrmt/stats.hpp"

namespace phrmt {
namespace {

Complex ipow(Complex base, std::int64_t exponent) {
  Complex result{1.0, 0.0};
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

void require_sites(Eigen::Index sites) {
  if (sites < 2) throw std::invalid_argument("walk needs at least 2 sites");
}

}  // namespace

WalkConfig::WalkConfig(RealVector row) : row_(std::move(row)) {
  require_sites(row_.size());
  for (Eigen::Index k = 0; k < row_.size(); ++k) {
    if (!std::isfinite(row_[k]) || row_[k] < 0.0) {
      std::ostringstream msg;
      msg << "hop row entry a_" << (k + 1) << " = " << row_[k]
          << " violates 0 <= a_k (entries must be finite probabilities)";
      throw std::invalid_argument(msg.str());
    }
  }
  const double total = pairwise_sum({row_.data(), static_cast<std::size_t>(row_.size())});
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "hop row sums to " << total << ", violating sum a_k = 1 +- 1e-12";
    throw std::invalid_argument(msg.str());
  }
}

WalkConfig WalkConfig::biased(Eigen::Index sites, double w, double p) {
  require_sites(sites);
  if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("jump probability w must lie in [0, 1]");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bias p must lie in [0, 1]");
  RealVector row = RealVector::Zero(sites);
  row[0] = 1.0 - w;
  row[1] += p * w;
  row[sites - 1] += (1.0 - p) * w;
  return WalkConfig(std::move(row));
}

WalkConfig WalkConfig::general(RealVector hop_row) { return WalkConfig(std::move(hop_row)); }

WalkState delta_state(Eigen::Index sites, Eigen::Index site) {
  require_sites(sites);
  if (site < 0 || site >= sites) throw std::out_of_range("delta_state: site out of range");
  WalkState s;
  s.probs = RealVector::Zero(sites);
  s.probs[site] = 1.0;
  return s;
}

WalkState uniform_state(Eigen::Index sites) {
  require_sites(sites);
  WalkState s;
  s.probs = RealVector::Constant(sites, 1.0 / static_cast<double>(sites));
  return s;
}

Circulant transition_matrix(const WalkConfig& cfg) { return Circulant(cfg.hop_row()); }

WalkState evolve_spectral(const WalkConfig& cfg, const WalkState& p0, std::int64_t steps) {
  const Eigen::Index n = cfg.sites();
  if (p0.probs.size() != n) throw std::invalid_argument("evolve_spectral: state size mismatch");
  if (steps < 0) throw std::invalid_argument("evolve_spectral: steps must be >= 0");
  WalkState out;
  out.t = p0.t + steps;
  if (steps == 0) {
    out.probs = p0.probs;
    return out;
  }
  const ComplexVector lambda = eigenvalues(transition_matrix(cfg)).eigs;
  // Coefficients in the unitary eigenbasis carry 1/sqrt(N); reconstruction
  // carries another.
  ComplexVector modes = dft_adjoint(ComplexVector(p0.probs.cast<Complex>()));
  for (Eigen::Index l = 0; l < n; ++l) modes[l] *= ipow(lambda[l], steps);
  const ComplexVector p = dft(modes) / static_cast<double>(n);
  out.probs = p.real().cwiseMax(0.0);
  return out;
}

double entropy(const WalkState& state) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < state.probs.size(); ++i) {
    const double p = state.probs[i];
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double second_eigenvalue_modulus(const WalkConfig& cfg) {
  const ComplexVector lambda = eigenvalues(transition_matrix(cfg)).eigs;
  double m = 0.0;
  for (Eigen::Index l = 1; l < lambda.size(); ++l) m = std::max(m, std::abs(lambda[l]));
  return m;
}

std::optional<std::int64_t> mixing_time(const WalkConfig& cfg, double tolerance) {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw std::invalid_argument("mixing_time: tolerance must lie in (0, 1)");
  }
  const double second = second_eigenvalue_modulus(cfg);
  if (second >= 1.0 - 1e-14) return std::nullopt;
  if (second == 0.0) return 1;
  return static_cast<std::int64_t>(std::ceil(std::log(tolerance) / std::log(second)));
}

double occupation_deviation(const ComplexVector& spectrum, const RealVector& p0, Eigen::Index j,
                            std::int64_t t) {
  const Eigen::Index n = spectrum.size();
  if (p0.size() != n) throw std::invalid_argument("occupation_deviation: size mismatch");
  if (j < 0 || j >= n) throw std::out_of_range("occupation_deviation: site out of range");
  std::vector<Complex> powers(static_cast<std::size_t>(n));
  for (Eigen::Index l = 1; l < n; ++l) powers[static_cast<std::size_t>(l)] = ipow(spectrum[l], t);
  Complex total{0.0, 0.0};
  for (Eigen::Index site = 0; site < n; ++site) {
    if (p0[site] == 0.0) continue;
    Complex inner{0.0, 0.0};
    for (Eigen::Index l = 1; l < n; ++l) {
      const Eigen::Index phase = (((j - site) * l) % n + n) % n;
      const double angle = 2.0 * kPi * static_cast<double>(phase) / static_cast<double>(n);
      inner += powers[static_cast<std::size_t>(l)] * std::polar(1.0, angle);
    }
    total += p0[site] * inner;
  }
  return total.real() / static_cast<double>(n);
}

double rmt_decay_normalization() {
  static const double value = 1.0 / (erf(0.5 * std::sqrt(kPi)) - std::exp(-0.25 * kPi));
  return value;
}

double rmt_decay_closed_form(std::int64_t t, Eigen::Index n) {
  if (t < 0) throw std::invalid_argument("rmt_decay_closed_form: t must be >= 0");
  if (n < 2) throw std::invalid_argument("rmt_decay_closed_form: N must be >= 2");
  // (2/sqrt(pi))^{1+t} (pi/4)^{(3+t)/2} = pi/4, leaving the scaled series
  const double a = 0.5 * (3.0 + static_cast<double>(t));
  const double z = 0.25 * kPi;
  return rmt_decay_normalization() * z * std::exp(-z) * lower_incomplete_gamma_scaled(a, z);
}

double rmt_decay_average(std::int64_t t, Eigen::Index n) {
  return rmt_decay_closed_form(t, n) / static_cast<double>(n);
}

double rmt_decay_asymptotic(std::int64_t t) {
  if (t < 0) throw std::invalid_argument("rmt_decay_asymptotic: t must be >= 0");
  static const double prefactor = 0.25 * kPi * std::exp(-0.25 * kPi) * rmt_decay_normalization();
  const double u = static_cast<double>(t) + 3.0;
  return prefactor * (2.0 / u + kPi / (u * (u + 2.0)));
}

double sample_eigenvalue_modulus(RandomStream& rng) {
  // Proposal density 3 r^2 on [0, 1], accepted with probability exp(-pi r^2 / 4).
  for (;;) {
    const double r = std::cbrt(rng.uniform());
    if (rng.uniform() < std::exp(-0.25 * kPi * r * r)) return r;
  }
}

namespace {

std::vector<double> decay_samples(Eigen::Index n, std::int64_t t, std::size_t realizations,
                                  RandomStream& rng) {
  std::vector<double> values(realizations);
  std::vector<double> modes(static_cast<std::size_t>(n - 1));
  for (auto& v : values) {
    for (auto& m : modes) m = std::pow(sample_eigenvalue_modulus(rng), static_cast<double>(t));
    v = pairwise_sum(modes) / static_cast<double>(n - 1);
  }
  return values;
}

MonteCarloEstimate summarize(const std::vector<double>& values) {
  MonteCarloEstimate est;
  est.realizations = values.size();
  est.mean = mean(values);
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - est.mean;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
    est.standard_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

void check_mc_args(Eigen::Index n, std::int64_t t, std::size_t realizations) {
  if (n < 3) throw std::invalid_argument("rmt_decay_monte_carlo: N must be >= 3");
  if (t < 0) throw std::invalid_argument("rmt_decay_monte_carlo: t must be >= 0");
  if (realizations == 0) throw std::invalid_argument("rmt_decay_monte_carlo: need realizations");
}

}  // namespace

MonteCarloEstimate rmt_decay_monte_carlo(Eigen::Index n, std::int64_t t,
                                         std::size_t realizations, RandomStream& rng) {
  check_mc_args(n, t, realizations);
  return summarize(decay_samples(n, t, realizations, rng));
}

MonteCarloEstimate rmt_decay_monte_carlo(Eigen::Index n, std::int64_t t,
                                         std::size_t realizations, std::uint64_t seed,
                                         unsigned threads) {
  check_mc_args(n, t, realizations);
  const std::size_t chunks = chunk_count(realizations);
  std::vector<std::vector<double>> parts(chunks);
  parallel_for_chunks(chunks, threads, [&](std::size_t chunk) {
    RandomStream rng(seed, chunk);
    const std::size_t begin = chunk * kRealizationsPerChunk;
    parts[chunk] = decay_samples(n, t, std::min(kRealizationsPerChunk, realizations - begin), rng);
  });
  std::vector<double> all;
  all.reserve(realizations);
  for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  return summarize(all);
}

}  // namespace phrmt
