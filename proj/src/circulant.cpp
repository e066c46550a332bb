#include "phrmt/circulant.hpp"

#include <algorithm>
#include <limits>

#include "phrmt/parallel.hpp"

namespace phrmt {

std::size_t Spectrum::real_count() const {
  return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), EigenKind::real));
}

Spectrum classify_numerically(const ComplexVector& eigs, double rel_tol) {
  const Eigen::Index n = eigs.size();
  Spectrum spec;
  spec.eigs = eigs;
  spec.kinds.assign(static_cast<std::size_t>(n), EigenKind::conj_pair);
  spec.partner.resize(static_cast<std::size_t>(n));
  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(eigs[i]));
  const double tol = rel_tol * scale;

  std::vector<bool> matched(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    spec.partner[si] = i;
    if (std::abs(eigs[i].imag()) <= tol) {
      spec.kinds[si] = EigenKind::real;
      matched[si] = true;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    if (matched[si]) continue;
    Eigen::Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      if (matched[sj]) continue;
      const double dist = std::abs(eigs[i] - std::conj(eigs[j]));
      if (dist <= tol && dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best >= 0) {
      const auto sb = static_cast<std::size_t>(best);
      spec.partner[si] = best;
      spec.partner[sb] = i;
      matched[si] = matched[sb] = true;
    }
  }
  return spec;
}

RealMatrix generalized_parity(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("generalized_parity: N must be >= 2");
  RealMatrix eta = RealMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) eta(j, (n - j) % n) = 1.0;
  return eta;
}

ComplexMatrix fourier_matrix(Eigen::Index n) {
  ComplexMatrix u(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double angle =
          2.0 * kPi * static_cast<double>((j * l) % n) / static_cast<double>(n);
      u(j, l) = std::polar(norm, angle);
    }
  }
  return u;
}

double pseudo_orthogonality_residual(const Circulant& c) {
  const RealMatrix m = c.dense();
  const RealMatrix eta = generalized_parity(c.size());
  // eta is its own inverse.
  return (eta * m * eta - m.transpose()).cwiseAbs().maxCoeff();
}

Spectrum eigenvalues(const Circulant& c) {
  const Eigen::Index n = c.size();
  Spectrum spec;
  spec.eigs = dft(c.first_row());
  spec.kinds.assign(static_cast<std::size_t>(n), EigenKind::conj_pair);
  spec.partner.resize(static_cast<std::size_t>(n));
  for (Eigen::Index l = 0; l < n; ++l) {
    const Eigen::Index p = (n - l) % n;
    spec.partner[static_cast<std::size_t>(l)] = p;
    if (p == l) {
      spec.kinds[static_cast<std::size_t>(l)] = EigenKind::real;
      spec.eigs[l] = Complex(spec.eigs[l].real(), 0.0);
    } else if (p < l) {
      spec.eigs[l] = std::conj(spec.eigs[p]);
    }
  }
  return spec;
}

double trace_norm(const Circulant& c) {
  return static_cast<double>(c.size()) * c.first_row().squaredNorm();
}

Circulant sample_circulant(Eigen::Index n, double a, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("sample_circulant: N must be >= 2");
  if (!(a > 0.0)) throw std::invalid_argument("sample_circulant: A must be positive");
  const double stddev = 1.0 / std::sqrt(2.0 * static_cast<double>(n) * a);
  RealVector row(n);
  for (Eigen::Index p = 0; p < n; ++p) row[p] = rng.normal(0.0, stddev);
  return Circulant(std::move(row));
}

std::vector<Circulant> sample_ensemble(Eigen::Index n, double a, std::size_t count,
                                       RandomStream& rng) {
  if (count == 0) throw std::invalid_argument("sample_ensemble: count must be >= 1");
  std::vector<Circulant> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_circulant(n, a, rng));
  return out;
}

void SpacingClasses::append(const SpacingClasses& other) {
  cc.values.insert(cc.values.end(), other.cc.values.begin(), other.cc.values.end());
  rc.values.insert(rc.values.end(), other.rc.values.begin(), other.rc.values.end());
  generic.values.insert(generic.values.end(), other.generic.values.begin(),
                        other.generic.values.end());
}

SpacingClasses classify_spacings(const Spectrum& spec, GenericPairing pairing) {
  SpacingClasses out;
  const Eigen::Index n = spec.size();
  std::vector<Eigen::Index> reals;
  std::vector<Eigen::Index> complexes;
  for (Eigen::Index i = 0; i < n; ++i) {
    (spec.kinds[static_cast<std::size_t>(i)] == EigenKind::real ? reals : complexes).push_back(i);
  }
  for (Eigen::Index i : complexes) {
    const Eigen::Index p = spec.partner[static_cast<std::size_t>(i)];
    if (p > i) out.cc.values.push_back(std::abs(spec.eigs[i] - std::conj(spec.eigs[i])));
  }
  for (Eigen::Index r : reals) {
    for (Eigen::Index i : complexes) out.rc.values.push_back(std::abs(spec.eigs[r] - spec.eigs[i]));
  }
  const std::size_t m = complexes.size();
  if (pairing == GenericPairing::all_pairs) {
    out.generic.values.reserve(m * (m - (m > 0 ? 1 : 0)) / 2);
    for (std::size_t x = 0; x < m; ++x) {
      const Eigen::Index i = complexes[x];
      for (std::size_t y = x + 1; y < m; ++y) {
        const Eigen::Index j = complexes[y];
        if (spec.partner[static_cast<std::size_t>(i)] == j) continue;
        out.generic.values.push_back(std::abs(spec.eigs[i] - spec.eigs[j]));
      }
    }
  } else {
    for (std::size_t x = 0; x < m; ++x) {
      const Eigen::Index i = complexes[x];
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t y = 0; y < m; ++y) {
        const Eigen::Index j = complexes[y];
        if (j == i || spec.partner[static_cast<std::size_t>(i)] == j) continue;
        nearest = std::min(nearest, std::abs(spec.eigs[i] - spec.eigs[j]));
      }
      if (std::isfinite(nearest)) out.generic.values.push_back(nearest);
    }
  }
  return out;
}

double pdf_cc(double z) {
  if (z < 0.0) return 0.0;
  return 2.0 / kPi * std::exp(-z * z / kPi);
}

double cdf_cc(double z) {
  if (z <= 0.0) return 0.0;
  return erf(z / std::sqrt(kPi));
}

double rc_constant() {
  static const double c = hyp2f1_series(0.75, 1.25, 1.0, 0.25);
  return c;
}

double pdf_rc(double z) {
  if (!(z > 0.0)) return 0.0;
  const double c = rc_constant();
  const double kappa = 3.0 * kPi * c * c / 16.0;
  const double u = kappa * z * z;
  // exp(-u) I0(u/2) = exp(-u/2) * [exp(-u/2) I0(u/2)]
  return std::sqrt(3.0) * kappa * z * std::exp(-0.5 * u) * bessel_i0_scaled(0.5 * u);
}

double cdf_rc(double z) {
  // pdf_rc decays like exp(-0.5 z^2); the tail past z = 12 is below 1e-30.
  static const TabulatedCdf table(pdf_rc, 12.0);
  return table(z);
}

double pdf_generic(double s) {
  if (s < 0.0) return 0.0;
  return 0.5 * kPi * s * std::exp(-0.25 * kPi * s * s);
}

double cdf_generic(double s) {
  if (s <= 0.0) return 0.0;
  return -std::expm1(-0.25 * kPi * s * s);
}

double jpdf_log(const Spectrum& spec, double a) {
  const Eigen::Index n = spec.size();
  if (n < 2) throw std::domain_error("jpdf_log: spectrum too small");
  Complex sum{0.0, 0.0};
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sum += spec.eigs[i] * spec.eigs[(n - i) % n];
    scale += std::norm(spec.eigs[i]);
  }
  if (std::abs(sum.imag()) > 1e-9 * (scale + 1.0)) {
    throw std::domain_error("jpdf_log: spectrum is not conjugate-paired (complex exponent)");
  }
  return -a * sum.real();
}

SpacingClasses cyclic_spacing_ensemble(Eigen::Index n, double a, std::size_t count,
                                       std::uint64_t seed, unsigned threads,
                                       GenericPairing pairing) {
  if (count == 0) throw std::invalid_argument("cyclic_spacing_ensemble: count must be >= 1");
  const std::size_t chunks = chunk_count(count);
  std::vector<SpacingClasses> parts(chunks);
  parallel_for_chunks(chunks, threads, [&](std::size_t chunk) {
    RandomStream rng(seed, chunk);
    const std::size_t begin = chunk * kRealizationsPerChunk;
    const std::size_t todo = std::min(kRealizationsPerChunk, count - begin);
    for (std::size_t i = 0; i < todo; ++i) {
      parts[chunk].append(classify_spacings(eigenvalues(sample_circulant(n, a, rng)), pairing));
    }
  });
  SpacingClasses out;
  for (const auto& part : parts) out.append(part);
  return out;
}

}  // namespace phrmt
