#pragma once

// Reference implementations for the test suites. Nothing here calls into the
// library: quadratures, series and dense solvers are written independently,
// mostly in long double.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using LD = long double;
constexpr LD kPiL = 3.141592653589793238462643383279502884L;

/// Tanh-sinh quadrature on [a, b]. The integrand is never evaluated at an
/// endpoint, so integrable endpoint singularities are fine.
inline LD tanh_sinh(const std::function<LD(LD)>& f, LD a, LD b, LD rel_tol = 1e-17L) {
  const LD half = 0.5L * (b - a);
  auto sum_level = [&](LD h, bool odd_only) {
    LD s = 0.0L;
    for (int k = odd_only ? 1 : 0;; k += odd_only ? 2 : 1) {
      const LD tau = k * h;
      const LD u = 0.5L * kPiL * std::sinh(tau);
      const LD e = std::exp(-2.0L * std::fabs(u));
      const LD gap = 2.0L * e / (1.0L + e);  // 1 - tanh|u|
      const LD cosh_u = std::cosh(u);
      const LD w = 0.5L * kPiL * std::cosh(tau) / (cosh_u * cosh_u);
      if (gap * half <= 0.0L || w < 1e-40L) break;
      const LD right = f(b - half * gap);
      if (k == 0) {
        s += w * f(a + half);
      } else {
        s += w * (right + f(a + half * gap));
      }
    }
    return s;
  };
  LD h = 0.5L;
  LD sum = sum_level(h, false);
  LD estimate = half * h * sum;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5L;
    sum += sum_level(h, true);
    const LD next = half * h * sum;
    if (level > 2 && std::fabs(next - estimate) <= rel_tol * std::fabs(next)) return next;
    estimate = next;
  }
  return estimate;
}

/// Exp-sinh quadrature on [0, inf): x = exp(pi/2 sinh tau).
inline LD exp_sinh(const std::function<LD(LD)>& f, LD rel_tol = 1e-17L) {
  auto level_sum = [&](LD h, bool odd_only) {
    LD s = 0.0L;
    const int kmax = static_cast<int>(6.0L / h);
    for (int k = -kmax; k <= kmax; ++k) {
      if (odd_only && (k % 2 == 0)) continue;
      const LD tau = k * h;
      const LD x = std::exp(0.5L * kPiL * std::sinh(tau));
      if (!std::isfinite(static_cast<double>(x)) || x == 0.0L) continue;
      const LD v = f(x) * x * 0.5L * kPiL * std::cosh(tau);
      if (std::isfinite(static_cast<double>(v))) s += v;
    }
    return s;
  };
  LD h = 0.25L;
  LD sum = level_sum(h, false);
  LD estimate = h * sum;
  for (int level = 0; level < 8; ++level) {
    h *= 0.5L;
    sum += level_sum(h, true);
    const LD next = h * sum;
    if (level > 1 && std::fabs(next - estimate) <= rel_tol * std::fabs(next)) return next;
    estimate = next;
  }
  return estimate;
}

/// K0(x) = int_0^inf exp(-x cosh t) dt by the trapezoid rule, which converges
/// geometrically for this even, entire integrand.
inline double bessel_k0(double x) {
  if (!(x > 0.0)) return INFINITY;
  const LD xl = x;
  const LD h = 1.0L / 64.0L;
  LD s = 0.5L * std::exp(-xl);
  for (int k = 1;; ++k) {
    const LD term = std::exp(-xl * std::cosh(k * h));
    s += term;
    if (term <= 1e-30L * s) break;
  }
  return static_cast<double>(h * s);
}

/// I0(x) = sum (x/2)^{2k} / (k!)^2.
inline double bessel_i0(double x) {
  const LD q = 0.25L * static_cast<LD>(x) * x;
  LD term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<LD>(k) * k);
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return static_cast<double>(sum);
}

/// erf by its Maclaurin series (2/sqrt(pi)) sum (-1)^k x^{2k+1} / (k! (2k+1)).
/// Cancellation limits it to |x| <~ 2.5.
inline double erf_series(double x) {
  const LD xl = x;
  LD power = xl, sum = xl;
  for (int k = 1; k < 400; ++k) {
    power *= -xl * xl / k;
    const LD term = power / (2 * k + 1);
    sum += term;
    if (std::fabs(term) < 1e-24L * std::fabs(sum)) break;
  }
  return static_cast<double>(2.0L / std::sqrt(kPiL) * sum);
}

/// erf by quadrature of (2/sqrt(pi)) exp(-t^2) on [0, x].
inline double erf_quadrature(double x) {
  if (x == 0.0) return 0.0;
  const LD v = tanh_sinh([](LD t) { return std::exp(-t * t); }, 0.0L, std::fabs(static_cast<LD>(x)));
  return static_cast<double>((x < 0 ? -1.0L : 1.0L) * 2.0L / std::sqrt(kPiL) * v);
}

/// gamma(a, z) = int_0^z t^{a-1} e^{-t} dt, after t = z s^{1/a}:
/// (z^a / a) int_0^1 exp(-z s^{1/a}) ds.
inline double lower_gamma(double a, double z) {
  if (z == 0.0) return 0.0;
  const LD al = a, zl = z;
  const LD v = tanh_sinh([&](LD s) { return std::exp(-zl * std::pow(s, 1.0L / al)); }, 0.0L, 1.0L);
  return static_cast<double>(std::pow(zl, al) / al * v);
}

/// Gamma(a, z) = int_z^inf t^{a-1} e^{-t} dt.
inline double upper_gamma(double a, double z) {
  const LD al = a, zl = z;
  return static_cast<double>(
      exp_sinh([&](LD u) { return std::pow(zl + u, al - 1.0L) * std::exp(-(zl + u)); }));
}

/// 2F1(a, b; c; z) by the first `terms` terms of its series in exact rational
/// arithmetic; arguments are given as num/den pairs.
inline double hyp2f1_rational(long an, long ad, long bn, long bd, long cn, long cd, long zn,
                              long zd, int terms = 50) {
  using boost::multiprecision::cpp_rational;
  const cpp_rational a(an, ad), b(bn, bd), c(cn, cd), z(zn, zd);
  cpp_rational term = 1, sum = 1;
  for (int k = 0; k < terms - 1; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
  }
  return static_cast<double>(sum);
}

/// out_l = sum_p v_p exp(2 pi i p l / N), one term at a time, phases reduced
/// modulo N.
inline Eigen::VectorXcd dft(const Eigen::VectorXcd& v) {
  const long n = v.size();
  Eigen::VectorXcd out(n);
  for (long l = 0; l < n; ++l) {
    std::complex<LD> acc{0.0L, 0.0L};
    for (long p = 0; p < n; ++p) {
      const LD angle = 2.0L * kPiL * static_cast<LD>((p * l) % n) / n;
      acc += std::complex<LD>(v[p].real(), v[p].imag()) *
             std::complex<LD>(std::cos(angle), std::sin(angle));
    }
    out[l] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

/// Eigenvalues of a dense complex matrix from the QR-based complex solver.
inline std::vector<std::complex<double>> dense_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<std::complex<double>> e(solver.eigenvalues().data(),
                                      solver.eigenvalues().data() + m.rows());
  return e;
}

/// Max distance between two spectra matched greedily as multisets.
inline double multiset_distance(std::vector<std::complex<double>> a,
                                std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = 0;
    double d = INFINITY;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (std::abs(x - b[j]) < d) {
        d = std::abs(x - b[j]);
        best = j;
      }
    }
    worst = std::max(worst, d);
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

/// Dense transition-matrix power applied to p0: M_ij = row[(j - i) mod N].
inline Eigen::VectorXd walk_by_matrix_power(const Eigen::VectorXd& row, const Eigen::VectorXd& p0,
                                            int steps) {
  const long n = row.size();
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = row[((j - i) % n + n) % n];
  Eigen::VectorXd p = p0;
  for (int t = 0; t < steps; ++t) p = m * p;
  return p;
}

/// E[r^t] for r with density proportional to r^2 exp(-pi r^2 / 4) on [0, 1].
inline double decay_moment(int t) {
  auto weight = [](LD r) { return r * r * std::exp(-0.25L * kPiL * r * r); };
  const LD norm = tanh_sinh(weight, 0.0L, 1.0L);
  const LD num = tanh_sinh([&](LD r) { return std::pow(r, static_cast<LD>(t)) * weight(r); },
                           0.0L, 1.0L);
  return static_cast<double>(num / norm);
}

/// log-spaced grid of n points on [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

}  // namespace oracle
