#include "phrmt/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace phrmt {
namespace {

constexpr double kEps = 1e-17;

// sum_k (x^2/4)^k / (k!)^2, all terms positive.
double i0_power_series(double x) {
  const double t = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= t / (static_cast<double>(k) * k);
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum;
}

// sqrt(2 pi x) e^{-x} I0(x) for large x, summed until the terms start to grow.
double i0_asymptotic_factor(double x) {
  const double inv8x = 1.0 / (8.0 * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) * inv8x / k;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum;
}

constexpr double kI0SeriesLimit = 50.0;
constexpr double kK0SeriesLimit = 2.0;

double k0_series(double x) {
  const double t = 0.25 * x * x;
  double term = 1.0;
  double harmonic = 0.0;
  double i0 = 1.0;
  double tail = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= t / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail += term * harmonic;
    if (term * harmonic < kEps * tail) break;
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0 + tail;
}

// Steed's continued fraction (Temme's CF2) for K_0, valid for x >= 2.
double k0_continued_fraction(double x) {
  constexpr double a1 = 0.25;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double delh = d;
  double h = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
}

}  // namespace

double bessel_k0(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("bessel_k0: argument must be positive, got " +
                            std::to_string(x));
  }
  if (std::isinf(x)) return 0.0;
  return x <= kK0SeriesLimit ? k0_series(x) : k0_continued_fraction(x);
}

double bessel_i0(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_i0: argument must be nonnegative, got " +
                            std::to_string(x));
  }
  if (x <= kI0SeriesLimit) return i0_power_series(x);
  return std::exp(x) / std::sqrt(2.0 * kPi * x) * i0_asymptotic_factor(x);
}

double bessel_i0_scaled(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_i0_scaled: argument must be nonnegative");
  }
  if (x <= kI0SeriesLimit) return std::exp(-x) * i0_power_series(x);
  if (std::isinf(x)) return 0.0;
  return i0_asymptotic_factor(x) / std::sqrt(2.0 * kPi * x);
}

double erf(double x) { return std::erf(x); }

double lower_incomplete_gamma_scaled(double a, double z) {
  if (!(a > 0.0)) {
    throw std::domain_error("lower_incomplete_gamma: a must be positive");
  }
  if (!(z >= 0.0)) {
    throw std::domain_error("lower_incomplete_gamma: z must be nonnegative");
  }
  // term_k = z^k Gamma(a) / Gamma(a + k + 1) = z^k / (a (a+1) ... (a+k))
  double term = 1.0 / a;
  double sum = term;
  const long max_terms = 1000 + static_cast<long>(10.0 * z);
  for (long k = 1; k < max_terms; ++k) {
    term *= z / (a + static_cast<double>(k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double lower_incomplete_gamma(double a, double z) {
  const double sum = lower_incomplete_gamma_scaled(a, z);
  if (z == 0.0) return 0.0;
  return std::exp(a * std::log(z) - z) * sum;
}

double hyp2f1_series(double a, double b, double c, double z) {
  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error("hyp2f1_series: requires |z| < 1");
  }
  if (c <= 0.0 && c == std::floor(c)) {
    throw std::domain_error("hyp2f1_series: c must not be a nonpositive integer");
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-15 * std::abs(sum)) break;
  }
  return sum;
}

ComplexVector dft_direct(const ComplexVector& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw std::domain_error("dft: empty vector");
  std::vector<Complex> twiddle(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
  }
  ComplexVector out(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    Complex acc{0.0, 0.0};
    for (Eigen::Index p = 0; p < n; ++p) {
      acc += v[p] * twiddle[static_cast<std::size_t>((p * l) % n)];
    }
    out[l] = acc;
  }
  return out;
}

ComplexVector dft_fast(const ComplexVector& v) {
  if (v.size() == 0) throw std::domain_error("dft: empty vector");
  if (v.size() == 1) return v;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  ComplexVector out(v.size());
  // Eigen's inverse transform carries the exp(+2 pi i p l / N) kernel.
  fft.inv(out, v);
  return out;
}

ComplexVector dft(const ComplexVector& v) {
  if (v.size() == 0) throw std::domain_error("dft: empty vector");
  return static_cast<std::size_t>(v.size()) <= kDirectDftMaxSize ? dft_direct(v)
                                                                  : dft_fast(v);
}

ComplexVector dft_adjoint(const ComplexVector& v) {
  return dft(ComplexVector(v.conjugate())).conjugate();
}

}  // namespace phrmt
