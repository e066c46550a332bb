#pragma once

// Special functions and the discrete Fourier transform used by the spectral
// laws. All functions are pure and thread-safe.

#include <cstddef>

#include "phrmt/types.hpp"

namespace phrmt {

/// Modified Bessel function of the second kind, order 0. Throws
/// std::domain_error for x <= 0.
double bessel_k0(double x);

/// Modified Bessel function of the first kind, order 0. Throws
/// std::domain_error for x < 0.
double bessel_i0(double x);

/// exp(-x) * I0(x), finite for all x >= 0.
double bessel_i0_scaled(double x);

double erf(double x);

/// Lower incomplete gamma function
///   gamma(a, z) = z^a e^{-z} sum_k z^k Gamma(a) / Gamma(a + k + 1),
/// summed until a term drops below 1e-16 of the partial sum.
double lower_incomplete_gamma(double a, double z);

/// gamma(a, z) z^{-a} e^{z}, finite where z^a underflows.
double lower_incomplete_gamma_scaled(double a, double z);

/// Gauss hypergeometric series 2F1(a, b; c; z) for |z| < 1.
double hyp2f1_series(double a, double b, double c, double z);

/// out_l = sum_p v_p exp(2 pi i p l / N), zero-based, no normalisation. This
/// is the circulant eigenvalue convention: the transform of a first row gives
/// the eigenvalues directly. Dispatches to dft_direct for N <= 64 and to
/// dft_fast above.
ComplexVector dft(const ComplexVector& v);

/// Same sum with exp(-2 pi i p l / N), i.e. conj(dft(conj(v))).
ComplexVector dft_adjoint(const ComplexVector& v);

ComplexVector dft_direct(const ComplexVector& v);
ComplexVector dft_fast(const ComplexVector& v);

inline constexpr std::size_t kDirectDftMaxSize = 64;

template <typename Derived>
ComplexVector dft(const Eigen::MatrixBase<Derived>& v) {
  return dft(ComplexVector(v.template cast<Complex>()));
}

}  // namespace phrmt
