#pragma once

// The five 2x2 pseudo-Hermitian families, their metrics, samplers drawn from
// the Wishart-form weight exp(-Tr H^dagger H / 2 sigma^2), and the exact
// spacing law of the antidiagonal-imaginary family F1.
//
// Free real parameters and the variance each one receives from the weight:
//
//   F1 [[a, -ib], [ic, a]]              Tr H^dH = 2a^2 + b^2 + c^2
//        a: sigma^2/2, b, c: sigma^2
//   F2 [[a+c, ib], [ib, a-c]]           Tr H^dH = 2a^2 + 2b^2 + 2c^2
//        a, b, c: sigma^2/2
//   F3 [[a, -i eps c], [ic/eps, b]]     Tr H^dH = a^2 + b^2 + (eps^2 + eps^-2) c^2
//        a, b: sigma^2, c: sigma^2 / (eps^2 + eps^-2)
//   F4 [[a+ib, c], [d, a-ib]]           Tr H^dH = 2a^2 + 2b^2 + c^2 + d^2
//        a, b: sigma^2/2, c, d: sigma^2
//   F5 [[a+b, d+ic], [-d+ic, a-b]]      Tr H^dH = 2a^2 + 2b^2 + 2c^2 + 2d^2
//        a, b, c, d: sigma^2/2

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "phrmt/random.hpp"
#include "phrmt/stats.hpp"
#include "phrmt/types.hpp"

namespace phrmt {

enum class Family2x2Tag {
  F1_antidiag_imag,
  F2_diag_parity,
  F3_epsilon_scaled,
  F4_complex_diag,
  F5_indefinite,
};

std::string_view to_string(Family2x2Tag tag);
/// Accepts "F1".."F5" or the full tag names. Returns nullopt otherwise.
std::optional<Family2x2Tag> parse_family(std::string_view name);

struct Family2x2 {
  Family2x2Tag tag = Family2x2Tag::F1_antidiag_imag;
  double epsilon = 1.0;  // F3 only; must be positive
};

/// Real parameters of one family member. Unused fields stay zero.
struct FamilyParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

struct MetricPair {
  Matrix2 eta;
  std::optional<Matrix2> zeta;  // metric of the diagonalizer, absent where unknown
};

/// The family's matrix form filled with the given parameters.
Matrix2 family_matrix(const Family2x2& family, const FamilyParams& params);

/// Standard deviation of each of (a, b, c, d) under the Wishart weight.
std::array<double, 4> family_parameter_stddevs(const Family2x2& family, double sigma);

FamilyParams sample_family_params(const Family2x2& family, double sigma, RandomStream& rng);
Matrix2 sample_family(const Family2x2& family, double sigma, RandomStream& rng);

/// (E+, E-) = Tr/2 +- sqrt((Tr)^2 - 4 Det)/2 on the principal branch.
std::pair<Complex, Complex> eigenvalues2(const Matrix2& m);

MetricPair metric_of(const Family2x2& family);

/// Diagonalizer matrix forms as tabulated for each family, parameterised by
/// r (F1, F4), theta (F2-F5) and epsilon (F3). F1 with r = sqrt(c/b)
/// diagonalizes the F1 matrix when bc > 0.
Matrix2 diagonalizer_form(const Family2x2& family, double r, double theta);

/// max |eta m eta^-1 - m^dagger|. Throws std::domain_error for singular eta.
double pseudo_hermiticity_residual(const Matrix2& m, const Matrix2& eta);

/// P(S) = S / (pi sigma^2) K0(S^2 / 4 sigma^2); P(0) = 0.
double spacing_pdf_f1(double s, double sigma);
double spacing_cdf_f1(double s, double sigma);

/// Spacings of `count` F1 draws, split by sector: bc >= 0 gives real
/// eigenvalues (|E+ - E-|), bc < 0 a conjugate pair (2 |Im E|).
struct F1Spacings {
  SpacingSample real_sector{SpacingClass::real_sector, {}, false};
  SpacingSample cc_sector{SpacingClass::cc, {}, false};
};

F1Spacings spacing_samples_f1(std::size_t count, double sigma, RandomStream& rng);
/// Chunked parallel version; depends only on (count, sigma, seed).
F1Spacings spacing_samples_f1(std::size_t count, double sigma, std::uint64_t seed,
                              unsigned threads = 0);

/// Samples `count` members of any family and returns |E+ - E-| of each,
/// whatever the sector.
SpacingSample spacing_samples_family(const Family2x2& family, std::size_t count, double sigma,
                                     std::uint64_t seed, unsigned threads = 0);

}  // namespace phrmt
