#include "phrmt/pseudo2x2.hpp"

#include <cmath>
#include <stdexcept>

#include "phrmt/parallel.hpp"
#include "phrmt/specfun.hpp"

namespace phrmt {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_family(const Family2x2& family) {
  if (family.tag == Family2x2Tag::F3_epsilon_scaled && !(family.epsilon > 0.0)) {
    throw std::invalid_argument("F3 requires epsilon > 0");
  }
}

Matrix2 make(Complex m11, Complex m12, Complex m21, Complex m22) {
  Matrix2 m;
  m << m11, m12, m21, m22;
  return m;
}

}  // namespace

std::string_view to_string(Family2x2Tag tag) {
  switch (tag) {
    case Family2x2Tag::F1_antidiag_imag: return "F1";
    case Family2x2Tag::F2_diag_parity: return "F2";
    case Family2x2Tag::F3_epsilon_scaled: return "F3";
    case Family2x2Tag::F4_complex_diag: return "F4";
    case Family2x2Tag::F5_indefinite: return "F5";
  }
  return "unknown";
}

std::optional<Family2x2Tag> parse_family(std::string_view name) {
  if (name == "F1" || name == "F1_antidiag_imag") return Family2x2Tag::F1_antidiag_imag;
  if (name == "F2" || name == "F2_diag_parity") return Family2x2Tag::F2_diag_parity;
  if (name == "F3" || name == "F3_epsilon_scaled") return Family2x2Tag::F3_epsilon_scaled;
  if (name == "F4" || name == "F4_complex_diag") return Family2x2Tag::F4_complex_diag;
  if (name == "F5" || name == "F5_indefinite") return Family2x2Tag::F5_indefinite;
  return std::nullopt;
}

Matrix2 family_matrix(const Family2x2& family, const FamilyParams& p) {
  check_family(family);
  switch (family.tag) {
    case Family2x2Tag::F1_antidiag_imag:
      return make(p.a, -kI * p.b, kI * p.c, p.a);
    case Family2x2Tag::F2_diag_parity:
      return make(p.a + p.c, kI * p.b, kI * p.b, p.a - p.c);
    case Family2x2Tag::F3_epsilon_scaled:
      return make(p.a, -kI * family.epsilon * p.c, kI * p.c / family.epsilon, p.b);
    case Family2x2Tag::F4_complex_diag:
      return make(Complex(p.a, p.b), p.c, p.d, Complex(p.a, -p.b));
    case Family2x2Tag::F5_indefinite:
      return make(p.a + p.b, Complex(p.d, p.c), Complex(-p.d, p.c), p.a - p.b);
  }
  throw std::invalid_argument("unknown family");
}

std::array<double, 4> family_parameter_stddevs(const Family2x2& family, double sigma) {
  check_family(family);
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double full = sigma;
  const double half = sigma / std::sqrt(2.0);
  switch (family.tag) {
    case Family2x2Tag::F1_antidiag_imag: return {half, full, full, 0.0};
    case Family2x2Tag::F2_diag_parity: return {half, half, half, 0.0};
    case Family2x2Tag::F3_epsilon_scaled: {
      const double e2 = family.epsilon * family.epsilon;
      return {full, full, sigma / std::sqrt(e2 + 1.0 / e2), 0.0};
    }
    case Family2x2Tag::F4_complex_diag: return {half, half, full, full};
    case Family2x2Tag::F5_indefinite: return {half, half, half, half};
  }
  throw std::invalid_argument("unknown family");
}

FamilyParams sample_family_params(const Family2x2& family, double sigma, RandomStream& rng) {
  const auto sd = family_parameter_stddevs(family, sigma);
  FamilyParams p;
  p.a = rng.normal(0.0, sd[0]);
  p.b = rng.normal(0.0, sd[1]);
  p.c = rng.normal(0.0, sd[2]);
  if (sd[3] > 0.0) p.d = rng.normal(0.0, sd[3]);
  return p;
}

Matrix2 sample_family(const Family2x2& family, double sigma, RandomStream& rng) {
  return family_matrix(family, sample_family_params(family, sigma, rng));
}

std::pair<Complex, Complex> eigenvalues2(const Matrix2& m) {
  const Complex half_trace = 0.5 * m.trace();
  const Complex det = m.determinant();
  const Complex root = std::sqrt(half_trace * half_trace - det);
  if (root == Complex(0.0, 0.0)) return {half_trace, half_trace};
  // Form the larger-magnitude root directly and recover the other from the
  // determinant, which avoids cancellation.
  const Complex plus = half_trace + root;
  const Complex minus = half_trace - root;
  if (std::abs(plus) >= std::abs(minus)) {
    return {plus, plus == Complex(0.0, 0.0) ? minus : det / plus};
  }
  return {det / minus, minus};
}

MetricPair metric_of(const Family2x2& family) {
  check_family(family);
  const Matrix2 pauli_x = make(0.0, 1.0, 1.0, 0.0);
  const Matrix2 parity = make(1.0, 0.0, 0.0, -1.0);
  switch (family.tag) {
    case Family2x2Tag::F1_antidiag_imag:
      return {make(0.0, kI, -kI, 0.0), pauli_x};
    case Family2x2Tag::F2_diag_parity:
      return {parity, std::nullopt};
    case Family2x2Tag::F3_epsilon_scaled: {
      const Matrix2 scaled = make(1.0 / family.epsilon, 0.0, 0.0, family.epsilon);
      return {scaled, scaled};
    }
    case Family2x2Tag::F4_complex_diag:
      return {pauli_x, std::nullopt};
    case Family2x2Tag::F5_indefinite:
      return {parity, parity};
  }
  throw std::invalid_argument("unknown family");
}

Matrix2 diagonalizer_form(const Family2x2& family, double r, double theta) {
  check_family(family);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  switch (family.tag) {
    case Family2x2Tag::F1_antidiag_imag:
      return make(1.0, kI / r, kI * r, 1.0) / std::sqrt(2.0);
    case Family2x2Tag::F2_diag_parity:
      return make(c, kI * s, -kI * s, c) / std::sqrt(std::cos(2.0 * theta));
    case Family2x2Tag::F3_epsilon_scaled:
      return make(c, kI * family.epsilon * s, -kI * s / family.epsilon, c);
    case Family2x2Tag::F4_complex_diag: {
      const Complex top = r * std::polar(1.0, theta) / s;
      return make(top, -top, 1.0, 1.0);
    }
    case Family2x2Tag::F5_indefinite:
      return make(kI * c, std::polar(1.0, theta) * s, std::polar(1.0, -theta) * s, -kI * c);
  }
  throw std::invalid_argument("unknown family");
}

double pseudo_hermiticity_residual(const Matrix2& m, const Matrix2& eta) {
  const Complex det = eta.determinant();
  if (std::abs(det) <= 1e-300) throw std::domain_error("pseudo_hermiticity_residual: singular metric");
  const Matrix2 diff = eta * m * eta.inverse() - m.adjoint();
  return diff.cwiseAbs().maxCoeff();
}

double spacing_pdf_f1(double s, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(s > 0.0)) return 0.0;
  const double u = s * s / (4.0 * sigma * sigma);
  if (u == 0.0) return 0.0;
  return s / (kPi * sigma * sigma) * bessel_k0(u);
}

double spacing_cdf_f1(double s, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  // K0(u) < 1e-16 beyond u = 36, i.e. S = 12 sigma.
  static const TabulatedCdf unit([](double x) { return spacing_pdf_f1(x, 1.0); }, 14.0);
  return unit(s / sigma);
}

F1Spacings spacing_samples_f1(std::size_t count, double sigma, RandomStream& rng) {
  if (count == 0) throw std::invalid_argument("spacing_samples_f1: count must be >= 1");
  const Family2x2 family{Family2x2Tag::F1_antidiag_imag, 1.0};
  F1Spacings out;
  for (std::size_t i = 0; i < count; ++i) {
    const FamilyParams p = sample_family_params(family, sigma, rng);
    const auto [plus, minus] = eigenvalues2(family_matrix(family, p));
    if (p.b * p.c >= 0.0) {
      out.real_sector.values.push_back(std::abs(plus - minus));
    } else {
      out.cc_sector.values.push_back(2.0 * std::abs(plus.imag()));
    }
  }
  return out;
}

F1Spacings spacing_samples_f1(std::size_t count, double sigma, std::uint64_t seed,
                              unsigned threads) {
  if (count == 0) throw std::invalid_argument("spacing_samples_f1: count must be >= 1");
  const std::size_t chunks = chunk_count(count);
  std::vector<F1Spacings> parts(chunks);
  parallel_for_chunks(chunks, threads, [&](std::size_t chunk) {
    RandomStream rng(seed, chunk);
    const std::size_t begin = chunk * kRealizationsPerChunk;
    const std::size_t n = std::min(kRealizationsPerChunk, count - begin);
    parts[chunk] = spacing_samples_f1(n, sigma, rng);
  });
  F1Spacings out;
  for (auto& part : parts) {
    auto& real = out.real_sector.values;
    auto& cc = out.cc_sector.values;
    real.insert(real.end(), part.real_sector.values.begin(), part.real_sector.values.end());
    cc.insert(cc.end(), part.cc_sector.values.begin(), part.cc_sector.values.end());
  }
  return out;
}

SpacingSample spacing_samples_family(const Family2x2& family, std::size_t count, double sigma,
                                     std::uint64_t seed, unsigned threads) {
  if (count == 0) throw std::invalid_argument("spacing_samples_family: count must be >= 1");
  check_family(family);
  const std::size_t chunks = chunk_count(count);
  std::vector<std::vector<double>> parts(chunks);
  parallel_for_chunks(chunks, threads, [&](std::size_t chunk) {
    RandomStream rng(seed, chunk);
    const std::size_t begin = chunk * kRealizationsPerChunk;
    const std::size_t n = std::min(kRealizationsPerChunk, count - begin);
    auto& values = parts[chunk];
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [plus, minus] = eigenvalues2(sample_family(family, sigma, rng));
      values.push_back(std::abs(plus - minus));
    }
  });
  SpacingSample out{SpacingClass::generic, {}, false};
  for (auto& part : parts) out.values.insert(out.values.end(), part.begin(), part.end());
  return out;
}

}  // namespace phrmt
