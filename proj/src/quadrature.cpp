#include "phrmt/quadrature.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <queue>

namespace phrmt {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
  double value;
  double error;
};

Estimate gauss_kronrod(const ScalarFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[static_cast<std::size_t>(i)];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += pair * kKronrodWeights[static_cast<std::size_t>(i)];
    if (i % 2 == 1) gauss += pair * kGaussWeights[static_cast<std::size_t>(i / 2)];
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double integrate(const ScalarFunction& f, double a, double b, double abs_tol, double rel_tol) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, abs_tol, rel_tol);

  // Global adaptive scheme: always bisect the interval with the largest error.
  struct Piece {
    double lo, hi;
    Estimate est;
    bool operator<(const Piece& other) const { return est.error < other.est.error; }
  };
  std::priority_queue<Piece> pieces;
  Estimate total = gauss_kronrod(f, a, b);
  pieces.push({a, b, total});
  constexpr int kMaxPieces = 4000;
  for (int n = 1; n < kMaxPieces; ++n) {
    if (total.error <= std::max(abs_tol, rel_tol * std::abs(total.value))) break;
    const Piece worst = pieces.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) break;
    pieces.pop();
    const Estimate left = gauss_kronrod(f, worst.lo, mid);
    const Estimate right = gauss_kronrod(f, mid, worst.hi);
    total.value += left.value + right.value - worst.est.value;
    total.error += left.error + right.error - worst.est.error;
    pieces.push({worst.lo, mid, left});
    pieces.push({mid, worst.hi, right});
  }
  // Re-sum to shed accumulated cancellation in the running total.
  double value = 0.0;
  while (!pieces.empty()) {
    value += pieces.top().est.value;
    pieces.pop();
  }
  return value;
}

double integrate_to_infinity(const ScalarFunction& f, double a, double abs_tol, double rel_tol) {
  const ScalarFunction mapped = [&f, a](double t) {
    if (t >= 1.0) return 0.0;
    const double s = 1.0 - t;
    const double value = f(a + t / s);
    return value == 0.0 ? 0.0 : value / (s * s);
  };
  return integrate(mapped, 0.0, 1.0, abs_tol, rel_tol);
}

}  // namespace phrmt
