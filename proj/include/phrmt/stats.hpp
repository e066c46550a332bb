#pragma once

// Empirical-distribution utilities: spacing samples, unit-mean
// normalisation, histograms, Kolmogorov-Smirnov distances and tabulated
// CDFs for densities without an elementary antiderivative.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phrmt/quadrature.hpp"

namespace phrmt {

enum class SpacingClass { cc, rc, generic, real_sector };

std::string_view to_string(SpacingClass cls);

struct SpacingSample {
  SpacingClass cls = SpacingClass::generic;
  std::vector<double> values;
  bool normalized = false;
};

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

/// Divides every value by the sample mean. Throws std::domain_error for an
/// empty sample or a nonpositive mean.
SpacingSample normalize_unit_mean(SpacingSample sample);

using Cdf = std::function<double(double)>;

struct GofReport {
  double ks_distance = 0.0;
  std::size_t n = 0;
  double pass_threshold = 1.0;
  bool passed = true;
};

/// sup |F_n - F| for an ascending sample. Throws std::domain_error when the
/// sample is empty or not sorted.
GofReport ks_statistic(std::span<const double> sorted_sample, const Cdf& cdf,
                       double pass_threshold = 1.0);

/// Two-sample KS distance between two ascending samples.
double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b);

struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;    // every value offered, in range or not
  std::uint64_t dropped = 0;  // values outside [edges.front(), edges.back())

  std::size_t bins() const { return counts.size(); }
  double center(std::size_t bin) const { return 0.5 * (edges[bin] + edges[bin + 1]); }
  double width(std::size_t bin) const { return edges[bin + 1] - edges[bin]; }
  /// counts / (total * width); integrates to the in-range fraction.
  std::vector<double> density() const;
  /// Adds another histogram with identical edges.
  Histogram& merge(const Histogram& other);
};

/// Bins are half-open [e_i, e_{i+1}). Requires at least two strictly
/// increasing edges.
Histogram histogram(std::span<const double> sample, std::vector<double> edges);

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins);

/// CDF of a density on [0, upper], integrated cell by cell on a uniform grid
/// and evaluated with monotone cubic Hermite interpolation. Beyond `upper`
/// the CDF is 1.
class TabulatedCdf {
 public:
  TabulatedCdf(const ScalarFunction& pdf, double upper, std::size_t cells = 2048);

  double operator()(double x) const;
  /// Tabulated value at the upper end, i.e. the integral of the density.
  double total_mass() const { return values_.back(); }

 private:
  double step_;
  double upper_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

}  // namespace phrmt
