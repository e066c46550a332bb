#include "phrmt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phrmt {

std::string_view to_string(SpacingClass cls) {
  switch (cls) {
    case SpacingClass::cc: return "cc";
    case SpacingClass::rc: return "rc";
    case SpacingClass::generic: return "generic";
    case SpacingClass::real_sector: return "real";
  }
  return "unknown";
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 128;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::domain_error("mean of empty sample");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

SpacingSample normalize_unit_mean(SpacingSample sample) {
  if (sample.values.empty()) throw std::domain_error("normalize_unit_mean: empty sample");
  const double m = mean(sample.values);
  if (!(m > 0.0)) throw std::domain_error("normalize_unit_mean: sample mean must be positive");
  for (double& v : sample.values) v /= m;
  sample.normalized = true;
  return sample;
}

GofReport ks_statistic(std::span<const double> sorted_sample, const Cdf& cdf,
                       double pass_threshold) {
  if (sorted_sample.empty()) throw std::domain_error("ks_statistic: empty sample");
  if (!std::is_sorted(sorted_sample.begin(), sorted_sample.end())) {
    throw std::domain_error("ks_statistic: sample must be sorted ascending");
  }
  const double n = static_cast<double>(sorted_sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    const double f = cdf(sorted_sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  GofReport report;
  report.ks_distance = d;
  report.n = sorted_sample.size();
  report.pass_threshold = pass_threshold;
  report.passed = d < pass_threshold;
  return report;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw std::domain_error("ks_two_sample: samples must be sorted ascending");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<double> Histogram::density() const {
  std::vector<double> out(counts.size(), 0.0);
  if (total == 0) return out;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    out[b] = static_cast<double>(counts[b]) / (static_cast<double>(total) * width(b));
  }
  return out;
}

Histogram& Histogram::merge(const Histogram& other) {
  if (other.edges != edges) throw std::invalid_argument("Histogram::merge: edges differ");
  for (std::size_t b = 0; b < counts.size(); ++b) counts[b] += other.counts[b];
  total += other.total;
  dropped += other.dropped;
  return *this;
}

Histogram histogram(std::span<const double> sample, std::vector<double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("histogram: need at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw std::invalid_argument("histogram: edges must be strictly increasing");
    }
  }
  Histogram h;
  h.counts.assign(edges.size() - 1, 0);
  h.edges = std::move(edges);
  for (double x : sample) {
    ++h.total;
    if (!(x >= h.edges.front()) || !(x < h.edges.back())) {
      ++h.dropped;
      continue;
    }
    // First edge strictly greater than x closes the bin.
    const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
    ++h.counts[static_cast<std::size_t>(it - h.edges.begin()) - 1];
  }
  return h;
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("uniform_edges: bad range");
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  return edges;
}

TabulatedCdf::TabulatedCdf(const ScalarFunction& pdf, double upper, std::size_t cells)
    : step_(upper / static_cast<double>(cells)), upper_(upper) {
  if (!(upper > 0.0) || cells < 2) throw std::invalid_argument("TabulatedCdf: bad grid");
  values_.assign(cells + 1, 0.0);
  slopes_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i <= cells; ++i) {
    const double x = step_ * static_cast<double>(i);
    slopes_[i] = pdf(x);
    if (i > 0) values_[i] = values_[i - 1] + integrate(pdf, x - step_, x, 1e-17, 1e-14);
  }
  // Fritsch-Carlson limiter keeps every Hermite segment monotone.
  for (std::size_t i = 0; i < cells; ++i) {
    const double secant = (values_[i + 1] - values_[i]) / step_;
    if (secant <= 0.0) {
      slopes_[i] = 0.0;
      slopes_[i + 1] = 0.0;
      continue;
    }
    const double alpha = slopes_[i] / secant;
    const double beta = slopes_[i + 1] / secant;
    const double r = alpha * alpha + beta * beta;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      slopes_[i] = tau * alpha * secant;
      slopes_[i + 1] = tau * beta * secant;
    }
  }
}

double TabulatedCdf::operator()(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (x >= upper_) return 1.0;
  const auto cell = std::min(static_cast<std::size_t>(x / step_), values_.size() - 2);
  const double t = (x - step_ * static_cast<double>(cell)) / step_;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  const double v = h00 * values_[cell] + h10 * step_ * slopes_[cell] +
                   h01 * values_[cell + 1] + h11 * step_ * slopes_[cell + 1];
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace phrmt
