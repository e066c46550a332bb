#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "phrmt/quadrature.hpp"
#include "phrmt/random.hpp"
#include "phrmt/stats.hpp"
#include "phrmt/types.hpp"

using namespace phrmt;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> sorted_normals(std::size_t n, double shift, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal(shift, 1.0);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("spectra-stats") {

TEST_CASE("normalize_unit_mean") {
  SpacingSample s{SpacingClass::cc, {2.0, 2.0, 2.0}, false};
  const SpacingSample out = normalize_unit_mean(s);
  CHECK(out.normalized);
  CHECK(out.values == std::vector<double>{1.0, 1.0, 1.0});

  RandomStream rng(3);
  SpacingSample r{SpacingClass::rc, {}, false};
  for (int i = 0; i < 10001; ++i) r.values.push_back(std::abs(rng.normal()) * 7.3);
  const SpacingSample once = normalize_unit_mean(r);
  CHECK(std::abs(mean(once.values) - 1.0) <= 1e-12);
  const SpacingSample twice = normalize_unit_mean(once);
  double drift = 0.0;
  for (std::size_t i = 0; i < once.values.size(); ++i) {
    drift = std::max(drift, std::abs(twice.values[i] - once.values[i]));
  }
  CHECK(drift <= 1e-14);

  CHECK_THROWS_AS(normalize_unit_mean({SpacingClass::cc, {}, false}), std::domain_error);
  CHECK_THROWS_AS(normalize_unit_mean({SpacingClass::cc, {0.0, 0.0}, false}), std::domain_error);
}

TEST_CASE("pairwise sum is accurate on ill-conditioned input") {
  std::vector<double> v(1 << 20, 0.1);
  CHECK(std::abs(pairwise_sum(v) - 0.1 * (1 << 20)) < 1e-8);
  CHECK(pairwise_sum({}) == 0.0);
}

TEST_CASE("KS statistic: single point at the median is 1/2") {
  const std::vector<double> one{0.0};
  CHECK(ks_statistic(one, normal_cdf).ks_distance == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("KS statistic: sample from the law passes, shifted sample does not") {
  const auto good = sorted_normals(100000, 0.0, 1);
  const GofReport rep = ks_statistic(good, normal_cdf, 1.63 / std::sqrt(100000.0));
  CHECK(rep.n == 100000);
  CHECK(rep.passed);
  const auto bad = sorted_normals(100000, 0.3, 1);
  const GofReport shifted = ks_statistic(bad, normal_cdf, 0.01);
  CHECK(shifted.ks_distance > 0.1);
  CHECK_FALSE(shifted.passed);
}

TEST_CASE("KS statistic is invariant under a monotone map of sample and argument") {
  const auto s = sorted_normals(5000, 0.0, 2);
  std::vector<double> mapped(s.size());
  std::transform(s.begin(), s.end(), mapped.begin(), [](double x) { return std::exp(x); });
  const double d1 = ks_statistic(s, normal_cdf).ks_distance;
  const double d2 = ks_statistic(mapped, [](double y) { return normal_cdf(std::log(y)); }).ks_distance;
  CHECK(std::abs(d1 - d2) < 1e-12);
}

TEST_CASE("KS statistic rejects unsorted or empty input") {
  const std::vector<double> unsorted{1.0, 0.0};
  CHECK_THROWS_AS(ks_statistic(unsorted, normal_cdf), std::domain_error);
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, normal_cdf), std::domain_error);
  CHECK_THROWS_AS(ks_two_sample(unsorted, unsorted), std::domain_error);
}

TEST_CASE("two-sample KS") {
  const auto a = sorted_normals(20000, 0.0, 4);
  const auto b = sorted_normals(20000, 0.0, 5);
  CHECK(ks_two_sample(a, b) < 0.02);
  CHECK(ks_two_sample(a, a) == 0.0);
  const std::vector<double> lo{0.0, 1.0}, hi{2.0, 3.0};
  CHECK(ks_two_sample(lo, hi) == 1.0);
}

TEST_CASE("histogram counts and conventions") {
  const auto edges = uniform_edges(0.0, 1.0, 4);
  const Histogram empty = histogram(std::vector<double>{}, edges);
  CHECK(empty.total == 0);
  CHECK(std::all_of(empty.counts.begin(), empty.counts.end(), [](auto c) { return c == 0; }));

  const Histogram one_bin = histogram(std::vector<double>{0.3, 0.3, 0.4, 0.26}, edges);
  CHECK(one_bin.counts[1] == one_bin.total);

  // half-open bins: an edge value belongs to the bin it opens
  const Histogram edge = histogram(std::vector<double>{0.0, 0.25, 0.5, 1.0}, edges);
  CHECK(edge.counts[0] == 1);
  CHECK(edge.counts[1] == 1);
  CHECK(edge.counts[2] == 1);
  CHECK(edge.dropped == 1);
  CHECK(edge.total == 4);
}

TEST_CASE("histogram density integrates to the in-range fraction") {
  RandomStream rng(8);
  std::vector<double> v(30000);
  for (auto& x : v) x = rng.normal();
  const Histogram h = histogram(v, uniform_edges(-1.0, 2.0, 37));
  const auto d = h.density();
  double integral = 0.0;
  for (std::size_t b = 0; b < h.bins(); ++b) integral += d[b] * h.width(b);
  const double in_range = static_cast<double>(h.total - h.dropped) / static_cast<double>(h.total);
  CHECK(std::abs(integral - in_range) <= 1e-12);
  const auto in_count = std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0});
  CHECK(in_count <= h.total);
}

TEST_CASE("merging histograms equals histogramming the concatenation") {
  RandomStream rng(9);
  std::vector<double> a(1000), b(777);
  for (auto& x : a) x = rng.uniform(-0.5, 1.5);
  for (auto& x : b) x = rng.uniform(-0.5, 1.5);
  const auto edges = uniform_edges(0.0, 1.0, 10);
  Histogram merged = histogram(a, edges);
  merged.merge(histogram(b, edges));
  std::vector<double> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const Histogram direct = histogram(both, edges);
  CHECK(merged.counts == direct.counts);
  CHECK(merged.total == direct.total);
  CHECK(merged.dropped == direct.dropped);
  CHECK_THROWS_AS(merged.merge(histogram(a, uniform_edges(0.0, 2.0, 10))), std::invalid_argument);
}

TEST_CASE("histogram rejects bad edges") {
  CHECK_THROWS_AS(histogram(std::vector<double>{}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(histogram(std::vector<double>{}, {0.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(uniform_edges(1.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("tabulated CDF of the normal law on [0, inf)") {
  const auto pdf = [](double x) { return std::sqrt(2.0 / kPi) * std::exp(-0.5 * x * x); };
  const TabulatedCdf cdf(pdf, 12.0);
  CHECK(std::abs(cdf.total_mass() - 1.0) < 1e-12);
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.01 * i * 3.0;
    worst = std::max(worst, std::abs(cdf(x) - std::erf(x / std::sqrt(2.0))));
  }
  CHECK(worst < 1e-9);
  CHECK(cdf(-1.0) == 0.0);
  CHECK(cdf(20.0) == 1.0);
}

TEST_CASE("adaptive quadrature against the tanh-sinh oracle") {
  const auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x) / std::sqrt(1.0 + x); };
  const double got = integrate(f, 0.0, 5.0);
  const double want = static_cast<double>(oracle::tanh_sinh(
      [](oracle::LD x) { return std::exp(-x) * std::cos(3.0L * x) / std::sqrt(1.0L + x); }, 0.0L,
      5.0L));
  CHECK(std::abs(got - want) < 1e-13);
  const double tail = integrate_to_infinity([](double x) { return std::exp(-x * x); }, 0.0);
  CHECK(std::abs(tail - 0.5 * std::sqrt(kPi)) < 1e-13);
}

}  // TEST_SUITE
