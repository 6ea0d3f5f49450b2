#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "projdim/error.hpp"
#include "projdim/partitions.hpp"

using namespace projdim;

namespace {

// Points of the Cantor-type measure: q-adic digits drawn uniformly from
// a two-element digit set.
std::vector<double> cantor_coords(std::size_t count, int q, int digits, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    double x = 0.0, scale = 1.0;
    for (int d = 0; d < digits; ++d) {
      scale /= q;
      x += scale * (rng.uniform() < 0.5 ? 0 : q - 1);
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("histogram cells") {
  QadicHistogram h(3, 2);
  CHECK(h.cells() == 9);
  CHECK(h.cell_of(0.0) == 0);
  CHECK(h.cell_of(1.0 / 9.0) == 1);
  CHECK(h.cell_of(0.999999) == 8);
  CHECK_THROWS_AS(h.cell_of(1.0), Error);
  CHECK_THROWS_AS(h.cell_of(-0.1), Error);
  h.add(0.5, 3);
  CHECK(h.total() == 3);
  CHECK(h.occupied() == 1);
  CHECK(h.coarsen(1).counts() == std::vector<std::uint64_t>{0, 3, 0});
  CHECK_THROWS_AS(QadicHistogram(2, 29), Error);
  CHECK_THROWS_AS(QadicHistogram::from_counts(2, 2, {1, 2, 3}), Error);
}

TEST_CASE("entropy of histograms") {
  CHECK(entropy(QadicHistogram::from_counts(2, 2, {0, 5, 0, 0})) == 0.0);
  CHECK(entropy(QadicHistogram::from_counts(3, 2, std::vector<std::uint64_t>(9, 4))) ==
        doctest::Approx(2 * std::log(3.0)));
  CHECK(entropy_of_weights({1, 1, 2}) == doctest::Approx(1.5 * std::log(2.0)));
  CHECK_THROWS_AS(entropy(QadicHistogram(2, 3)), Error);
  CHECK_THROWS_AS(entropy_of_weights({0, 0}), Error);

  CounterRng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> w;
    std::vector<long double> p;
    double total = 0.0;
    for (int i = 0; i < 20; ++i) w.push_back(rng.uniform()), total += w.back();
    for (double x : w) p.push_back(x / total);
    CHECK(entropy_of_weights(w) == doctest::Approx(static_cast<double>(oracle::shannon(p))).epsilon(1e-13));
  }
}

TEST_CASE("components") {
  const QadicHistogram fine = QadicHistogram::from_counts(2, 3, {1, 2, 3, 4, 5, 6, 7, 8});
  const ComponentMeasure c = component(fine, 1, 1);
  CHECK(c.sub.level() == 2);
  CHECK(c.sub.counts() == std::vector<std::uint64_t>{5, 6, 7, 8});
  CHECK_THROWS_AS(component(fine, 1, 2), Error);
}

TEST_CASE("projected sample coordinates") {
  const ProjectedSample axes = project_sample({ProjPoint::axis(1), ProjPoint::axis(2)}, ProjPoint::axis(0));
  REQUIRE(axes.coords.size() == 2);
  CHECK(axes.coords[0] == doctest::Approx(0.0));
  CHECK(axes.coords[1] == doctest::Approx(0.5));

  const ProjPoint V({1, 0.3, -0.2});
  const ProjectedSample a = project_sample({ProjPoint({0.2, 0.4, 0.7})}, V);
  const ProjectedSample b = project_sample({ProjPoint({-0.2, -0.4, -0.7})}, V);
  CHECK(a.coords.size() == 1);
  CHECK(a.coords[0] == b.coords[0]);

  const ProjectedSample dropped = project_sample({V, ProjPoint::axis(1)}, V);
  CHECK(dropped.dropped == 1);
  CHECK(dropped.coords.size() == 1);
  CHECK_THROWS_AS(project_sample({ProjPoint::axis(0)}, ProjPoint::axis(1)), Error);
}

TEST_CASE("entropy dimension curves") {
  CounterRng rng(4);
  std::vector<double> uniform;
  for (int i = 0; i < 400000; ++i) uniform.push_back(rng.uniform());
  for (const EntropyDimRow& r : entropy_dimension_curve(uniform, 2, 1, 12))
    CHECK(r.value == doctest::Approx(1.0).epsilon(0.02));

  for (const EntropyDimRow& r : entropy_dimension_curve(std::vector<double>(1000, 0.3), 2, 1, 8))
    CHECK(r.value == 0.0);

  // Digits {0, 3} in base 4: dimension log 2 / log 4 = 1/2.
  const auto cantor = cantor_coords(200000, 4, 12, 5);
  for (const EntropyDimRow& r : entropy_dimension_curve(cantor, 4, 1, 6))
    CHECK(r.value == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("porosity") {
  const int q = 2, m = 4;
  CounterRng rng(6);
  std::vector<double> uniform;
  for (int i = 0; i < 1 << 20; ++i) uniform.push_back(rng.uniform());
  const QadicHistogram hu = QadicHistogram::from_coords(uniform, q, 10);
  const double eps = 0.2;
  // Components of the uniform measure have normalized entropy close to 1:
  // above alpha + eps for alpha = 1 - 2 eps, below it for alpha = 1 - eps / 2.
  CHECK(porosity_check(hu, 1.0 - 2 * eps, eps, m, 2, 6) == doctest::Approx(0.0));
  CHECK(porosity_check(hu, 1.0 - eps / 2, eps, m, 2, 6) == doctest::Approx(1.0));

  const QadicHistogram dirac = QadicHistogram::from_coords(std::vector<double>(100, 0.37), q, 10);
  CHECK(porosity_check(dirac, 0.5, 0.05, m, 2, 6) == doctest::Approx(1.0));

  const auto cantor = cantor_coords(1 << 18, 4, 12, 7);
  const QadicHistogram hc = QadicHistogram::from_coords(cantor, 4, 8);
  CHECK(porosity_check(hc, 0.5, 0.05, 3, 1, 5) > 0.95);

  CHECK_THROWS_AS(porosity_check(hu, 0.5, 0.1, m, 2, 7), Error);
}
