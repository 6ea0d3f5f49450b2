#include <doctest.h>

#include <cmath>
#include <string>
#include <tuple>

#include "projdim/dimension.hpp"
#include "projdim/error.hpp"

using namespace projdim;

TEST_CASE("Lyapunov dimension") {
  const double c1 = 0.7, c2 = 0.8;
  CHECK(lyapunov_dimension(0.5 * c1, c1, c2) == doctest::Approx(0.5));
  CHECK(lyapunov_dimension(c1, c1, c2) == doctest::Approx(1.0));
  CHECK(lyapunov_dimension(c1 + 0.3 * c2, c1, c2) == doctest::Approx(1.3));
  CHECK_THROWS_AS(lyapunov_dimension(0.5, 0.8, 0.7), Error);
  CHECK_THROWS_AS(lyapunov_dimension(-0.1, 0.7, 0.8), Error);
  CHECK_THROWS_AS(lyapunov_dimension(0.5, 0.0, 0.8), Error);
}

TEST_CASE("entropy split") {
  const double c1 = 0.7, c2 = 0.8;
  auto [g1, g2] = ly_split(c1, c1, c2);
  CHECK(g1 == doctest::Approx(1.0));
  CHECK(g2 == doctest::Approx(0.0));
  std::tie(g1, g2) = ly_split(0.0, c1, c2);
  CHECK(g1 == 0.0);
  CHECK(g2 == 0.0);
  std::tie(g1, g2) = ly_split(c1 + c2, c1, c2);
  CHECK(g1 == doctest::Approx(1.0));
  CHECK(g2 == doctest::Approx(1.0));
}

TEST_CASE("jump prediction") {
  CHECK(fuchsian_jump_prediction(1.0) == doctest::Approx(1.5));
  CHECK(fuchsian_jump_prediction(0.4) == doctest::Approx(0.8));
  CHECK(fuchsian_jump_prediction(0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fuchsian_jump_prediction(1.2), Error);
}

TEST_CASE("dimension report") {
  const DimReport r = make_dim_report(std::log(3.0), EntropyProvenance::Exact, 0.7036, 0.7997);
  CHECK(r.dim_ly == doctest::Approx(1.0 + (std::log(3.0) - 0.7036) / 0.7997));
  CHECK_FALSE(r.clipped);
  CHECK(r.proj_pred == 1.0);
  REQUIRE(r.gamma.has_value());
  CHECK(r.gamma->first == 1.0);

  const DimReport big = make_dim_report(5.0, EntropyProvenance::Surrogate, 0.7, 0.8);
  CHECK(big.clipped);
  CHECK(big.dim_ly == 2.0);
  CHECK(std::string(to_string(big.h_provenance)).find("surrogate") != std::string::npos);
}
