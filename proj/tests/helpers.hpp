#pragma once

#include <cmath>

#include "projdim/linalg.hpp"
#include "projdim/rng.hpp"

namespace testing {

using projdim::CounterRng;
using projdim::Mat2;
using projdim::Mat3;
using projdim::Vec3;

inline Mat3 random_mat3(CounterRng& rng) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = rng.normal();
  return g;
}

// Gaussian matrix rescaled to determinant 1 (a row is negated if needed).
inline Mat3 random_sl3(CounterRng& rng) {
  Mat3 g = random_mat3(rng);
  double d = g.det();
  while (std::abs(d) < 1e-3) {
    g = random_mat3(rng);
    d = g.det();
  }
  if (d < 0) {
    for (int j = 0; j < 3; ++j) g(0, j) = -g(0, j);
    d = -d;
  }
  return (1.0 / std::cbrt(d)) * g;
}

inline Mat2 random_sl2(CounterRng& rng) {
  Mat2 h{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  while (std::abs(h.det()) < 1e-3) h = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  if (h.det() < 0) h = {-h.a, -h.b, h.c, h.d};
  return (1.0 / std::sqrt(h.det())) * h;
}

inline Vec3 random_vec(CounterRng& rng) { return {rng.normal(), rng.normal(), rng.normal()}; }

}  // namespace testing
