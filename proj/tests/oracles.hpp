#pragma once

// Reference computations used only by the tests. Each one takes a route that
// differs from the library: closed-form eigenvalues instead of Jacobi sweeps,
// brute-force enumeration instead of tables, long double instead of double.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

#include "projdim/linalg.hpp"
#include "projdim/randwalk.hpp"

namespace oracle {

using projdim::Mat2;
using projdim::Mat3;
using projdim::Vec3;
using LD = long double;
using LMat = std::array<std::array<LD, 3>, 3>;

inline LMat widen(const Mat3& g) {
  LMat m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = g(i, j);
  return m;
}

inline LMat mul(const LMat& a, const LMat& b) {
  LMat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline LMat transpose(const LMat& a) {
  LMat t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

// Eigenvalues of a symmetric 3x3 matrix by the trigonometric closed form,
// descending.
inline std::array<LD, 3> sym_eigenvalues(const LMat& a) {
  const LD p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const LD q = (a[0][0] + a[1][1] + a[2][2]) / 3;
  if (p1 == 0) {
    std::array<LD, 3> e{a[0][0], a[1][1], a[2][2]};
    std::sort(e.begin(), e.end(), std::greater<>());
    return e;
  }
  const LD p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) +
                (a[2][2] - q) * (a[2][2] - q) + 2 * p1;
  const LD p = std::sqrt(p2 / 6);
  LMat b = a;
  for (int i = 0; i < 3; ++i) b[i][i] -= q;
  for (auto& row : b)
    for (auto& x : row) x /= p;
  const LD det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                   b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                   b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const LD r = std::clamp(det_b / 2, LD(-1), LD(1));
  const LD phi = std::acos(r) / 3;
  const LD pi = std::numbers::pi_v<long double>;
  const LD e1 = q + 2 * p * std::cos(phi);
  const LD e3 = q + 2 * p * std::cos(phi + 2 * pi / 3);
  return {e1, 3 * q - e1 - e3, e3};
}

// Singular values from the eigenvalues of the Gram matrix g^T g.
inline std::array<LD, 3> singular_values(const Mat3& g) {
  const LMat w = widen(g);
  const auto e = sym_eigenvalues(mul(transpose(w), w));
  return {std::sqrt(std::max(e[0], LD(0))), std::sqrt(std::max(e[1], LD(0))),
          std::sqrt(std::max(e[2], LD(0)))};
}

// Closed-form 2x2 singular values.
inline std::array<LD, 2> singular_values(const Mat2& h) {
  const LD t = LD(h.a) * h.a + LD(h.b) * h.b + LD(h.c) * h.c + LD(h.d) * h.d;
  const LD d = std::abs(LD(h.a) * h.d - LD(h.b) * h.c);
  const LD disc = std::sqrt(std::max(t * t - 4 * d * d, LD(0)));
  const LD s1 = std::sqrt((t + disc) / 2);
  return {s1, s1 > 0 ? d / s1 : 0};
}

inline LD max_abs_diff(const LMat& a, const LMat& b) {
  LD m = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

inline LD max_abs(const LMat& a) {
  LD m = 0;
  for (const auto& row : a)
    for (LD x : row) m = std::max(m, std::abs(x));
  return m;
}

// Sine of the angle between two lines, via the Gram determinant.
inline LD line_distance(const Vec3& v, const Vec3& w) {
  const LD vv = LD(v[0]) * v[0] + LD(v[1]) * v[1] + LD(v[2]) * v[2];
  const LD ww = LD(w[0]) * w[0] + LD(w[1]) * w[1] + LD(w[2]) * w[2];
  const LD vw = LD(v[0]) * w[0] + LD(v[1]) * w[1] + LD(v[2]) * w[2];
  return std::sqrt(std::max(LD(0), 1 - vw * vw / (vv * ww)));
}

// Every word of length n over m letters, in lexicographic order.
inline void for_each_word(int m, int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  while (true) {
    f(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == m - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++w[static_cast<std::size_t>(i)];
  }
}

inline LMat word_product(const std::vector<Mat3>& gens, const std::vector<int>& w) {
  LMat p = widen(Mat3::identity());
  for (int a : w) p = mul(p, widen(gens[static_cast<std::size_t>(a)]));
  return p;
}

inline Mat3 narrow(const LMat& m) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = static_cast<double>(m[i][j]);
  return g;
}

// psi_s on singular values, straight from the definition.
inline LD psi(const std::array<LD, 3>& s, LD t) {
  const LD c1 = std::log(s[0] / s[1]);
  const LD c2 = std::log(s[0] / s[2]);
  return t <= 1 ? t * c1 : c1 + (t - 1) * c2;
}

// log of sum over all words of length n of exp(-psi_s), by brute force.
inline LD log_partition(const std::vector<Mat3>& gens, LD s, int n) {
  LD z = 0;
  for_each_word(static_cast<int>(gens.size()), n, [&](const std::vector<int>& w) {
    z += std::exp(-psi(oracle::singular_values(narrow(word_product(gens, w))), s));
  });
  return std::log(z);
}

// Shannon entropy in nats of a probability vector.
inline LD shannon(const std::vector<LD>& p) {
  LD h = 0;
  for (LD x : p)
    if (x > 0) h -= x * std::log(x);
  return h;
}

}  // namespace oracle
