#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "projdim/config.hpp"
#include "projdim/rng.hpp"

namespace projdim {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::hypot(a[0], a[1], a[2]); }
inline double norm(const Vec2& a) { return std::hypot(a[0], a[1]); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }

/// Real 3x3 matrix, row-major.
class Mat3 {
 public:
  Mat3() = default;
  explicit Mat3(const std::array<double, 9>& row_major) : a_(row_major) {}

  static Mat3 identity() { return diag(1.0, 1.0, 1.0); }
  static Mat3 diag(double d0, double d1, double d2) {
    return Mat3({d0, 0, 0, 0, d1, 0, 0, 0, d2});
  }
  static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
    return Mat3({r0[0], r0[1], r0[2], r1[0], r1[1], r1[2], r2[0], r2[1], r2[2]});
  }
  static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    return from_rows(c0, c1, c2).transpose();
  }

  double& operator()(int r, int c) { return a_[3 * r + c]; }
  double operator()(int r, int c) const { return a_[3 * r + c]; }
  const std::array<double, 9>& data() const { return a_; }

  Vec3 row(int r) const { return {a_[3 * r], a_[3 * r + 1], a_[3 * r + 2]}; }
  Vec3 col(int c) const { return {a_[c], a_[3 + c], a_[6 + c]}; }

  Mat3 transpose() const;
  double det() const;
  /// Transposed cofactor matrix; g * adjugate(g) = det(g) I.
  Mat3 adjugate() const;
  Mat3 inverse() const;
  double frobenius() const;
  double max_abs() const;
  bool finite() const;

  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend Vec3 operator*(const Mat3& a, const Vec3& v);
  friend Mat3 operator+(const Mat3& a, const Mat3& b);
  friend Mat3 operator-(const Mat3& a, const Mat3& b);
  friend Mat3 operator*(double s, const Mat3& a);
  friend bool operator==(const Mat3&, const Mat3&) = default;

 private:
  std::array<double, 9> a_{};
};

/// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 0, b = 0, c = 0, d = 0;

  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 rotation(double theta) {
    return {std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)};
  }
  double det() const { return a * d - b * c; }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 inverse() const;
  double frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }
  /// Operator norm (largest singular value), closed form.
  double op_norm() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]};
  }
  friend Mat2 operator*(double s, const Mat2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

enum class DetClass { PlusOne, MinusOne, Other };

DetClass det_class(const Mat3& g, const Tolerances& tol = default_tolerances());

/// Point of P(R^3): a unit representative whose first nonzero coordinate is
/// strictly positive, so v and -v have the same canonical form.
class ProjPoint {
 public:
  /// Throws InvalidArgument for the zero vector or non-finite input.
  explicit ProjPoint(const Vec3& v);

  static ProjPoint axis(int i);

  const Vec3& rep() const { return rep_; }
  double operator[](int i) const { return rep_[static_cast<std::size_t>(i)]; }

 private:
  Vec3 rep_;
};

/// Projective line in P(R^3), i.e. a 2-plane of R^3, stored by its normal.
class ProjHyperplane {
 public:
  explicit ProjHyperplane(const Vec3& normal) : normal_(normal) {}
  explicit ProjHyperplane(const ProjPoint& normal) : normal_(normal) {}

  const ProjPoint& normal() const { return normal_; }

 private:
  ProjPoint normal_;
};

/// d(Rv, Rw) = |v ^ w| / (|v| |w|), the sine of the angle between lines.
double proj_dist(const ProjPoint& a, const ProjPoint& b);

/// |<x, n>|, equal to min over w in W of proj_dist(x, w).
double dist_point_hyperplane(const ProjPoint& x, const ProjHyperplane& w);

/// Sine of the angle between the normals; the Hausdorff distance between
/// two projective lines of P(R^3).
double dist_hyperplanes(const ProjHyperplane& a, const ProjHyperplane& b);

struct Svd3 {
  Vec3 sigma;  // descending
  Mat3 u;      // columns: left singular vectors
  Mat3 v;      // columns: right singular vectors
};

/// One-sided Jacobi SVD: rotations that diagonalize g^T g, applied to the
/// columns of g. Sweep order (0,1), (0,2), (1,2). Left vectors are g v_i /
/// sigma_i, completed by a cross product when g is rank deficient.
Svd3 svd3(const Mat3& g, const Tolerances& tol = default_tolerances());

/// Singular values only. If known_abs_det > 0 it replaces the computed
/// sigma_3 by known_abs_det / (sigma_1 sigma_2), which keeps relative
/// accuracy for long word products whose determinant is known exactly.
Vec3 singular_values(const Mat3& g, double known_abs_det = -1.0,
                     const Tolerances& tol = default_tolerances());

struct CartanData {
  Vec3 sigma;
  Mat3 k_left;   // g = k_left * diag(sigma) * k_right
  Mat3 k_right;
  ProjPoint v_plus;        // k_left E1
  ProjHyperplane h_minus;  // k_right^{-1}(E2 + E3): normal is row 0 of k_right
  std::array<double, 2> chi;  // log(s1/s2), log(s1/s3)
  Vec3 kappa;                 // log s_i
  bool degenerate;            // s1/s2 - 1 < tol: v_plus, h_minus not unique
};

CartanData cartan(const Mat3& g, const Tolerances& tol = default_tolerances());

/// Projective action x -> R(g x).
ProjPoint act(const Mat3& g, const ProjPoint& x,
              const Tolerances& tol = default_tolerances());

/// x in b(g^-, eps), i.e. d(x, H_g^-) > eps. Refuses degenerate g.
bool in_repelling_basin(const Mat3& g, const ProjPoint& x, double eps,
                        const Tolerances& tol = default_tolerances());
bool in_repelling_basin(const CartanData& c, const ProjPoint& x, double eps);

struct Svd2 {
  double s1, s2;
  Vec2 right_top;     // unit, maximizes |h v|
  Vec2 right_bottom;  // unit, spans the repelling direction H_h^-
  Vec2 left_top;      // h right_top / s1, the attracting direction h^+
};

Svd2 svd2(const Mat2& h);

/// For |det h| = 1 returns (s1/s2, |h|^2); the two agree.
std::array<double, 2> sl2_norm_identity_check(
    const Mat2& h, const Tolerances& tol = default_tolerances());

/// Distance on P(R^2) between R v and R w.
double proj_dist2(const Vec2& v, const Vec2& w);

/// Uniform point on the unit sphere.
Vec3 random_unit_vector(CounterRng& rng);

}  // namespace projdim
