#include "projdim/linalg.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "projdim/error.hpp"

namespace projdim {

Mat3 Mat3::transpose() const {
  const auto& a = a_;
  return Mat3({a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]});
}

double Mat3::det() const {
  const auto& a = a_;
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

Mat3 Mat3::adjugate() const {
  const auto& a = a_;
  return Mat3({a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8],
               a[1] * a[5] - a[2] * a[4], a[5] * a[6] - a[3] * a[8],
               a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
               a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7],
               a[0] * a[4] - a[1] * a[3]});
}

Mat3 Mat3::inverse() const {
  const double d = det();
  if (d == 0.0 || !std::isfinite(d)) fail(ErrorCode::SingularMatrix, "Mat3::inverse: singular");
  return (1.0 / d) * adjugate();
}

double Mat3::frobenius() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

double Mat3::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

bool Mat3::finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
  return r;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2],
          m(1, 0) * v[0] + m(1, 1) * v[1] + m(1, 2) * v[2],
          m(2, 0) * v[0] + m(2, 1) * v[1] + m(2, 2) * v[2]};
}

Mat3 operator+(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a_[i] = x.a_[i] + y.a_[i];
  return r;
}

Mat3 operator-(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a_[i] = x.a_[i] - y.a_[i];
  return r;
}

Mat3 operator*(double s, const Mat3& x) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.a_[i] = s * x.a_[i];
  return r;
}

Mat2 Mat2::inverse() const {
  const double dt = det();
  if (dt == 0.0) fail(ErrorCode::SingularMatrix, "Mat2::inverse: singular");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

double Mat2::op_norm() const {
  // Largest eigenvalue of h^T h.
  const double p = a * a + c * c;
  const double q = a * b + c * d;
  const double r = b * b + d * d;
  const double lambda = 0.5 * (p + r) + std::hypot(0.5 * (p - r), q);
  return std::sqrt(lambda);
}

DetClass det_class(const Mat3& g, const Tolerances& tol) {
  const double d = g.det();
  if (std::abs(d - 1.0) <= tol.det_class) return DetClass::PlusOne;
  if (std::abs(d + 1.0) <= tol.det_class) return DetClass::MinusOne;
  return DetClass::Other;
}

ProjPoint::ProjPoint(const Vec3& v) {
  const double n = norm(v);
  if (!std::isfinite(n)) fail(ErrorCode::NonFinite, "ProjPoint: non-finite vector");
  if (n == 0.0) fail(ErrorCode::InvalidArgument, "ProjPoint: zero vector");
  rep_ = (1.0 / n) * v;
  for (double c : rep_) {
    if (c != 0.0) {
      if (c < 0.0) rep_ = -1.0 * rep_;
      break;
    }
  }
}

ProjPoint ProjPoint::axis(int i) {
  Vec3 e{0.0, 0.0, 0.0};
  e[static_cast<std::size_t>(i)] = 1.0;
  return ProjPoint(e);
}

double proj_dist(const ProjPoint& a, const ProjPoint& b) {
  return std::min(1.0, norm(cross(a.rep(), b.rep())));
}

double dist_point_hyperplane(const ProjPoint& x, const ProjHyperplane& w) {
  return std::min(1.0, std::abs(dot(x.rep(), w.normal().rep())));
}

double dist_hyperplanes(const ProjHyperplane& a, const ProjHyperplane& b) {
  return proj_dist(a.normal(), b.normal());
}

namespace {

// Hestenes sweeps on the columns of w; rotations accumulated into v if given.
void jacobi_columns(Mat3& w, Mat3* v, double tol) {
  constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (const auto& pq : kPairs) {
      const int p = pq[0];
      const int q = pq[1];
      double alpha = 0, beta = 0, gamma = 0;
      for (int r = 0; r < 3; ++r) {
        alpha += w(r, p) * w(r, p);
        beta += w(r, q) * w(r, q);
        gamma += w(r, p) * w(r, q);
      }
      if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
      rotated = true;
      const double zeta = (beta - alpha) / (2.0 * gamma);
      const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
      const double c = 1.0 / std::hypot(1.0, t);
      const double s = c * t;
      for (int r = 0; r < 3; ++r) {
        const double wp = w(r, p);
        const double wq = w(r, q);
        w(r, p) = c * wp - s * wq;
        w(r, q) = s * wp + c * wq;
      }
      if (v != nullptr) {
        for (int r = 0; r < 3; ++r) {
          const double vp = (*v)(r, p);
          const double vq = (*v)(r, q);
          (*v)(r, p) = c * vp - s * vq;
          (*v)(r, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
}

Vec3 any_orthogonal(const Vec3& u) {
  // Cross with the axis least aligned with u.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(u[static_cast<std::size_t>(i)]) < std::abs(u[static_cast<std::size_t>(k)])) k = i;
  Vec3 e{0, 0, 0};
  e[static_cast<std::size_t>(k)] = 1.0;
  const Vec3 c = cross(u, e);
  return (1.0 / norm(c)) * c;
}

}  // namespace

Svd3 svd3(const Mat3& g, const Tolerances& tol) {
  Mat3 w = g;
  Mat3 v = Mat3::identity();
  jacobi_columns(w, &v, tol.jacobi);

  std::array<double, 3> n{norm(w.col(0)), norm(w.col(1)), norm(w.col(2))};
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return n[static_cast<std::size_t>(i)] > n[static_cast<std::size_t>(j)]; });

  Svd3 out;
  Vec3 wc[3], vc[3];
  for (int k = 0; k < 3; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.sigma[static_cast<std::size_t>(k)] = n[static_cast<std::size_t>(src)];
    wc[k] = w.col(src);
    vc[k] = v.col(src);
  }

  Vec3 u0, u1, u2;
  u0 = out.sigma[0] > 0.0 ? (1.0 / out.sigma[0]) * wc[0] : Vec3{1.0, 0.0, 0.0};
  if (out.sigma[1] > std::numeric_limits<double>::min() * 1e3) {
    u1 = (1.0 / out.sigma[1]) * wc[1];
    // Re-orthogonalize against u0 to absorb the residual of the sweeps.
    u1 = u1 - dot(u1, u0) * u0;
    const double nu1 = norm(u1);
    u1 = nu1 > 0.0 ? (1.0 / nu1) * u1 : any_orthogonal(u0);
  } else {
    u1 = any_orthogonal(u0);
  }
  u2 = cross(u0, u1);
  if (dot(u2, wc[2]) < 0.0) u2 = -1.0 * u2;

  out.u = Mat3::from_cols(u0, u1, u2);
  out.v = Mat3::from_cols(vc[0], vc[1], vc[2]);
  return out;
}

Vec3 singular_values(const Mat3& g, double known_abs_det, const Tolerances& tol) {
  Mat3 w = g;
  jacobi_columns(w, nullptr, tol.jacobi);
  Vec3 s{norm(w.col(0)), norm(w.col(1)), norm(w.col(2))};
  std::sort(s.begin(), s.end(), std::greater<>());
  if (known_abs_det > 0.0 && s[0] > 0.0 && s[1] > 0.0) s[2] = known_abs_det / (s[0] * s[1]);
  return s;
}

CartanData cartan(const Mat3& g, const Tolerances& tol) {
  if (!g.finite()) fail(ErrorCode::NonFinite, "cartan: non-finite entries");
  const double d = g.det();
  if (std::abs(d) < tol.singular_det) fail(ErrorCode::SingularMatrix, "cartan: |det g| < 1e-12");

  const Svd3 svd = svd3(g, tol);
  const Vec3& s = svd.sigma;
  const bool degenerate = s[0] / s[1] - 1.0 < tol.degenerate_gap;
  return CartanData{
      s,
      svd.u,
      svd.v.transpose(),
      ProjPoint(svd.u.col(0)),
      ProjHyperplane(svd.v.col(0)),
      {std::log(s[0] / s[1]), std::log(s[0] / s[2])},
      {std::log(s[0]), std::log(s[1]), std::log(s[2])},
      degenerate,
  };
}

ProjPoint act(const Mat3& g, const ProjPoint& x, const Tolerances& tol) {
  const Vec3 y = g * x.rep();
  if (norm(y) < tol.kernel_hit) fail(ErrorCode::KernelHit, "act: g v is (numerically) zero");
  return ProjPoint(y);
}

bool in_repelling_basin(const CartanData& c, const ProjPoint& x, double eps) {
  if (c.degenerate)
    fail(ErrorCode::DegenerateTopSingular, "in_repelling_basin: sigma1 == sigma2, H_g^- not unique");
  return dist_point_hyperplane(x, c.h_minus) > eps;
}

bool in_repelling_basin(const Mat3& g, const ProjPoint& x, double eps, const Tolerances& tol) {
  return in_repelling_basin(cartan(g, tol), x, eps);
}

Svd2 svd2(const Mat2& h) {
  const double e = 0.5 * (h.a + h.d);
  const double f = 0.5 * (h.a - h.d);
  const double g = 0.5 * (h.c + h.b);
  const double k = 0.5 * (h.c - h.b);
  const double q = std::hypot(e, k);
  const double r = std::hypot(f, g);
  Svd2 out{};
  out.s1 = q + r;
  out.s2 = std::abs(q - r);
  const double p11 = h.a * h.a + h.c * h.c;
  const double p12 = h.a * h.b + h.c * h.d;
  const double p22 = h.b * h.b + h.d * h.d;
  const double theta = 0.5 * std::atan2(2.0 * p12, p11 - p22);
  out.right_top = {std::cos(theta), std::sin(theta)};
  out.right_bottom = {-std::sin(theta), std::cos(theta)};
  const Vec2 img = h * out.right_top;
  const double ni = norm(img);
  out.left_top = ni > 0.0 ? (1.0 / ni) * img : Vec2{1.0, 0.0};
  return out;
}

std::array<double, 2> sl2_norm_identity_check(const Mat2& h, const Tolerances& tol) {
  if (std::abs(std::abs(h.det()) - 1.0) > tol.sl2_det)
    fail(ErrorCode::PreconditionViolated, "sl2_norm_identity_check: |det h| != 1");
  const Svd2 s = svd2(h);
  const double n = h.op_norm();
  return {s.s1 / s.s2, n * n};
}

double proj_dist2(const Vec2& v, const Vec2& w) {
  return std::min(1.0, std::abs(v[0] * w[1] - v[1] * w[0]) / (norm(v) * norm(w)));
}

Vec3 random_unit_vector(CounterRng& rng) {
  for (;;) {
    const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
    const double n = norm(v);
    if (n > 1e-12) return (1.0 / n) * v;
  }
}

}  // namespace projdim
