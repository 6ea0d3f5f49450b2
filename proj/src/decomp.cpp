#include "projdim/decomp.hpp"

#include <algorithm>

#include "projdim/error.hpp"

namespace projdim {

Mat3 frame_for(const ProjPoint& V, const Tolerances& tol) {
  const Vec3& v = V.rep();
  if (std::abs(v[0]) <= tol.bad_circle)
    fail(ErrorCode::BadCircle, "frame: direction lies on the circle P(E1^perp)");
  // Canonical form already has v[0] > 0 here.
  Vec3 r1 = Vec3{0.0, 1.0, 0.0} - v[1] * v;
  r1 = (1.0 / norm(r1)) * r1;
  return Mat3::from_rows(v, r1, cross(v, r1));
}

Mat3 ULFactors::u() const {
  const double il = 1.0 / lambda;
  return Mat3({lambda * lambda, x, y, 0, il, 0, 0, 0, il});
}

Mat3 ULFactors::l() const {
  return Mat3({h.det(), 0, 0, n[0], h.a, h.b, n[1], h.c, h.d});
}

Mat3 ULFactors::reconstruct() const { return frame.transpose() * u() * l() * frame; }

ULFactors ULFactors::from_l(const Vec2& n, const Mat2& h) {
  ULFactors f;
  f.n = n;
  f.h = h;
  f.det_sign = h.det() < 0 ? -1 : 1;
  return f;
}

ULFactors ul_decompose(const Mat3& g, const ProjPoint& V, const Tolerances& tol) {
  if (!g.finite()) fail(ErrorCode::NonFinite, "ul_decompose: non-finite entries");
  if (std::abs(g.det() - 1.0) > tol.unimodular)
    fail(ErrorCode::NonUnimodular, "ul_decompose: det g must be 1");

  const Vec3& v = V.rep();
  const Vec3 back = g.inverse() * v;
  const double d = std::abs(dot(back, v)) / norm(back);
  if (d <= tol.reducible_direction)
    fail(ErrorCode::ReducibleDirection, "ul_decompose: g^-1 V lies in V^perp");

  ULFactors f;
  f.frame = frame_for(V, tol);
  const Mat3 gp = f.frame * g * f.frame.transpose();

  const Mat2 B{gp(1, 1), gp(1, 2), gp(2, 1), gp(2, 2)};
  const double detB = B.det();
  f.lambda = 1.0 / std::sqrt(std::abs(detB));
  f.h = f.lambda * B;
  f.det_sign = detB < 0 ? -1 : 1;
  f.n = {f.lambda * gp(1, 0), f.lambda * gp(2, 0)};
  const Mat2 hi = f.h.inverse();
  f.x = gp(0, 1) * hi.a + gp(0, 2) * hi.c;
  f.y = gp(0, 1) * hi.b + gp(0, 2) * hi.d;
  return f;
}

ProjPoint project_orth(const ProjPoint& V, const ProjPoint& x, const Tolerances& tol) {
  if (proj_dist(x, V) < tol.at_kernel)
    fail(ErrorCode::AtKernel, "project_orth: x coincides with the kernel V");
  const Vec3& v = V.rep();
  return ProjPoint(x.rep() - dot(x.rep(), v) * v);
}

ProjPoint project_along(const Vec3& kernel, const Vec3& plane_normal, const ProjPoint& x,
                        const Tolerances& tol) {
  const double kn = dot(kernel, plane_normal);
  if (std::abs(kn) <= tol.reducible_direction * norm(kernel) * norm(plane_normal))
    fail(ErrorCode::ReducibleDirection, "project_along: kernel lies in the target plane");
  const Vec3 w = x.rep() - (dot(x.rep(), plane_normal) / kn) * kernel;
  if (norm(w) < tol.at_kernel) fail(ErrorCode::AtKernel, "project_along: x on the kernel");
  return ProjPoint(w);
}

Vec2 plane_coords(const Mat3& frame, const Vec3& w) {
  const Vec3 kw = frame * w;
  return {kw[1], kw[2]};
}

Mat2 h_of(const Mat3& g, const ProjPoint& V, const Tolerances& tol) {
  return ul_decompose(g, V, tol).h;
}

LinearFormF f_form(const ULFactors& f) {
  const Svd2 s = svd2(f.h);
  if (s.s1 / s.s2 - 1.0 < default_tolerances().degenerate_gap)
    fail(ErrorCode::DegenerateH, "f_form: sigma1(h) == sigma2(h)");
  Vec2 r = s.right_top;
  if (r[0] < 0.0 || (r[0] == 0.0 && r[1] < 0.0)) r = -1.0 * r;
  const Vec2 hn = f.h.inverse() * f.n;
  LinearFormF out;
  out.coeffs = {dot(r, hn), r[0], r[1]};
  out.norm = norm(out.coeffs);
  return out;
}

double inverse_kernel_distance(const ULFactors& f) {
  const Vec2 hn = f.h.inverse() * f.n;
  return std::sqrt(1.0 + dot(hn, hn));
}

Vec2 projected_action(const ULFactors& f, const Vec3& x) {
  const Vec2 bc{x[1], x[2]};
  return f.h * bc + x[0] * f.n;
}

ContractionProbe attracting_region_contraction_probe(const ULFactors& f, double C1, double C2,
                                                     int samples, std::uint64_t seed) {
  if (!(C1 > 2.0) || !(C2 > 2.0))
    fail(ErrorCode::PreconditionViolated, "contraction probe: C1, C2 must exceed 2");
  if (samples <= 0) fail(ErrorCode::InvalidArgument, "contraction probe: samples must be positive");
  const LinearFormF form = f_form(f);
  if (!(inverse_kernel_distance(f) < C1))
    fail(ErrorCode::PreconditionViolated, "contraction probe: d(l^-1 E1, E1^perp) <= 1/C1");

  const double hn = f.h.op_norm();
  const Vec2 attractor = svd2(f.h).left_top;
  ContractionProbe out;
  out.ratio_bound = 2.0 * C1 * C2 * C2 / (hn * hn);
  out.inclusion_bound = C1 * C2 / (hn * hn);

  CounterRng rng(seed, 0);
  auto in_region = [&](const Vec3& x) { return std::abs(form(x)) >= form.norm * norm(x) / C2; };
  auto draw = [&] {
    for (;;) {
      const Vec3 x = random_unit_vector(rng);
      if (in_region(x)) return x;
    }
  };

  for (int i = 0; i < samples; ++i) {
    const Vec3 x = draw();
    Vec3 y;
    if (i % 2 == 0) {
      y = draw();
    } else {
      const double scale = std::pow(10.0, -2.0 - 4.0 * rng.uniform());
      y = x + scale * random_unit_vector(rng);
      if (!in_region(y)) continue;
    }
    const double dxy = proj_dist(ProjPoint(x), ProjPoint(y));
    if (dxy <= 0.0) continue;
    const Vec2 lx = projected_action(f, x);
    const Vec2 ly = projected_action(f, y);
    out.max_ratio = std::max(out.max_ratio, proj_dist2(lx, ly) / dxy);
    out.max_dist_to_attractor = std::max({out.max_dist_to_attractor, proj_dist2(lx, attractor),
                                          proj_dist2(ly, attractor)});
    ++out.pairs;
  }
  return out;
}

}  // namespace projdim
