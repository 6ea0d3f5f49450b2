#pragma once

#include "projdim/linalg.hpp"

namespace projdim {

/// Orthogonal k with k v = E1 for a unit representative v of V. Rows are
/// (v, unit part of e2 orthogonal to v, their cross product), so k = I at
/// V = E1. Directions with <v, e1> = 0 lie on the excluded circle P(E1^perp)
/// and raise BadCircle.
Mat3 frame_for(const ProjPoint& V, const Tolerances& tol = default_tolerances());

/// g = k^-1 u l k with, in the frame of V,
///   u = [[lambda^2, x, y], [0, 1/lambda, 0], [0, 0, 1/lambda]],
///   l = [[det h, 0, 0], [n0, h.a, h.b], [n1, h.c, h.d]],  |det h| = 1.
struct ULFactors {
  double lambda = 1.0;
  double x = 0.0;
  double y = 0.0;
  Vec2 n{0.0, 0.0};
  Mat2 h = Mat2::identity();
  int det_sign = 1;  // sign of det h
  Mat3 frame = Mat3::identity();

  Mat3 u() const;
  Mat3 l() const;
  /// k^-1 u l k.
  Mat3 reconstruct() const;

  /// Factors of a pure L element in the standard frame (u = I).
  static ULFactors from_l(const Vec2& n, const Mat2& h);
};

struct LinearFormF {
  Vec3 coeffs;  // in frame coordinates
  double norm;
  double operator()(const Vec3& v) const { return dot(coeffs, v); }
};

/// Requires det g = 1 (NonUnimodular otherwise) and d(g^-1 V, V^perp) above
/// tol.reducible_direction (ReducibleDirection otherwise).
ULFactors ul_decompose(const Mat3& g, const ProjPoint& V,
                       const Tolerances& tol = default_tolerances());

/// Orthogonal projection of x onto V^perp. AtKernel when d(x, V) < tol.at_kernel.
ProjPoint project_orth(const ProjPoint& V, const ProjPoint& x,
                       const Tolerances& tol = default_tolerances());

/// Projection of x onto the plane with the given normal, along the line
/// spanned by kernel.
ProjPoint project_along(const Vec3& kernel, const Vec3& plane_normal, const ProjPoint& x,
                        const Tolerances& tol = default_tolerances());

/// Coordinates of w in V^perp with respect to the frame: entries 1, 2 of k w.
Vec2 plane_coords(const Mat3& frame, const Vec3& w);

/// h_{V,g}: the 2x2 matrix through which g acts on P(V^perp) in frame coordinates.
Mat2 h_of(const Mat3& g, const ProjPoint& V, const Tolerances& tol = default_tolerances());

/// f_l(v) = <r, (b, c) + a h^-1 n> for v = (a, b, c), r the top right singular
/// vector of h. Its kernel is spanned by l^-1 E1 and the repelling line of h.
LinearFormF f_form(const ULFactors& f);

/// 1 / d(l^-1 E1, E1^perp) = sqrt(1 + |h^-1 n|^2).
double inverse_kernel_distance(const ULFactors& f);

/// Projected action [l x] in P(R^2): the line through h (b, c) + a n.
Vec2 projected_action(const ULFactors& f, const Vec3& x);

struct ContractionProbe {
  double max_ratio = 0.0;     // max d([l x], [l x']) / d(x, x')
  double ratio_bound = 0.0;   // 2 C1 C2^2 / |h|^2
  double max_dist_to_attractor = 0.0;  // max d([l x], h^+)
  double inclusion_bound = 0.0;        // C1 C2 / |h|^2
  int pairs = 0;
};

/// Samples pairs from b(f_l, 1/C2), half of them at small separation, and
/// records the worst contraction ratio of the projected action. Requires
/// C1, C2 > 2 and d(l^-1 E1, E1^perp) > 1/C1.
ContractionProbe attracting_region_contraction_probe(const ULFactors& f, double C1, double C2,
                                                     int samples, std::uint64_t seed = 1);

}  // namespace projdim
