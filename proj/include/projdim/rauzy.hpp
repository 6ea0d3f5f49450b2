#pragma once

#include <array>
#include <vector>

#include "projdim/randwalk.hpp"

namespace projdim {

/// A1 = [[1,1,1],[0,1,0],[0,0,1]], A2 and A3 the same with the row of ones
/// moved to rows 2 and 3.
const std::array<IntMat3, 3>& rauzy_exact();
std::vector<Mat3> rauzy_generators();

/// Planar chart of the projectivized positive cone: x -> (x, y) / (x + y + z)
/// with the representative scaled to be nonnegative. InvalidArgument for
/// points outside the closed simplex.
Vec2 simplex_chart(const ProjPoint& p);

struct Cylinder {
  std::vector<int> word;  // letters 0, 1, 2 for A1, A2, A3
  IntMat3 matrix;         // A_w = A_{w1} ... A_{wn}
  std::array<ProjPoint, 3> vertices() const;  // columns of A_w
};

/// All 3^depth cylinders A_w Delta in lexicographic word order. depth <= 12.
std::vector<Cylinder> cylinder_cover(int depth);

/// Barycentric coordinates of x with respect to the columns of m.
Vec3 barycentric(const IntMat3& m, const Vec3& x);
/// x lies in m Delta (barycentric coordinates all >= -slack).
bool in_cylinder(const IntMat3& m, const Vec3& x, double slack = 1e-12);

/// The open middle triangle left out by A1 Delta, A2 Delta, A3 Delta:
/// x < y + z, y < x + z, z < x + y.
bool in_depth1_hole(const ProjPoint& p);

struct GasketSample {
  StationarySample sample;
  std::vector<Vec2> chart;
};

/// Stationary sample of the uniform Rauzy walk with chart coordinates.
GasketSample sample_gasket(std::size_t count, int burn_in, std::uint64_t seed);

struct BoxCount {
  std::vector<std::pair<int, std::size_t>> levels;  // (k, occupied cells of side 2^-k)
  double slope = 0.0;                              // least squares of log N_k on k log 2
};

/// Counts occupied cells of the 2^k grid on [0, 1]^2 for k in [k_lo, k_hi].
BoxCount box_counting_dimension(const std::vector<Vec2>& points, int k_lo, int k_hi);

}  // namespace projdim
