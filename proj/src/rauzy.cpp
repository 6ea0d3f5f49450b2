#include "projdim/rauzy.hpp"

#include <algorithm>
#include <cmath>

#include "projdim/error.hpp"
#include "projdim/parallel.hpp"

namespace projdim {

const std::array<IntMat3, 3>& rauzy_exact() {
  static const std::array<IntMat3, 3> gens = {
      IntMat3{1, 1, 1, 0, 1, 0, 0, 0, 1},
      IntMat3{1, 0, 0, 1, 1, 1, 0, 0, 1},
      IntMat3{1, 0, 0, 0, 1, 0, 1, 1, 1},
  };
  return gens;
}

std::vector<Mat3> rauzy_generators() {
  std::vector<Mat3> out;
  for (const IntMat3& m : rauzy_exact()) out.push_back(to_mat3(m));
  return out;
}

Vec2 simplex_chart(const ProjPoint& p) {
  Vec3 v = p.rep();
  const double s = v[0] + v[1] + v[2];
  if (s < 0.0) v = -1.0 * v;
  for (double c : v)
    if (c < -1e-12) fail(ErrorCode::InvalidArgument, "simplex_chart: point outside the positive simplex");
  const double t = std::abs(s);
  return {std::max(0.0, v[0]) / t, std::max(0.0, v[1]) / t};
}

std::array<ProjPoint, 3> Cylinder::vertices() const {
  const Mat3 g = to_mat3(matrix);
  return {ProjPoint(g.col(0)), ProjPoint(g.col(1)), ProjPoint(g.col(2))};
}

std::vector<Cylinder> cylinder_cover(int depth) {
  if (depth < 0) fail(ErrorCode::InvalidArgument, "cylinder_cover: negative depth");
  if (std::pow(3.0, depth) > 1e6) fail(ErrorCode::Overflow, "cylinder_cover: 3^depth exceeds 1e6");
  std::vector<Cylinder> level{{{}, IntMat3{1, 0, 0, 0, 1, 0, 0, 0, 1}}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Cylinder> next;
    next.reserve(level.size() * 3);
    for (const Cylinder& c : level) {
      for (int i = 0; i < 3; ++i) {
        Cylinder child{c.word, int_mul(c.matrix, rauzy_exact()[static_cast<std::size_t>(i)])};
        child.word.push_back(i);
        next.push_back(std::move(child));
      }
    }
    level.swap(next);
  }
  return level;
}

Vec3 barycentric(const IntMat3& m, const Vec3& x) {
  // Coordinates c with m c = x, scaled to sum to one.
  const Mat3 g = to_mat3(m);
  Vec3 c = g.adjugate() * x;
  if (g.det() < 0) c = -1.0 * c;
  const double s = c[0] + c[1] + c[2];
  return (1.0 / s) * c;
}

bool in_cylinder(const IntMat3& m, const Vec3& x, double slack) {
  const Vec3 c = barycentric(m, x);
  return std::all_of(c.begin(), c.end(), [&](double v) { return v >= -slack; });
}

bool in_depth1_hole(const ProjPoint& p) {
  const Vec3& v = p.rep();
  return v[0] < v[1] + v[2] && v[1] < v[0] + v[2] && v[2] < v[0] + v[1];
}

GasketSample sample_gasket(std::size_t count, int burn_in, std::uint64_t seed) {
  GasketSample out;
  out.sample = sample_stationary(AtomicMeasure::uniform(rauzy_generators(), "rauzy"), count,
                                 burn_in, seed, false);
  out.chart.reserve(count);
  for (const ProjPoint& p : out.sample.points) out.chart.push_back(simplex_chart(p));
  return out;
}

BoxCount box_counting_dimension(const std::vector<Vec2>& points, int k_lo, int k_hi) {
  if (k_lo < 0 || k_hi < k_lo || k_hi > 14)
    fail(ErrorCode::InvalidArgument, "box counting: need 0 <= k_lo <= k_hi <= 14");
  const auto n_levels = static_cast<std::size_t>(k_hi - k_lo + 1);
  BoxCount out;
  out.levels.resize(n_levels);
  parallel_for(n_levels, [&](std::size_t li) {
    const int k = k_lo + static_cast<int>(li);
    const std::size_t side = std::size_t{1} << k;
    std::vector<bool> grid(side * side, false);
    std::size_t occupied = 0;
    for (const Vec2& p : points) {
      const auto cell = [&](double t) {
        const double c = std::floor(t * static_cast<double>(side));
        return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(side - 1)));
      };
      const std::size_t idx = cell(p[0]) * side + cell(p[1]);
      if (!grid[idx]) {
        grid[idx] = true;
        ++occupied;
      }
    }
    out.levels[li] = {k, occupied};
  });

  if (n_levels >= 2) {
    double mx = 0, my = 0;
    for (const auto& [k, n] : out.levels) {
      mx += k * std::log(2.0);
      my += std::log(static_cast<double>(std::max<std::size_t>(n, 1)));
    }
    mx /= static_cast<double>(n_levels);
    my /= static_cast<double>(n_levels);
    double sxy = 0, sxx = 0;
    for (const auto& [k, n] : out.levels) {
      const double x = k * std::log(2.0) - mx;
      sxy += x * (std::log(static_cast<double>(std::max<std::size_t>(n, 1))) - my);
      sxx += x * x;
    }
    out.slope = sxy / sxx;
  }
  return out;
}

}  // namespace projdim
