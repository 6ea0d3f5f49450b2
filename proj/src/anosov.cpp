#include "projdim/anosov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projdim/dimension.hpp"
#include "projdim/error.hpp"
#include "projdim/parallel.hpp"

namespace projdim {

Mat3 embed_iota(const Mat2& h, const Tolerances& tol) {
  if (std::abs(h.det() - 1.0) > tol.sl2_det) fail(ErrorCode::BadDet, "embed_iota: det h != 1");
  return Mat3({h.a, h.b, 0, h.c, h.d, 0, 0, 0, 1});
}

SchottkySL2::SchottkySL2(std::vector<Mat2> generators, const Tolerances& tol)
    : gens_(std::move(generators)) {
  if (gens_.empty()) fail(ErrorCode::InvalidArgument, "Schottky: no generators");
  for (const Mat2& g : gens_)
    if (std::abs(g.det() - 1.0) > tol.sl2_det) fail(ErrorCode::BadDet, "Schottky: det != 1");
  letters_ = gens_;
  for (const Mat2& g : gens_) letters_.push_back(g.inverse());

  // Contraction away from the repelling point: g maps {d(x, rep) > r} into B(att, 1/(|g|^2 r^2)),
  // inside B(att, r) once r^3 >= 1/|g|^2.
  for (const Mat2& g : letters_) {
    const Svd2 s = svd2(g);
    if (!(s.s1 > 1.0 + 1e-9)) fail(ErrorCode::PingPongFail, "Schottky: a letter is not hyperbolic");
    attract_.push_back(s.left_top);
    radius_ = std::max(radius_, std::cbrt(1.0 / (s.s1 * s.s1)));
  }
  min_sep_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < attract_.size(); ++i)
    for (std::size_t j = i + 1; j < attract_.size(); ++j)
      min_sep_ = std::min(min_sep_, proj_dist2(attract_[i], attract_[j]));
  if (!(min_sep_ > 2.0 * radius_))
    fail(ErrorCode::PingPongFail, "Schottky: attracting balls of radius " + std::to_string(radius_) +
                                      " overlap (min separation " + std::to_string(min_sep_) + ")");
}

SchottkySL2 SchottkySL2::symmetric(double lambda, double theta) {
  if (!(lambda > 1.0)) fail(ErrorCode::InvalidArgument, "Schottky: lambda must exceed 1");
  const Mat2 a{lambda, 0, 0, 1.0 / lambda};
  const Mat2 b = Mat2::rotation(theta) * a * Mat2::rotation(-theta);
  return SchottkySL2({a, b});
}

namespace {

struct Sl2Walker {
  const std::vector<Mat2>& letters;
  int m;
  int n_max;
  std::vector<std::vector<double>>& gaps;

  std::vector<double> letter_log_det;

  // log_det tracks log |det p| exactly; a.d - b.c cancels badly once the
  // entries of a long product are large.
  void walk(const Mat2& p, double log_det, int last, int depth) {
    // log(mu1 / mu2) = 2 log |p| - log |det p|.
    gaps[static_cast<std::size_t>(depth - 1)].push_back(2.0 * std::log(p.op_norm()) - log_det);
    if (depth == n_max) return;
    const int inv = last < m ? last + m : last - m;
    for (int next = 0; next < 2 * m; ++next) {
      if (next == inv) continue;
      Mat2 q = p * letters[static_cast<std::size_t>(next)];
      double ld = log_det + letter_log_det[static_cast<std::size_t>(next)];
      const double big = std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c), std::abs(q.d)});
      if (big > 1e64) {
        q = (1.0 / big) * q;
        ld -= 2.0 * std::log(big);
      }
      walk(q, ld, next, depth + 1);
    }
  }
};

double sl2_log_z(const std::vector<double>& gaps, double t) {
  double top = -std::numeric_limits<double>::infinity();
  for (double g : gaps) top = std::max(top, -t * g);
  double sum = 0.0;
  for (double g : gaps) sum += std::exp(-t * g - top);
  return top + std::log(sum);
}

}  // namespace

Sl2Exponent sl2_critical_exponent(const SchottkySL2& s, int n_max, double tol) {
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "sl2_critical_exponent: n_max must be >= 1");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "sl2_critical_exponent: tol must be positive");
  const auto m = static_cast<int>(s.generators().size());
  const double words = 2.0 * m * std::pow(2.0 * m - 1.0, n_max - 1);
  if (words > kEnumerationBudget) fail(ErrorCode::Overflow, "sl2_critical_exponent: word budget exceeded");

  std::vector<std::vector<std::vector<double>>> per_first(static_cast<std::size_t>(2 * m));
  parallel_for(per_first.size(), [&](std::size_t a) {
    auto& gaps = per_first[a];
    gaps.resize(static_cast<std::size_t>(n_max));
    Sl2Walker w{s.letters(), m, n_max, gaps, {}};
    for (const Mat2& g : s.letters()) w.letter_log_det.push_back(std::log(std::abs(g.det())));
    w.walk(s.letters()[a], w.letter_log_det[a], static_cast<int>(a), 1);
  });
  std::vector<std::vector<double>> gaps(static_cast<std::size_t>(n_max));
  for (const auto& part : per_first)
    for (std::size_t d = 0; d < part.size(); ++d) gaps[d].insert(gaps[d].end(), part[d].begin(), part[d].end());

  auto log_z = [&](double t, int n) { return sl2_log_z(gaps[static_cast<std::size_t>(n - 1)], t); };
  auto p_hat = [&](double t) { return log_z(t, n_max) - (n_max > 1 ? log_z(t, n_max - 1) : 0.0); };

  Sl2Exponent out;
  out.n_max = n_max;
  if (p_hat(0.0) <= 0.0) fail(ErrorCode::NoBracket, "sl2 pressure <= 0 at t = 0");
  if (p_hat(2.0) > 0.0) fail(ErrorCode::NoBracket, "sl2 pressure > 0 at t = 2");
  const auto [lo, hi] = bisect(p_hat, 0.0, 2.0, tol);
  out.lo = lo;
  out.hi = hi;
  out.delta0 = 0.5 * (lo + hi);
  for (int n = 1; n <= n_max; ++n) {
    auto f = [&](double t) { return log_z(t, n) / n; };
    if (f(0.0) > 0.0 && f(2.0) <= 0.0) {
      const auto [a, b] = bisect(f, 0.0, 2.0, tol);
      out.per_n_roots.emplace_back(0.5 * (a + b));
    } else {
      out.per_n_roots.emplace_back(std::nullopt);
    }
  }
  return out;
}

std::vector<Mat3> PerturbedFamily::member(double eps) const {
  if (direction.size() != base.size())
    fail(ErrorCode::InvalidArgument, "perturbed family: direction count differs from base");
  std::vector<Mat3> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Mat3 g = base[i] + eps * direction[i];
    const double d = g.det();
    if (!(d > 0.0)) fail(ErrorCode::BadDet, "perturbed family: det <= 0 at eps = " + std::to_string(eps));
    out.push_back((1.0 / std::cbrt(d)) * g);
  }
  return out;
}

namespace {

using Vec9 = std::array<double, 9>;

Vec9 flat(const Mat3& m) { return m.data(); }

// Gram-Schmidt step: returns the residual norm relative to |v| and, when it
// exceeds tol, appends the normalized residual to the basis.
template <std::size_t N>
double try_extend(std::vector<std::array<double, N>>& basis, std::array<double, N> v, double tol) {
  double nv = 0.0;
  for (double x : v) nv += x * x;
  nv = std::sqrt(nv);
  if (nv == 0.0) return 0.0;
  for (double& x : v) x /= nv;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      double d = 0.0;
      for (std::size_t i = 0; i < N; ++i) d += b[i] * v[i];
      for (std::size_t i = 0; i < N; ++i) v[i] -= d * b[i];
    }
  }
  double r = 0.0;
  for (double x : v) r += x * x;
  r = std::sqrt(r);
  if (r > tol) {
    for (double& x : v) x /= r;
    basis.push_back(v);
  }
  return r;
}

std::vector<double> real_eigenvalues(const Mat3& m) {
  // lambda^3 + a lambda^2 + b lambda + c.
  const double a = -(m(0, 0) + m(1, 1) + m(2, 2));
  const double b = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                   m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const double c = -m.det();
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<double> roots;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq));
  } else if (p == 0.0) {
    roots.push_back(0.0);
  } else {
    const double r = std::sqrt(-p / 3.0);
    const double phi = std::acos(std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0));
    for (int k = 0; k < 3; ++k) roots.push_back(2.0 * r * std::cos((phi - 2.0 * M_PI * k) / 3.0));
  }
  for (double& t : roots) {
    t -= a / 3.0;
    for (int it = 0; it < 3; ++it) {
      const double f = ((t + a) * t + b) * t + c;
      const double df = (3.0 * t + 2.0 * a) * t + b;
      if (df == 0.0) break;
      t -= f / df;
    }
  }
  return roots;
}

struct OrbitSpan {
  int rank;
  std::vector<Vec3> basis;
};

OrbitSpan orbit_span(const std::vector<Mat3>& algebra, const Vec3& v, double tol) {
  std::vector<Vec3> basis;
  for (const Mat3& a : algebra) try_extend(basis, a * v, tol);
  return {static_cast<int>(basis.size()), basis};
}

Vec3 canonical(const Vec3& v) { return ProjPoint(v).rep(); }

}  // namespace

IrreducibilityResult irreducibility_probe(const std::vector<Mat3>& gens, int trials,
                                          std::uint64_t seed, const Tolerances& tol) {
  IrreducibilityResult out;
  const double rt = tol.rank;
  bool near_threshold = false;

  // Algebra spanned by words: spin the identity under right multiplication.
  std::vector<Vec9> basis;
  std::vector<Mat3> algebra{Mat3::identity()};
  try_extend(basis, flat(Mat3::identity()), rt);
  std::vector<Mat3> frontier{Mat3::identity()};
  for (int depth = 0; depth < 9 && !frontier.empty() && basis.size() < 9; ++depth) {
    std::vector<Mat3> next;
    for (const Mat3& f : frontier) {
      for (const Mat3& g : gens) {
        Mat3 w = f * g;
        const double mx = w.max_abs();
        if (mx > 0.0) w = (1.0 / mx) * w;
        const double r = try_extend(basis, flat(w), rt);
        if (r > rt && r < 10.0 * rt) near_threshold = true;
        if (r > rt) {
          next.push_back(w);
          algebra.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  out.algebra_dim = static_cast<int>(basis.size());
  if (out.algebra_dim == 9) {
    out.inconclusive = near_threshold;
    return out;
  }
  out.irreducible = false;
  if (out.algebra_dim == 1) {
    out.line = Vec3{1.0, 0.0, 0.0};
    return out;
  }

  std::vector<Mat3> algebra_t;
  for (const Mat3& a : algebra) algebra_t.push_back(a.transpose());

  CounterRng rng(seed, 0);
  for (int t = 0; t < std::max(trials, 1) && !(out.line && out.plane_normal); ++t) {
    Mat3 m;
    for (const Mat3& a : algebra) m = m + rng.normal() * a;
    for (int transposed = 0; transposed < 2; ++transposed) {
      const Mat3 mm = transposed ? m.transpose() : m;
      const auto& alg = transposed ? algebra_t : algebra;
      for (double lam : real_eigenvalues(mm)) {
        const Svd3 s = svd3(mm - lam * Mat3::identity());
        const Vec3 v = s.v.col(2);
        const OrbitSpan span = orbit_span(alg, v, 1e3 * rt);
        if (span.rank == 3) continue;
        Vec3 sub_line, sub_normal;
        bool have_line = false, have_plane = false;
        if (span.rank == 1) {
          // Invariant line of alg.
          if (transposed) { sub_normal = span.basis[0]; have_plane = true; }
          else { sub_line = span.basis[0]; have_line = true; }
        } else {
          const Vec3 nrm = cross(span.basis[0], span.basis[1]);
          if (transposed) { sub_line = nrm; have_line = true; }
          else { sub_normal = nrm; have_plane = true; }
        }
        if (have_line && !out.line) out.line = canonical(sub_line);
        if (have_plane && !out.plane_normal) out.plane_normal = canonical(sub_normal);
      }
    }
  }
  if (!out.line && !out.plane_normal) {
    out.irreducible = true;
    out.inconclusive = true;
  }
  return out;
}

std::vector<JumpRow> scan_dimension_jump(const SchottkySL2& base, const std::vector<Mat3>& direction,
                                         const std::vector<double>& eps_grid, int n_max,
                                         double tol, std::uint64_t seed) {
  if (std::find(eps_grid.begin(), eps_grid.end(), 0.0) == eps_grid.end())
    fail(ErrorCode::InvalidArgument, "scan_dimension_jump: eps grid must contain 0");
  PerturbedFamily fam;
  for (const Mat2& h : base.generators()) fam.base.push_back(embed_iota(h));
  fam.direction = direction;

  std::vector<JumpRow> rows;
  for (double eps : eps_grid) {
    const std::vector<Mat3> gens = fam.member(eps);
    JumpRow row;
    row.eps = eps;
    row.irreducibility = irreducibility_probe(gens, 16, seed);
    const GapTable table = GapTable::enumerate(WordSystem::free_group(gens), n_max);
    row.s_a = critical_exponent(table, tol).s_a;
    if (eps == 0.0) {
      row.delta0 = sl2_critical_exponent(base, n_max, tol).delta0;
      row.prediction = fuchsian_jump_prediction(*row.delta0);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace projdim
