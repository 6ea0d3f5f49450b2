// Acceptance suite. One line per criterion: status, id, name, measured values
// against pinned tolerances, wall time against its budget. Exit status is the
// number of failed hard criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "projdim/affinity.hpp"
#include "projdim/anosov.hpp"
#include "projdim/decomp.hpp"
#include "projdim/partitions.hpp"
#include "projdim/randwalk.hpp"
#include "projdim/rauzy.hpp"

using namespace projdim;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  bool soft;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string g(double x) { return fmt("%.6g", x); }

long double rel_reconstruction_error(const Mat3& g, const CartanData& c) {
  const auto d = oracle::widen(Mat3::diag(c.sigma[0], c.sigma[1], c.sigma[2]));
  const auto rec = oracle::mul(oracle::mul(oracle::widen(c.k_left), d), oracle::widen(c.k_right));
  return oracle::max_abs_diff(rec, oracle::widen(g)) / oracle::max_abs(oracle::widen(g));
}

// 1. Cartan frames reconstruct g; V far from H_g^- is expanded by g and pulled
//    toward V_g^+.
Outcome cartan_check() {
  CounterRng rng(101, 1);
  long double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const Mat3 m = testing::random_mat3(rng);
    worst = std::max(worst, rel_reconstruction_error(m, cartan(m)));
  }
  double worst_expand = -1, worst_attract = -1;
  for (int i = 0; i < 100000; ++i) {
    const Mat3 m = testing::random_mat3(rng);
    const Vec3 v = testing::random_vec(rng);
    const CartanData c = cartan(m);
    const ProjPoint V(v);
    const double dh = dist_point_hyperplane(V, c.h_minus);
    const double expand = norm(m * v) / (c.sigma[0] * norm(v));
    worst_expand = std::max(worst_expand, dh - expand);
    worst_attract = std::max(worst_attract, proj_dist(act(m, V), c.v_plus) * dh - c.sigma[1] / c.sigma[0]);
  }
  Outcome o;
  o.pass = worst <= 1e-9 && worst_expand <= 1e-10 && worst_attract <= 1e-10;
  o.detail = "max rel recon " + g(static_cast<double>(worst)) + " <= 1e-9; max d(V,H-) - |gv|/|g||v| " +
             g(worst_expand) + " <= 1e-10; max d(gV,V+) d(V,H-) - s2/s1 " + g(worst_attract) + " <= 1e-10";
  return o;
}

// 2. UL reconstruction and the projection identity at 10 points per pair.
Outcome ul_check() {
  CounterRng rng(202, 1);
  int pairs = 0, skipped_circle = 0;
  long double worst_rec = 0;
  double worst_id = 0;
  while (pairs < 10000) {
    const Mat3 m = testing::random_sl3(rng);
    const ProjPoint V(testing::random_vec(rng));
    const Vec3 back = m.inverse() * V.rep();
    if (std::abs(dot(back, V.rep())) / norm(back) <= 0.1) continue;
    if (std::abs(V[0]) <= default_tolerances().bad_circle) {
      ++skipped_circle;
      continue;
    }
    const ULFactors f = ul_decompose(m, V);
    const auto k = oracle::widen(f.frame);
    const auto rec = oracle::mul(oracle::transpose(k), oracle::mul(oracle::mul(oracle::widen(f.u()), oracle::widen(f.l())), k));
    worst_rec = std::max(worst_rec, oracle::max_abs_diff(rec, oracle::widen(m)) / oracle::max_abs(oracle::widen(m)));
    for (int t = 0; t < 10;) {
      const ProjPoint x(testing::random_vec(rng));
      if (proj_dist(act(m, x), V) < 1e-3 || proj_dist(x, ProjPoint(back)) < 1e-3) continue;
      const Vec2 lhs = plane_coords(f.frame, project_orth(V, act(m, x)).rep());
      const Vec2 rhs = f.h * plane_coords(f.frame, project_along(back, V.rep(), x).rep());
      worst_id = std::max(worst_id, proj_dist2(lhs, rhs));
      ++t;
    }
    ++pairs;
  }
  Outcome o;
  o.pass = worst_rec <= 1e-10 && worst_id <= 1e-9;
  o.detail = "max rel recon " + g(static_cast<double>(worst_rec)) + " <= 1e-10; max identity defect " +
             g(worst_id) + " <= 1e-9 (" + std::to_string(pairs) + " pairs, " + std::to_string(skipped_circle) +
             " skipped on P(E1^perp))";
  return o;
}

// 3. Exact spectrum of a diagonal atom; simple Rauzy spectrum across seeds.
Outcome lyapunov_check() {
  const LyapunovEstimate d = lyapunov_spectrum(AtomicMeasure::uniform({Mat3::diag(2, 1, 0.5)}), 100000, 8, 1);
  const double ln2 = std::log(2.0);
  const double diag_err =
      std::max({std::abs(d.lambda[0] - ln2), std::abs(d.lambda[1]), std::abs(d.lambda[2] + ln2)});
  Outcome o;
  o.pass = diag_err <= 1e-8;
  const AtomicMeasure rz = AtomicMeasure::uniform(rauzy_generators());
  double min_z = INFINITY, min_chi1 = INFINITY, min_chi_gap = INFINITY;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const LyapunovEstimate e = lyapunov_spectrum(rz, 100000, 8, seed);
    const double z12 = (e.lambda[0] - e.lambda[1]) / e.stderr_gap[0];
    const double z23 = (e.lambda[1] - e.lambda[2]) / e.stderr_gap[1];
    min_z = std::min({min_z, z12, z23});
    min_chi1 = std::min(min_chi1, e.chi[0]);
    min_chi_gap = std::min(min_chi_gap, e.chi[1] - e.chi[0]);
  }
  o.pass = o.pass && min_z > 5 && min_chi1 > 0 && min_chi_gap > 0;
  o.detail = "diag(2,1,1/2) max err " + g(diag_err) + " <= 1e-8; Rauzy 8 seeds: min gap/stderr " + g(min_z) +
             " > 5, min chi1 " + g(min_chi1) + " > 0, min chi2-chi1 " + g(min_chi_gap) + " > 0";
  return o;
}

// 4. Free semigroup: 3^n distinct products and entropy n log 3; separated words.
Outcome entropy_check() {
  const AtomicMeasure rz = AtomicMeasure::uniform(rauzy_generators());
  const EntropyResult e = random_walk_entropy(rz, 8);
  double worst = 0;
  bool free = e.exact;
  for (int n = 1; n <= 8; ++n) {
    worst = std::max(worst, std::abs(e.per_step[n - 1] - std::log(3.0)));
    free = free && e.distinct[n - 1] == static_cast<std::size_t>(std::pow(3, n));
  }
  double min_sep = INFINITY;
  for (int n = 1; n <= 8; ++n) min_sep = std::min(min_sep, exponential_separation_probe(rz, n).min_dist);
  Outcome o;
  o.pass = free && worst <= 1e-12 && min_sep >= 1;
  o.detail = std::string("exact dedup ") + (e.exact ? "yes" : "no") + ", 3^n distinct for n<=8: " +
             (free ? "yes" : "no") + "; max |H/n - log 3| " + g(worst) + " <= 1e-12; min separation " +
             g(min_sep) + " >= 1";
  return o;
}

// 5. Three copies of diag(4, 1, 1/4): Z_n(s) = 3^n 4^{-ns} for s <= 1.
Outcome closed_form_check() {
  const Mat3 a = Mat3::diag(4, 1, 0.25);
  const CriticalExponent c = critical_exponent({a, a, a}, 8, 1e-9);
  const double exact = std::log(3.0) / std::log(4.0);
  Outcome o;
  o.pass = std::abs(c.s_a - exact) <= 1e-3;
  o.detail = "sA " + fmt("%.9f", c.s_a) + " vs log3/log4 " + fmt("%.9f", exact) + ", |diff| " +
             g(std::abs(c.s_a - exact)) + " <= 1e-3";
  return o;
}

// 6. Rauzy with the run-length induced system at the deepest block depth the
//    enumeration budget allows; plain letters at n = 12 shown for reference.
Outcome rauzy_affinity_check() {
  const WordSystem sys = WordSystem::run_length_induced(rauzy_generators(), 6);
  const int depth = std::min(12, sys.max_depth());
  const CriticalExponent c = critical_exponent(GapTable::enumerate(sys, depth), 1e-9);
  double worst_rise = -INFINITY;
  std::string roots;
  std::optional<double> prev, last;
  bool all_roots = true;
  for (const auto& r : c.per_n_roots) {
    roots += (roots.empty() ? "" : " ") + (r ? fmt("%.6f", *r) : std::string("none"));
    if (!r) {
      all_roots = false;
      continue;
    }
    if (prev) worst_rise = std::max(worst_rise, *r - *prev);
    prev = r;
    last = r;
  }
  const CriticalExponent plain = critical_exponent(GapTable::enumerate(WordSystem::free_semigroup(rauzy_generators()), 12), 1e-6);
  std::string plain_roots;
  for (const auto& r : plain.per_n_roots) plain_roots += (plain_roots.empty() ? "" : " ") + (r ? fmt("%.4f", *r) : "none");

  Outcome o;
  o.pass = all_roots && worst_rise <= 1e-6 && c.p_hat_1 > 0 && c.p_hat_2 < 0 && last && *last >= 1.40 && *last <= 1.80;
  o.detail = "induced cap 6, " + std::to_string(depth) + " blocks: per-n roots [" + roots + "], max rise " +
             g(worst_rise) + " <= 1e-6; P(1) " + g(c.p_hat_1) + " > 0; P(2) " + g(c.p_hat_2) +
             " < 0; final " + (last ? fmt("%.6f", *last) : "none") + " in [1.40, 1.80]; sA " + fmt("%.6f", c.s_a) +
             " | info: plain letters n<=12 roots [" + plain_roots + "]";
  return o;
}

// 7. Fuchsian Schottky group: the SL3 solver on iota(rho) against the SL2 prediction.
Outcome jump_check() {
  const SchottkySL2 base = SchottkySL2::symmetric(6, std::numbers::pi / 4);
  const int n_max = 10;
  const auto rows = scan_dimension_jump(base, {Mat3{}, Mat3{}}, {0.0}, n_max, 1e-7);
  const JumpRow& r = rows.front();
  // Independent evaluation of min(2 d, d + 1/2) from the SL2 exponent.
  const double d0 = *r.delta0;
  const double pred = std::min(2 * d0, d0 + 0.5);
  Outcome o;
  o.pass = r.prediction && std::abs(*r.prediction - pred) < 1e-15 && std::abs(r.s_a - pred) <= 0.05;
  o.detail = "lambda 6, theta pi/4, n_max " + std::to_string(n_max) + ": sA " + fmt("%.6f", r.s_a) + ", delta0 " +
             fmt("%.6f", d0) + ", prediction " + fmt("%.6f", pred) + ", |diff| " + g(std::abs(r.s_a - pred)) +
             " <= 0.05";
  return o;
}

// 8. Entropy dimension of the projection at resolved levels.
Outcome projection_check() {
  const AtomicMeasure rz = AtomicMeasure::uniform(rauzy_generators());
  const std::uint64_t seed = 8;
  const ProjPoint V = sample_stationary(rz, 1, kDefaultBurnIn, seed ^ 0x9e3779b97f4a7c15ULL, true).points[0];
  const StationarySample s = sample_stationary(rz, 1000000, kDefaultBurnIn, seed);
  const ProjectedSample ps = project_sample(s.points, V);
  const auto curve = entropy_dimension_curve(ps.coords, 2, 1, 24);
  const LyapunovEstimate e = lyapunov_spectrum(rz, 100000, 8, seed);
  const double target = std::min(1.0, std::log(3.0) / e.chi[0]);
  std::string vals;
  const EntropyDimRow* finest = nullptr;
  for (const auto& r : curve) {
    if (r.undersampled) break;
    finest = &r;
    if (r.n % 4 == 0) vals += (vals.empty() ? "" : " ") + std::to_string(r.n) + ":" + fmt("%.4f", r.value);
  }
  Outcome o;
  o.pass = finest && std::abs(finest->value - target) <= 0.1;
  o.detail = "q 2, 1e6 samples, resolved levels 1.." + std::to_string(finest ? finest->n : 0) + " [" + vals +
             "]; finest " + (finest ? fmt("%.4f", finest->value) : "none") + " vs min(1, log3/chi1) " +
             fmt("%.4f", target) + " (chi1 " + fmt("%.4f", e.chi[0]) + "), |diff| <= 0.1";
  return o;
}

// 9. Entropy of refinements and of mixtures on q-adic histograms.
Outcome partition_check() {
  CounterRng rng(909, 1);
  double worst_mono = -INFINITY, worst_step = -INFINITY, worst_lo = -INFINITY, worst_hi = -INFINITY;
  for (int t = 0; t < 1000; ++t) {
    const int q = 2 + static_cast<int>(rng.index(3));
    const int level = 2 + static_cast<int>(rng.index(4));
    const std::size_t k = 2 + rng.index(4);
    std::vector<QadicHistogram> parts;
    std::vector<double> p;
    const std::size_t cells = static_cast<std::size_t>(std::pow(q, level));
    std::vector<double> mix(cells, 0.0);
    double ptot = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::uint64_t> counts(cells);
      for (auto& c : counts) c = rng.uniform() < 0.5 ? 0 : rng.index(500);
      counts[rng.index(cells)] += 1;
      parts.push_back(QadicHistogram::from_counts(q, level, counts));
      p.push_back(rng.uniform() + 1e-3);
      ptot += p.back();
    }
    double inner = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const QadicHistogram& h = parts[i];
      inner += p[i] / ptot * entropy(h);
      for (std::size_t c = 0; c < cells; ++c)
        mix[c] += p[i] / ptot * static_cast<double>(h.counts()[c]) / static_cast<double>(h.total());
      for (int n = 1; n < level; ++n) {
        const double hn = entropy(h.coarsen(n)), hn1 = entropy(h.coarsen(n + 1));
        worst_mono = std::max(worst_mono, hn - hn1);
        worst_step = std::max(worst_step, std::abs(hn1 - hn) - std::log(static_cast<double>(q)));
      }
    }
    const double hm = entropy_of_weights(mix);
    worst_lo = std::max(worst_lo, inner - hm);
    worst_hi = std::max(worst_hi, hm - inner - entropy_of_weights(p));
  }
  Outcome o;
  o.pass = worst_mono <= 1e-12 && worst_step <= 1e-12 && worst_lo <= 1e-12 && worst_hi <= 1e-12;
  o.detail = "1e3 mixtures: max H_n - H_{n+1} " + g(worst_mono) + ", max |dH| - log q " + g(worst_step) +
             ", concavity defect " + g(worst_lo) + ", almost-convexity defect " + g(worst_hi) + " (all <= 1e-12)";
  return o;
}

// 10. Box counting of a chord and of the whole simplex, sent through the same
//     chart as the gasket sample, then of the gasket itself.
Outcome box_check() {
  CounterRng rng(1010, 1);
  std::vector<Vec2> seg, tri;
  const Vec3 a{0.7, 0.2, 0.1}, b{0.1, 0.3, 0.6};
  for (int i = 0; i < 1000000; ++i) {
    const double t = rng.uniform();
    seg.push_back(simplex_chart(ProjPoint((1 - t) * a + t * b)));
    // Dirichlet(1, 1, 1): uniform on the simplex.
    const Vec3 e{-std::log1p(-rng.uniform()), -std::log1p(-rng.uniform()), -std::log1p(-rng.uniform())};
    tri.push_back(simplex_chart(ProjPoint(e)));
  }
  const double s1 = box_counting_dimension(seg, 4, 10).slope;
  const double s2 = box_counting_dimension(tri, 4, 8).slope;
  const double sr = box_counting_dimension(sample_gasket(1000000, kDefaultBurnIn, 10).chart, 4, 8).slope;
  Outcome o;
  o.pass = std::abs(s1 - 1) <= 0.05 && std::abs(s2 - 2) <= 0.05 && sr >= 1.1 && sr <= 1.9;
  o.detail = "chord " + fmt("%.4f", s1) + " (1 +- 0.05); simplex " + fmt("%.4f", s2) + " (2 +- 0.05); Rauzy 1e6 pts levels 4..8 " +
             fmt("%.4f", sr) + " in [1.1, 1.9]";
  return o;
}

// 11. Mass of hyperplane neighbourhoods under the Rauzy stationary measure.
//     Each hyperplane passes through a sample point in a uniform direction, so
//     it meets the support.
Outcome guivarch_check() {
  const StationarySample s = sample_stationary(AtomicMeasure::uniform(rauzy_generators()), 1000000, kDefaultBurnIn, 11);
  std::vector<double> radii;
  for (int k = 1; k <= 16; ++k) radii.push_back(std::pow(2.0, -k));
  CounterRng rng(11, 1u << 20);
  double min_beta = INFINITY;
  int nonstrict = 0, min_resolved = 1 << 20;
  for (int h = 0; h < 20; ++h) {
    const Vec3& x = s.points[rng.index(s.points.size())].rep();
    const ProjHyperplane W(cross(x, random_unit_vector(rng)));
    const GuivarchResult r = guivarch_probe(s, W, radii);
    min_beta = std::min(min_beta, r.beta_hat);
    min_resolved = std::min(min_resolved, r.resolved);
    const GuivarchRow* prev = nullptr;
    for (const GuivarchRow& row : r.rows) {
      if (row.count < 10) break;
      if (prev && !(row.mass < prev->mass)) ++nonstrict;
      prev = &row;
    }
  }
  Outcome o;
  o.pass = min_beta > 0 && nonstrict == 0;
  o.detail = "20 hyperplanes, 1e6 pts: min beta " + g(min_beta) + " > 0; non-decreasing steps " +
             std::to_string(nonstrict) + " == 0; min resolved radii " + std::to_string(min_resolved);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "cartan", 5, false, cartan_check},
      {2, "ul-decomposition", 10, false, ul_check},
      {3, "lyapunov", 30, false, lyapunov_check},
      {4, "walk-entropy", 60, false, entropy_check},
      {5, "affinity-closed-form", 5, false, closed_form_check},
      {6, "rauzy-affinity", 600, false, rauzy_affinity_check},
      {7, "dimension-jump", 600, false, jump_check},
      {8, "projection-entropy", 300, true, projection_check},
      {9, "partition-entropy", 2, false, partition_check},
      {10, "box-counting", 180, false, box_check},
      {11, "guivarch", 180, false, guivarch_check},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.pass && in_time;
    if (!ok && !c.soft) ++failed;
    std::printf("%s %2d %-21s %s; time %.2f s < %g s%s\n", ok ? "PASS" : (c.soft ? "FAIL(soft)" : "FAIL"), c.id,
                c.name, o.detail.c_str(), secs, c.budget_s, in_time ? "" : " EXCEEDED");
    std::fflush(stdout);
  }
  return failed;
}
