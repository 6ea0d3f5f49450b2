#include "projdim/randwalk.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "projdim/error.hpp"
#include "projdim/parallel.hpp"

namespace projdim {

Mat3 to_mat3(const IntMat3& m) {
  Mat3 g;
  for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = static_cast<double>(m[static_cast<std::size_t>(i)]);
  return g;
}

IntMat3 int_mul(const IntMat3& a, const IntMat3& b) {
  IntMat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < 3; ++k) {
        std::int64_t t;
        if (__builtin_mul_overflow(a[static_cast<std::size_t>(3 * i + k)],
                                   b[static_cast<std::size_t>(3 * k + j)], &t) ||
            __builtin_add_overflow(acc, t, &acc))
          fail(ErrorCode::Overflow, "integer matrix product exceeds 64 bits");
      }
      r[static_cast<std::size_t>(3 * i + j)] = acc;
    }
  }
  return r;
}

std::optional<IntMat3> exact_form(const Mat3& g) {
  IntMat3 m{};
  for (int i = 0; i < 9; ++i) {
    const double x = g.data()[static_cast<std::size_t>(i)];
    if (!std::isfinite(x) || std::abs(x) >= 9007199254740992.0 || x != std::floor(x))
      return std::nullopt;
    m[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(x);
  }
  return m;
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms, std::string label, const Tolerances& tol)
    : atoms_(std::move(atoms)), label_(std::move(label)) {
  if (atoms_.empty()) fail(ErrorCode::InvalidArgument, "measure: no atoms");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!a.g.finite()) fail(ErrorCode::NonFinite, "measure: atom " + std::to_string(i) + " not finite");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      fail(ErrorCode::InvalidArgument, "measure: atom " + std::to_string(i) + " weight must be positive");
    if (a.exact && (to_mat3(*a.exact) - a.g).max_abs() > tol.exact_match)
      fail(ErrorCode::InvalidArgument,
           "measure: atom " + std::to_string(i) + " exact form differs from matrix");
    total += a.weight;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > tol.weight_sum)
    fail(ErrorCode::InvalidArgument, "measure: weights sum to " + std::to_string(total));
}

AtomicMeasure AtomicMeasure::uniform(const std::vector<Mat3>& gens, std::string label) {
  std::vector<Atom> atoms;
  std::vector<std::optional<IntMat3>> ex;
  bool all_exact = true;
  for (const Mat3& g : gens) {
    ex.push_back(exact_form(g));
    all_exact = all_exact && ex.back().has_value();
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    atoms.push_back({gens[i], 1.0 / static_cast<double>(gens.size()),
                     all_exact ? ex[i] : std::nullopt});
  // Equal weights need not sum to exactly 1 in floating point.
  Tolerances tol = default_tolerances();
  tol.weight_sum = std::max(tol.weight_sum, 1e-15 * static_cast<double>(gens.size()));
  return AtomicMeasure(std::move(atoms), std::move(label), tol);
}

bool AtomicMeasure::exact() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.exact.has_value(); });
}

std::vector<Mat3> AtomicMeasure::matrices() const {
  std::vector<Mat3> out;
  for (const Atom& a : atoms_) out.push_back(a.g);
  return out;
}

AtomicMeasure AtomicMeasure::inverse() const {
  std::vector<Atom> inv;
  for (const Atom& a : atoms_) {
    Atom b{a.g.inverse(), a.weight, std::nullopt};
    if (a.exact && std::abs(std::abs(a.g.det()) - 1.0) < 0.5) b.exact = exact_form(b.g);
    inv.push_back(b);
  }
  Tolerances tol = default_tolerances();
  tol.weight_sum = 1.0;  // already validated
  tol.exact_match = 1e-9;
  return AtomicMeasure(std::move(inv), label_.empty() ? label_ : label_ + "^-1", tol);
}

std::size_t AtomicMeasure::pick(double u) const {
  const double target = u * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), atoms_.size() - 1);
}

namespace {

void require_unimodular(const AtomicMeasure& nu) {
  const double tol = default_tolerances().unimodular;
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (std::abs(std::abs(nu.atoms()[i].g.det()) - 1.0) > tol)
      fail(ErrorCode::NonUnimodular, "atom " + std::to_string(i) + " has |det| != 1");
}

// Modified Gram-Schmidt on the columns of q; returns log of the diagonal of R.
Vec3 qr_step(Mat3& q) {
  Vec3 c[3] = {q.col(0), q.col(1), q.col(2)};
  Vec3 logs{};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < j; ++i) c[j] = c[j] - dot(c[i], c[j]) * c[i];
    const double r = norm(c[j]);
    logs[static_cast<std::size_t>(j)] = std::log(r);
    c[j] = (1.0 / r) * c[j];
  }
  q = Mat3::from_cols(c[0], c[1], c[2]);
  return logs;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double std_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

// Kahan-compensated sum of -p log p.
double shannon(const std::vector<double>& probs) {
  double sum = 0.0, comp = 0.0;
  for (double p : probs) {
    if (p <= 0.0) continue;
    const double term = -p * std::log(p) - comp;
    const double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
  }
  return sum;
}

}  // namespace

LyapunovEstimate lyapunov_spectrum(const AtomicMeasure& nu, long steps, int chains,
                                   std::uint64_t seed, int qr_period) {
  if (steps < 1000) fail(ErrorCode::InvalidArgument, "lyapunov: steps must be >= 1000");
  if (chains < 1) fail(ErrorCode::InvalidArgument, "lyapunov: chains must be >= 1");
  if (qr_period < 1) fail(ErrorCode::InvalidArgument, "lyapunov: qr period must be >= 1");
  require_unimodular(nu);

  // |g|_F |g^-1|_F bounds the condition number added by one step. Once the
  // product since the last QR passes 1e6 the smallest column would lose too
  // many digits, so the QR happens early.
  std::vector<double> cond;
  for (const Atom& a : nu.atoms()) cond.push_back(a.g.frobenius() * a.g.inverse().frobenius());

  std::vector<Vec3> per_chain(static_cast<std::size_t>(chains));
  parallel_for(per_chain.size(), [&](std::size_t c) {
    CounterRng rng(seed, c);
    Mat3 q = Mat3::identity();
    Vec3 acc{};
    double grow = 1.0;
    for (long t = 1; t <= steps; ++t) {
      const std::size_t i = nu.pick(rng.uniform());
      q = nu.atoms()[i].g * q;
      grow *= cond[i];
      if (t % qr_period == 0 || grow > 1e6 || t == steps) {
        acc = acc + qr_step(q);
        grow = 1.0;
      }
    }
    per_chain[c] = (1.0 / static_cast<double>(steps)) * acc;
  });

  LyapunovEstimate est;
  est.steps = steps;
  est.chains = chains;
  est.seed = seed;
  std::vector<double> comp[3], gap1, gap2, chi2;
  for (const Vec3& l : per_chain) {
    for (int i = 0; i < 3; ++i) comp[i].push_back(l[static_cast<std::size_t>(i)]);
    gap1.push_back(l[0] - l[1]);
    gap2.push_back(l[1] - l[2]);
    chi2.push_back(l[0] - l[2]);
  }
  for (int i = 0; i < 3; ++i) {
    est.lambda[static_cast<std::size_t>(i)] = mean(comp[i]);
    est.stderr_lambda[static_cast<std::size_t>(i)] = std_error(comp[i]);
  }
  est.chi = {mean(gap1), mean(chi2)};
  est.stderr_gap = {std_error(gap1), std_error(gap2)};
  est.stderr_chi = {std_error(gap1), std_error(chi2)};
  return est;
}

StationarySample sample_stationary(const AtomicMeasure& nu, std::size_t count, int burn_in,
                                   std::uint64_t seed, bool inverse) {
  if (count == 0) fail(ErrorCode::InvalidArgument, "sample_stationary: count must be positive");
  if (burn_in < 50) fail(ErrorCode::InvalidArgument, "sample_stationary: burn_in must be >= 50");
  const AtomicMeasure walk = inverse ? nu.inverse() : nu;

  Vec3 start{1.0, std::sqrt(2.0), M_PI};
  start = (1.0 / norm(start)) * start;

  std::vector<Vec3> reps(count);
  parallel_for(count, [&](std::size_t i) {
    CounterRng rng(seed, i);
    Vec3 x = start;
    for (int t = 0; t < burn_in; ++t) {
      x = walk.atoms()[walk.pick(rng.uniform())].g * x;
      const double nx = norm(x);
      if (nx == 0.0 || !std::isfinite(nx)) fail(ErrorCode::KernelHit, "sample_stationary: walk hit 0");
      x = (1.0 / nx) * x;
    }
    reps[i] = x;
  });

  StationarySample out;
  out.burn_in = burn_in;
  out.seed = seed;
  out.inverse = inverse;
  out.points.reserve(count);
  for (const Vec3& x : reps) out.points.emplace_back(x);
  return out;
}

namespace {

struct LevelEntry {
  Mat3 g;
  IntMat3 exact;
  double p;
};

IntMat3 rounded_key(const Mat3& g, double resolution) {
  IntMat3 key{};
  for (std::size_t i = 0; i < 9; ++i) {
    const double q = std::round(g.data()[i] / resolution);
    if (std::abs(q) > 9.0e18) fail(ErrorCode::Overflow, "entropy: product entries exceed hashing range");
    key[i] = static_cast<std::int64_t>(q);
  }
  return key;
}

void check_budget(std::size_t atoms, int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "word length must be >= 1");
  if (std::pow(static_cast<double>(atoms), n) > kEnumerationBudget)
    fail(ErrorCode::Overflow, "enumeration exceeds the 1e7 word budget");
}

}  // namespace

EntropyResult random_walk_entropy(const AtomicMeasure& nu, int max_n, const Tolerances& tol) {
  check_budget(nu.size(), max_n);
  EntropyResult out;
  out.exact = nu.exact();

  std::map<IntMat3, LevelEntry> level;
  level[rounded_key(Mat3::identity(), 1.0)] = {Mat3::identity(), rounded_key(Mat3::identity(), 1.0), 1.0};
  for (int n = 1; n <= max_n; ++n) {
    std::map<IntMat3, LevelEntry> next;
    for (const auto& [key, e] : level) {
      for (const Atom& a : nu.atoms()) {
        LevelEntry child;
        child.p = e.p * a.weight;
        IntMat3 k;
        if (out.exact) {
          child.exact = int_mul(e.exact, *a.exact);
          child.g = to_mat3(child.exact);
          k = child.exact;
        } else {
          child.g = e.g * a.g;
          k = rounded_key(child.g, tol.dedup_resolution);
        }
        auto [it, inserted] = next.try_emplace(k, child);
        if (!inserted) it->second.p += child.p;
      }
    }
    level.swap(next);
    std::vector<double> probs;
    probs.reserve(level.size());
    for (const auto& kv : level) probs.push_back(kv.second.p);
    const double h = shannon(probs);
    out.entropy.push_back(h);
    out.per_step.push_back(h / n);
    out.distinct.push_back(level.size());
  }
  out.h_rw = out.per_step.back();
  return out;
}

SeparationResult exponential_separation_probe(const AtomicMeasure& nu, int n) {
  check_budget(nu.size(), n);
  const std::size_t k = nu.size();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= k;

  // Products in lexicographic word order, prefixes reused along the way.
  std::vector<Mat3> prods(total);
  std::vector<Mat3> stack(static_cast<std::size_t>(n) + 1, Mat3::identity());
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  for (int d = 1; d <= n; ++d) stack[static_cast<std::size_t>(d)] = stack[static_cast<std::size_t>(d - 1)] * nu.atoms()[0].g;
  for (std::size_t w = 0; w < total; ++w) {
    if (w > 0) {
      int pos = n - 1;
      while (digits[static_cast<std::size_t>(pos)] + 1 == k) digits[static_cast<std::size_t>(pos--)] = 0;
      ++digits[static_cast<std::size_t>(pos)];
      for (int d = pos + 1; d <= n; ++d)
        stack[static_cast<std::size_t>(d)] =
            stack[static_cast<std::size_t>(d - 1)] * nu.atoms()[digits[static_cast<std::size_t>(d - 1)]].g;
    }
    prods[w] = stack[static_cast<std::size_t>(n)];
  }

  SeparationResult out;
  out.words = total;
  if (total < 2) return out;

  // Sweep in order of a fixed linear functional; |f(a) - f(b)| <= |a - b|_F.
  std::array<double, 9> dir{};
  double dn = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    dir[i] = std::sin(1.0 + 2.3 * static_cast<double>(i));
    dn += dir[i] * dir[i];
  }
  for (double& x : dir) x /= std::sqrt(dn);
  std::vector<double> key(total);
  for (std::size_t w = 0; w < total; ++w) {
    double s = 0.0;
    for (std::size_t i = 0; i < 9; ++i) s += dir[i] * prods[w].data()[i];
    key[w] = s;
  }
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key[a] < key[b] || (key[a] == key[b] && a < b);
  });

  double best = std::numeric_limits<double>::infinity();
  std::size_t wa = 0, wb = 0;
  for (std::size_t i = 0; i < total && best > 0.0; ++i) {
    for (std::size_t j = i + 1; j < total; ++j) {
      if (key[order[j]] - key[order[i]] >= best) break;
      const double d = (prods[order[i]] - prods[order[j]]).frobenius();
      if (d < best) {
        best = d;
        wa = std::min(order[i], order[j]);
        wb = std::max(order[i], order[j]);
        if (best == 0.0) break;
      }
    }
  }
  auto word_of = [&](std::size_t w) {
    std::vector<int> word(static_cast<std::size_t>(n));
    for (int p = n - 1; p >= 0; --p) {
      word[static_cast<std::size_t>(p)] = static_cast<int>(w % k);
      w /= k;
    }
    return word;
  };
  out.min_dist = best;
  out.log_rate = best > 0.0 ? std::log(best) / n : -std::numeric_limits<double>::infinity();
  out.witness_a = word_of(wa);
  out.witness_b = word_of(wb);
  return out;
}

GuivarchResult guivarch_probe(const StationarySample& sample, const ProjHyperplane& W,
                              const std::vector<double>& radii, std::size_t min_count) {
  if (sample.points.empty()) fail(ErrorCode::InvalidArgument, "guivarch_probe: empty sample");
  std::vector<double> d;
  d.reserve(sample.points.size());
  for (const ProjPoint& x : sample.points) d.push_back(dist_point_hyperplane(x, W));
  std::sort(d.begin(), d.end());
  const double total = static_cast<double>(d.size());

  GuivarchResult out;
  std::vector<double> lx, ly;
  for (double r : radii) {
    const auto c = static_cast<std::size_t>(std::upper_bound(d.begin(), d.end(), r) - d.begin());
    out.rows.push_back({r, static_cast<double>(c) / total, c});
    if (r > 0.0 && r < 1.0 && c >= min_count) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(static_cast<double>(c) / total));
    }
  }
  out.resolved = static_cast<int>(lx.size());
  if (lx.size() >= 2) {
    const double mx = mean(lx), my = mean(ly);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    out.beta_hat = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return out;
}

}  // namespace projdim
