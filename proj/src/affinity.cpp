#include "projdim/affinity.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "projdim/error.hpp"
#include "projdim/parallel.hpp"

namespace projdim {

double psi_s(const std::array<double, 2>& chi, double s) {
  if (s < 0.0 || s > 2.0) fail(ErrorCode::SOutOfRange, "psi_s: s outside [0, 2]");
  return s <= 1.0 ? s * chi[0] : chi[0] + (s - 1.0) * chi[1];
}

double phi_s_sigma(const Vec3& sigma, double s) {
  if (!(s > 0.0) || s > 2.0) fail(ErrorCode::SOutOfRange, "phi_s: s outside (0, 2]");
  const double r2 = sigma[1] / sigma[0];
  const double r3 = sigma[2] / sigma[0];
  return s <= 1.0 ? std::pow(r2, s) : r2 * std::pow(r3, s - 1.0);
}

double phi_s(const Mat3& g, double s) {
  if (!(s > 0.0) || s > 2.0) fail(ErrorCode::SOutOfRange, "phi_s: s outside (0, 2]");
  return phi_s_sigma(cartan(g).sigma, s);
}

WordSystem WordSystem::free_semigroup(std::vector<Mat3> gens) {
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "word system: no generators");
  const std::size_t m = gens.size();
  return WordSystem(WordKind::FreeSemigroup, std::move(gens), m, 1);
}

WordSystem WordSystem::free_group(std::vector<Mat3> gens) {
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "word system: no generators");
  const std::size_t m = gens.size();
  std::vector<Mat3> letters = gens;
  for (const Mat3& g : gens) letters.push_back(g.inverse());
  return WordSystem(WordKind::FreeGroup, std::move(letters), m, 1);
}

WordSystem WordSystem::run_length_induced(std::vector<Mat3> gens, int cap) {
  if (gens.size() < 2) fail(ErrorCode::InvalidArgument, "run-length system needs >= 2 generators");
  if (cap < 1) fail(ErrorCode::InvalidArgument, "run-length cap must be >= 1");
  std::vector<Mat3> letters;
  for (const Mat3& g : gens) {
    Mat3 p = g;
    for (int k = 1; k <= cap; ++k) {
      letters.push_back(p);
      p = p * g;
    }
  }
  return WordSystem(WordKind::RunLengthInduced, std::move(letters), gens.size(), cap);
}

bool WordSystem::follows(int prev, int next) const {
  if (prev < 0) return true;
  const auto m = static_cast<int>(gens_);
  switch (kind_) {
    case WordKind::FreeSemigroup:
      return true;
    case WordKind::FreeGroup:
      return next != (prev < m ? prev + m : prev - m);
    case WordKind::RunLengthInduced:
      return prev / cap_ != next / cap_;
  }
  return false;
}

double WordSystem::word_count(int n) const {
  if (n < 1) return 1.0;
  const auto k = static_cast<double>(letters_.size());
  double branching = k;
  if (kind_ == WordKind::FreeGroup) branching = k - 1.0;
  if (kind_ == WordKind::RunLengthInduced) branching = k - cap_;
  return k * std::pow(branching, n - 1);
}

int WordSystem::max_depth(double budget) const {
  int n = 0;
  while (n < 64 && word_count(n + 1) <= budget) ++n;
  return n;
}

std::string WordSystem::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case WordKind::FreeSemigroup:
      os << "free semigroup words on " << gens_ << " generators";
      break;
    case WordKind::FreeGroup:
      os << "reduced free-group words on " << gens_ << " generators";
      break;
    case WordKind::RunLengthInduced:
      os << "run-length induced words on " << gens_ << " generators, cap " << cap_;
      break;
  }
  return os.str();
}

std::pair<int, int> WordSystem::letter_info(int letter) const {
  const auto m = static_cast<int>(gens_);
  switch (kind_) {
    case WordKind::FreeSemigroup:
      return {letter, 1};
    case WordKind::FreeGroup:
      return letter < m ? std::pair{letter, 1} : std::pair{letter - m, -1};
    case WordKind::RunLengthInduced:
      return {letter / cap_, letter % cap_ + 1};
  }
  return {letter, 1};
}

namespace {

struct LocalTable {
  std::vector<std::vector<std::array<double, 2>>> gaps;
  std::vector<DepthStats> stats;
  std::vector<double> sum_chi1;
};

struct Walker {
  const WordSystem& sys;
  const std::vector<double>& logdet;
  int n_max;
  LocalTable& out;
  std::vector<int> word;

  void record(const Mat3& p, double ld, double log_scale) {
    const double known = std::exp(ld - 3.0 * log_scale);
    const Vec3 s = singular_values(p, std::isfinite(known) && known > 0.0 ? known : -1.0);
    const std::array<double, 2> chi{std::log(s[0] / s[1]), std::log(s[0] / s[2])};
    const auto d = word.size() - 1;
    out.gaps[d].push_back(chi);
    DepthStats& st = out.stats[d];
    if (st.count == 0 || chi[0] < st.min_chi1) {
      st.min_chi1 = chi[0];
      st.witness = word;
    }
    ++st.count;
    out.sum_chi1[d] += chi[0];
  }

  void walk(const Mat3& p, double ld, double log_scale) {
    record(p, ld, log_scale);
    if (static_cast<int>(word.size()) == n_max) return;
    const auto k = static_cast<int>(sys.letters().size());
    for (int next = 0; next < k; ++next) {
      if (!sys.follows(word.back(), next)) continue;
      Mat3 q = p * sys.letters()[static_cast<std::size_t>(next)];
      double ls = log_scale;
      const double m = q.max_abs();
      if (m > 1e64) {
        q = (1.0 / m) * q;
        ls += std::log(m);
      }
      word.push_back(next);
      walk(q, ld + logdet[static_cast<std::size_t>(next)], ls);
      word.pop_back();
    }
  }
};

LocalTable make_local(int n_max) {
  LocalTable t;
  t.gaps.resize(static_cast<std::size_t>(n_max));
  t.stats.resize(static_cast<std::size_t>(n_max));
  t.sum_chi1.assign(static_cast<std::size_t>(n_max), 0.0);
  return t;
}

}  // namespace

GapTable GapTable::enumerate(const WordSystem& sys, int n_max, double budget) {
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (sys.word_count(n_max) > budget)
    fail(ErrorCode::Overflow, "word enumeration at n = " + std::to_string(n_max) +
                                  " exceeds the budget (" + sys.describe() + ")");
  const auto& letters = sys.letters();
  std::vector<double> logdet;
  for (const Mat3& g : letters) {
    const double d = std::abs(g.det());
    if (!(d > 0.0)) fail(ErrorCode::SingularMatrix, "generator is singular");
    logdet.push_back(std::log(d));
  }
  const auto k = static_cast<int>(letters.size());

  // Subtrees rooted at two-letter prefixes are the parallel tasks.
  std::vector<std::vector<int>> prefixes;
  for (int a = 0; a < k; ++a) {
    if (n_max == 1) {
      prefixes.push_back({a});
      continue;
    }
    for (int b = 0; b < k; ++b)
      if (sys.follows(a, b)) prefixes.push_back({a, b});
  }

  LocalTable head = make_local(n_max);
  if (n_max >= 2) {
    Walker w{sys, logdet, 1, head, {}};
    for (int a = 0; a < k; ++a) {
      w.word = {a};
      w.record(letters[static_cast<std::size_t>(a)], logdet[static_cast<std::size_t>(a)], 0.0);
    }
  }

  std::vector<LocalTable> locals(prefixes.size());
  parallel_for(prefixes.size(), [&](std::size_t t) {
    locals[t] = make_local(n_max);
    Walker w{sys, logdet, n_max, locals[t], prefixes[t]};
    Mat3 p = Mat3::identity();
    double ld = 0.0;
    for (int a : prefixes[t]) {
      p = p * letters[static_cast<std::size_t>(a)];
      ld += logdet[static_cast<std::size_t>(a)];
    }
    w.walk(p, ld, 0.0);
  });

  GapTable table(sys);
  table.gaps_.resize(static_cast<std::size_t>(n_max));
  table.stats_.resize(static_cast<std::size_t>(n_max));
  std::vector<double> sums(static_cast<std::size_t>(n_max), 0.0);
  auto merge = [&](const LocalTable& loc) {
    for (std::size_t d = 0; d < loc.gaps.size(); ++d) {
      auto& dst = table.gaps_[d];
      dst.insert(dst.end(), loc.gaps[d].begin(), loc.gaps[d].end());
      const DepthStats& src = loc.stats[d];
      DepthStats& st = table.stats_[d];
      if (src.count == 0) continue;
      if (st.count == 0 || src.min_chi1 < st.min_chi1) {
        st.min_chi1 = src.min_chi1;
        st.witness = src.witness;
      }
      st.count += src.count;
      sums[d] += loc.sum_chi1[d];
    }
  };
  merge(head);
  for (const LocalTable& loc : locals) merge(loc);
  for (std::size_t d = 0; d < sums.size(); ++d)
    table.stats_[d].mean_chi1 = sums[d] / static_cast<double>(table.stats_[d].count);
  return table;
}

double GapTable::log_partition(double s, int n) const {
  if (s < 0.0 || s > 2.0) fail(ErrorCode::SOutOfRange, "log_partition: s outside [0, 2]");
  if (n < 1 || n > n_max()) fail(ErrorCode::InvalidArgument, "log_partition: n outside the table");
  const auto& g = gaps(n);
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& chi : g) top = std::max(top, -psi_s(chi, s));
  double sum = 0.0;
  for (const auto& chi : g) sum += std::exp(-psi_s(chi, s) - top);
  return top + std::log(sum);
}

PressureCurve pressure(const GapTable& table, double s) {
  PressureCurve c;
  c.s = s;
  double prev = 0.0;
  for (int n = 1; n <= table.n_max(); ++n) {
    const double lz = table.log_partition(s, n);
    c.per_n.push_back({n, lz, static_cast<double>(table.count(n))});
    c.inv_n.push_back(lz / n);
    c.diffs.push_back(lz - prev);
    prev = lz;
  }
  c.p_hat = c.diffs.back();
  return c;
}

double partition_sum(const std::vector<Mat3>& gens, double s, int n) {
  if (!(s > 0.0) || s > 2.0) fail(ErrorCode::SOutOfRange, "partition_sum: s outside (0, 2]");
  return GapTable::enumerate(WordSystem::free_semigroup(gens), n).log_partition(s, n);
}

PressureCurve pressure(const std::vector<Mat3>& gens, double s, int n_max) {
  return pressure(GapTable::enumerate(WordSystem::free_semigroup(gens), n_max), s);
}

namespace {

double p_hat(const GapTable& t, double s) {
  const int n = t.n_max();
  return t.log_partition(s, n) - (n > 1 ? t.log_partition(s, n - 1) : 0.0);
}

}  // namespace

CriticalExponent critical_exponent(const GapTable& table, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "critical_exponent: tol must be positive");
  CriticalExponent out;
  out.n_max = table.n_max();
  out.words = table.system().describe();
  out.p_hat_0 = p_hat(table, 0.0);
  out.p_hat_1 = p_hat(table, 1.0);
  out.p_hat_2 = p_hat(table, 2.0);
  if (out.p_hat_0 <= 0.0)
    fail(ErrorCode::NoBracket, "pressure estimate is <= 0 at s = 0 (too few words)");
  if (out.p_hat_2 > 0.0) fail(ErrorCode::NoBracket, "pressure estimate is > 0 at s = 2");

  double prev = out.p_hat_0;
  for (int i = 1; i <= 40; ++i) {
    const double v = p_hat(table, 0.05 * i);
    if (v > prev + 1e-9 * std::max(1.0, std::abs(prev)))
      fail(ErrorCode::NotDecreasing, "pressure estimate increases near s = " + std::to_string(0.05 * i));
    prev = v;
  }

  const auto [lo, hi] = bisect([&](double s) { return p_hat(table, s); }, 0.0, 2.0, tol);
  out.lo = lo;
  out.hi = hi;
  out.s_a = 0.5 * (lo + hi);

  for (int n = 1; n <= table.n_max(); ++n) {
    auto f = [&](double s) { return table.log_partition(s, n) / n; };
    if (f(0.0) > 0.0 && f(2.0) <= 0.0) {
      const auto [a, b] = bisect(f, 0.0, 2.0, tol);
      out.per_n_roots.emplace_back(0.5 * (a + b));
    } else {
      out.per_n_roots.emplace_back(std::nullopt);
    }
  }
  return out;
}

CriticalExponent critical_exponent(const std::vector<Mat3>& gens, int n_max, double tol) {
  return critical_exponent(GapTable::enumerate(WordSystem::free_semigroup(gens), n_max), tol);
}

std::vector<GapScanRow> anosov_gap_scan(const GapTable& table) {
  std::vector<GapScanRow> rows;
  for (int n = 1; n <= table.n_max(); ++n) {
    const DepthStats& st = table.stats(n);
    rows.push_back({n, st.min_chi1 / n, st.mean_chi1 / n, st.witness});
  }
  return rows;
}

std::vector<GapScanRow> anosov_gap_scan(const std::vector<Mat3>& gens, int n_max) {
  return anosov_gap_scan(GapTable::enumerate(WordSystem::free_semigroup(gens), n_max));
}

}  // namespace projdim
