#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projdim/linalg.hpp"
#include "projdim/randwalk.hpp"

namespace projdim {

/// psi_s evaluated on the gaps (chi1, chi2) = (log s1/s2, log s1/s3):
/// s chi1 for s <= 1, chi1 + (s - 1) chi2 for 1 < s <= 2. s = 0 gives 0.
double psi_s(const std::array<double, 2>& chi, double s);

/// (s2/s1)^s for s <= 1, (s2/s1)(s3/s1)^(s-1) for 1 < s <= 2.
/// SOutOfRange outside (0, 2].
double phi_s(const Mat3& g, double s);
double phi_s_sigma(const Vec3& sigma, double s);

enum class WordKind { FreeSemigroup, FreeGroup, RunLengthInduced };

/// The set of words summed over. Letters are matrices; follows() says which
/// letter may come after which.
///  - FreeSemigroup: every word in the generators.
///  - FreeGroup: generators and inverses, no letter next to its inverse.
///  - RunLengthInduced: letters A_i^k for 1 <= k <= cap, consecutive letters
///    from different generators. A word of n letters is a generator word of
///    length between n and n cap whose maximal runs all have length <= cap.
class WordSystem {
 public:
  static WordSystem free_semigroup(std::vector<Mat3> gens);
  static WordSystem free_group(std::vector<Mat3> gens);
  static WordSystem run_length_induced(std::vector<Mat3> gens, int cap);

  WordKind kind() const { return kind_; }
  const std::vector<Mat3>& letters() const { return letters_; }
  std::size_t generator_count() const { return gens_; }
  int cap() const { return cap_; }

  /// prev < 0 marks the start of a word.
  bool follows(int prev, int next) const;
  /// Number of words with n letters.
  double word_count(int n) const;
  /// Deepest n with word_count(n) <= budget.
  int max_depth(double budget = kEnumerationBudget) const;
  std::string describe() const;
  /// Letter as a generator word: generator index and signed power.
  std::pair<int, int> letter_info(int letter) const;

 private:
  WordSystem(WordKind kind, std::vector<Mat3> letters, std::size_t gens, int cap)
      : kind_(kind), letters_(std::move(letters)), gens_(gens), cap_(cap) {}

  WordKind kind_;
  std::vector<Mat3> letters_;
  std::size_t gens_;
  int cap_;
};

struct DepthStats {
  std::size_t count = 0;
  double min_chi1 = 0.0;
  double mean_chi1 = 0.0;
  std::vector<int> witness;  // letters of a word attaining min_chi1
};

/// Singular-value gaps of every word up to n_max letters, computed once by a
/// depth-first walk of the word tree that reuses prefix products. Partition
/// sums for any s are then evaluated from the table.
class GapTable {
 public:
  static GapTable enumerate(const WordSystem& sys, int n_max, double budget = kEnumerationBudget);

  const WordSystem& system() const { return sys_; }
  int n_max() const { return static_cast<int>(gaps_.size()); }
  std::size_t count(int n) const { return gaps_.at(static_cast<std::size_t>(n - 1)).size(); }
  const std::vector<std::array<double, 2>>& gaps(int n) const {
    return gaps_.at(static_cast<std::size_t>(n - 1));
  }
  const DepthStats& stats(int n) const { return stats_.at(static_cast<std::size_t>(n - 1)); }

  /// log Z_n(s), log-sum-exp stabilized; s in [0, 2], s = 0 counts words.
  double log_partition(double s, int n) const;

 private:
  explicit GapTable(WordSystem sys) : sys_(std::move(sys)) {}

  WordSystem sys_;
  std::vector<std::vector<std::array<double, 2>>> gaps_;
  std::vector<DepthStats> stats_;
};

struct PressureRow {
  int n;
  double log_z;
  double count;
};

struct PressureCurve {
  double s = 0.0;
  std::vector<PressureRow> per_n;
  std::vector<double> inv_n;  // log Z_n / n
  std::vector<double> diffs;  // log Z_n - log Z_{n-1}, with log Z_0 = 0
  double p_hat = 0.0;         // diffs at n_max
};

PressureCurve pressure(const GapTable& table, double s);

/// Free-semigroup convenience forms.
double partition_sum(const std::vector<Mat3>& gens, double s, int n);
PressureCurve pressure(const std::vector<Mat3>& gens, double s, int n_max);

struct CriticalExponent {
  double s_a = 0.0;       // root of the successive-difference pressure at n_max
  double lo = 0.0, hi = 0.0;  // final bisection bracket
  std::vector<std::optional<double>> per_n_roots;  // roots of log Z_n(s) / n
  double p_hat_0 = 0.0, p_hat_1 = 0.0, p_hat_2 = 0.0;
  int n_max = 0;
  std::string words;
};

/// Bisection on [0, 2]. NoBracket if P(0) <= 0 or P(2) > 0; NotDecreasing if
/// the estimated pressure increases anywhere on a 41-point grid.
CriticalExponent critical_exponent(const GapTable& table, double tol);
CriticalExponent critical_exponent(const std::vector<Mat3>& gens, int n_max, double tol);

/// Root of a decreasing function on [lo, hi] with f(lo) > 0 >= f(hi).
template <class F>
std::pair<double, double> bisect(F&& f, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid; else hi = mid;
  }
  return {lo, hi};
}

struct GapScanRow {
  int n;
  double min_rate;   // min chi1(g_w) / n
  double mean_rate;  // mean chi1(g_w) / n
  std::vector<int> witness;
};

std::vector<GapScanRow> anosov_gap_scan(const GapTable& table);
std::vector<GapScanRow> anosov_gap_scan(const std::vector<Mat3>& gens, int n_max);

}  // namespace projdim
