#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "projdim/linalg.hpp"

namespace projdim {

/// Integer 3x3 matrix, row-major.
using IntMat3 = std::array<std::int64_t, 9>;

Mat3 to_mat3(const IntMat3& m);
/// Product with overflow detection (Overflow error).
IntMat3 int_mul(const IntMat3& a, const IntMat3& b);
/// Exact integer form of g if all entries are integers of magnitude < 2^53.
std::optional<IntMat3> exact_form(const Mat3& g);

struct Atom {
  Mat3 g;
  double weight = 0.0;
  std::optional<IntMat3> exact;
};

/// nu = sum p_i delta_{g_i}. Validated on construction: positive weights
/// summing to 1, finite entries, exact forms matching the float matrices.
class AtomicMeasure {
 public:
  AtomicMeasure(std::vector<Atom> atoms, std::string label = {},
                const Tolerances& tol = default_tolerances());

  /// Equal weights; exact forms attached when every generator is integral.
  static AtomicMeasure uniform(const std::vector<Mat3>& gens, std::string label = {});

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const std::string& label() const { return label_; }
  bool exact() const;
  std::vector<Mat3> matrices() const;

  /// nu^-: atoms g_i^-1 with the same weights.
  AtomicMeasure inverse() const;

  /// Index drawn with probability p_i from u uniform in [0, 1).
  std::size_t pick(double u) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  std::string label_;
};

struct LyapunovEstimate {
  Vec3 lambda{};                    // nats per step
  std::array<double, 2> chi{};      // lambda1 - lambda2, lambda1 - lambda3
  Vec3 stderr_lambda{};             // chain standard errors
  std::array<double, 2> stderr_gap{};  // of lambda1 - lambda2 and lambda2 - lambda3
  std::array<double, 2> stderr_chi{};
  long steps = 0;
  int chains = 0;
  std::uint64_t seed = 0;
};

/// Products g_n ... g_1 tracked with a QR re-orthonormalization every
/// qr_period steps, or sooner when the accumulated condition number could
/// exceed 1e6. Chain c uses RNG stream c. steps >= 1000.
LyapunovEstimate lyapunov_spectrum(const AtomicMeasure& nu, long steps, int chains,
                                   std::uint64_t seed, int qr_period = 20);

struct StationarySample {
  std::vector<ProjPoint> points;
  int burn_in = 0;
  std::uint64_t seed = 0;
  bool inverse = false;  // true: sampled from mu^- (walk driven by nu^-)
};

constexpr int kDefaultBurnIn = 200;

/// Point i applies burn_in independent steps (RNG stream i) to the fixed
/// start R(1, sqrt 2, pi).
StationarySample sample_stationary(const AtomicMeasure& nu, std::size_t count, int burn_in,
                                   std::uint64_t seed, bool inverse = false);

struct EntropyResult {
  std::vector<double> entropy;        // H(nu^{*n}) in nats, n = 1..max_n
  std::vector<double> per_step;       // H(nu^{*n}) / n
  std::vector<std::size_t> distinct;  // number of distinct products
  double h_rw = 0.0;                  // per_step at max_n
  bool exact = false;                 // integer dedup used
};

constexpr double kEnumerationBudget = 1e7;

/// Distribution of g_1 ... g_n computed level by level with products merged
/// exactly (integer atoms) or on a 1e-9 rounding grid.
EntropyResult random_walk_entropy(const AtomicMeasure& nu, int max_n,
                                  const Tolerances& tol = default_tolerances());

struct SeparationResult {
  double min_dist = std::numeric_limits<double>::infinity();  // Frobenius
  double log_rate = std::numeric_limits<double>::infinity();  // log(min_dist) / n
  std::vector<int> witness_a, witness_b;                      // atom indices
  std::size_t words = 0;
};

/// Minimum Frobenius distance between products of distinct words of length n.
SeparationResult exponential_separation_probe(const AtomicMeasure& nu, int n);

struct GuivarchRow {
  double r;
  double mass;
  std::size_t count;
};

struct GuivarchResult {
  std::vector<GuivarchRow> rows;  // in the order of the requested radii
  double beta_hat = 0.0;          // slope of log mass against log r
  int resolved = 0;               // radii used in the fit
};

/// Empirical mu{x : d(W, x) <= r}. Radii with at least min_count points
/// below 1 enter the least-squares fit.
GuivarchResult guivarch_probe(const StationarySample& sample, const ProjHyperplane& W,
                              const std::vector<double>& radii, std::size_t min_count = 10);

}  // namespace projdim
