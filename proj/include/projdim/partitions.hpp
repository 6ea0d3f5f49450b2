#pragma once

#include <cstdint>
#include <vector>

#include "projdim/randwalk.hpp"

namespace projdim {

/// Counts of points in the q^level half-open cells [k/q^n, (k+1)/q^n) of [0, 1).
class QadicHistogram {
 public:
  QadicHistogram(int q, int level);
  static QadicHistogram from_coords(const std::vector<double>& coords, int q, int level);
  static QadicHistogram from_counts(int q, int level, std::vector<std::uint64_t> counts);

  int q() const { return q_; }
  int level() const { return level_; }
  std::size_t cells() const { return counts_.size(); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  std::size_t occupied() const;

  std::size_t cell_of(double x) const;
  void add(double x, std::uint64_t weight = 1);
  /// Histogram of the same data at a coarser level.
  QadicHistogram coarsen(int level) const;

 private:
  int q_;
  int level_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Rescaled restriction of a level i + m histogram to one level-i cell,
/// as a level-m histogram.
struct ComponentMeasure {
  int parent_level;
  std::size_t cell;
  QadicHistogram sub;
};

ComponentMeasure component(const QadicHistogram& fine, int i, std::size_t cell);

/// Shannon entropy of the normalized counts in nats. EmptyHistogram if total is 0.
double entropy(const QadicHistogram& hist);
double entropy_of_weights(const std::vector<double>& weights);

struct ProjectedSample {
  std::vector<double> coords;  // in [0, 1)
  std::size_t dropped = 0;     // points within tol.sample_kernel of V
};

/// pi_{V^perp} followed by the frame identification P(V^perp) = P(R^2) and
/// R(cos t, sin t) -> t / pi. BadCircle if V lies on P(E1^perp).
ProjectedSample project_sample(const std::vector<ProjPoint>& points, const ProjPoint& V,
                               const Tolerances& tol = default_tolerances());

struct EntropyDimRow {
  int n;
  double entropy;      // nats
  double value;        // entropy / (n log q)
  std::size_t occupied;
  bool undersampled;   // occupied > coords / 10
};

std::vector<EntropyDimRow> entropy_dimension_curve(const std::vector<double>& coords, int q,
                                                   int n_lo, int n_hi);

/// Mass-weighted probability, averaged uniformly over j in [i1, i2], that a
/// level-j component has normalized entropy H / (m log q) below alpha + eps.
/// UnderResolved unless hist.level() >= i2 + m.
double porosity_check(const QadicHistogram& hist, double alpha, double eps, int m, int i1, int i2);

}  // namespace projdim
