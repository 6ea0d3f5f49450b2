#include "projdim/partitions.hpp"

#include <algorithm>
#include <cmath>

#include "projdim/decomp.hpp"
#include "projdim/error.hpp"

namespace projdim {

namespace {

std::size_t checked_cells(int q, int level) {
  if (q < 2) fail(ErrorCode::InvalidArgument, "histogram base must be >= 2");
  if (level < 0) fail(ErrorCode::InvalidArgument, "histogram level must be >= 0");
  const double cells = std::pow(static_cast<double>(q), level);
  if (cells > static_cast<double>(std::size_t{1} << 28))
    fail(ErrorCode::InvalidArgument, "histogram q^level exceeds 2^28 cells");
  return static_cast<std::size_t>(std::llround(cells));
}

}  // namespace

QadicHistogram::QadicHistogram(int q, int level)
    : q_(q), level_(level), counts_(checked_cells(q, level), 0) {}

QadicHistogram QadicHistogram::from_coords(const std::vector<double>& coords, int q, int level) {
  QadicHistogram h(q, level);
  for (double x : coords) h.add(x);
  return h;
}

QadicHistogram QadicHistogram::from_counts(int q, int level, std::vector<std::uint64_t> counts) {
  QadicHistogram h(q, level);
  if (counts.size() != h.counts_.size())
    fail(ErrorCode::InvalidArgument, "histogram: counts length must be q^level");
  h.counts_ = std::move(counts);
  for (auto c : h.counts_) h.total_ += c;
  return h;
}

std::size_t QadicHistogram::occupied() const {
  return static_cast<std::size_t>(std::count_if(counts_.begin(), counts_.end(),
                                                [](std::uint64_t c) { return c > 0; }));
}

std::size_t QadicHistogram::cell_of(double x) const {
  if (!(x >= 0.0 && x < 1.0)) fail(ErrorCode::InvalidArgument, "histogram: coordinate outside [0, 1)");
  const auto k = static_cast<std::size_t>(std::floor(x * static_cast<double>(counts_.size())));
  return std::min(k, counts_.size() - 1);
}

void QadicHistogram::add(double x, std::uint64_t weight) {
  counts_[cell_of(x)] += weight;
  total_ += weight;
}

QadicHistogram QadicHistogram::coarsen(int level) const {
  if (level < 0 || level > level_) fail(ErrorCode::InvalidArgument, "coarsen: level out of range");
  QadicHistogram out(q_, level);
  const std::size_t block = counts_.size() / out.counts_.size();
  for (std::size_t i = 0; i < counts_.size(); ++i) out.counts_[i / block] += counts_[i];
  out.total_ = total_;
  return out;
}

ComponentMeasure component(const QadicHistogram& fine, int i, std::size_t cell) {
  if (i < 0 || i > fine.level()) fail(ErrorCode::InvalidArgument, "component: level out of range");
  const int m = fine.level() - i;
  QadicHistogram sub(fine.q(), m);
  const std::size_t block = sub.cells();
  if (cell >= fine.cells() / block) fail(ErrorCode::InvalidArgument, "component: cell out of range");
  std::vector<std::uint64_t> counts(fine.counts().begin() + static_cast<std::ptrdiff_t>(cell * block),
                                    fine.counts().begin() + static_cast<std::ptrdiff_t>((cell + 1) * block));
  return {i, cell, QadicHistogram::from_counts(fine.q(), m, std::move(counts))};
}

double entropy_of_weights(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) fail(ErrorCode::EmptyHistogram, "entropy: zero total mass");
  double h = 0.0;
  for (double w : weights) {
    if (w <= 0.0) continue;
    const double p = w / total;
    h -= p * std::log(p);
  }
  return std::max(0.0, h);
}

double entropy(const QadicHistogram& hist) {
  if (hist.total() == 0) fail(ErrorCode::EmptyHistogram, "entropy: empty histogram");
  // sum -p log p = log N - (1/N) sum c log c.
  const auto total = static_cast<double>(hist.total());
  double s = 0.0;
  for (auto c : hist.counts())
    if (c > 0) s += static_cast<double>(c) * std::log(static_cast<double>(c));
  return std::max(0.0, std::log(total) - s / total);
}

ProjectedSample project_sample(const std::vector<ProjPoint>& points, const ProjPoint& V,
                               const Tolerances& tol) {
  const Mat3 k = frame_for(V, tol);
  ProjectedSample out;
  out.coords.reserve(points.size());
  for (const ProjPoint& x : points) {
    if (proj_dist(x, V) < tol.sample_kernel) {
      ++out.dropped;
      continue;
    }
    const Vec3& v = V.rep();
    const Vec2 w = plane_coords(k, x.rep() - dot(x.rep(), v) * v);
    double theta = std::atan2(w[1], w[0]);
    if (theta < 0.0) theta += M_PI;
    double c = theta / M_PI;
    if (c >= 1.0) c = 0.0;
    out.coords.push_back(c);
  }
  return out;
}

std::vector<EntropyDimRow> entropy_dimension_curve(const std::vector<double>& coords, int q,
                                                   int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) fail(ErrorCode::InvalidArgument, "entropy curve: need 1 <= n_lo <= n_hi");
  const QadicHistogram finest = QadicHistogram::from_coords(coords, q, n_hi);
  std::vector<EntropyDimRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    const QadicHistogram h = finest.coarsen(n);
    const double H = entropy(h);
    const std::size_t occ = h.occupied();
    rows.push_back({n, H, H / (n * std::log(static_cast<double>(q))), occ,
                    static_cast<double>(occ) > static_cast<double>(coords.size()) / 10.0});
  }
  return rows;
}

double porosity_check(const QadicHistogram& hist, double alpha, double eps, int m, int i1, int i2) {
  if (m < 1 || i1 < 0 || i2 < i1) fail(ErrorCode::InvalidArgument, "porosity: need m >= 1, 0 <= i1 <= i2");
  if (hist.level() < i2 + m)
    fail(ErrorCode::UnderResolved, "porosity: histogram level " + std::to_string(hist.level()) +
                                       " below i2 + m = " + std::to_string(i2 + m));
  if (hist.total() == 0) fail(ErrorCode::EmptyHistogram, "porosity: empty histogram");
  const double norm = m * std::log(static_cast<double>(hist.q()));
  const auto total = static_cast<double>(hist.total());
  double acc = 0.0;
  for (int j = i1; j <= i2; ++j) {
    const QadicHistogram fine = hist.coarsen(j + m);
    const std::size_t cells_j = fine.cells() / static_cast<std::size_t>(std::llround(std::pow(hist.q(), m)));
    double frac = 0.0;
    for (std::size_t c = 0; c < cells_j; ++c) {
      const ComponentMeasure comp = component(fine, j, c);
      if (comp.sub.total() == 0) continue;
      if (entropy(comp.sub) / norm < alpha + eps) frac += static_cast<double>(comp.sub.total()) / total;
    }
    acc += frac;
  }
  return acc / (i2 - i1 + 1);
}

}  // namespace projdim
