#pragma once

#include <optional>
#include <vector>

#include "projdim/affinity.hpp"
#include "projdim/linalg.hpp"

namespace projdim {

/// blockdiag(h, 1). BadDet unless det h = 1 within tol.sl2_det.
Mat3 embed_iota(const Mat2& h, const Tolerances& tol = default_tolerances());

/// Free group generated by SL2 matrices, certified by ping-pong: every letter
/// g (generators and inverses) maps the complement of B(rep(g), r) into
/// B(att(g), r), and the balls around the attracting points are pairwise
/// farther apart than 2r.
class SchottkySL2 {
 public:
  /// PingPongFail if no radius works, BadDet for det != 1.
  explicit SchottkySL2(std::vector<Mat2> generators,
                       const Tolerances& tol = default_tolerances());

  /// Symmetric pair a = diag(l, 1/l), b = rot(theta) a rot(-theta).
  static SchottkySL2 symmetric(double lambda, double theta);

  const std::vector<Mat2>& generators() const { return gens_; }
  /// Generators followed by their inverses.
  const std::vector<Mat2>& letters() const { return letters_; }
  double radius() const { return radius_; }
  const std::vector<Vec2>& attracting_points() const { return attract_; }
  double min_separation() const { return min_sep_; }

 private:
  std::vector<Mat2> gens_;
  std::vector<Mat2> letters_;
  std::vector<Vec2> attract_;
  double radius_ = 0.0;
  double min_sep_ = 0.0;
};

struct Sl2Exponent {
  double delta0 = 0.0;
  double lo = 0.0, hi = 0.0;
  std::vector<std::optional<double>> per_n_roots;  // roots of (1/n) log Z_n
  int n_max = 0;
};

/// Root of the successive-difference pressure of sum |g_w|^(-2t) over reduced
/// words, computed with its own 2x2 enumeration. NoBracket when the word
/// count does not grow.
Sl2Exponent sl2_critical_exponent(const SchottkySL2& s, int n_max, double tol);

/// Family g_i(eps) = (iota(h_i) + eps D_i) / det^(1/3).
struct PerturbedFamily {
  std::vector<Mat3> base;
  std::vector<Mat3> direction;

  std::vector<Mat3> member(double eps) const;
};

struct IrreducibilityResult {
  bool irreducible = true;
  bool inconclusive = false;
  int algebra_dim = 0;
  std::optional<Vec3> line;          // invariant line, if found
  std::optional<Vec3> plane_normal;  // invariant plane, if found
};

/// Dimension of the algebra spanned by words in gens (9 means irreducible).
/// Below 9, real eigenvectors of random algebra elements and of their
/// transposes are tested for a proper invariant subspace.
IrreducibilityResult irreducibility_probe(const std::vector<Mat3>& gens, int trials,
                                          std::uint64_t seed,
                                          const Tolerances& tol = default_tolerances());

struct JumpRow {
  double eps;
  IrreducibilityResult irreducibility;
  double s_a;
  std::optional<double> prediction;  // min(2 delta0, delta0 + 1/2), at eps = 0
  std::optional<double> delta0;
};

/// s_A of the perturbed free-group family at every eps, with the SL2
/// prediction side by side at eps = 0.
std::vector<JumpRow> scan_dimension_jump(const SchottkySL2& base, const std::vector<Mat3>& direction,
                                         const std::vector<double>& eps_grid, int n_max,
                                         double tol, std::uint64_t seed = 1);

}  // namespace projdim
