#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "projdim/affinity.hpp"
#include "projdim/error.hpp"
#include "projdim/rauzy.hpp"

using namespace projdim;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

const Mat3 kDiag = Mat3::diag(4, 1, 0.25);

}  // namespace

TEST_CASE("singular value function") {
  CHECK(phi_s(kDiag, 1.0) == doctest::Approx(0.25));
  CHECK(phi_s(kDiag, 2.0) == doctest::Approx(1.0 / 64.0));
  CHECK(phi_s(kDiag, 0.5) == doctest::Approx(0.5));
  CounterRng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Mat3 g = testing::random_sl3(rng);
    const Vec3 s = cartan(g).sigma;
    // Both branches agree at s = 1.
    CHECK(phi_s(g, 1.0) == doctest::Approx(s[1] / s[0]));
    CHECK(phi_s(g, 1.0 + 1e-12) == doctest::Approx(phi_s(g, 1.0)).epsilon(1e-9));
  }
  CHECK(code_of([] { phi_s(kDiag, 2.5); }) == ErrorCode::SOutOfRange);
  CHECK(code_of([] { phi_s(kDiag, 0.0); }) == ErrorCode::SOutOfRange);
  CHECK(psi_s({1.0, 2.0}, 0.0) == 0.0);
  CHECK(psi_s({1.0, 2.0}, 1.5) == doctest::Approx(2.0));
}

TEST_CASE("word systems count their words") {
  const std::vector<Mat3> g2{kDiag, Mat3::identity()};
  const WordSystem fg = WordSystem::free_group(g2);
  CHECK(fg.letters().size() == 4);
  CHECK(fg.word_count(1) == 4);
  CHECK(fg.word_count(3) == 36);
  CHECK_FALSE(fg.follows(0, 2));
  CHECK(fg.follows(0, 1));
  CHECK(fg.follows(-1, 3));

  const WordSystem ind = WordSystem::run_length_induced(rauzy_generators(), 4);
  CHECK(ind.letters().size() == 12);
  CHECK(ind.word_count(1) == 12);
  CHECK(ind.word_count(2) == 12 * 8);
  CHECK(ind.letter_info(5) == std::pair<int, int>{1, 2});
  // A2^2 as a letter.
  const Mat3 a2 = rauzy_generators()[1];
  CHECK(ind.letters()[5] == a2 * a2);
  CHECK_FALSE(ind.follows(4, 7));
  CHECK(ind.follows(4, 8));

  // Enumerated counts agree with the closed forms.
  for (const WordSystem& sys : {fg, ind, WordSystem::free_semigroup(rauzy_generators())}) {
    const GapTable t = GapTable::enumerate(sys, 4);
    for (int n = 1; n <= 4; ++n) CHECK(static_cast<double>(t.count(n)) == sys.word_count(n));
  }
  CHECK(code_of([] { GapTable::enumerate(WordSystem::free_semigroup(rauzy_generators()), 20); }) ==
        ErrorCode::Overflow);
}

TEST_CASE("partition sums against brute force") {
  CHECK(partition_sum({kDiag}, 1.0, 3) == doctest::Approx(-3 * std::log(4.0)));

  const auto gens = rauzy_generators();
  double z1 = 0.0;
  for (const Mat3& a : gens) {
    const auto s = oracle::singular_values(a);
    z1 += static_cast<double>(s[1] / s[0]);
  }
  CHECK(partition_sum(gens, 1.0, 1) == doctest::Approx(std::log(z1)).epsilon(1e-13));

  const GapTable t = GapTable::enumerate(WordSystem::free_semigroup(gens), 6);
  for (double s : {0.3, 1.0, 1.5, 2.0})
    for (int n = 1; n <= 6; ++n)
      CHECK(t.log_partition(s, n) ==
            doctest::Approx(static_cast<double>(oracle::log_partition(gens, s, n))).epsilon(1e-10));
  CHECK(t.log_partition(0.0, 5) == doctest::Approx(5 * std::log(3.0)));
}

TEST_CASE("partition sums of a split word length") {
  // Both sides of Z_{m+n} against Z_m Z_n at (s, m, n) = (1.5, 3, 4), each by
  // brute force. The inequality itself is not asserted: the normalized
  // singular value ratios are not submultiplicative.
  const auto gens = rauzy_generators();
  const GapTable t = GapTable::enumerate(WordSystem::free_semigroup(gens), 7);
  const double lhs = t.log_partition(1.5, 7);
  const double rhs = t.log_partition(1.5, 3) + t.log_partition(1.5, 4);
  CHECK(lhs == doctest::Approx(static_cast<double>(oracle::log_partition(gens, 1.5, 7))).epsilon(1e-10));
  CHECK(rhs == doctest::Approx(static_cast<double>(oracle::log_partition(gens, 1.5, 3) +
                                                   oracle::log_partition(gens, 1.5, 4)))
                   .epsilon(1e-10));
  MESSAGE("log Z_7 - log Z_3 - log Z_4 at s = 1.5: " << lhs - rhs);
}

TEST_CASE("pressure estimates") {
  const PressureCurve one = pressure(std::vector<Mat3>{kDiag}, 1.0, 6);
  for (double d : one.diffs) CHECK(d == doctest::Approx(-std::log(4.0)));
  CHECK(one.p_hat == doctest::Approx(-std::log(4.0)));

  const auto gens = rauzy_generators();
  CHECK(pressure(gens, 1.0, 8).p_hat > 0.0);
  CHECK(pressure(gens, 2.0, 8).p_hat < 0.0);
}

TEST_CASE("critical exponent") {
  CHECK(code_of([] { critical_exponent(std::vector<Mat3>{kDiag}, 6, 1e-4); }) == ErrorCode::NoBracket);

  // Z_n(s) = 3^n exp(-n psi_s(kappa)) has its root at log 3 / log 4.
  const CriticalExponent c = critical_exponent(std::vector<Mat3>{kDiag, kDiag, kDiag}, 6, 1e-6);
  CHECK(c.s_a == doctest::Approx(std::log(3.0) / std::log(4.0)).epsilon(1e-5));
  CHECK(c.hi - c.lo <= 1e-6);
  for (const auto& r : c.per_n_roots) {
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(std::log(3.0) / std::log(4.0)).epsilon(1e-5));
  }

  const auto [lo, hi] = bisect([](double s) { return 1.0 - s; }, 0.0, 2.0, 1e-9);
  CHECK(lo <= 1.0);
  CHECK(hi >= 1.0);
  CHECK(hi - lo <= 1e-9);
}

TEST_CASE("Anosov gap scan") {
  const auto diag_rows = anosov_gap_scan(std::vector<Mat3>{kDiag}, 5);
  for (const GapScanRow& r : diag_rows) {
    CHECK(r.min_rate == doctest::Approx(std::log(4.0)));
    CHECK(r.mean_rate == doctest::Approx(std::log(4.0)));
  }
  const auto with_id = anosov_gap_scan(std::vector<Mat3>{kDiag, Mat3::identity()}, 5);
  for (const GapScanRow& r : with_id) CHECK(r.min_rate == doctest::Approx(0.0).epsilon(1e-12));

  const auto rz = anosov_gap_scan(rauzy_generators(), 8);
  for (const GapScanRow& r : rz)
    if (r.n >= 3) CHECK(r.min_rate > 0.0);
  // Parabolic words keep the minimum rate drifting down.
  CHECK(rz.back().min_rate < rz[2].min_rate);
}
