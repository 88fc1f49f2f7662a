#include "chinos/fock.hpp"
#include "chinos/semiclassical.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace chinos {
namespace {

using testing::poly;
using testing::R;
using Q = QuadScalar;

const Q h = Q::inv_sqrt2();

FockPoly<Q> op_state(std::initializer_list<int> ops) {
  auto s = FockPoly<Q>::vacuum();
  for (int o : ops) s = apply_draw(reduced_operator<Q>(o), s);
  return s;
}

TEST(ReducedOperators, Coefficients) {
  EXPECT_EQ(reduced_operator<Q>(1).alpha, Q(1));
  EXPECT_EQ(reduced_operator<Q>(1).beta, Q(0));
  EXPECT_EQ(reduced_operator<Q>(2).alpha, h);
  EXPECT_EQ(reduced_operator<Q>(2).beta, h);
  EXPECT_EQ(reduced_operator<Q>(3).alpha, h);
  EXPECT_EQ(reduced_operator<Q>(3).beta, -h);
  EXPECT_EQ(reduced_operator<Q>(4).alpha, Q(0));
  EXPECT_EQ(reduced_operator<Q>(4).beta, Q(1));
  EXPECT_THROW(reduced_operator<Q>(5), std::out_of_range);
  EXPECT_THROW(DrawOperator<Q>(Q(0), Q(0)), std::invalid_argument);
}

TEST(ApplyDraw, CreationOnVacuum) { EXPECT_EQ(op_state({4}), poly({Q(0), Q(1)})); }

TEST(ApplyDraw, O2Twice) { EXPECT_EQ(op_state({2, 2}), poly({Q(R(1, 2)), Q(1), Q(R(1, 2))})); }

TEST(ApplyDraw, O2ThenO3MatchesDirectExpansion) {
  // Oracle: multiply the coefficient lists (h, h) and (h, -h) by convolution.
  const std::vector<Q> a{h, h}, b{h, -h};
  std::vector<Q> conv(3, Q(0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) conv[i + j] += a[i] * b[j];
  EXPECT_EQ(op_state({2, 3}), poly(conv));
  EXPECT_EQ(op_state({2, 3}), poly({Q(R(1, 2)), Q(0), Q(R(-1, 2))}));
  const auto p = born_distribution(op_state({2, 3}));
  EXPECT_EQ(p[0], Q(R(1, 3)));
  EXPECT_EQ(p[1], Q(0));
  EXPECT_EQ(p[2], Q(R(2, 3)));
}

TEST(ApplyDraw, DegreeGrowsWithCreationPart) {
  const auto s = op_state({2, 3, 2});
  EXPECT_EQ(s.degree(), 3u);
  EXPECT_EQ(apply_draw(reduced_operator<Q>(1), s).degree(), 3u);
  EXPECT_THROW(apply_draw(reduced_operator<Q>(2), FockPoly<Q>()), std::invalid_argument);
}

TEST(Overlap, DistinctSectorsAreOrthogonal) {
  EXPECT_TRUE(overlap(poly({Q(1), Q(0), Q(0)}), poly({Q(0), Q(0), Q(1)})).is_zero());
}

TEST(Overlap, SelfOverlapUsesFactorialWeights) {
  // 1/4 * 0! + 1 * 1! + 1/4 * 2!
  const auto p = poly({Q(R(1, 2)), Q(1), Q(R(1, 2))});
  EXPECT_EQ(overlap(p, p), Q(R(1, 4) + R(1) + R(1, 4) * R(2)));
  EXPECT_EQ(overlap(p, p), Q(R(7, 4)));
}

TEST(Overlap, TwoTwoAndThreeFourAreOrthogonal) {
  EXPECT_TRUE(overlap(poly({Q(R(1, 2)), Q(1), Q(R(1, 2))}), poly({Q(0), h, -h})).is_zero());
}

TEST(NormSquared, Examples) {
  EXPECT_EQ(norm_squared(FockPoly<Q>::vacuum()), Q(1));
  EXPECT_EQ(norm_squared(poly({Q(R(1, 2)), Q(1), Q(R(1, 2))})), Q(R(7, 4)));
  // 1/2 * 1! + 1/2 * 2!
  EXPECT_EQ(norm_squared(poly({Q(0), h, -h})), Q(R(3, 2)));
}

TEST(BornDistribution, TableCells) {
  const auto p22 = born_distribution(poly({Q(R(1, 2)), Q(1), Q(R(1, 2))}));
  EXPECT_EQ(p22, (std::vector<Q>{Q(R(1, 7)), Q(R(4, 7)), Q(R(2, 7))}));
  EXPECT_EQ(born_distribution(FockPoly<Q>::vacuum()), std::vector<Q>{Q(1)});
  EXPECT_THROW(born_distribution(FockPoly<Q>()), std::invalid_argument);
}

TEST(Fidelity, TableThreeRow) {
  const auto guess = poly({Q(R(1, 2)), Q(1), Q(R(1, 2))});
  EXPECT_EQ(fidelity(guess, guess), Q(1));
  EXPECT_EQ(fidelity(guess, poly({Q(R(1, 2)), Q(0), Q(R(-1, 2))})), Q(R(1, 21)));
  EXPECT_EQ(fidelity(guess, poly({Q(1), Q(1)})), Q(R(9, 14)));
  EXPECT_THROW(fidelity(guess, FockPoly<Q>()), std::invalid_argument);
}

TEST(BlochOperator, Limits) {
  const auto id = bloch_operator(0.0, 0.0);
  EXPECT_EQ(id.alpha, FloatAmplitude(1.0, 0.0));
  EXPECT_EQ(id.beta, FloatAmplitude(0.0, 0.0));
  const auto create = bloch_operator(std::numbers::pi, 0.0);
  EXPECT_NEAR(std::abs(create.alpha), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(create.beta - 1.0), 0.0, 1e-15);
  const auto o2 = bloch_operator(std::numbers::pi / 2, 0.0);
  EXPECT_NEAR(std::abs(o2.alpha - FloatAmplitude(std::cos(std::numbers::pi / 4))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(o2.beta - FloatAmplitude(std::sin(std::numbers::pi / 4))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(o2.alpha - to_amplitude(h)), 0.0, 1e-15);
}

TEST(BlochOperator, AnglesReduceModuloTwoPi) {
  const auto a = bloch_operator(std::numbers::pi / 3, 0.7);
  const auto b = bloch_operator(std::numbers::pi / 3 + 2 * std::numbers::pi, 0.7 - 2 * std::numbers::pi);
  EXPECT_NEAR(std::abs(a.alpha - b.alpha), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a.beta - b.beta), 0.0, 1e-12);
  EXPECT_THROW(bloch_operator(NAN, 0.0), std::invalid_argument);
}

TEST(FloatBackend, GenericAnglesGiveValidDistribution) {
  const std::array ops{bloch_operator(1.1, 0.3), bloch_operator(2.5, -1.2), bloch_operator(0.4, 2.0)};
  const auto s = apply_all<FloatAmplitude>(ops);
  double total = 0.0;
  for (double p : born_distribution(s)) {
    EXPECT_GE(p, 0.0);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(SameRay, DetectsProportionality) {
  const auto p = poly({Q(1), Q(2), Q(1)});
  EXPECT_TRUE(same_ray(p, poly({Q(R(1, 2)), Q(1), Q(R(1, 2))})));
  EXPECT_FALSE(same_ray(p, poly({Q(1), Q(-2), Q(1)})));
}

// ---- properties -------------------------------------------------------------

TEST(FockProperty, BornSumsToExactlyOne) {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 300; ++i) {
    const auto s = testing::random_state(gen);
    Q total(0);
    for (const auto& p : born_distribution(s)) {
      EXPECT_GE(p.sign(), 0);
      total += p;
    }
    EXPECT_EQ(total, Q(1));
  }
}

TEST(FockProperty, CauchySchwarz) {
  std::mt19937_64 gen(4242);
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_state(gen);
    const auto q = testing::random_state(gen);
    const auto lhs = abs_sq(overlap(p, q));
    EXPECT_LE(lhs, norm_squared(p) * norm_squared(q));
  }
}

TEST(FockProperty, ApplyDrawIsBilinear) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 200; ++i) {
    const auto s = testing::random_state(gen);
    const auto a = testing::random_quad(gen);
    const auto b = testing::random_quad(gen);
    if (a.is_zero() && b.is_zero()) continue;
    const auto combined = apply_draw(DrawOperator<Q>(a, b), s);
    const auto id = apply_draw(DrawOperator<Q>(Q(1), Q(0)), s);
    const auto up = apply_draw(DrawOperator<Q>(Q(0), Q(1)), s);
    const std::size_t n = std::max({combined.size(), id.size(), up.size()});
    for (std::size_t k = 0; k < n; ++k)
      EXPECT_EQ(combined.coeff_or_zero(k), a * id.coeff_or_zero(k) + b * up.coeff_or_zero(k));
  }
}

TEST(FockProperty, DrawOrderDoesNotMatter) {
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(op_state({i, j}), op_state({j, i}));
}

TEST(FockProperty, ExactAndFloatBackendsAgreeOnOutcomeTable) {
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const auto exact = born_distribution(op_state({i, j}));
      const std::array ops{reduced_operator<FloatAmplitude>(i), reduced_operator<FloatAmplitude>(j)};
      const auto approx = born_distribution(apply_all<FloatAmplitude>(ops));
      for (std::size_t n = 0; n < 3; ++n) {
        const double e = n < exact.size() ? exact[n].to_double() : 0.0;
        const double f = n < approx.size() ? approx[n] : 0.0;
        EXPECT_NEAR(e, f, 1e-12) << i << "," << j << " n=" << n;
      }
    }
}

TEST(FockProperty, NoDegreeCap) {
  // Six players with one coin each: degree six, weights up to 6!.
  auto s = FockPoly<Q>::vacuum();
  for (int k = 0; k < 6; ++k) s = apply_draw(reduced_operator<Q>(2), s);
  EXPECT_EQ(s.degree(), 6u);
  Q total(0);
  for (const auto& p : born_distribution(s)) total += p;
  EXPECT_EQ(total, Q(1));
}

}  // namespace
}  // namespace chinos
