#include "chinos/quantum.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace chinos::qcg {
namespace {

using testing::R;

PayoffRow Row(Rational a, Rational b, Rational c, Rational d) { return {a, b, c, d}; }

TEST(QuantumGuess, ParseAndIndex) {
  EXPECT_EQ(QuantumGuess::parse("(2,3)"), QuantumGuess(2, 3));
  EXPECT_EQ(QuantumGuess::parse(" ( 4 , 1 ) "), QuantumGuess(4, 1));
  EXPECT_THROW(QuantumGuess::parse("(2,5)"), std::invalid_argument);
  EXPECT_THROW(QuantumGuess::parse("2,3"), std::invalid_argument);
  for (int i = 0; i < kNumPairs; ++i) EXPECT_EQ(QuantumGuess::from_index(i).index(), i);
  EXPECT_EQ(first_player_guesses().size(), 10u);
  EXPECT_EQ(all_pairs().size(), 16u);
}

TEST(QuantumGuess, NormalizerIsStateNorm) {
  EXPECT_EQ(QuantumGuess(1, 1).norm_sq(), R(1));
  EXPECT_EQ(QuantumGuess(4, 4).norm_sq(), R(2));
  // (1 + x)^2 / 2 in the monomial basis: 1, 2x, x^2 with weights 1, 1, 2.
  EXPECT_EQ(QuantumGuess(2, 2).norm_sq(), R(7, 4));
}

TEST(GramMetric, Examples) {
  const auto& g = gram_metric();
  EXPECT_TRUE(g.orthogonal({2, 2}, {3, 4}));
  EXPECT_TRUE(g.orthogonal({1, 1}, {4, 4}));
  EXPECT_EQ(g.at({2, 3}, {2, 3}).magnitude_sq, R(1));
  EXPECT_FALSE(g.orthogonal({2, 2}, {2, 2}));
}

TEST(GramMetricProperty, UnitDiagonalSymmetricBounded) {
  const auto& g = gram_metric();
  for (const auto& x : all_pairs()) {
    EXPECT_EQ(g.at(x, x).magnitude_sq, R(1));
    for (const auto& y : all_pairs()) {
      EXPECT_EQ(g.at(x, y).overlap, conj(g.at(y, x).overlap));
      EXPECT_EQ(g.at(x, y).magnitude_sq, g.at(y, x).magnitude_sq);
      EXPECT_EQ(g.at(x, y).zero, g.at(y, x).zero);
      EXPECT_LE(g.at(x, y).magnitude_sq, R(1));
      EXPECT_GE(g.at(x, y).magnitude_sq, R(0));
    }
  }
}

TEST(GramMetricProperty, FloatAgreesWithExact) {
  const auto& g = gram_metric();
  const auto f = float_gram_metric();
  for (const auto& x : all_pairs())
    for (const auto& y : all_pairs())
      EXPECT_NEAR(std::norm(f[x.index()][y.index()]), g.at(x, y).magnitude_sq.to_double(), 1e-12);
}

TEST(GramMetric, OrderedPairsShareStates) {
  for (const auto& x : all_pairs()) EXPECT_EQ(gram_metric().at(x, {x.k, x.j}).magnitude_sq, R(1));
}

TEST(Admissible, AfterCoinFlipGuess) {
  const auto adm = admissible_guesses({{2, 2}});
  auto has = [&](QuantumGuess q) { return std::find(adm.begin(), adm.end(), q) != adm.end(); };
  EXPECT_TRUE(has({3, 4}));
  EXPECT_TRUE(has({4, 3}));
  EXPECT_FALSE(has({2, 2}));
}

TEST(Admissible, AfterVacuumMatchesAmplitudeOracle) {
  // <0|state> is the constant coefficient; zero exactly when O4 is a factor.
  std::set<int> oracle;
  for (const auto& p : all_pairs())
    if (p.state().coeff_or_zero(0).is_zero()) oracle.insert(p.index());
  std::set<int> expected;
  for (const auto& p : all_pairs())
    if (p.j == 4 || p.k == 4) expected.insert(p.index());
  ASSERT_EQ(oracle, expected);
  std::set<int> got;
  for (const auto& p : admissible_guesses({{1, 1}})) got.insert(p.index());
  EXPECT_EQ(got, oracle);
}

TEST(AdmissibleProperty, OrthogonalityIsSymmetric) {
  for (const auto& x : all_pairs())
    for (const auto& y : all_pairs()) {
      const auto ax = admissible_guesses({x});
      const auto ay = admissible_guesses({y});
      const bool y_after_x = std::find(ax.begin(), ax.end(), y) != ax.end();
      const bool x_after_y = std::find(ay.begin(), ay.end(), x) != ay.end();
      EXPECT_EQ(y_after_x, x_after_y);
    }
}

TEST(PayoffTable, CoinFlipGuessRow) {
  EXPECT_EQ(payoff_table_for_guess({2, 2}, 2), Row(R(9, 14), R(1), R(1, 21), R(16, 21)));
}

TEST(PayoffTable, ExchangedGuessRow) {
  EXPECT_EQ(payoff_table_for_guess({3, 3}, 3), Row(R(9, 14), R(1, 21), R(1), R(16, 21)));
}

TEST(PayoffTable, VacuumGuess) { EXPECT_EQ(payoff_table_for_guess({1, 1}, 1)[0], R(1)); }

TEST(PayoffTable, FloatBackendAgrees) {
  for (auto [g, d] : {std::pair{QuantumGuess(2, 2), 2}, std::pair{QuantumGuess(3, 3), 3}}) {
    const auto exact = payoff_table_for_guess(g, d);
    for (int d2 = 1; d2 <= 4; ++d2) {
      const std::array ops_g{reduced_operator<FloatAmplitude>(g.k), reduced_operator<FloatAmplitude>(g.j)};
      const std::array ops_s{reduced_operator<FloatAmplitude>(d), reduced_operator<FloatAmplitude>(d2)};
      const double f = fidelity(apply_all<FloatAmplitude>(ops_g), apply_all<FloatAmplitude>(ops_s));
      EXPECT_NEAR(f, exact[d2 - 1].to_double(), 1e-12);
    }
  }
}

TEST(CoinFlipStrategy, Payoffs) {
  EXPECT_EQ(coin_flip_strategy_payoff(), R(11, 21));
  EXPECT_EQ(expected_f1(coin_flip_strategy(), point_mass(4, 0)), R(9, 14));
  EXPECT_EQ(expected_f1(coin_flip_strategy(), point_mass(4, 3)), R(16, 21));
  EXPECT_EQ(expected_f1_by_opponent_draw(coin_flip_strategy()), Row(R(9, 14), R(11, 21), R(11, 21), R(16, 21)));
}

TEST(CoinFlipStrategy, ExchangeSymmetryKeepsValue) {
  const auto a = payoff_table_for_guess({2, 2}, 2);
  const auto b = payoff_table_for_guess({3, 3}, 3);
  auto swapped = a;
  std::swap(swapped[1], swapped[2]);
  EXPECT_EQ(b, swapped);
  Rational value(0);
  for (int d2 : {1, 2}) value += R(1, 2) * (R(1, 2) * a[d2] + R(1, 2) * b[d2]);
  EXPECT_EQ(value, R(11, 21));
}

TEST(FidelityProperty, InUnitIntervalAndOneIffSameRay) {
  for (const auto& g : all_pairs())
    for (int d1 = 1; d1 <= 4; ++d1)
      for (int d2 = 1; d2 <= 4; ++d2) {
        const auto f = guess_fidelity(g, d1, d2);
        EXPECT_GE(f, R(0));
        EXPECT_LE(f, R(1));
        EXPECT_EQ(f == R(1), same_ray(g.state(), scg::joint_state(d1, d2)));
      }
}

/// Minimum of the coin-flip strategy's expected f1 over a rational grid of
/// player-2 mixes with step 1/12, computed from raw fidelities.
Rational grid_minimum() {
  std::array<Rational, 4> by_draw{R(0), R(0), R(0), R(0)};
  for (int d2 = 1; d2 <= 4; ++d2)
    by_draw[d2 - 1] = R(1, 2) * guess_fidelity({2, 2}, 2, d2) + R(1, 2) * guess_fidelity({3, 3}, 3, d2);
  const int n = 12;
  Rational best(2);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (int c = 0; a + b + c <= n; ++c) {
        const int d = n - a - b - c;
        const Rational v = (by_draw[0] * a + by_draw[1] * b + by_draw[2] * c + by_draw[3] * d) / Rational(n);
        if (v < best) best = v;
      }
  return best;
}

class Exhaustive : public ::testing::Test {
 protected:
  static const ExhaustiveReport& report() {
    static const ExhaustiveReport r = exhaustive_analysis();
    return r;
  }
};

TEST_F(Exhaustive, GuaranteedValueMatchesGridOracle) {
  const Rational oracle = grid_minimum();
  EXPECT_EQ(oracle, R(11, 21));
  EXPECT_EQ(report().guaranteed_value, oracle);
  EXPECT_EQ(report().coin_flip_value, R(11, 21));
  EXPECT_GT(report().guaranteed_value, R(1, 2));
  EXPECT_TRUE(report().symmetry_broken);
}

TEST_F(Exhaustive, MinimizingDraws) { EXPECT_EQ(report().f1_minimizing_draws, (std::vector<int>{2, 3})); }

TEST_F(Exhaustive, Counts) {
  std::size_t oracle = 0;
  for (int d1 = 1; d1 <= 4; ++d1)
    for (const auto& g1 : first_player_guesses())
      for (int d2 = 1; d2 <= 4; ++d2)
        for (const auto& g2 : all_pairs())
          if (overlap(g1.state(), g2.state()).is_zero()) ++oracle;
  EXPECT_EQ(report().profiles_evaluated, oracle);
  EXPECT_EQ(report().distinct_guess_states, 10u);
}

TEST_F(Exhaustive, ClassicalEmbedding) { EXPECT_TRUE(report().classical_embedding_consistent); }

TEST_F(Exhaustive, BestResponsesAreMaximal) {
  const auto& r = report();
  for (int d2 = 1; d2 <= 4; ++d2) {
    const auto& best = r.player1_best_vs_draw[d2 - 1];
    EXPECT_EQ(guess_fidelity(best.guess1, best.draw1, d2), best.expected_f1);
    for (int d1 = 1; d1 <= 4; ++d1)
      for (const auto& g : first_player_guesses()) EXPECT_LE(guess_fidelity(g, d1, d2), best.expected_f1);
  }
  for (const auto& resp : r.player2_best_guess) {
    EXPECT_TRUE(gram_metric().orthogonal(resp.guess1, resp.guess2));
    EXPECT_FALSE(resp.tied.empty());
  }
}

}  // namespace
}  // namespace chinos::qcg
