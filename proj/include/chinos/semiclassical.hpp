#pragma once

#include "chinos/fock.hpp"
#include "chinos/probability.hpp"

#include <array>
#include <vector>

namespace chinos::scg {

/// Totals that can be measured with two players holding one quantum coin each.
inline constexpr int kNumTotals = 3;

using OutcomeDistribution = std::array<Rational, kNumTotals>;

inline void check_draw(int d) {
  if (d < 1 || d > kNumReducedOperators) {
    throw std::out_of_range("draw index must be in 1..4, got " + std::to_string(d));
  }
}

/// Unnormalized joint state O_{d2} O_{d1} |0>.
inline FockPoly<QuadScalar> joint_state(int d1, int d2) {
  check_draw(d1);
  check_draw(d2);
  auto state = apply_draw(reduced_operator<QuadScalar>(d1), FockPoly<QuadScalar>::vacuum());
  return apply_draw(reduced_operator<QuadScalar>(d2), state);
}

/// Born distribution of the total coin count for draws (d1, d2).
inline OutcomeDistribution joint_distribution(int d1, int d2) {
  const auto probs = born_distribution(joint_state(d1, d2));
  OutcomeDistribution out{Rational(0), Rational(0), Rational(0)};
  for (std::size_t n = 0; n < probs.size(); ++n) out[n] = probs[n].rational();
  return out;
}

/// The full 4x4 grid, indexed [d1-1][d2-1].
using OutcomeTable = std::array<std::array<OutcomeDistribution, kNumReducedOperators>, kNumReducedOperators>;

inline OutcomeTable outcome_table() {
  OutcomeTable t;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) t[i - 1][j - 1] = joint_distribution(i, j);
  return t;
}

/// Player's outcome distribution with the opponent's draw averaged out.
inline OutcomeDistribution averaged_distribution(int own, const Distribution& opponent_mix) {
  validate_distribution(opponent_mix, kNumReducedOperators, "opponent mix");
  OutcomeDistribution out{Rational(0), Rational(0), Rational(0)};
  for (int d2 = 1; d2 <= 4; ++d2) {
    const Rational& w = opponent_mix[d2 - 1];
    if (w.is_zero()) continue;
    const auto cell = joint_distribution(own, d2);
    for (int n = 0; n < kNumTotals; ++n) out[n] += w * cell[n];
  }
  return out;
}

struct BestGuess {
  int guess;                 // canonical pick: smallest maximizing total
  Rational win_prob;
  std::vector<int> tied;     // every maximizing total, ascending
};

/// Argmax over totals, excluding `excluded` when given.
inline BestGuess best_guess_over(const OutcomeDistribution& dist, std::optional<int> excluded = std::nullopt) {
  BestGuess best{-1, Rational(-1), {}};
  for (int n = 0; n < kNumTotals; ++n) {
    if (excluded && *excluded == n) continue;
    if (dist[n] > best.win_prob) {
      best = {n, dist[n], {n}};
    } else if (dist[n] == best.win_prob) {
      best.tied.push_back(n);
    }
  }
  return best;
}

/// Player 1's best first guess given own draw and the opponent's draw mix.
inline BestGuess best_guess(int own, const Distribution& opponent_mix) {
  return best_guess_over(averaged_distribution(own, opponent_mix));
}

/// First-guess success probability: player 1 draws from draw_mix and then
/// guesses the most likely total given own draw.
inline Rational strategy_payoff_p1(const Distribution& draw_mix, const Distribution& opponent_mix) {
  validate_distribution(draw_mix, kNumReducedOperators, "draw mix");
  validate_distribution(opponent_mix, kNumReducedOperators, "opponent mix");
  Rational total(0);
  for (int d = 1; d <= 4; ++d) {
    if (draw_mix[d - 1].is_zero()) continue;
    total += draw_mix[d - 1] * best_guess(d, opponent_mix).win_prob;
  }
  return total;
}

/// Player 2's best guess given own draw, player 1's spoken total, and a belief
/// over player 1's draw. Player 1's guess is excluded.
inline BestGuess second_best_guess(int own, int first_guess, const Distribution& opponent_mix) {
  return best_guess_over(averaged_distribution(own, opponent_mix), first_guess);
}

}  // namespace chinos::scg
