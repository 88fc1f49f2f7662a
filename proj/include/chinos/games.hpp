#pragma once

#include "chinos/classical.hpp"
#include "chinos/quantum.hpp"
#include "chinos/semiclassical.hpp"
#include "chinos/solver.hpp"

#include <string>

namespace chinos::games {

inline std::string op_label(int d) { return "O" + std::to_string(d); }

/// Semiclassical draw game. Player 1 picks a (draw, first guess) pair,
/// player 2 a draw; U1 is the probability that player 1's guess matches the
/// measured total and U2 = -U1.
inline solver::MatrixGame<Rational> scg_draw_game() {
  solver::MatrixGame<Rational> g;
  for (int d1 = 1; d1 <= 4; ++d1)
    for (int n = 0; n < scg::kNumTotals; ++n) g.actions1.push_back(op_label(d1) + "/guess" + std::to_string(n));
  for (int d2 = 1; d2 <= 4; ++d2) g.actions2.push_back(op_label(d2));
  for (int d1 = 1; d1 <= 4; ++d1)
    for (int n = 0; n < scg::kNumTotals; ++n) {
      std::vector<Rational> r1, r2;
      for (int d2 = 1; d2 <= 4; ++d2) {
        const auto p = scg::joint_distribution(d1, d2)[n];
        r1.push_back(p);
        r2.push_back(-p);
      }
      g.U1.push_back(std::move(r1));
      g.U2.push_back(std::move(r2));
    }
  return g;
}

/// Row index of (draw, guess) in scg_draw_game().
inline std::size_t scg_action(int draw, int guess) { return static_cast<std::size_t>((draw - 1) * scg::kNumTotals + guess); }

/// Quantum draw game. Player 1 picks a (draw, guess j<=k) pair, player 2 a
/// draw; U1 = f1 and U2 = -f1.
inline solver::MatrixGame<Rational> qcg_draw_game() {
  solver::MatrixGame<Rational> g;
  const auto guesses = qcg::first_player_guesses();
  for (int d1 = 1; d1 <= 4; ++d1)
    for (const auto& q : guesses) g.actions1.push_back(op_label(d1) + "/" + q.to_string());
  for (int d2 = 1; d2 <= 4; ++d2) g.actions2.push_back(op_label(d2));
  for (int d1 = 1; d1 <= 4; ++d1)
    for (const auto& q : guesses) {
      const auto row = qcg::payoff_table_for_guess(q, d1);
      std::vector<Rational> r2;
      for (const auto& x : row) r2.push_back(-x);
      g.U1.emplace_back(row.begin(), row.end());
      g.U2.push_back(std::move(r2));
    }
  return g;
}

inline std::size_t qcg_action(int draw, const qcg::QuantumGuess& guess) {
  const auto guesses = qcg::first_player_guesses();
  const auto it = std::find(guesses.begin(), guesses.end(), guess);
  if (it == guesses.end()) throw std::invalid_argument("qcg_action: guess must satisfy j <= k");
  return static_cast<std::size_t>(draw - 1) * guesses.size() + static_cast<std::size_t>(it - guesses.begin());
}

/// Mixed row strategy of qcg_draw_game() realising the coin-flip strategy.
inline std::vector<Rational> qcg_coin_flip_mix() {
  auto g = qcg_draw_game();
  std::vector<Rational> mix(g.rows(), Rational(0));
  mix[qcg_action(2, {2, 2})] = Rational(1, 2);
  mix[qcg_action(3, {3, 3})] = Rational(1, 2);
  return mix;
}

/// Classical CCG(2, n_coins) reduced to draw distributions. Player 1 always
/// announces n_coins; player 2 names a remaining consistent total. Each
/// player chooses among uniform draws and each fixed draw. Payoffs are the
/// normalized win shares P1, P2.
inline solver::MatrixGame<Rational> ccg_reduced_game(int n_coins = 1) {
  std::vector<std::pair<std::string, Distribution>> draws{{"uniform", uniform_distribution(n_coins + 1)}};
  for (int d = 0; d <= n_coins; ++d) draws.emplace_back("always" + std::to_string(d), point_mass(n_coins + 1, d));

  solver::MatrixGame<Rational> g;
  for (const auto& [name, _] : draws) {
    g.actions1.push_back(name);
    g.actions2.push_back(name);
  }
  for (const auto& [n1, d1] : draws) {
    std::vector<Rational> r1, r2;
    for (const auto& [n2, d2] : draws) {
      const auto w = ccg::exact_win_prob(ccg::strategies::first_announces_n_coins(n_coins, d1),
                                         ccg::strategies::second_remaining_consistent(n_coins, d2));
      r1.push_back(w.P1.value_or(Rational(0)));
      r2.push_back(w.P2.value_or(Rational(0)));
    }
    g.U1.push_back(std::move(r1));
    g.U2.push_back(std::move(r2));
  }
  return g;
}

}  // namespace chinos::games
