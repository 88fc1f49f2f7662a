#pragma once

#include "chinos/probability.hpp"
#include "chinos/rng.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chinos::ccg {

/// Probability that player 2 guesses the total when player 1 succeeds with p1.
inline Rational p2_from_p1(const Rational& p1, int n_coins) {
  if (p1.sign() < 0 || p1 > Rational(1)) throw std::out_of_range("p1 must lie in [0, 1], got " + p1.to_string());
  if (n_coins < 1) throw std::out_of_range("n_coins must be positive");
  return (Rational(1) - p1) / Rational(n_coins);
}

/// P2 = p2 / (p1 + p2) with p2 = (1 - p1) / N_c.
inline Rational normalized_payoff_p2(const Rational& p1, int n_coins) {
  if (p1.sign() < 0 || p1 > Rational(1)) throw std::out_of_range("p1 must lie in [0, 1], got " + p1.to_string());
  if (n_coins < 1) throw std::out_of_range("n_coins must be positive");
  return (Rational(1) - p1) / (Rational(1) + p1 * Rational(n_coins - 1));
}

/// Lowest success rate player 1 can be held to by a randomly drawing opponent.
inline Rational p1_lower_bound(int n_coins) { return Rational(1, n_coins + 1); }

/// Information available to a player when guessing: own draw and the guesses
/// already spoken this round.
struct GuessContext {
  int own_draw = 0;
  std::vector<int> prior_guesses;
  friend auto operator<=>(const GuessContext&, const GuessContext&) = default;
};

/// Classical strategy for a game with n_coins coins per player.
///
/// draw_distribution ranges over 0..n_coins; each guess distribution ranges
/// over the totals 0..2*n_coins and never puts mass on a prior guess.
struct ClassicalStrategy {
  int n_coins = 1;
  Distribution draw_distribution;
  std::map<GuessContext, Distribution> guess_policy;

  int num_totals() const { return 2 * n_coins + 1; }

  const Distribution& guess_distribution(const GuessContext& ctx) const {
    auto it = guess_policy.find(ctx);
    if (it == guess_policy.end()) {
      throw std::invalid_argument("guess policy has no entry for draw " + std::to_string(ctx.own_draw) +
                                  " after " + std::to_string(ctx.prior_guesses.size()) + " prior guesses");
    }
    return it->second;
  }

  void validate() const {
    if (n_coins < 1) throw std::invalid_argument("strategy: n_coins must be positive");
    validate_distribution(draw_distribution, n_coins + 1, "draw distribution");
    for (const auto& [ctx, dist] : guess_policy) {
      if (ctx.own_draw < 0 || ctx.own_draw > n_coins) throw std::invalid_argument("guess policy: draw out of range");
      validate_distribution(dist, num_totals(), "guess distribution");
      for (int g : ctx.prior_guesses) {
        if (g < 0 || g >= num_totals()) throw std::invalid_argument("guess policy: prior guess out of range");
        if (!dist[g].is_zero()) {
          throw std::invalid_argument("guess policy assigns mass to already spoken total " + std::to_string(g));
        }
      }
    }
  }
};

namespace strategies {

/// Uniform draws; player 1 always announces n_coins regardless of the draw.
inline ClassicalStrategy first_announces_n_coins(int n_coins, Distribution draws = {}) {
  ClassicalStrategy s{n_coins, draws.empty() ? uniform_distribution(n_coins + 1) : std::move(draws), {}};
  for (int d = 0; d <= n_coins; ++d) s.guess_policy[{d, {}}] = point_mass(s.num_totals(), n_coins);
  return s;
}

/// Player 1 guesses uniformly over the totals consistent with the own draw.
inline ClassicalStrategy first_random_consistent(int n_coins, Distribution draws = {}) {
  ClassicalStrategy s{n_coins, draws.empty() ? uniform_distribution(n_coins + 1) : std::move(draws), {}};
  for (int d = 0; d <= n_coins; ++d) {
    std::vector<std::size_t> support;
    for (int t = d; t <= d + n_coins; ++t) support.push_back(t);
    s.guess_policy[{d, {}}] = uniform_over(s.num_totals(), support);
  }
  return s;
}

/// Player 1 names own draw (correct when the opponent holds nothing).
inline ClassicalStrategy first_guesses_own_draw(int n_coins, Distribution draws = {}) {
  ClassicalStrategy s{n_coins, draws.empty() ? uniform_distribution(n_coins + 1) : std::move(draws), {}};
  for (int d = 0; d <= n_coins; ++d) s.guess_policy[{d, {}}] = point_mass(s.num_totals(), d);
  return s;
}

/// Player 2 picks uniformly among totals consistent with the own draw that were
/// not already spoken; falls back to any unspoken total when none remain.
inline ClassicalStrategy second_remaining_consistent(int n_coins, Distribution draws = {}) {
  ClassicalStrategy s{n_coins, draws.empty() ? uniform_distribution(n_coins + 1) : std::move(draws), {}};
  for (int d = 0; d <= n_coins; ++d) {
    for (int g1 = 0; g1 < s.num_totals(); ++g1) {
      std::vector<std::size_t> support;
      for (int t = d; t <= d + n_coins; ++t)
        if (t != g1) support.push_back(t);
      if (support.empty())
        for (int t = 0; t < s.num_totals(); ++t)
          if (t != g1) support.push_back(t);
      s.guess_policy[{d, {g1}}] = uniform_over(s.num_totals(), support);
    }
  }
  return s;
}

/// Player 2 picks uniformly among every total not already spoken.
inline ClassicalStrategy second_uniform_unspoken(int n_coins, Distribution draws = {}) {
  ClassicalStrategy s{n_coins, draws.empty() ? uniform_distribution(n_coins + 1) : std::move(draws), {}};
  for (int d = 0; d <= n_coins; ++d) {
    for (int g1 = 0; g1 < s.num_totals(); ++g1) {
      std::vector<std::size_t> support;
      for (int t = 0; t < s.num_totals(); ++t)
        if (t != g1) support.push_back(t);
      s.guess_policy[{d, {g1}}] = uniform_over(s.num_totals(), support);
    }
  }
  return s;
}

}  // namespace strategies

/// Exact success rates: p_i is the chance player i names the total; P_i
/// normalizes over decided rounds and is absent when nobody can ever win.
struct WinProbabilities {
  Rational p1;
  Rational p2;
  std::optional<Rational> P1;
  std::optional<Rational> P2;

  bool decided() const { return P1.has_value(); }
};

/// Enumerates every draw pair and guess realization.
inline WinProbabilities exact_win_prob(const ClassicalStrategy& first, const ClassicalStrategy& second) {
  first.validate();
  second.validate();
  if (first.n_coins != second.n_coins) throw std::invalid_argument("strategies disagree on the coin count");
  const int nc = first.n_coins;
  const int totals = first.num_totals();

  WinProbabilities out{Rational(0), Rational(0), std::nullopt, std::nullopt};
  for (int d1 = 0; d1 <= nc; ++d1) {
    const Rational& w1 = first.draw_distribution[d1];
    if (w1.is_zero()) continue;
    for (int d2 = 0; d2 <= nc; ++d2) {
      const Rational& w2 = second.draw_distribution[d2];
      if (w2.is_zero()) continue;
      const int total = d1 + d2;
      const auto& guess1 = first.guess_distribution({d1, {}});
      for (int g1 = 0; g1 < totals; ++g1) {
        if (guess1[g1].is_zero()) continue;
        const Rational w = w1 * w2 * guess1[g1];
        if (g1 == total) out.p1 += w;
        const auto& guess2 = second.guess_distribution({d2, {g1}});
        if (total != g1 && !guess2[total].is_zero()) out.p2 += w * guess2[total];
      }
    }
  }
  const Rational decided = out.p1 + out.p2;
  if (!decided.is_zero()) {
    out.P1 = out.p1 / decided;
    out.P2 = out.p2 / decided;
  }
  return out;
}

struct SimulationResult {
  std::uint64_t wins1 = 0;
  std::uint64_t wins2 = 0;
  std::uint64_t draws_void = 0;
  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/// Monte-Carlo play. Per round the stream is consumed in the order: draw 1,
/// draw 2, guess 1, guess 2.
inline SimulationResult simulate_rounds(const ClassicalStrategy& first, const ClassicalStrategy& second,
                                        std::uint64_t rounds, std::uint64_t seed) {
  first.validate();
  second.validate();
  if (rounds < 1) throw std::invalid_argument("simulate_rounds: rounds must be positive");
  SessionRng rng(seed);
  SimulationResult r;
  for (std::uint64_t i = 0; i < rounds; ++i) {
    const int d1 = static_cast<int>(rng.sample(first.draw_distribution));
    const int d2 = static_cast<int>(rng.sample(second.draw_distribution));
    const int g1 = static_cast<int>(rng.sample(first.guess_distribution({d1, {}})));
    const int g2 = static_cast<int>(rng.sample(second.guess_distribution({d2, {g1}})));
    const int total = d1 + d2;
    if (g1 == total) ++r.wins1;
    else if (g2 == total) ++r.wins2;
    else ++r.draws_void;
  }
  return r;
}

}  // namespace chinos::ccg
