#pragma once

#include "chinos/fock.hpp"
#include "chinos/probability.hpp"
#include "chinos/semiclassical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chinos::qcg {

/// Guess state O_j O_k |0> for an ordered operator pair (j, k).
struct QuantumGuess {
  int j = 1;
  int k = 1;

  QuantumGuess() = default;
  QuantumGuess(int j_, int k_) : j(j_), k(k_) {
    scg::check_draw(j);
    scg::check_draw(k);
  }

  FockPoly<QuadScalar> state() const { return scg::joint_state(k, j); }
  Rational norm_sq() const { return norm_squared(state()).rational(); }

  /// Player 1 may only name pairs with j <= k.
  bool is_canonical() const { return j <= k; }

  /// Flat index (j-1)*4 + (k-1) into the 16 ordered pairs.
  int index() const { return (j - 1) * 4 + (k - 1); }
  static QuantumGuess from_index(int idx) { return {idx / 4 + 1, idx % 4 + 1}; }

  std::string to_string() const { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; }

  /// Parses "(j,k)", "j,k" or "jk".
  static QuantumGuess parse(std::string_view text) {
    const auto bad = [&] { return std::invalid_argument("cannot parse quantum guess '" + std::string(text) + "', expected (j,k)"); };
    std::string compact;
    for (char c : text)
      if (c != ' ') compact += c;
    if (compact.size() != 5 || compact[0] != '(' || compact[2] != ',' || compact[4] != ')') throw bad();
    const int j = compact[1] - '0';
    const int k = compact[3] - '0';
    if (j < 1 || j > 4 || k < 1 || k > 4) throw bad();
    return {j, k};
  }

  friend bool operator==(const QuantumGuess&, const QuantumGuess&) = default;
  friend auto operator<=>(const QuantumGuess&, const QuantumGuess&) = default;
};

inline constexpr int kNumPairs = 16;

inline std::vector<QuantumGuess> all_pairs() {
  std::vector<QuantumGuess> out;
  for (int i = 0; i < kNumPairs; ++i) out.push_back(QuantumGuess::from_index(i));
  return out;
}

/// The ten guesses available to the first player (j <= k).
inline std::vector<QuantumGuess> first_player_guesses() {
  std::vector<QuantumGuess> out;
  for (int j = 1; j <= 4; ++j)
    for (int k = j; k <= 4; ++k) out.emplace_back(j, k);
  return out;
}

/// One entry of the Gram metric between normalized guess states.
struct GramEntry {
  QuadScalar overlap;      // unnormalized <s1|s2>
  Rational magnitude_sq;   // |<s1|s2>|^2 / (|s1|^2 |s2|^2)
  bool zero = false;
};

/// 16x16 metric over ordered pairs, indexed by QuantumGuess::index().
class GramMetric {
 public:
  GramMetric() {
    const auto pairs = all_pairs();
    std::vector<FockPoly<QuadScalar>> states;
    std::vector<QuadScalar> norms;
    for (const auto& p : pairs) {
      states.push_back(p.state());
      norms.push_back(norm_squared(states.back()));
    }
    for (int a = 0; a < kNumPairs; ++a) {
      for (int b = 0; b < kNumPairs; ++b) {
        GramEntry& e = entries_[a][b];
        e.overlap = overlap(states[a], states[b]);
        e.zero = e.overlap.is_zero();
        e.magnitude_sq = (abs_sq(e.overlap) / (norms[a] * norms[b])).rational();
      }
    }
  }

  const GramEntry& at(const QuantumGuess& x, const QuantumGuess& y) const { return entries_[x.index()][y.index()]; }
  bool orthogonal(const QuantumGuess& x, const QuantumGuess& y) const { return at(x, y).zero; }

 private:
  std::array<std::array<GramEntry, kNumPairs>, kNumPairs> entries_;
};

inline const GramMetric& gram_metric() {
  static const GramMetric metric;
  return metric;
}

/// Normalized complex metric in the float backend.
inline std::array<std::array<FloatAmplitude, kNumPairs>, kNumPairs> float_gram_metric() {
  std::array<std::array<FloatAmplitude, kNumPairs>, kNumPairs> g{};
  std::vector<FockPoly<FloatAmplitude>> states;
  for (const auto& p : all_pairs()) {
    const std::array ops{reduced_operator<FloatAmplitude>(p.k), reduced_operator<FloatAmplitude>(p.j)};
    states.push_back(apply_all<FloatAmplitude>(ops));
  }
  for (int a = 0; a < kNumPairs; ++a)
    for (int b = 0; b < kNumPairs; ++b)
      g[a][b] = overlap(states[a], states[b]) / std::sqrt(norm_squared(states[a]) * norm_squared(states[b]));
  return g;
}

/// Ordered pairs exactly orthogonal to every prior guess.
inline std::vector<QuantumGuess> admissible_guesses(const std::vector<QuantumGuess>& prior) {
  const auto& g = gram_metric();
  std::vector<QuantumGuess> out;
  for (const auto& cand : all_pairs()) {
    if (std::all_of(prior.begin(), prior.end(), [&](const QuantumGuess& p) { return g.orthogonal(p, cand); })) {
      out.push_back(cand);
    }
  }
  return out;
}

/// Fidelity payoff of a guess against the round's joint state O_{d1} O_{d2} |0>.
inline Rational guess_fidelity(const QuantumGuess& guess, int d1, int d2) {
  return fidelity(guess.state(), scg::joint_state(d1, d2)).rational();
}

using PayoffRow = std::array<Rational, kNumReducedOperators>;

/// f1 for each player-2 draw, given player 1's draw and guess.
inline PayoffRow payoff_table_for_guess(const QuantumGuess& guess1, int draw1) {
  PayoffRow row;
  for (int d2 = 1; d2 <= 4; ++d2) row[d2 - 1] = guess_fidelity(guess1, draw1, d2);
  return row;
}

/// Mixed first-player strategy: a draw distribution and one guess per draw.
struct FirstPlayerStrategy {
  Distribution draw_mix;                         // over O1..O4
  std::array<QuantumGuess, kNumReducedOperators> guess_for_draw;
};

/// Draw O2 or O3 with equal probability, then guess (2,2) or (3,3) accordingly.
inline FirstPlayerStrategy coin_flip_strategy() {
  return {uniform_over(4, {1, 2}), {QuantumGuess(1, 1), QuantumGuess(2, 2), QuantumGuess(3, 3), QuantumGuess(4, 4)}};
}

/// Expected f1 for each pure player-2 draw.
inline PayoffRow expected_f1_by_opponent_draw(const FirstPlayerStrategy& s) {
  validate_distribution(s.draw_mix, kNumReducedOperators, "draw mix");
  PayoffRow out{Rational(0), Rational(0), Rational(0), Rational(0)};
  for (int d1 = 1; d1 <= 4; ++d1) {
    const Rational& w = s.draw_mix[d1 - 1];
    if (w.is_zero()) continue;
    const auto row = payoff_table_for_guess(s.guess_for_draw[d1 - 1], d1);
    for (int d2 = 0; d2 < 4; ++d2) out[d2] += w * row[d2];
  }
  return out;
}

inline Rational expected_f1(const FirstPlayerStrategy& s, const Distribution& opponent_mix) {
  validate_distribution(opponent_mix, kNumReducedOperators, "opponent mix");
  const auto by_draw = expected_f1_by_opponent_draw(s);
  Rational total(0);
  for (int d2 = 0; d2 < 4; ++d2) total += opponent_mix[d2] * by_draw[d2];
  return total;
}

/// Expected f1 of the coin-flip strategy against player 2 drawing O2/O3 uniformly.
inline Rational coin_flip_strategy_payoff() { return expected_f1(coin_flip_strategy(), uniform_over(4, {1, 2})); }

/// Player 2's best admissible guess for a given own draw and belief over player 1's draw.
struct SecondPlayerResponse {
  int draw2;
  QuantumGuess guess1;
  QuantumGuess guess2;              // canonical pick: smallest index among maximizers
  Rational expected_f2;
  std::vector<QuantumGuess> tied;
};

inline SecondPlayerResponse best_second_guess(int draw2, const QuantumGuess& guess1, const Distribution& belief_d1) {
  validate_distribution(belief_d1, kNumReducedOperators, "belief over player 1 draws");
  SecondPlayerResponse best{draw2, guess1, guess1, Rational(-1), {}};
  for (const auto& g2 : admissible_guesses({guess1})) {
    Rational value(0);
    for (int d1 = 1; d1 <= 4; ++d1) {
      if (!belief_d1[d1 - 1].is_zero()) value += belief_d1[d1 - 1] * guess_fidelity(g2, d1, draw2);
    }
    if (value > best.expected_f2) {
      best.guess2 = g2;
      best.expected_f2 = value;
      best.tied = {g2};
    } else if (value == best.expected_f2) {
      best.tied.push_back(g2);
    }
  }
  return best;
}

/// Player 2's belief about player 1's draw after hearing guess1: the coin-flip
/// strategy's conditional draw when guess1 is one of its guesses, uniform otherwise.
inline Distribution belief_after_guess(const QuantumGuess& guess1) {
  if (guess1 == QuantumGuess(2, 2)) return point_mass(4, 1);
  if (guess1 == QuantumGuess(3, 3)) return point_mass(4, 2);
  return uniform_distribution(4);
}

struct FirstPlayerResponse {
  int draw1;
  QuantumGuess guess1;
  Rational expected_f1;
};

/// One pure profile of the exhaustive enumeration.
struct Profile {
  int d1;
  QuantumGuess g1;
  int d2;
  QuantumGuess g2;
  Rational f1;
  Rational f2;
};

struct ExhaustiveReport {
  std::size_t profiles_evaluated = 0;
  std::size_t distinct_guess_states = 0;
  PayoffRow coin_flip_f1_by_draw2;                  // averaged over player 1's coin flip
  std::vector<int> f1_minimizing_draws;         // player 2's pure draws minimizing f1
  Rational guaranteed_value;                    // min over player-2 draw mixes
  Rational coin_flip_value;                         // vs player 2 uniform over O2/O3
  /// Player 1: best (draw, guess) per opponent pure draw, and vs uniform draws.
  std::vector<FirstPlayerResponse> player1_best_vs_draw;
  FirstPlayerResponse player1_best_vs_uniform;
  /// Player 2: best admissible guess for each (own draw, heard guess).
  std::vector<SecondPlayerResponse> player2_best_guess;
  /// Expected f2 when player 2 draws d2 and best-responds against the coin-flip strategy.
  PayoffRow coin_flip_f2_by_draw2;
  bool classical_embedding_consistent = false;
  bool symmetry_broken = false;
};

/// Number-state guesses |0>, |1>, |2> as ordered pairs.
inline std::array<QuantumGuess, 3> number_state_guesses() { return {QuantumGuess(1, 1), QuantumGuess(1, 4), QuantumGuess(4, 4)}; }

/// Every first-player pure strategy against every second-player draw and
/// admissible guess.
inline ExhaustiveReport exhaustive_analysis() {
  ExhaustiveReport r;
  const auto& metric = gram_metric();

  std::vector<Profile> profiles;
  for (int d1 = 1; d1 <= 4; ++d1)
    for (const auto& g1 : first_player_guesses())
      for (int d2 = 1; d2 <= 4; ++d2)
        for (const auto& g2 : admissible_guesses({g1}))
          profiles.push_back({d1, g1, d2, g2, guess_fidelity(g1, d1, d2), guess_fidelity(g2, d1, d2)});
  r.profiles_evaluated = profiles.size();

  {
    std::vector<FockPoly<QuadScalar>> seen;
    for (const auto& p : all_pairs()) {
      const auto s = p.state();
      if (std::none_of(seen.begin(), seen.end(), [&](const auto& t) { return same_ray(s, t); })) seen.push_back(s);
    }
    r.distinct_guess_states = seen.size();
  }

  const auto strategy = coin_flip_strategy();
  r.coin_flip_f1_by_draw2 = expected_f1_by_opponent_draw(strategy);
  r.coin_flip_value = coin_flip_strategy_payoff();
  // Expected f1 is linear in player 2's mix, so the minimum sits at a vertex.
  r.guaranteed_value = *std::min_element(r.coin_flip_f1_by_draw2.begin(), r.coin_flip_f1_by_draw2.end());
  for (int d2 = 1; d2 <= 4; ++d2)
    if (r.coin_flip_f1_by_draw2[d2 - 1] == r.guaranteed_value) r.f1_minimizing_draws.push_back(d2);

  auto best_first = [&](const Distribution& mix) {
    FirstPlayerResponse best{0, QuantumGuess(1, 1), Rational(-1)};
    for (int d1 = 1; d1 <= 4; ++d1)
      for (const auto& g1 : first_player_guesses()) {
        Rational v(0);
        for (int d2 = 1; d2 <= 4; ++d2)
          if (!mix[d2 - 1].is_zero()) v += mix[d2 - 1] * guess_fidelity(g1, d1, d2);
        if (v > best.expected_f1) best = {d1, g1, v};
      }
    return best;
  };
  for (int d2 = 1; d2 <= 4; ++d2) r.player1_best_vs_draw.push_back(best_first(point_mass(4, d2 - 1)));
  r.player1_best_vs_uniform = best_first(uniform_distribution(4));

  for (int d2 = 1; d2 <= 4; ++d2)
    for (const auto& g1 : first_player_guesses())
      r.player2_best_guess.push_back(best_second_guess(d2, g1, belief_after_guess(g1)));

  for (int d2 = 1; d2 <= 4; ++d2) {
    Rational v(0);
    for (int d1 = 1; d1 <= 4; ++d1) {
      const Rational& w = strategy.draw_mix[d1 - 1];
      if (w.is_zero()) continue;
      const auto& g1 = strategy.guess_for_draw[d1 - 1];
      v += w * best_second_guess(d2, g1, belief_after_guess(g1)).expected_f2;
    }
    r.coin_flip_f2_by_draw2[d2 - 1] = v;
  }

  bool consistent = true;
  const auto numbers = number_state_guesses();
  for (int d1 = 1; d1 <= 4; ++d1)
    for (int d2 = 1; d2 <= 4; ++d2) {
      const auto dist = scg::joint_distribution(d1, d2);
      for (int n = 0; n < scg::kNumTotals; ++n)
        consistent = consistent && guess_fidelity(numbers[n], d1, d2) == dist[n];
    }
  // Distinct number states must also be mutually admissible.
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) consistent = consistent && metric.orthogonal(numbers[a], numbers[b]);
  r.classical_embedding_consistent = consistent;

  r.symmetry_broken = r.guaranteed_value > Rational(1, 2);
  return r;
}

}  // namespace chinos::qcg
