#pragma once

#include "chinos/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chinos::solver {

template <typename T>
using Grid = std::vector<std::vector<T>>;

/// Finite two-player game in normal form. U1[i][j] and U2[i][j] are the
/// payoffs when player 1 plays row i and player 2 plays column j.
template <typename T>
struct MatrixGame {
  std::vector<std::string> actions1;
  std::vector<std::string> actions2;
  Grid<T> U1;
  Grid<T> U2;

  std::size_t rows() const { return actions1.size(); }
  std::size_t cols() const { return actions2.size(); }

  void validate() const {
    auto check = [&](const Grid<T>& u, const char* name) {
      if (u.size() != rows()) throw std::invalid_argument(std::string(name) + ": row count does not match actions1");
      for (const auto& row : u)
        if (row.size() != cols()) throw std::invalid_argument(std::string(name) + ": column count does not match actions2");
    };
    if (rows() == 0 || cols() == 0) throw std::invalid_argument("game: empty action set");
    check(U1, "U1");
    check(U2, "U2");
  }
};

template <typename T>
T zero_of() { return T(0); }

/// mix1^T U_i mix2 for both players.
template <typename T>
std::pair<T, T> expected_payoff(const MatrixGame<T>& g, const std::vector<T>& mix1, const std::vector<T>& mix2) {
  g.validate();
  if (mix1.size() != g.rows() || mix2.size() != g.cols()) throw std::invalid_argument("expected_payoff: mix dimension mismatch");
  T v1 = zero_of<T>();
  T v2 = zero_of<T>();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const T w = mix1[i] * mix2[j];
      v1 += w * g.U1[i][j];
      v2 += w * g.U2[i][j];
    }
  return {v1, v2};
}

/// Payoff of each own action against the opponent's mix.
template <typename T>
std::vector<T> action_values(const MatrixGame<T>& g, const std::vector<T>& opponent_mix, int player) {
  g.validate();
  std::vector<T> values;
  if (player == 1) {
    if (opponent_mix.size() != g.cols()) throw std::invalid_argument("action_values: mix dimension mismatch");
    for (std::size_t i = 0; i < g.rows(); ++i) {
      T v = zero_of<T>();
      for (std::size_t j = 0; j < g.cols(); ++j) v += opponent_mix[j] * g.U1[i][j];
      values.push_back(v);
    }
  } else if (player == 2) {
    if (opponent_mix.size() != g.rows()) throw std::invalid_argument("action_values: mix dimension mismatch");
    for (std::size_t j = 0; j < g.cols(); ++j) {
      T v = zero_of<T>();
      for (std::size_t i = 0; i < g.rows(); ++i) v += opponent_mix[i] * g.U2[i][j];
      values.push_back(v);
    }
  } else {
    throw std::invalid_argument("player must be 1 or 2");
  }
  return values;
}

/// Every action attaining the maximal expected payoff. Ties are never broken.
template <typename T>
std::vector<std::size_t> best_responses(const MatrixGame<T>& g, const std::vector<T>& opponent_mix, int player) {
  const auto values = action_values(g, opponent_mix, player);
  const T best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < values.size(); ++a)
    if (values[a] == best) out.push_back(a);
  return out;
}

template <typename T>
std::vector<T> pure_mix(std::size_t n, std::size_t at) {
  std::vector<T> m(n, zero_of<T>());
  m.at(at) = T(1);
  return m;
}

/// Cells where each action is a best response to the other.
template <typename T>
std::vector<std::pair<std::size_t, std::size_t>> pure_equilibria(const MatrixGame<T>& g) {
  g.validate();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      bool row_best = true;
      for (std::size_t k = 0; k < g.rows() && row_best; ++k) row_best = !(g.U1[k][j] > g.U1[i][j]);
      bool col_best = true;
      for (std::size_t k = 0; k < g.cols() && col_best; ++k) col_best = !(g.U2[i][k] > g.U2[i][j]);
      if (row_best && col_best) out.emplace_back(i, j);
    }
  return out;
}

struct FictitiousPlayResult {
  std::vector<double> mix1;
  std::vector<double> mix2;
  bool converged = false;
  std::size_t iterations = 0;
};

inline double to_double_value(double x) { return x; }
inline double to_double_value(const Rational& x) { return x.to_double(); }

/// Simultaneous fictitious play from the first action pair. Each step both
/// players best-respond (smallest index on ties) to the opponent's empirical
/// frequencies. Convergence is tested at checkpoints t = 2, 4, 8, ...: the
/// run stops once the empirical mixes at t and t/2 differ by less than
/// `tolerance` in max-norm. The result is approximate by construction.
template <typename T>
FictitiousPlayResult fictitious_play(const MatrixGame<T>& game, std::size_t max_iters, double tolerance) {
  game.validate();
  if (max_iters < 1) throw std::invalid_argument("fictitious_play: max_iters must be at least 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("fictitious_play: tolerance must be positive");

  const std::size_t n = game.rows();
  const std::size_t m = game.cols();
  Grid<double> u1(n, std::vector<double>(m));
  Grid<double> u2(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      u1[i][j] = to_double_value(game.U1[i][j]);
      u2[i][j] = to_double_value(game.U2[i][j]);
    }

  std::vector<double> count1(n, 0.0), count2(m, 0.0);
  // Cumulative payoff of each action against the opponent's history.
  std::vector<double> score1(n, 0.0), score2(m, 0.0);
  std::size_t a1 = 0, a2 = 0;
  std::vector<double> checkpoint1, checkpoint2;
  std::size_t next_checkpoint = 2;

  auto mix_of = [](const std::vector<double>& counts, double t) {
    std::vector<double> mix(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) mix[i] = counts[i] / t;
    return mix;
  };
  auto max_diff = [](const std::vector<double>& x, const std::vector<double>& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
  };
  auto argmax = [](const std::vector<double>& v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  };

  FictitiousPlayResult result;
  for (std::size_t t = 1; t <= max_iters; ++t) {
    count1[a1] += 1.0;
    count2[a2] += 1.0;
    for (std::size_t i = 0; i < n; ++i) score1[i] += u1[i][a2];
    for (std::size_t j = 0; j < m; ++j) score2[j] += u2[a1][j];
    a1 = argmax(score1);
    a2 = argmax(score2);
    result.iterations = t;

    if (t == 1) {
      checkpoint1 = mix_of(count1, 1.0);
      checkpoint2 = mix_of(count2, 1.0);
    } else if (t == next_checkpoint) {
      auto m1 = mix_of(count1, static_cast<double>(t));
      auto m2 = mix_of(count2, static_cast<double>(t));
      const bool settled = max_diff(m1, checkpoint1) < tolerance && max_diff(m2, checkpoint2) < tolerance;
      checkpoint1 = std::move(m1);
      checkpoint2 = std::move(m2);
      next_checkpoint *= 2;
      if (settled) {
        result.converged = true;
        break;
      }
    }
  }
  const double t = static_cast<double>(result.iterations);
  result.mix1 = mix_of(count1, t);
  result.mix2 = mix_of(count2, t);
  return result;
}

}  // namespace chinos::solver
