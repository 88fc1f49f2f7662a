#pragma once

#include "chinos/classical.hpp"
#include "chinos/games.hpp"
#include "chinos/quantum.hpp"
#include "chinos/semiclassical.hpp"
#include "chinos/serialize.hpp"

#include <iomanip>
#include <sstream>
#include <string>

namespace chinos::report {

inline std::string op(int d) { return "O" + std::to_string(d); }

inline Json distribution_json(const scg::OutcomeDistribution& d) {
  Json exact = Json::array();
  Json floats = Json::array();
  for (const auto& x : d) {
    exact.push_back(x.to_string());
    floats.push_back(x.to_double());
  }
  return Json{{"p", exact}, {"p_float", floats}};
}

// ---------------------------------------------------------------- semiclassical

inline Json scg_tables_json() {
  Json t1 = Json::array();
  const auto table = scg::outcome_table();
  for (int d1 = 1; d1 <= 4; ++d1)
    for (int d2 = 1; d2 <= 4; ++d2) {
      Json cell = distribution_json(table[d1 - 1][d2 - 1]);
      cell["draw1"] = op(d1);
      cell["draw2"] = op(d2);
      t1.push_back(cell);
    }
  Json t2 = Json::array();
  const auto uniform = uniform_distribution(4);
  for (int d = 1; d <= 4; ++d) {
    Json cell = distribution_json(scg::averaged_distribution(d, uniform));
    cell["draw"] = op(d);
    t2.push_back(cell);
  }
  return Json{{"kind", "scg-tables"},
              {"totals", {0, 1, 2}},
              {"outcome_table", t1},
              {"averaged_table", t2},
              {"averaged_opponent_mix", to_json(uniform)},
              {"notes",
               {{"outcome_table", "Born distribution of the measured total for each pair of draws"},
                {"averaged_table", "player 1's outcome distribution with player 2 drawing uniformly"}}}};
}

inline std::string scg_tables_csv() {
  std::ostringstream out;
  out << "table,draw1,draw2,p0,p1,p2\n";
  const auto table = scg::outcome_table();
  for (int d1 = 1; d1 <= 4; ++d1)
    for (int d2 = 1; d2 <= 4; ++d2) {
      const auto& c = table[d1 - 1][d2 - 1];
      out << "outcome," << op(d1) << "," << op(d2) << "," << c[0] << "," << c[1] << "," << c[2] << "\n";
    }
  const auto uniform = uniform_distribution(4);
  for (int d = 1; d <= 4; ++d) {
    const auto c = scg::averaged_distribution(d, uniform);
    out << "averaged," << op(d) << ",uniform," << c[0] << "," << c[1] << "," << c[2] << "\n";
  }
  return out.str();
}

inline std::string scg_tables_md() {
  std::ostringstream out;
  const auto table = scg::outcome_table();
  out << "### Outcome probabilities p(0) / p(1) / p(2)\n\n";
  out << "| player 2 \\ player 1 | O1 | O2 | O3 | O4 |\n|---|---|---|---|---|\n";
  for (int d2 = 1; d2 <= 4; ++d2) {
    out << "| " << op(d2) << " |";
    for (int d1 = 1; d1 <= 4; ++d1) {
      const auto& c = table[d1 - 1][d2 - 1];
      out << " " << c[0] << " / " << c[1] << " / " << c[2] << " |";
    }
    out << "\n";
  }
  out << "\n### Averaged over a uniform opponent\n\n| draw | <p(0)> | <p(1)> | <p(2)> |\n|---|---|---|---|\n";
  const auto uniform = uniform_distribution(4);
  for (int d = 1; d <= 4; ++d) {
    const auto c = scg::averaged_distribution(d, uniform);
    out << "| " << op(d) << " | " << c[0] << " | " << c[1] << " | " << c[2] << " |\n";
  }
  return out.str();
}

inline Json scg_analysis_json(const Distribution& draw_mix, const Distribution& opponent_mix) {
  Json j{{"kind", "scg-analysis"}};
  j["inputs"] = Json{{"draw_mix", to_json(draw_mix)}, {"opponent_mix", to_json(opponent_mix)}};
  put_exact(j, "first_guess_success", scg::strategy_payoff_p1(draw_mix, opponent_mix));
  Json guesses = Json::array();
  for (int d = 1; d <= 4; ++d) {
    const auto b = scg::best_guess(d, opponent_mix);
    Json g{{"draw", op(d)}, {"guess", b.guess}, {"tied", b.tied}};
    put_exact(g, "win_prob", b.win_prob);
    guesses.push_back(g);
  }
  j["best_guesses"] = guesses;

  const auto uniform = uniform_distribution(4);
  const auto classical = uniform_over(4, {0, 3});
  Json ref;
  put_exact(ref, "uniform_vs_uniform", scg::strategy_payoff_p1(uniform, uniform));
  put_exact(ref, "classical_vs_uniform", scg::strategy_payoff_p1(classical, uniform));
  put_exact(ref, "classical_vs_classical", scg::strategy_payoff_p1(classical, classical));
  j["reference"] = ref;
  j["notes"] = Json{{"first_guess_success", "probability that player 1, guessing first and optimally given the own draw, names the measured total"},
                    {"uniform_vs_uniform", "both players draw uniformly over the four operators: below one half"},
                    {"classical_vs_uniform", "player 1 switches to classical draws O1/O4: above one half, so uniform play is unstable"},
                    {"classical_vs_classical", "both players restricted to classical draws: even"}};
  return j;
}

// ---------------------------------------------------------------- quantum

inline Json guess_json(const qcg::QuantumGuess& g) { return Json::array({g.j, g.k}); }

inline Json qcg_gram_json() {
  const auto& metric = qcg::gram_metric();
  const auto pairs = qcg::all_pairs();
  Json labels = Json::array();
  for (const auto& p : pairs) labels.push_back(p.to_string());
  Json mag = Json::array();
  Json zero = Json::array();
  Json overlap = Json::array();
  for (const auto& a : pairs) {
    Json mrow = Json::array(), zrow = Json::array(), orow = Json::array();
    for (const auto& b : pairs) {
      const auto& e = metric.at(a, b);
      mrow.push_back(e.magnitude_sq.to_string());
      zrow.push_back(e.zero);
      orow.push_back(to_json(e.overlap));
    }
    mag.push_back(mrow);
    zero.push_back(zrow);
    overlap.push_back(orow);
  }
  Json norms = Json::array();
  for (const auto& p : pairs) norms.push_back(p.norm_sq().to_string());
  return Json{{"kind", "qcg-gram"},
              {"pairs", labels},
              {"norm_sq", norms},
              {"magnitude_sq", mag},
              {"orthogonal", zero},
              {"overlap", overlap},
              {"notes", "normalized overlaps |G|^2 of the guess states O_j O_k|0>; zero entries mark admissible successor guesses"}};
}

/// f1 table for player 1's draw and guess, one row per player-2 draw.
inline Json qcg_payoff_table_json(int draw1, const qcg::QuantumGuess& guess1) {
  Json rows = Json::array();
  const auto f = qcg::payoff_table_for_guess(guess1, draw1);
  for (int d2 = 1; d2 <= 4; ++d2) {
    Json r{{"draw2", op(d2)}, {"joint_state", to_json(scg::joint_state(draw1, d2))}};
    put_exact(r, "f1", f[d2 - 1]);
    rows.push_back(r);
  }
  return Json{{"draw1", op(draw1)}, {"guess1", guess_json(guess1)}, {"guess_state", to_json(guess1.state())}, {"rows", rows}};
}

inline Json qcg_tables_json() {
  return Json{{"kind", "qcg-tables"},
              {"gram", qcg_gram_json()},
              {"payoff_tables", Json::array({qcg_payoff_table_json(2, {2, 2}), qcg_payoff_table_json(3, {3, 3})})}};
}

inline std::string qcg_tables_csv() {
  std::ostringstream out;
  out << "table,row,col,value\n";
  const auto& metric = qcg::gram_metric();
  for (const auto& a : qcg::all_pairs())
    for (const auto& b : qcg::all_pairs())
      out << "gram_magnitude_sq,\"" << a.to_string() << "\",\"" << b.to_string() << "\"," << metric.at(a, b).magnitude_sq << "\n";
  for (int d1 : {2, 3}) {
    const qcg::QuantumGuess g(d1, d1);
    const auto f = qcg::payoff_table_for_guess(g, d1);
    for (int d2 = 1; d2 <= 4; ++d2)
      out << "f1_draw1_" << op(d1) << ",\"" << g.to_string() << "\"," << op(d2) << "," << f[d2 - 1] << "\n";
  }
  return out.str();
}

inline std::string qcg_tables_md() {
  std::ostringstream out;
  const auto& metric = qcg::gram_metric();
  const auto pairs = qcg::all_pairs();
  out << "### Gram metric |G|^2\n\n|   |";
  for (const auto& p : pairs) out << " " << p.to_string() << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < pairs.size(); ++i) out << "---|";
  out << "\n";
  for (const auto& a : pairs) {
    out << "| " << a.to_string() << " |";
    for (const auto& b : pairs) out << " " << metric.at(a, b).magnitude_sq << " |";
    out << "\n";
  }
  for (int d1 : {2, 3}) {
    const qcg::QuantumGuess g(d1, d1);
    const auto f = qcg::payoff_table_for_guess(g, d1);
    out << "\n### Player 1 draws " << op(d1) << " and guesses " << g.to_string() << "\n\n| player 2 draw | f1 |\n|---|---|\n";
    for (int d2 = 1; d2 <= 4; ++d2) out << "| " << op(d2) << " | " << f[d2 - 1] << " |\n";
  }
  return out.str();
}

inline Json qcg_admissible_json(const std::vector<qcg::QuantumGuess>& prior) {
  Json p = Json::array();
  for (const auto& g : prior) p.push_back(guess_json(g));
  Json adm = Json::array();
  for (const auto& g : qcg::admissible_guesses(prior)) adm.push_back(guess_json(g));
  return Json{{"prior", p}, {"admissible", adm}};
}

inline Json qcg_exhaustive_json() {
  const auto r = qcg::exhaustive_analysis();
  Json j{{"kind", "qcg-exhaustive"}};
  j["inputs"] = Json{{"operators", {"O1", "O2", "O3", "O4"}},
                     {"player1_guesses", "ordered pairs (j,k) with j <= k"},
                     {"player2_guesses", "ordered pairs orthogonal to player 1's guess"},
                     {"strategy", {{"draw_mix", {{"O2", "1/2"}, {"O3", "1/2"}}}, {"guess_for_draw", {{"O2", "(2,2)"}, {"O3", "(3,3)"}}}}}};
  j["profiles_evaluated"] = r.profiles_evaluated;
  j["distinct_guess_states"] = r.distinct_guess_states;

  Json by_draw;
  for (int d2 = 1; d2 <= 4; ++d2) put_exact(by_draw, op(d2), r.coin_flip_f1_by_draw2[d2 - 1]);
  j["f1_by_player2_draw"] = by_draw;
  Json mins = Json::array();
  for (int d : r.f1_minimizing_draws) mins.push_back(op(d));
  j["player2_f1_minimizing_draws"] = mins;
  put_exact(j, "guaranteed_value", r.guaranteed_value);
  put_exact(j, "value_vs_player2_uniform_O2_O3", r.coin_flip_value);

  Json f2;
  for (int d2 = 1; d2 <= 4; ++d2) put_exact(f2, op(d2), r.coin_flip_f2_by_draw2[d2 - 1]);
  j["f2_by_player2_draw"] = f2;

  Json p1 = Json::array();
  for (int d2 = 1; d2 <= 4; ++d2) {
    const auto& b = r.player1_best_vs_draw[d2 - 1];
    Json e{{"player2_draw", op(d2)}, {"draw1", op(b.draw1)}, {"guess1", guess_json(b.guess1)}};
    put_exact(e, "f1", b.expected_f1);
    p1.push_back(e);
  }
  Json p1u{{"player2_draw", "uniform"}, {"draw1", op(r.player1_best_vs_uniform.draw1)}, {"guess1", guess_json(r.player1_best_vs_uniform.guess1)}};
  put_exact(p1u, "f1", r.player1_best_vs_uniform.expected_f1);
  p1.push_back(p1u);
  j["player1_best_responses"] = p1;

  Json p2 = Json::array();
  for (const auto& b : r.player2_best_guess) {
    Json tied = Json::array();
    for (const auto& t : b.tied) tied.push_back(guess_json(t));
    Json e{{"draw2", op(b.draw2)}, {"guess1", guess_json(b.guess1)}, {"guess2", guess_json(b.guess2)}, {"tied", tied}};
    put_exact(e, "f2", b.expected_f2);
    p2.push_back(e);
  }
  j["player2_best_responses"] = p2;
  j["classical_embedding_consistent"] = r.classical_embedding_consistent;
  j["symmetry_broken"] = r.symmetry_broken;
  j["verdict"] = r.symmetry_broken
                     ? "player 1 guarantees an expected fidelity of " + r.guaranteed_value.to_string() +
                           " > 1/2 against every player-2 draw mix: the classical player 1 <-> player 2 symmetry is broken"
                     : "no first-player edge: the classical symmetry is preserved";
  j["notes"] = Json{{"guaranteed_value", "minimum over player-2 draw mixes of player 1's expected fidelity"},
                    {"value_vs_player2_uniform_O2_O3", "player 1's expected fidelity when player 2 draws O2/O3 at random"},
                    {"f2_by_player2_draw", "player 2's expected fidelity with a best admissible guess after inferring player 1's draw"},
                    {"note", "best-response facts only; no mixed equilibrium is claimed"}};
  return j;
}

inline std::string qcg_exhaustive_text(const Json& j) {
  std::ostringstream out;
  out << "Quantum game exhaustive analysis (" << j["profiles_evaluated"].get<std::size_t>() << " pure profiles, "
      << j["distinct_guess_states"].get<std::size_t>() << " distinct guess states)\n";
  out << "Strategy: draw O2/O3 with probability 1/2, guess (2,2)/(3,3)\n";
  out << "Expected f1 by player 2 draw:";
  for (const auto& [k, v] : j["f1_by_player2_draw"].items())
    if (k.find("_float") == std::string::npos) out << " " << k << "=" << v.get<std::string>();
  out << "\nPlayer 2's f1-minimizing draws:";
  for (const auto& d : j["player2_f1_minimizing_draws"]) out << " " << d.get<std::string>();
  out << "\nValue vs player 2 drawing O2/O3 uniformly: " << j["value_vs_player2_uniform_O2_O3"].get<std::string>() << "\n";
  out << "Guaranteed value: " << j["guaranteed_value"].get<std::string>() << " (" << std::setprecision(6)
      << j["guaranteed_value_float"].get<double>() << ")\n";
  out << "Classical embedding consistent: " << (j["classical_embedding_consistent"].get<bool>() ? "yes" : "no") << "\n";
  out << "Verdict: " << j["verdict"].get<std::string>() << "\n";
  return out.str();
}

// ---------------------------------------------------------------- classical

inline Json win_probabilities_json(const ccg::WinProbabilities& w) {
  Json j;
  put_exact(j, "p1", w.p1);
  put_exact(j, "p2", w.p2);
  if (w.decided()) {
    put_exact(j, "P1", *w.P1);
    put_exact(j, "P2", *w.P2);
  } else {
    j["P1"] = nullptr;
    j["P2"] = nullptr;
    j["no_winner"] = true;
  }
  return j;
}

inline ccg::ClassicalStrategy strategy_from_json(const Json& j) {
  ccg::ClassicalStrategy s;
  s.n_coins = j.value("n_coins", 1);
  s.draw_distribution = distribution_from_json(j.at("draw_distribution"));
  for (const auto& e : j.at("guess_policy")) {
    ccg::GuessContext ctx{e.at("draw").get<int>(), e.value("prior", std::vector<int>{})};
    s.guess_policy[ctx] = distribution_from_json(e.at("guess_distribution"));
  }
  s.validate();
  return s;
}

inline Json strategy_to_json(const ccg::ClassicalStrategy& s) {
  Json policy = Json::array();
  for (const auto& [ctx, dist] : s.guess_policy)
    policy.push_back(Json{{"draw", ctx.own_draw}, {"prior", ctx.prior_guesses}, {"guess_distribution", to_json(dist)}});
  return Json{{"n_coins", s.n_coins}, {"draw_distribution", to_json(s.draw_distribution)}, {"guess_policy", policy}};
}

inline Json ccg_analysis_json(const ccg::ClassicalStrategy& first, const ccg::ClassicalStrategy& second,
                              std::uint64_t rounds, std::uint64_t seed) {
  Json j{{"kind", "ccg-analysis"}, {"n_coins", first.n_coins}};
  j["inputs"] = Json{{"player1", strategy_to_json(first)}, {"player2", strategy_to_json(second)}};
  j["exact"] = win_probabilities_json(ccg::exact_win_prob(first, second));
  put_exact(j, "p1_lower_bound", ccg::p1_lower_bound(first.n_coins));
  if (rounds > 0) {
    const auto sim = ccg::simulate_rounds(first, second, rounds, seed);
    Json m{{"rounds", rounds}, {"seed", seed}, {"wins1", sim.wins1}, {"wins2", sim.wins2}, {"void", sim.draws_void}};
    const auto decided = sim.wins1 + sim.wins2;
    if (decided > 0) {
      m["P1_empirical"] = static_cast<double>(sim.wins1) / static_cast<double>(decided);
      m["sigma"] = 0.5 / std::sqrt(static_cast<double>(decided));
    }
    j["monte_carlo"] = m;
  }
  return j;
}

}  // namespace chinos::report
