#pragma once

#include "chinos/report.hpp"
#include "chinos/service.hpp"
#include "chinos/session.hpp"
#include "chinos/solver.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace chinos::cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string draw_label(session::Variant v, int d) {
  if (v == session::Variant::Classical) return std::to_string(d) + " coin" + (d == 1 ? "" : "s");
  static const char* names[] = {"", "O1 = I", "O2 = (I + b+)/sqrt2", "O3 = (I - b+)/sqrt2", "O4 = b+"};
  return names[d];
}

/// Reads an index in [0, n) from `in`, re-prompting on anything else.
/// Returns std::nullopt at end of input.
inline std::optional<std::size_t> prompt_index(std::istream& in, std::ostream& out, std::size_t n) {
  std::string line;
  while (true) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) return std::nullopt;
    try {
      std::size_t pos = 0;
      const long v = std::stol(line, &pos);
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos == line.size() && v >= 0 && static_cast<std::size_t>(v) < n) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    out << "invalid choice, enter a number between 0 and " << n - 1 << "\n";
  }
}

inline void print_round(std::ostream& out, const session::GameSession& s, const session::RoundRecord& r) {
  const auto v = s.config().variant;
  out << "Round " << r.round << ": draws " << draw_label(v, r.draws[0]) << " | " << draw_label(v, r.draws[1])
      << "; guesses " << session::to_string(r.guesses[0]) << " | " << session::to_string(r.guesses[1]);
  if (r.outcome) out << "; measured total " << *r.outcome;
  if (v == session::Variant::Quantum) out << "; f1 = " << r.fidelities[0] << ", f2 = " << r.fidelities[1];
  out << "; " << (r.winner ? "player " + std::to_string(*r.winner) + " wins" : std::string("no winner")) << "\n";
  out << "Scores: " << s.scores()[0] << " (" << s.scores()[0].to_double() << ") vs " << s.scores()[1] << " ("
      << s.scores()[1].to_double() << ")\n";
}

/// Interactive text play: the human takes `seat`, the engine the other seat.
inline int play(session::SessionConfig config, int seat, std::istream& in, std::ostream& out, const std::string& log_path) {
  session::GameSession game("play", config);
  out << "Playing the " << session::to_string(config.variant) << " game as player " << seat << " against '"
      << config.players[2 - seat].policy << "' for " << config.rounds << " round(s), seed " << config.seed << "\n";
  while (!game.finished()) {
    game.run_engines();
    const auto& phase = game.phase();
    if (phase.kind == session::PhaseKind::Resolve) {
      print_round(out, game, game.resolve_round());
      continue;
    }
    if (phase.kind == session::PhaseKind::Draw) {
      const auto draws = game.legal_draws();
      out << "Round " << game.round() << ", choose your draw:\n";
      for (std::size_t i = 0; i < draws.size(); ++i) out << "  [" << i << "] " << draw_label(config.variant, draws[i]) << "\n";
      const auto idx = prompt_index(in, out, draws.size());
      if (!idx) {
        out << "input ended, game abandoned\n";
        return 1;
      }
      game.submit_draw(seat, draws[*idx]);
    } else {
      if (const auto& g1 = game.pending_guesses()[0]; seat == 2 && g1) out << "Player 1 guessed " << session::to_string(*g1) << "\n";
      const auto guesses = game.legal_guesses(seat);
      out << "Your draw: " << draw_label(config.variant, *game.pending_draw(seat)) << ". Choose your guess:\n";
      for (std::size_t i = 0; i < guesses.size(); ++i) out << "  [" << i << "] " << session::to_string(guesses[i]) << "\n";
      const auto idx = prompt_index(in, out, guesses.size());
      if (!idx) {
        out << "input ended, game abandoned\n";
        return 1;
      }
      game.submit_guess(seat, guesses[*idx]);
    }
  }
  out << "Final scores: player 1 " << game.scores()[0] << ", player 2 " << game.scores()[1] << "\n";
  if (!log_path.empty()) {
    std::ofstream log(log_path);
    if (!log) throw std::runtime_error("cannot write '" + log_path + "'");
    log << game.move_log_jsonl();
  }
  return 0;
}

inline Json solve_json(const solver::MatrixGame<Rational>& g, std::size_t iters, double tol) {
  Json j{{"kind", "solve"}, {"game", solver::game_to_json(g)}};
  Json eq = Json::array();
  for (const auto& [a, b] : solver::pure_equilibria(g)) eq.push_back(Json::array({g.actions1[a], g.actions2[b]}));
  j["pure_equilibria"] = eq;
  auto labels = [](const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
    Json out = Json::array();
    for (auto i : idx) out.push_back(names[i]);
    return out;
  };
  const auto u1 = std::vector<Rational>(g.cols(), Rational(1, static_cast<std::int64_t>(g.cols())));
  const auto u2 = std::vector<Rational>(g.rows(), Rational(1, static_cast<std::int64_t>(g.rows())));
  j["best_responses_to_uniform"] = Json{{"player1", labels(g.actions1, solver::best_responses(g, u1, 1))},
                                        {"player2", labels(g.actions2, solver::best_responses(g, u2, 2))}};
  const auto fp = solver::fictitious_play(g, iters, tol);
  j["fictitious_play"] = Json{{"mix1", fp.mix1}, {"mix2", fp.mix2}, {"converged", fp.converged},
                              {"iterations", fp.iterations}, {"approximate", true}};
  return j;
}

/// Entry point shared by the executable and the tests. Exit codes: 0 success,
/// 1 runtime error, 2 usage error.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Chinos game engine: tables, analyses, solver, play and service"};
  app.require_subcommand(1);

  auto* tables = app.add_subcommand("tables", "Emit outcome / metric tables");
  std::string game, format = "json";
  tables->add_option("--game", game, "scg or qcg")->required()->check(CLI::IsMember({"scg", "qcg"}));
  tables->add_option("--format", format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));

  auto* analyze = app.add_subcommand("analyze", "Closed-form and exhaustive analyses");
  analyze->require_subcommand(1);
  auto* a_ccg = analyze->add_subcommand("ccg", "Classical game win probabilities");
  int coins = 1;
  std::string p1_file, p2_file;
  std::uint64_t rounds = 0, seed = 0;
  a_ccg->add_option("--coins", coins, "coins per player")->check(CLI::PositiveNumber);
  a_ccg->add_option("--p1", p1_file, "player 1 strategy JSON")->check(CLI::ExistingFile);
  a_ccg->add_option("--p2", p2_file, "player 2 strategy JSON")->check(CLI::ExistingFile);
  a_ccg->add_option("--rounds", rounds, "Monte-Carlo rounds (0 = skip)");
  a_ccg->add_option("--seed", seed, "Monte-Carlo seed");
  auto* a_scg = analyze->add_subcommand("scg", "Semiclassical first-guess success");
  std::string draw_mix = "1/4,1/4,1/4,1/4", opponent_mix = "1/4,1/4,1/4,1/4";
  a_scg->add_option("--draw-mix", draw_mix, "player 1 draw mix over O1..O4");
  a_scg->add_option("--opponent-mix", opponent_mix, "player 2 draw mix over O1..O4");
  auto* a_qcg = analyze->add_subcommand("qcg", "Quantum exhaustive analysis");
  std::string q_format = "both";
  a_qcg->add_option("--format", q_format, "json, text or both")->check(CLI::IsMember({"json", "text", "both"}));

  auto* solve = app.add_subcommand("solve", "Analyse a bimatrix game");
  std::string input;
  std::size_t iters = 100000;
  double tol = 1e-3;
  solve->add_option("--input", input, "game JSON {actions1, actions2, U1, U2}")->required()->check(CLI::ExistingFile);
  solve->add_option("--iters", iters, "fictitious play iterations")->check(CLI::PositiveNumber);
  solve->add_option("--tol", tol, "fictitious play tolerance")->check(CLI::PositiveNumber);

  auto* play_cmd = app.add_subcommand("play", "Interactive text play against an engine");
  std::string variant = "quantum", opponent, scoring = "fidelity", log_path;
  std::uint64_t play_seed = 0;
  int play_rounds = 5, seat = 1;
  play_cmd->add_option("--variant", variant)->check(CLI::IsMember({"classical", "semiclassical", "quantum"}));
  play_cmd->add_option("--opponent", opponent, "engine policy")->required();
  play_cmd->add_option("--seed", play_seed, "session seed")->required();
  play_cmd->add_option("--rounds", play_rounds)->check(CLI::PositiveNumber);
  play_cmd->add_option("--seat", seat, "human seat")->check(CLI::IsMember({1, 2}));
  play_cmd->add_option("--scoring", scoring)->check(CLI::IsMember({"fidelity", "measured"}));
  play_cmd->add_option("--log", log_path, "write the move log (JSON lines) here");

  auto* replay_cmd = app.add_subcommand("replay", "Verify a move log and print the final scores");
  std::string replay_path;
  replay_cmd->add_option("--log", replay_path)->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "Run the JSON-over-HTTP service");
  int port = 8080;
  std::string host = "0.0.0.0";
  auto* port_opt = serve->add_option("--port", port)->check(CLI::Range(1, 65535));
  serve->add_option("--host", host);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*tables) {
      if (game == "scg") {
        if (format == "json") out << report::scg_tables_json().dump(2) << "\n";
        else if (format == "csv") out << report::scg_tables_csv();
        else out << report::scg_tables_md();
      } else {
        if (format == "json") out << report::qcg_tables_json().dump(2) << "\n";
        else if (format == "csv") out << report::qcg_tables_csv();
        else out << report::qcg_tables_md();
      }
    } else if (*a_ccg) {
      const auto first = p1_file.empty() ? ccg::strategies::first_announces_n_coins(coins)
                                         : report::strategy_from_json(Json::parse(read_file(p1_file)));
      const auto second = p2_file.empty() ? ccg::strategies::second_remaining_consistent(coins)
                                          : report::strategy_from_json(Json::parse(read_file(p2_file)));
      out << report::ccg_analysis_json(first, second, rounds, seed).dump(2) << "\n";
    } else if (*a_scg) {
      out << report::scg_analysis_json(parse_distribution(draw_mix), parse_distribution(opponent_mix)).dump(2) << "\n";
    } else if (*a_qcg) {
      const Json r = report::qcg_exhaustive_json();
      if (q_format != "text") out << r.dump(2) << "\n";
      if (q_format != "json") out << report::qcg_exhaustive_text(r);
    } else if (*solve) {
      out << solve_json(solver::game_from_json(Json::parse(read_file(input))), iters, tol).dump(2) << "\n";
    } else if (*play_cmd) {
      session::SessionConfig c;
      c.variant = session::parse_variant(variant);
      c.rounds = play_rounds;
      c.seed = play_seed;
      c.scoring = session::parse_scoring(scoring);
      c.players[seat - 1] = session::PlayerConfig::person();
      c.players[2 - seat] = session::PlayerConfig::engine(opponent);
      return play(c, seat, in, out, log_path);
    } else if (*replay_cmd) {
      const auto s = session::replay(read_file(replay_path));
      Json j{{"rounds_replayed", s.history().size()}, {"scores", exact_list(s.scores())}, {"verified", true}};
      out << j.dump(2) << "\n";
    } else if (*serve) {
      if (port_opt->count() == 0) {
        if (const char* env = std::getenv("CHINOS_PORT")) port = std::stoi(env);
      }
      service::Service svc;
      service::HttpServer http(svc);
      if (!http.bind(host, port)) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
      out << "listening on " << host << ":" << port << std::endl;
      http.listen_after_bind();
    }
  } catch (const session::GameError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == session::ErrorKind::UnknownPolicy || e.kind() == session::ErrorKind::InvalidConfig ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace chinos::cli
