#pragma once

#include "chinos/quantum.hpp"
#include "chinos/rng.hpp"
#include "chinos/semiclassical.hpp"
#include "chinos/serialize.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace chinos::session {

enum class Variant { Classical, Semiclassical, Quantum };
enum class Scoring { Fidelity, Measured };
/// Which earlier values player 2 may not name: spoken guesses (the table
/// rule) or, for study only, player 1's draw.
enum class Exclusion { Guesses, Draws };
enum class PhaseKind { Draw, Guess, Resolve, Finished };

enum class ErrorKind {
  InvalidConfig,   // bad create request
  OutOfTurn,       // not this player's phase / wrong phase
  Forbidden,       // engine seat driven externally, hidden-info request
  InvalidMove,     // move outside the variant's draw or guess space
  RuleViolation,   // repeated total or non-orthogonal quantum guess
  UnknownPolicy,
};

class GameError : public std::runtime_error {
 public:
  GameError(ErrorKind kind, const std::string& what, std::optional<Rational> overlap_sq = std::nullopt)
      : std::runtime_error(what), kind_(kind), overlap_sq_(std::move(overlap_sq)) {}
  ErrorKind kind() const { return kind_; }
  const std::optional<Rational>& overlap_sq() const { return overlap_sq_; }

 private:
  ErrorKind kind_;
  std::optional<Rational> overlap_sq_;
};

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::Classical: return "classical";
    case Variant::Semiclassical: return "semiclassical";
    case Variant::Quantum: return "quantum";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "classical" || s == "ccg") return Variant::Classical;
  if (s == "semiclassical" || s == "scg") return Variant::Semiclassical;
  if (s == "quantum" || s == "qcg") return Variant::Quantum;
  throw GameError(ErrorKind::InvalidConfig, "unknown variant '" + s + "'");
}

inline std::string to_string(Scoring s) { return s == Scoring::Fidelity ? "fidelity" : "measured"; }

inline Scoring parse_scoring(const std::string& s) {
  if (s == "fidelity") return Scoring::Fidelity;
  if (s == "measured") return Scoring::Measured;
  throw GameError(ErrorKind::InvalidConfig, "unknown scoring mode '" + s + "'");
}

struct Phase {
  PhaseKind kind = PhaseKind::Draw;
  int player = 1;  // 0 for Resolve / Finished
  friend bool operator==(const Phase&, const Phase&) = default;
};

inline std::string to_string(const Phase& p) {
  switch (p.kind) {
    case PhaseKind::Draw: return "draw";
    case PhaseKind::Guess: return "guess";
    case PhaseKind::Resolve: return "resolve";
    case PhaseKind::Finished: return "finished";
  }
  return "?";
}

struct PlayerConfig {
  bool human = true;
  std::string policy;  // engine policy name when !human

  static PlayerConfig person() { return {true, {}}; }
  static PlayerConfig engine(std::string name) { return {false, std::move(name)}; }
};

struct SessionConfig {
  Variant variant = Variant::Quantum;
  std::array<PlayerConfig, 2> players{PlayerConfig::person(), PlayerConfig::person()};
  int rounds = 1;
  std::uint64_t seed = 0;
  Scoring scoring = Scoring::Fidelity;
  int n_coins = 1;
  Exclusion exclusion = Exclusion::Guesses;
};

/// A classical total or a quantum operator pair.
using Guess = std::variant<int, qcg::QuantumGuess>;

inline std::string to_string(const Guess& g) {
  if (const int* n = std::get_if<int>(&g)) return std::to_string(*n);
  return std::get<qcg::QuantumGuess>(g).to_string();
}

struct Move {
  PhaseKind kind;  // Draw or Guess
  int player;
  int draw = 0;
  Guess guess = 0;
  friend bool operator==(const Move&, const Move&) = default;
};

struct RoundRecord {
  int round = 0;
  std::array<int, 2> draws{};
  std::array<Guess, 2> guesses{0, 0};
  std::optional<int> outcome;  // measured total (classical, semiclassical)
  std::optional<int> winner;   // 1, 2, or empty for a void round
  std::array<Rational, 2> payoffs{Rational(0), Rational(0)};
  std::array<Rational, 2> fidelities{Rational(0), Rational(0)};  // quantum only
};

struct LogEvent {
  int round = 0;
  std::string phase;
  int player = 0;
  Json action;
  std::uint64_t rng_counter = 0;
};

inline const std::vector<std::string>& policies_for(Variant v) {
  static const std::vector<std::string> classical{"random-classical"};
  static const std::vector<std::string> semiclassical{"random-classical", "scg-best-guess"};
  static const std::vector<std::string> quantum{"random-classical", "qcg-paper", "qcg-best-response"};
  switch (v) {
    case Variant::Classical: return classical;
    case Variant::Semiclassical: return semiclassical;
    case Variant::Quantum: return quantum;
  }
  return classical;
}

/// Analysis tables used by the quantum best-response engine, computed once.
inline const qcg::ExhaustiveReport& cached_report() {
  static const qcg::ExhaustiveReport report = qcg::exhaustive_analysis();
  return report;
}

/// One game between two seats, played as a strict phase machine:
/// Draw(1) -> Draw(2) -> Guess(1) -> Guess(2) -> Resolve, once per round.
///
/// Engine decisions and measurements consume the session stream in phase
/// order; each randomized decision takes exactly one 64-bit word.
class GameSession {
 public:
  GameSession(std::string id, SessionConfig config) : id_(std::move(id)), config_(std::move(config)), rng_(config_.seed) {
    validate_config(config_);
    log_.push_back({0, "create", 0, config_to_json(config_), rng_.counter()});
  }

  static void validate_config(const SessionConfig& c) {
    if (c.rounds < 1) throw GameError(ErrorKind::InvalidConfig, "rounds must be at least 1");
    if (c.n_coins < 1) throw GameError(ErrorKind::InvalidConfig, "n_coins must be at least 1");
    if (c.variant != Variant::Classical && c.n_coins != 1) {
      throw GameError(ErrorKind::InvalidConfig, "quantum variants are defined for one coin per player");
    }
    for (const auto& p : c.players) {
      if (p.human) continue;
      const auto& allowed = policies_for(c.variant);
      if (std::find(allowed.begin(), allowed.end(), p.policy) == allowed.end()) {
        throw GameError(ErrorKind::UnknownPolicy,
                        "policy '" + p.policy + "' is not available for the " + to_string(c.variant) + " variant");
      }
    }
  }

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  const Phase& phase() const { return phase_; }
  int round() const { return round_; }
  const std::array<Rational, 2>& scores() const { return scores_; }
  const std::vector<RoundRecord>& history() const { return history_; }
  const std::vector<LogEvent>& log() const { return log_; }
  std::uint64_t rng_counter() const { return rng_.counter(); }
  bool finished() const { return phase_.kind == PhaseKind::Finished; }

  /// Hidden draw of `player` for the round in progress (test and owner use only).
  std::optional<int> pending_draw(int player) const { return draws_.at(check_player(player) - 1); }
  const std::array<std::optional<Guess>, 2>& pending_guesses() const { return guesses_; }

  bool is_engine(int player) const { return !config_.players.at(check_player(player) - 1).human; }

  // --- moves ---------------------------------------------------------------

  void submit_draw(int player, int draw) {
    expect_phase(PhaseKind::Draw, player);
    validate_draw(draw);
    draws_[player - 1] = draw;
    log_.push_back({round_, "draw", player, Json(draw), rng_.counter()});
    phase_ = player == 1 ? Phase{PhaseKind::Draw, 2} : Phase{PhaseKind::Guess, 1};
  }

  void submit_guess(int player, const Guess& guess) {
    expect_phase(PhaseKind::Guess, player);
    validate_guess(player, guess);
    guesses_[player - 1] = guess;
    log_.push_back({round_, "guess", player, guess_to_json(guess), rng_.counter()});
    phase_ = player == 1 ? Phase{PhaseKind::Guess, 2} : Phase{PhaseKind::Resolve, 0};
  }

  void apply(const Move& m) {
    if (m.kind == PhaseKind::Draw) submit_draw(m.player, m.draw);
    else if (m.kind == PhaseKind::Guess) submit_guess(m.player, m.guess);
    else throw GameError(ErrorKind::InvalidMove, "only draw and guess moves can be applied");
  }

  /// Measures (or scores) the round and advances to the next one.
  RoundRecord resolve_round() {
    if (phase_.kind != PhaseKind::Resolve) {
      throw GameError(ErrorKind::OutOfTurn, "cannot resolve during phase " + to_string(phase_));
    }
    RoundRecord rec;
    rec.round = round_;
    rec.draws = {*draws_[0], *draws_[1]};
    rec.guesses = {*guesses_[0], *guesses_[1]};

    if (config_.variant == Variant::Quantum) {
      const auto& g1 = std::get<qcg::QuantumGuess>(rec.guesses[0]);
      const auto& g2 = std::get<qcg::QuantumGuess>(rec.guesses[1]);
      rec.fidelities = {qcg::guess_fidelity(g1, rec.draws[0], rec.draws[1]),
                        qcg::guess_fidelity(g2, rec.draws[0], rec.draws[1])};
      if (config_.scoring == Scoring::Fidelity) {
        rec.payoffs = rec.fidelities;
        if (rec.fidelities[0] > rec.fidelities[1]) rec.winner = 1;
        else if (rec.fidelities[1] > rec.fidelities[0]) rec.winner = 2;
      } else {
        // Projective measurement onto guess1, guess2 and the rest: the
        // guesses are orthogonal, so f1 + f2 <= 1.
        const Distribution probs{rec.fidelities[0], rec.fidelities[1],
                                 Rational(1) - rec.fidelities[0] - rec.fidelities[1]};
        const auto idx = rng_.sample(probs);
        if (idx < 2) {
          rec.winner = static_cast<int>(idx) + 1;
          rec.payoffs[idx] = Rational(1);
        }
      }
    } else {
      const Distribution dist = outcome_distribution(rec.draws[0], rec.draws[1]);
      const int total = static_cast<int>(rng_.sample(dist));
      rec.outcome = total;
      for (int p = 0; p < 2; ++p) {
        if (std::get<int>(rec.guesses[p]) == total) {
          rec.winner = p + 1;
          rec.payoffs[p] = Rational(1);
        }
      }
    }
    for (int p = 0; p < 2; ++p) scores_[p] += rec.payoffs[p];
    history_.push_back(rec);
    log_.push_back({round_, "resolve", 0, record_to_json(rec), rng_.counter()});

    draws_ = {};
    guesses_ = {};
    if (round_ >= config_.rounds) {
      phase_ = {PhaseKind::Finished, 0};
    } else {
      ++round_;
      phase_ = {PhaseKind::Draw, 1};
    }
    return rec;
  }

  // --- engines -------------------------------------------------------------

  /// Move chosen by `policy` for the player whose phase it is. Consumes the
  /// session stream for randomized choices; does not apply the move.
  Move engine_move(const std::string& policy) {
    if (phase_.kind != PhaseKind::Draw && phase_.kind != PhaseKind::Guess) {
      throw GameError(ErrorKind::OutOfTurn, "no player acts during phase " + to_string(phase_));
    }
    const auto& allowed = policies_for(config_.variant);
    if (std::find(allowed.begin(), allowed.end(), policy) == allowed.end()) {
      throw GameError(ErrorKind::UnknownPolicy, "unknown policy '" + policy + "' for the " + to_string(config_.variant) + " variant");
    }
    const int player = phase_.player;
    Move m{phase_.kind, player};
    if (phase_.kind == PhaseKind::Draw) {
      m.draw = engine_draw(policy, player);
    } else {
      m.guess = engine_guess(policy, player);
    }
    return m;
  }

  /// Lets engine seats act until a human must move or the round awaits resolution.
  void run_engines() {
    while ((phase_.kind == PhaseKind::Draw || phase_.kind == PhaseKind::Guess) && is_engine(phase_.player)) {
      apply(engine_move(config_.players[phase_.player - 1].policy));
    }
  }

  // --- views ---------------------------------------------------------------

  /// State visible to `viewer` (1, 2, or 0 for a spectator). Opponent draws of
  /// the round in progress are never included.
  Json view(int viewer) const {
    if (viewer < 0 || viewer > 2) throw GameError(ErrorKind::Forbidden, "viewer must be player1, player2 or spectator");
    Json v;
    v["id"] = id_;
    v["variant"] = to_string(config_.variant);
    v["scoring"] = to_string(config_.scoring);
    v["n_coins"] = config_.n_coins;
    v["round"] = round_;
    v["rounds"] = config_.rounds;
    v["phase"] = Json{{"name", to_string(phase_)}, {"player", phase_.player}};
    v["viewer"] = viewer == 0 ? "spectator" : "player" + std::to_string(viewer);
    Json players = Json::array();
    for (int p = 0; p < 2; ++p) {
      players.push_back(Json{{"seat", p + 1},
                             {"kind", config_.players[p].human ? "human" : "engine"},
                             {"policy", config_.players[p].policy}});
    }
    v["players"] = players;
    v["scores"] = exact_list(scores_);
    if (viewer != 0 && draws_[viewer - 1]) v["own_draw"] = *draws_[viewer - 1];
    Json drawn = Json::array();
    for (int p = 0; p < 2; ++p) drawn.push_back(draws_[p].has_value());
    v["has_drawn"] = drawn;
    Json guesses = Json::array();
    for (int p = 0; p < 2; ++p) guesses.push_back(guesses_[p] ? guess_to_json(*guesses_[p]) : Json(nullptr));
    v["guesses"] = guesses;
    Json hist = Json::array();
    for (const auto& r : history_) hist.push_back(record_to_json(r));
    v["history"] = hist;
    v["legal"] = legal_actions_json(viewer);
    return v;
  }

  // --- legality ------------------------------------------------------------

  std::vector<int> legal_draws() const {
    std::vector<int> out;
    if (config_.variant == Variant::Classical) {
      for (int d = 0; d <= config_.n_coins; ++d) out.push_back(d);
    } else {
      for (int d = 1; d <= kNumReducedOperators; ++d) out.push_back(d);
    }
    return out;
  }

  /// Guesses `player` may submit now (requires that player's Guess phase for
  /// player 2's constraints to be known).
  std::vector<Guess> legal_guesses(int player) const {
    std::vector<Guess> out;
    if (config_.variant == Variant::Quantum) {
      if (player == 1) {
        for (const auto& g : qcg::first_player_guesses()) out.emplace_back(g);
      } else {
        std::vector<qcg::QuantumGuess> prior;
        if (guesses_[0]) prior.push_back(std::get<qcg::QuantumGuess>(*guesses_[0]));
        for (const auto& g : qcg::admissible_guesses(prior)) out.emplace_back(g);
      }
      return out;
    }
    for (int t = 0; t <= 2 * config_.n_coins; ++t) {
      if (player == 2 && excluded_total(t)) continue;
      out.emplace_back(t);
    }
    return out;
  }

  static Json guess_to_json(const Guess& g) {
    if (const int* n = std::get_if<int>(&g)) return *n;
    const auto& q = std::get<qcg::QuantumGuess>(g);
    return Json::array({q.j, q.k});
  }

  Guess guess_from_json(const Json& j) const {
    if (config_.variant == Variant::Quantum) {
      if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        return make_quantum_guess(j[0].get<int>(), j[1].get<int>());
      }
      if (j.is_string()) {
        try {
          return qcg::QuantumGuess::parse(j.get<std::string>());
        } catch (const std::exception& e) {
          throw GameError(ErrorKind::InvalidMove, e.what());
        }
      }
      throw GameError(ErrorKind::InvalidMove, "quantum guess must be [j, k] or \"(j,k)\"");
    }
    if (!j.is_number_integer()) throw GameError(ErrorKind::InvalidMove, "guess must be an integer total");
    return j.get<int>();
  }

  static Json config_to_json(const SessionConfig& c) {
    Json players = Json::array();
    for (const auto& p : c.players) {
      players.push_back(p.human ? Json{{"kind", "human"}} : Json{{"kind", "engine"}, {"policy", p.policy}});
    }
    return Json{{"variant", to_string(c.variant)},
                {"players", players},
                {"rounds", c.rounds},
                {"seed", c.seed},
                {"scoring", to_string(c.scoring)},
                {"n_coins", c.n_coins},
                {"exclusion", c.exclusion == Exclusion::Guesses ? "guesses" : "draws"}};
  }

  static SessionConfig config_from_json(const Json& j) {
    SessionConfig c;
    try {
      c.variant = parse_variant(j.at("variant").get<std::string>());
      if (j.contains("players")) {
        const auto& ps = j.at("players");
        if (!ps.is_array() || ps.size() != 2) throw GameError(ErrorKind::InvalidConfig, "players must list two seats");
        for (int p = 0; p < 2; ++p) {
          const auto& pj = ps[p];
          if (pj.is_string()) {
            const auto s = pj.get<std::string>();
            c.players[p] = s == "human" ? PlayerConfig::person() : PlayerConfig::engine(s);
          } else if (pj.value("kind", "human") == "human") {
            c.players[p] = PlayerConfig::person();
          } else {
            c.players[p] = PlayerConfig::engine(pj.at("policy").get<std::string>());
          }
        }
      }
      c.rounds = j.value("rounds", 1);
      c.seed = j.value("seed", std::uint64_t{0});
      c.scoring = parse_scoring(j.value("scoring", std::string("fidelity")));
      c.n_coins = j.value("n_coins", 1);
      const auto excl = j.value("exclusion", std::string("guesses"));
      if (excl == "guesses") c.exclusion = Exclusion::Guesses;
      else if (excl == "draws") c.exclusion = Exclusion::Draws;
      else throw GameError(ErrorKind::InvalidConfig, "exclusion must be 'guesses' or 'draws'");
    } catch (const Json::exception& e) {
      throw GameError(ErrorKind::InvalidConfig, std::string("invalid session config: ") + e.what());
    }
    return c;
  }

  static Json record_to_json(const RoundRecord& r) {
    Json j{{"round", r.round},
           {"draws", r.draws},
           {"guesses", Json::array({guess_to_json(r.guesses[0]), guess_to_json(r.guesses[1])})},
           {"outcome", r.outcome ? Json(*r.outcome) : Json(nullptr)},
           {"winner", r.winner ? Json(*r.winner) : Json(nullptr)},
           {"payoffs", exact_list(r.payoffs)}};
    if (!r.fidelities[0].is_zero() || !r.fidelities[1].is_zero()) j["fidelities"] = exact_list(r.fidelities);
    return j;
  }

  /// Exact distribution of the measured total for a classical or semiclassical round.
  Distribution outcome_distribution(int d1, int d2) const {
    if (config_.variant == Variant::Classical) return point_mass(2 * config_.n_coins + 1, d1 + d2);
    const auto cell = scg::joint_distribution(d1, d2);
    return Distribution(cell.begin(), cell.end());
  }

  std::string move_log_jsonl() const {
    std::ostringstream out;
    for (const auto& e : log_) out << event_to_json(e).dump() << "\n";
    return out.str();
  }

  static Json event_to_json(const LogEvent& e) {
    return Json{{"round", e.round}, {"phase", e.phase}, {"player", e.player}, {"action", e.action}, {"rng_counter", e.rng_counter}};
  }

 private:
  static int check_player(int player) {
    if (player != 1 && player != 2) throw GameError(ErrorKind::InvalidMove, "player must be 1 or 2");
    return player;
  }

  static qcg::QuantumGuess make_quantum_guess(int j, int k) {
    if (j < 1 || j > 4 || k < 1 || k > 4) {
      throw GameError(ErrorKind::InvalidMove, "operator pair indices must be in 1..4");
    }
    return {j, k};
  }

  void expect_phase(PhaseKind kind, int player) const {
    check_player(player);
    if (phase_.kind != kind || phase_.player != player) {
      throw GameError(ErrorKind::OutOfTurn, "player " + std::to_string(player) + " cannot " +
                                                (kind == PhaseKind::Draw ? "draw" : "guess") + " during phase " +
                                                to_string(phase_) + "(" + std::to_string(phase_.player) + ")");
    }
  }

  void validate_draw(int draw) const {
    const auto legal = legal_draws();
    if (std::find(legal.begin(), legal.end(), draw) == legal.end()) {
      throw GameError(ErrorKind::InvalidMove, "draw " + std::to_string(draw) + " is not valid for the " +
                                                  to_string(config_.variant) + " variant");
    }
  }

  bool excluded_total(int t) const {
    if (config_.exclusion == Exclusion::Draws) return draws_[0] && *draws_[0] == t;
    return guesses_[0] && std::get<int>(*guesses_[0]) == t;
  }

  void validate_guess(int player, const Guess& guess) const {
    if (config_.variant == Variant::Quantum) {
      const auto* q = std::get_if<qcg::QuantumGuess>(&guess);
      if (!q) throw GameError(ErrorKind::InvalidMove, "quantum variant expects an operator pair guess");
      if (player == 1 && !q->is_canonical()) {
        throw GameError(ErrorKind::InvalidMove, "player 1 guesses must satisfy j <= k, got " + q->to_string());
      }
      if (player == 2) {
        const auto& g1 = std::get<qcg::QuantumGuess>(*guesses_[0]);
        const auto& entry = qcg::gram_metric().at(g1, *q);
        if (!entry.zero) {
          throw GameError(ErrorKind::RuleViolation,
                          "guess " + q->to_string() + " is not orthogonal to " + g1.to_string(), entry.magnitude_sq);
        }
      }
      return;
    }
    const int* t = std::get_if<int>(&guess);
    if (!t) throw GameError(ErrorKind::InvalidMove, "this variant expects an integer total");
    if (*t < 0 || *t > 2 * config_.n_coins) {
      throw GameError(ErrorKind::InvalidMove, "total " + std::to_string(*t) + " is outside 0.." + std::to_string(2 * config_.n_coins));
    }
    if (player == 2 && excluded_total(*t)) {
      throw GameError(ErrorKind::RuleViolation, "total " + std::to_string(*t) + " is already taken");
    }
  }

  Json legal_actions_json(int viewer) const {
    Json legal = Json::object();
    if (viewer == 0 || phase_.player != viewer) return legal;
    if (phase_.kind == PhaseKind::Draw) {
      legal["draws"] = legal_draws();
    } else if (phase_.kind == PhaseKind::Guess) {
      Json gs = Json::array();
      for (const auto& g : legal_guesses(viewer)) gs.push_back(guess_to_json(g));
      legal["guesses"] = gs;
    }
    return legal;
  }

  template <typename T>
  const T& pick_uniform(const std::vector<T>& options) {
    return options.at(rng_.uniform_index(options.size()));
  }

  int engine_draw(const std::string& policy, int player) {
    if (config_.variant == Variant::Classical) {
      return static_cast<int>(rng_.uniform_index(static_cast<std::size_t>(config_.n_coins) + 1));
    }
    if (policy == "random-classical" || policy == "scg-best-guess") return pick_uniform(std::vector<int>{1, 4});
    if (policy == "qcg-paper") return pick_uniform(std::vector<int>{2, 3});
    // qcg-best-response
    const auto& report = cached_report();
    if (player == 1) return report.player1_best_vs_uniform.draw1;
    return pick_uniform(report.f1_minimizing_draws);
  }

  Guess engine_guess(const std::string& policy, int player) {
    const int own = *draws_[player - 1];
    if (config_.variant == Variant::Classical) {
      if (player == 1) return config_.n_coins;
      std::vector<int> options;
      for (const auto& g : legal_guesses(2)) options.push_back(std::get<int>(g));
      return pick_uniform(options);
    }
    if (config_.variant == Variant::Semiclassical) {
      if (policy == "random-classical") {
        if (player == 1) return 1;
        std::vector<int> options;
        for (const auto& g : legal_guesses(2)) options.push_back(std::get<int>(g));
        return pick_uniform(options);
      }
      const auto belief = uniform_distribution(4);
      if (player == 1) return scg::best_guess(own, belief).guess;
      if (config_.exclusion == Exclusion::Guesses) {
        return scg::second_best_guess(own, std::get<int>(*guesses_[0]), belief).guess;
      }
      const auto legal = legal_guesses(2);
      const auto dist = scg::averaged_distribution(own, belief);
      int best = std::get<int>(legal.front());
      for (const auto& g : legal)
        if (dist[std::get<int>(g)] > dist[best]) best = std::get<int>(g);
      return best;
    }
    // Quantum variant.
    if (policy == "random-classical") {
      if (player == 1) return qcg::QuantumGuess(1, 4);
      const auto g1 = std::get<qcg::QuantumGuess>(*guesses_[0]);
      std::vector<qcg::QuantumGuess> options;
      for (const auto& n : qcg::number_state_guesses())
        if (qcg::gram_metric().orthogonal(g1, n)) options.push_back(n);
      if (options.empty()) options = qcg::admissible_guesses({g1});
      return pick_uniform(options);
    }
    if (player == 1) {
      if (policy == "qcg-paper") {
        if (own == 2 || own == 3) return qcg::QuantumGuess(own, own);
        return qcg::QuantumGuess(2, 2);
      }
      return cached_report().player1_best_vs_uniform.guess1;
    }
    const auto g1 = std::get<qcg::QuantumGuess>(*guesses_[0]);
    return qcg::best_second_guess(own, g1, qcg::belief_after_guess(g1)).guess2;
  }

  std::string id_;
  SessionConfig config_;
  SessionRng rng_;
  int round_ = 1;
  Phase phase_{PhaseKind::Draw, 1};
  std::array<std::optional<int>, 2> draws_{};
  std::array<std::optional<Guess>, 2> guesses_{};
  std::array<Rational, 2> scores_{Rational(0), Rational(0)};
  std::vector<RoundRecord> history_;
  std::vector<LogEvent> log_;
};

/// Rebuilds a session from a JSON-lines move log. Engine seats recompute
/// their moves and must reproduce the logged ones; measurements and stream
/// positions must match as well. Throws std::runtime_error on divergence.
inline GameSession replay(const std::string& jsonl, std::string id = "replay") {
  std::istringstream in(jsonl);
  std::string line;
  std::optional<GameSession> s;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Json e = Json::parse(line);
    const auto phase = e.at("phase").get<std::string>();
    const auto where = "log line " + std::to_string(line_no);
    if (phase == "create") {
      s.emplace(id, GameSession::config_from_json(e.at("action")));
      continue;
    }
    if (!s) throw std::runtime_error(where + ": log must start with a create event");
    const int player = e.at("player").get<int>();
    if (phase == "draw" || phase == "guess") {
      Move logged{phase == "draw" ? PhaseKind::Draw : PhaseKind::Guess, player};
      if (phase == "draw") logged.draw = e.at("action").get<int>();
      else logged.guess = s->guess_from_json(e.at("action"));
      if (s->is_engine(player)) {
        const Move m = s->engine_move(s->config().players[player - 1].policy);
        if (!(m == logged)) throw std::runtime_error(where + ": engine move differs from the log");
      }
      s->apply(logged);
    } else if (phase == "resolve") {
      const auto rec = s->resolve_round();
      if (GameSession::record_to_json(rec) != e.at("action")) {
        throw std::runtime_error(where + ": resolution differs from the log");
      }
    } else {
      throw std::runtime_error(where + ": unknown phase '" + phase + "'");
    }
    if (s->rng_counter() != e.at("rng_counter").get<std::uint64_t>()) {
      throw std::runtime_error(where + ": random stream position differs from the log");
    }
  }
  if (!s) throw std::runtime_error("empty move log");
  return std::move(*s);
}

}  // namespace chinos::session
