#include "chinos/session.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace chinos::session {
namespace {

using qcg::QuantumGuess;
using testing::R;

SessionConfig config(Variant v, PlayerConfig p1, PlayerConfig p2, int rounds = 1, std::uint64_t seed = 42) {
  SessionConfig c;
  c.variant = v;
  c.players = {std::move(p1), std::move(p2)};
  c.rounds = rounds;
  c.seed = seed;
  return c;
}

SessionConfig humans(Variant v, int rounds = 1, std::uint64_t seed = 42) {
  return config(v, PlayerConfig::person(), PlayerConfig::person(), rounds, seed);
}

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const GameError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a GameError";
  return ErrorKind::InvalidConfig;
}

TEST(CreateSession, ValidConfigs) {
  GameSession q("a", config(Variant::Quantum, PlayerConfig::person(), PlayerConfig::engine("qcg-paper"), 10, 42));
  EXPECT_EQ(q.phase(), (Phase{PhaseKind::Draw, 1}));
  EXPECT_EQ(q.round(), 1);
  EXPECT_EQ(q.scores()[0], R(0));
  GameSession c("b", config(Variant::Classical, PlayerConfig::engine("random-classical"), PlayerConfig::engine("random-classical")));
  EXPECT_EQ(c.phase(), (Phase{PhaseKind::Draw, 1}));
}

TEST(CreateSession, Errors) {
  EXPECT_EQ(error_kind([] { GameSession("x", humans(Variant::Quantum, 0)); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(error_kind([] { GameSession("x", config(Variant::Classical, PlayerConfig::engine("qcg-paper"), PlayerConfig::person())); }),
            ErrorKind::UnknownPolicy);
  EXPECT_EQ(error_kind([] { GameSession::config_from_json(Json{{"variant", "chess"}}); }), ErrorKind::InvalidConfig);
}

TEST(SubmitDraw, QuantumAdvancesPhase) {
  GameSession s("s", humans(Variant::Quantum));
  s.submit_draw(1, 2);
  EXPECT_EQ(s.phase(), (Phase{PhaseKind::Draw, 2}));
}

TEST(SubmitDraw, OutOfTurn) {
  GameSession s("s", humans(Variant::Quantum));
  EXPECT_EQ(error_kind([&] { s.submit_draw(2, 1); }), ErrorKind::OutOfTurn);
  EXPECT_EQ(error_kind([&] { s.submit_guess(1, QuantumGuess(1, 1)); }), ErrorKind::OutOfTurn);
  EXPECT_EQ(error_kind([&] { s.resolve_round(); }), ErrorKind::OutOfTurn);
}

TEST(SubmitDraw, InvalidClassicalDraw) {
  GameSession s("s", humans(Variant::Classical));
  EXPECT_EQ(error_kind([&] { s.submit_draw(1, 2); }), ErrorKind::InvalidMove);
  GameSession q("q", humans(Variant::Quantum));
  EXPECT_EQ(error_kind([&] { q.submit_draw(1, 5); }), ErrorKind::InvalidMove);
}

TEST(SubmitGuess, OrthogonalGuessAccepted) {
  GameSession s("s", humans(Variant::Quantum));
  s.submit_draw(1, 2);
  s.submit_draw(2, 3);
  s.submit_guess(1, QuantumGuess(2, 2));
  s.submit_guess(2, QuantumGuess(3, 4));
  EXPECT_EQ(s.phase(), (Phase{PhaseKind::Resolve, 0}));
}

TEST(SubmitGuess, NonOrthogonalRejectedWithOverlap) {
  GameSession s("s", humans(Variant::Quantum));
  s.submit_draw(1, 2);
  s.submit_draw(2, 3);
  s.submit_guess(1, QuantumGuess(2, 2));
  try {
    s.submit_guess(2, QuantumGuess(2, 2));
    FAIL() << "expected rejection";
  } catch (const GameError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RuleViolation);
    ASSERT_TRUE(e.overlap_sq());
    EXPECT_EQ(*e.overlap_sq(), R(1));
    EXPECT_EQ(e.overlap_sq()->to_string(), "1/1");
  }
  EXPECT_EQ(s.phase(), (Phase{PhaseKind::Guess, 2}));
}

TEST(SubmitGuess, SemiclassicalRepeatRejected) {
  GameSession s("s", humans(Variant::Semiclassical));
  s.submit_draw(1, 1);
  s.submit_draw(2, 4);
  s.submit_guess(1, 1);
  EXPECT_EQ(error_kind([&] { s.submit_guess(2, 1); }), ErrorKind::RuleViolation);
  EXPECT_EQ(error_kind([&] { s.submit_guess(2, 3); }), ErrorKind::InvalidMove);
  s.submit_guess(2, 2);
}

TEST(SubmitGuess, DrawExclusionFlag) {
  auto c = humans(Variant::Classical);
  c.exclusion = Exclusion::Draws;
  GameSession s("s", c);
  s.submit_draw(1, 1);
  s.submit_draw(2, 0);
  s.submit_guess(1, 2);
  EXPECT_EQ(error_kind([&] { s.submit_guess(2, 1); }), ErrorKind::RuleViolation);
  s.submit_guess(2, 2);
}

TEST(ResolveRound, SemiclassicalCertainTotal) {
  GameSession s("s", humans(Variant::Semiclassical, 1, 7));
  s.submit_draw(1, 4);
  s.submit_draw(2, 4);
  s.submit_guess(1, 2);
  s.submit_guess(2, 1);
  const auto rec = s.resolve_round();
  EXPECT_EQ(rec.outcome, 2);
  EXPECT_EQ(rec.winner, 1);
  EXPECT_EQ(s.scores()[0], R(1));
  EXPECT_TRUE(s.finished());
}

TEST(ResolveRound, QuantumFidelityScore) {
  GameSession s("s", humans(Variant::Quantum));
  s.submit_draw(1, 2);
  s.submit_draw(2, 2);
  s.submit_guess(1, QuantumGuess(2, 2));
  s.submit_guess(2, QuantumGuess(3, 4));
  const auto rec = s.resolve_round();
  EXPECT_EQ(rec.fidelities[0], R(1));
  EXPECT_EQ(rec.fidelities[1], R(0));
  EXPECT_EQ(s.scores()[0], R(1));
  EXPECT_EQ(rec.winner, 1);
}

TEST(ResolveRound, MeasuredModeAwardsWholePoints) {
  auto c = humans(Variant::Quantum, 200, 3);
  c.scoring = Scoring::Measured;
  GameSession s("s", c);
  while (!s.finished()) {
    s.submit_draw(1, 2);
    s.submit_draw(2, 3);
    s.submit_guess(1, QuantumGuess(2, 2));
    s.submit_guess(2, QuantumGuess(3, 4));
    const auto rec = s.resolve_round();
    for (const auto& p : rec.payoffs) EXPECT_TRUE(p == R(0) || p == R(1));
    if (rec.winner) {
      EXPECT_EQ(rec.payoffs[*rec.winner - 1], R(1));
    }
  }
  EXPECT_LE(s.scores()[0] + s.scores()[1], R(200));
}

SessionConfig engine_match(Variant v, const std::string& p1, const std::string& p2, int rounds, std::uint64_t seed) {
  return config(v, PlayerConfig::engine(p1), PlayerConfig::engine(p2), rounds, seed);
}

void play_out(GameSession& s) {
  while (!s.finished()) {
    s.run_engines();
    s.resolve_round();
  }
}

TEST(Replay, IdenticalLogAndSeedReproduceScores) {
  for (auto v : {Variant::Classical, Variant::Semiclassical, Variant::Quantum}) {
    const auto& pol = policies_for(v);
    GameSession s("s", engine_match(v, pol.front(), pol.back(), 50, 99));
    play_out(s);
    const auto again = replay(s.move_log_jsonl());
    EXPECT_EQ(again.scores(), s.scores());
    EXPECT_EQ(again.move_log_jsonl(), s.move_log_jsonl());
    GameSession twin("s", engine_match(v, pol.front(), pol.back(), 50, 99));
    play_out(twin);
    EXPECT_EQ(twin.move_log_jsonl(), s.move_log_jsonl());
  }
}

TEST(Replay, DetectsTampering) {
  GameSession s("s", engine_match(Variant::Semiclassical, "random-classical", "random-classical", 5, 1));
  play_out(s);
  std::string log = s.move_log_jsonl();
  const auto pos = log.find("\"rng_counter\":1");
  ASSERT_NE(pos, std::string::npos);
  log.replace(pos, 15, "\"rng_counter\":9");
  EXPECT_THROW(replay(log), std::runtime_error);
}

TEST(Replay, HumanSeatsFollowTheLog) {
  GameSession s("s", humans(Variant::Semiclassical, 2, 5));
  for (int r = 0; r < 2; ++r) {
    s.submit_draw(1, 2);
    s.submit_draw(2, 3);
    s.submit_guess(1, 2);
    s.submit_guess(2, 0);
    s.resolve_round();
  }
  EXPECT_EQ(replay(s.move_log_jsonl()).scores(), s.scores());
}

TEST(EnginePolicy, CoinFlipDrawIsFair) {
  int twos = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    GameSession s("s", config(Variant::Quantum, PlayerConfig::engine("qcg-paper"), PlayerConfig::person(), 1, static_cast<std::uint64_t>(i)));
    s.run_engines();
    const int d = *s.pending_draw(1);
    ASSERT_TRUE(d == 2 || d == 3);
    twos += d == 2;
  }
  EXPECT_LT(std::abs(twos - n / 2.0), 3 * std::sqrt(n * 0.25));
}

TEST(EnginePolicy, CoinFlipGuessFollowsDraw) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameSession s("s", config(Variant::Quantum, PlayerConfig::engine("qcg-paper"), PlayerConfig::person(), 1, seed));
    s.run_engines();
    const int d = *s.pending_draw(1);
    s.submit_draw(2, 1);
    s.run_engines();
    EXPECT_EQ(std::get<QuantumGuess>(*s.pending_guesses()[0]), QuantumGuess(d, d));
  }
}

TEST(EnginePolicy, RandomClassicalSecondGuessAvoidsFirst) {
  std::array<int, 3> seen{};
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GameSession s("s", config(Variant::Classical, PlayerConfig::person(), PlayerConfig::engine("random-classical"), 1, seed));
    s.submit_draw(1, 0);
    s.run_engines();
    s.submit_guess(1, 1);
    s.run_engines();
    const int g = std::get<int>(*s.pending_guesses()[1]);
    ASSERT_NE(g, 1);
    ++seen[g];
  }
  EXPECT_GT(seen[0], 100);
  EXPECT_GT(seen[2], 100);
}

TEST(EnginePolicy, UnknownPolicy) {
  GameSession s("s", humans(Variant::Quantum));
  EXPECT_EQ(error_kind([&] { s.engine_move("nonsense"); }), ErrorKind::UnknownPolicy);
}

TEST(ViewProperty, OpponentDrawNeverVisible) {
  for (auto v : {Variant::Classical, Variant::Semiclassical, Variant::Quantum}) {
    const auto& pol = policies_for(v);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GameSession s("s", engine_match(v, pol.front(), pol.back(), 3, seed));
      auto check = [&] {
        for (int viewer = 0; viewer <= 2; ++viewer) {
          const Json view = s.view(viewer);
          if (viewer == 0) {
            EXPECT_FALSE(view.contains("own_draw"));
            continue;
          }
          if (view.contains("own_draw")) {
            EXPECT_EQ(view["own_draw"].get<int>(), *s.pending_draw(viewer));
          } else {
            EXPECT_FALSE(s.pending_draw(viewer).has_value());
          }
          // The only draws in a view are the viewer's own and those of finished rounds.
          Json scrubbed = view;
          scrubbed.erase("own_draw");
          scrubbed.erase("history");
          scrubbed.erase("legal");
          scrubbed.erase("phase");
          EXPECT_EQ(scrubbed.dump().find("draw\""), std::string::npos) << scrubbed.dump();
        }
      };
      while (!s.finished()) {
        check();
        if (s.phase().kind == PhaseKind::Resolve) s.resolve_round();
        else s.apply(s.engine_move(s.config().players[s.phase().player - 1].policy));
      }
      check();
    }
  }
}

TEST(ScoreProperty, MonotoneWithBoundedIncrements) {
  GameSession s("s", engine_match(Variant::Quantum, "qcg-best-response", "qcg-best-response", 100, 8));
  auto prev = s.scores();
  while (!s.finished()) {
    s.run_engines();
    s.resolve_round();
    for (int p = 0; p < 2; ++p) {
      const Rational inc = s.scores()[p] - prev[p];
      EXPECT_GE(inc, R(0));
      EXPECT_LE(inc, R(1));
    }
    prev = s.scores();
  }
}

TEST(LongRun, CoinFlipStrategyAgainstMinimizingDraws) {
  const int n = 10000;
  GameSession s("s", engine_match(Variant::Quantum, "qcg-paper", "qcg-best-response", n, 2024));
  play_out(s);
  for (const auto& rec : s.history()) {
    EXPECT_TRUE(rec.draws[1] == 2 || rec.draws[1] == 3);
    EXPECT_TRUE(rec.fidelities[0] == R(1) || rec.fidelities[0] == R(1, 21));
  }
  const double mean = s.scores()[0].to_double() / n;
  const double sigma = (1.0 - 1.0 / 21) / 2 / std::sqrt(n);
  EXPECT_LT(std::abs(mean - 11.0 / 21), 3 * sigma);
}

TEST(MoveLog, JsonLinesFormat) {
  GameSession s("s", engine_match(Variant::Quantum, "qcg-paper", "qcg-paper", 2, 1));
  play_out(s);
  std::istringstream in(s.move_log_jsonl());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const Json e = Json::parse(line);
    for (const char* key : {"round", "phase", "player", "action", "rng_counter"}) EXPECT_TRUE(e.contains(key)) << key;
    ++lines;
  }
  EXPECT_EQ(lines, 1 + 2 * 5);
}

}  // namespace
}  // namespace chinos::session
