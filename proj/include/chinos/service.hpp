#pragma once

#include "chinos/report.hpp"
#include "chinos/session.hpp"

#include "httplib.h"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

namespace chinos::service {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  /// Seat claimed by the caller (X-Player header), if any.
  std::optional<int> seat;
};

struct Response {
  int status = 200;
  Json body;
  bool cacheable = false;
};

inline Response error_response(int status, const std::string& message) {
  return {status, Json{{"error", message}}, false};
}

inline int status_for(session::ErrorKind kind) {
  using session::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidConfig:
    case ErrorKind::UnknownPolicy: return 400;
    case ErrorKind::OutOfTurn:
    case ErrorKind::Forbidden: return 403;
    case ErrorKind::RuleViolation: return 409;
    case ErrorKind::InvalidMove: return 422;
  }
  return 500;
}

/// JSON-over-HTTP front end. Analysis routes are stateless; each session is
/// guarded by its own mutex so requests against one id apply in order while
/// distinct sessions proceed in parallel.
class Service {
 public:
  Response handle(const Request& req) {
    try {
      return route(req);
    } catch (const session::GameError& e) {
      Response r = error_response(status_for(e.kind()), e.what());
      if (e.overlap_sq()) put_exact(r.body, "overlap_sq", *e.overlap_sq());
      return r;
    } catch (const Json::exception& e) {
      return error_response(400, std::string("invalid request body: ") + e.what());
    } catch (const std::invalid_argument& e) {
      return error_response(400, e.what());
    } catch (const std::out_of_range& e) {
      return error_response(422, e.what());
    }
  }

  std::size_t session_count() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
  }

 private:
  struct Entry {
    std::mutex mutex;
    std::optional<session::GameSession> game;
  };

  static std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
      if (c == '/') {
        if (!cur.empty()) parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
  }

  Response route(const Request& req) {
    const auto parts = split_path(req.path);
    if (parts.empty()) return error_response(404, "not found");

    if (parts[0] == "analysis") {
      if (req.method != "GET") return error_response(405, "method not allowed");
      return analysis(parts, req);
    }
    if (parts[0] != "sessions") return error_response(404, "not found: " + req.path);

    if (parts.size() == 1) {
      if (req.method != "POST") return error_response(405, "method not allowed");
      return create(req);
    }
    auto entry = find(parts[1]);
    if (!entry) return error_response(404, "unknown session '" + parts[1] + "'");
    std::lock_guard lock(entry->mutex);
    auto& game = *entry->game;

    if (parts.size() == 2) {
      if (req.method != "GET") return error_response(405, "method not allowed");
      const int viewer = parse_viewer(req.query.count("as") ? req.query.at("as") : "spectator");
      if (req.seat && viewer != 0 && *req.seat != viewer) {
        throw session::GameError(session::ErrorKind::Forbidden, "seat " + std::to_string(*req.seat) + " may not view another player's hand");
      }
      return {200, game.view(viewer)};
    }
    const std::string& action = parts[2];
    if (action == "log" && req.method == "GET") {
      Json lines = Json::array();
      for (const auto& e : game.log()) lines.push_back(session::GameSession::event_to_json(e));
      return {200, Json{{"id", game.id()}, {"events", lines}}};
    }
    if (req.method != "POST") return error_response(405, "method not allowed");
    const Json body = req.body.empty() ? Json::object() : Json::parse(req.body);

    if (action == "draw" || action == "guess") {
      const int player = body.at("player").get<int>();
      check_seat(game, req, player);
      if (action == "draw") {
        game.submit_draw(player, parse_draw(body.at("draw")));
      } else {
        game.submit_guess(player, game.guess_from_json(body.at("guess")));
      }
      game.run_engines();
      return {200, game.view(player)};
    }
    if (action == "resolve") {
      const auto rec = game.resolve_round();
      game.run_engines();
      return {200, Json{{"round", session::GameSession::record_to_json(rec)}, {"state", game.view(req.seat.value_or(0))}}};
    }
    return error_response(404, "unknown action '" + action + "'");
  }

  static void check_seat(const session::GameSession& game, const Request& req, int player) {
    if (player != 1 && player != 2) throw session::GameError(session::ErrorKind::InvalidMove, "player must be 1 or 2");
    if (game.is_engine(player)) {
      throw session::GameError(session::ErrorKind::Forbidden, "seat " + std::to_string(player) + " is played by the engine");
    }
    if (req.seat && *req.seat != player) {
      throw session::GameError(session::ErrorKind::Forbidden, "seat " + std::to_string(*req.seat) + " cannot act for player " + std::to_string(player));
    }
  }

  static int parse_viewer(const std::string& as) {
    if (as == "player1") return 1;
    if (as == "player2") return 2;
    if (as == "spectator") return 0;
    throw std::invalid_argument("as must be player1, player2 or spectator");
  }

  static int parse_draw(const Json& j) {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s.size() == 2 && (s[0] == 'O' || s[0] == 'o') && s[1] >= '0' && s[1] <= '9') return s[1] - '0';
    }
    throw session::GameError(session::ErrorKind::InvalidMove, "draw must be an integer or an operator label like \"O2\"");
  }

  Response create(const Request& req) {
    const Json body = Json::parse(req.body.empty() ? "{}" : req.body);
    if (!body.is_object()) return error_response(400, "body must be a JSON object");
    auto config = session::GameSession::config_from_json(body);
    auto entry = std::make_shared<Entry>();
    const std::string id = "s" + std::to_string(++next_id_);
    entry->game.emplace(id, std::move(config));
    entry->game->run_engines();
    Json out{{"id", id}, {"state", entry->game->view(0)}};
    {
      std::unique_lock lock(sessions_mutex_);
      sessions_[id] = entry;
    }
    return {200, out};
  }

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  static Response analysis(const std::vector<std::string>& parts, const Request& req) {
    const std::string route = parts.size() >= 3 ? parts[1] + "/" + parts[2] : "";
    if (route == "scg/tables") return {200, report::scg_tables_json(), true};
    if (route == "qcg/gram") return {200, report::qcg_gram_json(), true};
    if (route == "qcg/tables") return {200, report::qcg_tables_json(), true};
    if (route == "qcg/exhaustive") {
      static const Json cached = report::qcg_exhaustive_json();
      return {200, cached, true};
    }
    if (route == "qcg/admissible") {
      auto it = req.query.find("prior");
      if (it == req.query.end()) return error_response(400, "missing query parameter 'prior'");
      std::vector<qcg::QuantumGuess> prior;
      std::string item;
      std::istringstream in(it->second);
      while (std::getline(in, item, ';'))
        if (!item.empty()) prior.push_back(qcg::QuantumGuess::parse(item));
      return {200, report::qcg_admissible_json(prior), true};
    }
    return error_response(404, "unknown analysis route");
  }

  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<std::uint64_t> next_id_{0};
};

/// Binds a Service to an httplib server. Blocks in listen().
class HttpServer {
 public:
  explicit HttpServer(Service& service) : service_(service) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) { dispatch(req, res); };
    server_.Get(".*", handler);
    server_.Post(".*", handler);
  }

  bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  int bind_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() { server_.wait_until_ready(); }

 private:
  void dispatch(const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body, std::nullopt};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    if (req.has_header("X-Player")) {
      try {
        r.seat = std::stoi(req.get_header_value("X-Player"));
      } catch (const std::exception&) {
        res.status = 400;
        res.set_content(Json{{"error", "X-Player must be 1 or 2"}}.dump(), "application/json");
        return;
      }
    }
    const Response out = service_.handle(r);
    res.status = out.status;
    res.set_header("Cache-Control", out.cacheable ? "public, max-age=3600" : "no-store");
    res.set_content(out.body.dump(), "application/json");
  }

  Service& service_;
  httplib::Server server_;
};

}  // namespace chinos::service
