#pragma once

#include "chinos/fock.hpp"
#include "chinos/probability.hpp"
#include "chinos/rational.hpp"
#include "chinos/scalar.hpp"
#include "chinos/solver.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace chinos {

using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return r.to_string(); }

inline Json to_json(const QuadScalar& q) { return Json{{"a", q.a().to_string()}, {"b", q.b().to_string()}}; }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("expected a rational string like \"p/q\"");
}

inline QuadScalar quad_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) throw std::invalid_argument("expected {\"a\": ..., \"b\": ...}");
  return {rational_from_json(j.at("a")), rational_from_json(j.at("b"))};
}

/// Writes `key` as a rational string and `key_float` as its double value.
inline void put_exact(Json& obj, const std::string& key, const Rational& r) {
  obj[key] = r.to_string();
  obj[key + "_float"] = r.to_double();
}

/// {"exact": "p/q", "float": x}
inline Json exact_value(const Rational& r) { return Json{{"exact", r.to_string()}, {"float", r.to_double()}}; }

template <typename Range>
Json exact_list(const Range& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(exact_value(v));
  return arr;
}

inline Json to_json(const FockPoly<QuadScalar>& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  Json normalized = Json::array();
  if (!p.is_zero())
    for (const auto& a : normalized_number_amplitudes(p)) normalized.push_back(a.real());
  return Json{{"coeffs", coeffs}, {"basis", "monomial"}, {"number_view", Json{{"normalized", normalized}, {"basis", "number"}}}};
}

inline FockPoly<QuadScalar> fock_from_json(const Json& j) {
  std::vector<QuadScalar> c;
  for (const auto& x : j.at("coeffs")) c.push_back(quad_from_json(x));
  return FockPoly<QuadScalar>(std::move(c));
}

inline Distribution distribution_from_json(const Json& j) {
  Distribution d;
  for (const auto& x : j) d.push_back(rational_from_json(x));
  return d;
}

inline Json to_json(const Distribution& d) {
  Json arr = Json::array();
  for (const auto& x : d) arr.push_back(x.to_string());
  return arr;
}

namespace solver {

inline MatrixGame<Rational> game_from_json(const Json& j) {
  MatrixGame<Rational> g;
  g.actions1 = j.at("actions1").get<std::vector<std::string>>();
  g.actions2 = j.at("actions2").get<std::vector<std::string>>();
  auto grid = [](const Json& rows) {
    Grid<Rational> out;
    for (const auto& row : rows) {
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rational_from_json(x));
      out.push_back(std::move(r));
    }
    return out;
  };
  g.U1 = grid(j.at("U1"));
  g.U2 = grid(j.at("U2"));
  g.validate();
  return g;
}

inline Json game_to_json(const MatrixGame<Rational>& g) {
  auto grid = [](const Grid<Rational>& u) {
    Json rows = Json::array();
    for (const auto& row : u) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(x.to_string());
      rows.push_back(r);
    }
    return rows;
  };
  return Json{{"actions1", g.actions1}, {"actions2", g.actions2}, {"U1", grid(g.U1)}, {"U2", grid(g.U2)}};
}

}  // namespace solver
}  // namespace chinos
