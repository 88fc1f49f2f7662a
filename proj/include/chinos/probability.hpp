#pragma once

#include "chinos/rational.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chinos {

using Distribution = std::vector<Rational>;

inline Rational sum(const Distribution& d) {
  Rational s(0);
  for (const auto& x : d) s += x;
  return s;
}

/// Throws std::invalid_argument unless d has `size` nonnegative entries summing to 1.
inline void validate_distribution(const Distribution& d, std::size_t size, std::string_view what) {
  if (d.size() != size) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(size) + " entries, got " +
                                std::to_string(d.size()));
  }
  for (const auto& x : d) {
    if (x.sign() < 0) throw std::invalid_argument(std::string(what) + ": negative probability " + x.to_string());
  }
  if (sum(d) != Rational(1)) {
    throw std::invalid_argument(std::string(what) + ": probabilities sum to " + sum(d).to_string());
  }
}

inline Distribution uniform_distribution(std::size_t n) {
  return Distribution(n, Rational(1, static_cast<std::int64_t>(n)));
}

inline Distribution point_mass(std::size_t n, std::size_t at) {
  Distribution d(n, Rational(0));
  d.at(at) = Rational(1);
  return d;
}

/// Uniform over the listed indices.
inline Distribution uniform_over(std::size_t n, const std::vector<std::size_t>& support) {
  Distribution d(n, Rational(0));
  for (auto i : support) d.at(i) = Rational(1, static_cast<std::int64_t>(support.size()));
  return d;
}

/// Parses "1/4,1/4,1/2" (whitespace tolerated).
inline Distribution parse_distribution(std::string_view text) {
  Distribution d;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) d.push_back(Rational::from_string(item));
  return d;
}

inline std::string format_distribution(const Distribution& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ",";
    out += d[i].to_string();
  }
  return out;
}

}  // namespace chinos
