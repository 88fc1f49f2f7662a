#pragma once

#include "chinos/probability.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace chinos {

/// Session random stream.
///
/// Algorithm: std::mt19937_64 (MT19937-64, fully specified by the C++
/// standard) seeded with the 64-bit session seed. Each random decision draws
/// exactly one 64-bit word u and picks the first index i with
/// u < floor(2^64 * (p_0 + ... + p_i)), evaluated in exact integer arithmetic.
/// Replays are therefore bit-identical across platforms and compilers.
class SessionRng {
 public:
  explicit SessionRng(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

  std::uint64_t next_word() {
    ++counter_;
    return engine_();
  }

  /// Samples an index from an exact distribution; consumes one word.
  std::size_t sample(std::span<const Rational> probs) {
    const BigInt u = next_word();
    const BigInt scale = BigInt(1) << 64;
    Rational cumulative(0);
    std::size_t last_positive = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i].is_zero()) continue;
      last_positive = i;
      cumulative += probs[i];
      // u < cumulative * 2^64  <=>  u * den < num * 2^64
      if (u * cumulative.denominator() < cumulative.numerator() * scale) return i;
    }
    if (last_positive == probs.size()) throw std::invalid_argument("SessionRng::sample: no positive mass");
    return last_positive;
  }

  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("SessionRng::uniform_index: empty range");
    const auto d = uniform_distribution(n);
    return sample(d);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace chinos
