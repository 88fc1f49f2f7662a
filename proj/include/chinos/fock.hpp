#pragma once

#include "chinos/scalar.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chinos {

/// Single-mode bosonic state written as a polynomial in the creation operator
/// acting on the vacuum: sum_n e_n (b^dag)^n |0>.
///
/// Coefficients live in the unnormalized monomial basis, whose elements are
/// mutually orthogonal with squared norm n!. The trailing coefficient is kept
/// nonzero; the zero state has no coefficients.
template <typename S>
class FockPoly {
 public:
  FockPoly() = default;
  explicit FockPoly(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static FockPoly vacuum() { return FockPoly(std::vector<S>{S(1)}); }

  /// (b^dag)^n |0>.
  static FockPoly monomial(std::size_t n) {
    std::vector<S> c(n + 1, S(0));
    c[n] = S(1);
    return FockPoly(std::move(c));
  }

  std::span<const S> coeffs() const { return coeffs_; }
  const S& coeff(std::size_t n) const { return coeffs_.at(n); }
  S coeff_or_zero(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : S(0); }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }

  /// Degree of the polynomial; the zero state reports 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  friend bool operator==(const FockPoly& x, const FockPoly& y) { return x.coeffs_ == y.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && chinos::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<S> coeffs_;
};

/// Draw operator alpha*I + beta*b^dag.
template <typename S>
struct DrawOperator {
  S alpha;
  S beta;
  std::string label;

  DrawOperator(S a, S b, std::string l = {}) : alpha(std::move(a)), beta(std::move(b)), label(std::move(l)) {
    if (chinos::is_zero(alpha) && chinos::is_zero(beta)) {
      throw std::invalid_argument("DrawOperator: alpha and beta are both zero");
    }
    if constexpr (!ScalarTraits<S>::exact) {
      if (!is_finite(alpha) || !is_finite(beta)) {
        throw std::invalid_argument("DrawOperator: non-finite coefficient");
      }
    }
  }
};

inline constexpr int kNumReducedOperators = 4;

/// The four-element operator set I, (I + b^dag)/sqrt2, (I - b^dag)/sqrt2, b^dag,
/// indexed 1..4.
template <typename S>
DrawOperator<S> reduced_operator(int index);

template <>
inline DrawOperator<QuadScalar> reduced_operator<QuadScalar>(int index) {
  const QuadScalar h = QuadScalar::inv_sqrt2();
  switch (index) {
    case 1: return {QuadScalar(1), QuadScalar(0), "O1"};
    case 2: return {h, h, "O2"};
    case 3: return {h, -h, "O3"};
    case 4: return {QuadScalar(0), QuadScalar(1), "O4"};
    default: throw std::out_of_range("reduced_operator: index must be in 1..4, got " + std::to_string(index));
  }
}

template <>
inline DrawOperator<FloatAmplitude> reduced_operator<FloatAmplitude>(int index) {
  const auto exact = reduced_operator<QuadScalar>(index);
  return {to_amplitude(exact.alpha), to_amplitude(exact.beta), exact.label};
}

/// cos(theta/2) + e^{i phi} sin(theta/2) b^dag. Angles are reduced modulo 2*pi.
inline DrawOperator<FloatAmplitude> bloch_operator(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("bloch_operator: non-finite angle");
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, kTwoPi);
  phi = std::fmod(phi, kTwoPi);
  const double half = 0.5 * theta;
  return {FloatAmplitude(std::cos(half), 0.0), std::polar(std::sin(half), phi),
          "bloch(" + std::to_string(theta) + "," + std::to_string(phi) + ")"};
}

/// (alpha + beta b^dag) applied to state: e'_n = alpha e_n + beta e_{n-1}.
template <typename S>
FockPoly<S> apply_draw(const DrawOperator<S>& op, const FockPoly<S>& state) {
  if (state.is_zero()) throw std::invalid_argument("apply_draw: zero state");
  const std::size_t n_in = state.size();
  std::vector<S> out(n_in + 1, S(0));
  for (std::size_t n = 0; n < n_in; ++n) {
    out[n] += op.alpha * state.coeff(n);
    out[n + 1] += op.beta * state.coeff(n);
  }
  return FockPoly<S>(std::move(out));
}

/// Product of draw operators applied to the vacuum.
template <typename S>
FockPoly<S> apply_all(std::span<const DrawOperator<S>> ops, FockPoly<S> state = FockPoly<S>::vacuum()) {
  for (const auto& op : ops) state = apply_draw(op, state);
  return state;
}

template <typename S>
RealOf<S> to_real(const BigInt& n) {
  return RealOf<S>(ScalarTraits<S>::from_integer(n).real());
}

template <>
inline QuadScalar to_real<QuadScalar>(const BigInt& n) {
  return ScalarTraits<QuadScalar>::from_integer(n);
}

/// <p|q> = sum_n conj(e_n) f_n n!.
template <typename S>
S overlap(const FockPoly<S>& p, const FockPoly<S>& q) {
  S acc(0);
  const std::size_t n_max = std::min(p.size(), q.size());
  BigInt weight = 1;
  for (std::size_t n = 0; n < n_max; ++n) {
    if (n > 1) weight *= n;
    acc += conj(p.coeff(n)) * q.coeff(n) * ScalarTraits<S>::from_integer(weight);
  }
  return acc;
}

template <typename S>
RealOf<S> norm_squared(const FockPoly<S>& p) {
  RealOf<S> acc(0);
  BigInt weight = 1;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 1) weight *= n;
    acc += abs_sq(p.coeff(n)) * to_real<S>(weight);
  }
  return acc;
}

/// Born probabilities p(n) = |e_n|^2 n! / <p|p> over the total count n.
template <typename S>
std::vector<RealOf<S>> born_distribution(const FockPoly<S>& p) {
  if (p.is_zero()) throw std::invalid_argument("born_distribution: zero state");
  const RealOf<S> norm = norm_squared(p);
  std::vector<RealOf<S>> probs;
  probs.reserve(p.size());
  BigInt weight = 1;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 1) weight *= n;
    probs.push_back(abs_sq(p.coeff(n)) * to_real<S>(weight) / norm);
  }
  return probs;
}

/// |<guess|joint>|^2 / (<guess|guess> <joint|joint>).
template <typename S>
RealOf<S> fidelity(const FockPoly<S>& guess, const FockPoly<S>& joint) {
  if (guess.is_zero() || joint.is_zero()) throw std::invalid_argument("fidelity: zero state");
  return abs_sq(overlap(guess, joint)) / (norm_squared(guess) * norm_squared(joint));
}

/// Float rendering of an exact state.
inline FockPoly<FloatAmplitude> to_float_poly(const FockPoly<QuadScalar>& p) {
  std::vector<FloatAmplitude> c;
  c.reserve(p.size());
  for (const auto& x : p.coeffs()) c.push_back(to_amplitude(x));
  return FockPoly<FloatAmplitude>(std::move(c));
}

/// Normalized amplitudes over the number basis |n> = (b^dag)^n |0> / sqrt(n!).
template <typename S>
std::vector<FloatAmplitude> normalized_number_amplitudes(const FockPoly<S>& p) {
  if (p.is_zero()) throw std::invalid_argument("normalized_number_amplitudes: zero state");
  const double norm = std::sqrt(to_float(norm_squared(p)));
  std::vector<FloatAmplitude> out;
  double fact = 1.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 1) fact *= static_cast<double>(n);
    out.push_back(to_amplitude(p.coeff(n)) * std::sqrt(fact) / norm);
  }
  return out;
}

/// True iff the coefficient sequences are proportional (same ray).
template <typename S>
bool same_ray(const FockPoly<S>& p, const FockPoly<S>& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  if (p.size() != q.size()) return false;
  // p_n q_m == p_m q_n for all n, m  <=>  proportional
  const std::size_t pivot = p.size() - 1;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p.coeff(n) * q.coeff(pivot) != q.coeff(n) * p.coeff(pivot)) return false;
  }
  return true;
}

}  // namespace chinos
