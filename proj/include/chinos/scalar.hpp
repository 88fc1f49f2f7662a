#pragma once

#include "chinos/rational.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

namespace chinos {

/// Exact element a + b*sqrt(2) of the field Q(sqrt 2).
///
/// sqrt(2) is irrational, so the pair (a, b) is a unique representation and
/// equality, zero tests and ordering are all exact.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(std::int64_t a) : a_(a) {}        // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  /// 1/sqrt(2) = (1/2) sqrt(2).
  static QuadScalar inv_sqrt2() { return {Rational(0), Rational(1, 2)}; }
  static QuadScalar sqrt2() { return {Rational(0), Rational(1)}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  /// The rational value; throws if the sqrt(2) component is nonzero.
  const Rational& rational() const {
    if (!b_.is_zero()) throw std::domain_error("QuadScalar: value " + to_string() + " is irrational");
    return a_;
  }

  /// Galois conjugate a - b*sqrt(2).
  QuadScalar galois_conjugate() const { return {a_, -b_}; }

  /// a^2 - 2 b^2, the field norm (rational, zero only for zero).
  Rational field_norm() const { return a_ * a_ - Rational(2) * b_ * b_; }

  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare a^2 with 2 b^2.
    const Rational diff = a_ * a_ - Rational(2) * b_ * b_;
    return diff.sign() * sa;
  }

  /// a + b*sqrt(2) in double precision. When a and b have opposite signs the
  /// value is computed as (a^2 - 2b^2) / (a - b*sqrt(2)) so that cancellation
  /// never amplifies rounding error.
  double to_double() const {
    static const double kSqrt2 = std::sqrt(2.0);
    if (b_.is_zero()) return a_.to_double();
    if (a_.sign() * b_.sign() >= 0) return std::fma(b_.to_double(), kSqrt2, a_.to_double());
    const double denom = std::fma(-b_.to_double(), kSqrt2, a_.to_double());
    return field_norm().to_double() / denom;
  }

  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    return a_.to_string() + " + " + b_.to_string() + "*sqrt2";
  }

  QuadScalar operator-() const { return {-a_, -b_}; }
  QuadScalar& operator+=(const QuadScalar& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QuadScalar& operator-=(const QuadScalar& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QuadScalar& operator*=(const QuadScalar& o) {
    Rational a = a_ * o.a_ + Rational(2) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadScalar& operator/=(const QuadScalar& o) {
    const Rational n = o.field_norm();
    if (n.is_zero()) throw std::domain_error("QuadScalar: division by zero");
    *this *= o.galois_conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
  friend bool operator<(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadScalar& x, const QuadScalar& y) { return y < x; }
  friend bool operator<=(const QuadScalar& x, const QuadScalar& y) { return !(y < x); }
  friend bool operator>=(const QuadScalar& x, const QuadScalar& y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, const QuadScalar& q) { return os << q.to_string(); }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// Floating-point amplitude for generic-angle operators.
using FloatAmplitude = std::complex<double>;

// Shared scalar contract used by the Fock algebra. Both backends provide
// conj, abs_sq, is_zero, to_float and from_integer.

inline QuadScalar conj(const QuadScalar& x) { return x; }  // the field is real
inline QuadScalar abs_sq(const QuadScalar& x) { return x * x; }
inline bool is_zero(const QuadScalar& x) { return x.is_zero(); }
inline double to_float(const QuadScalar& x) { return x.to_double(); }
inline FloatAmplitude to_amplitude(const QuadScalar& x) { return {x.to_double(), 0.0}; }

inline double abs_sq(const FloatAmplitude& x) { return std::norm(x); }
inline bool is_zero(const FloatAmplitude& x) { return x.real() == 0.0 && x.imag() == 0.0; }
inline double to_float(const FloatAmplitude& x) { return x.real(); }
inline double to_float(double x) { return x; }
inline FloatAmplitude to_amplitude(const FloatAmplitude& x) { return x; }

inline bool is_finite(const FloatAmplitude& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<QuadScalar> {
  using Real = QuadScalar;
  static constexpr bool exact = true;
  static QuadScalar from_integer(const BigInt& n) { return Rational(n, 1); }
};

template <>
struct ScalarTraits<FloatAmplitude> {
  using Real = double;
  static constexpr bool exact = false;
  static FloatAmplitude from_integer(const BigInt& n) { return {n.convert_to<double>(), 0.0}; }
};

template <typename S>
using RealOf = typename ScalarTraits<S>::Real;

}  // namespace chinos
