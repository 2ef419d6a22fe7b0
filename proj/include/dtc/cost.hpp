#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dtc {

/// Exact non-negative rational amount with one distinguished infinite value.
///
/// All solver arithmetic runs on this type; nothing in the library ever
/// rounds. Finite values are kept canonical (reduced, positive denominator)
/// by the underlying GMP rational.
class Cost {
 public:
  Cost() : inf_(false), v_(0) {}

  static Cost infinite() {
    Cost c;
    c.inf_ = true;
    return c;
  }
  static Cost from_int(unsigned long n) { return Cost(mpq_class(n)); }
  static Cost fraction(unsigned long num, unsigned long den);

  /// Accepts "7", "3/4" and decimal literals such as "2.5" or ".25".
  /// Throws std::invalid_argument on anything else (negatives included).
  static Cost parse(const std::string& text);

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }
  bool is_positive() const { return inf_ || v_ > 0; }

  /// Finite payload; must not be called on the infinite value.
  const mpq_class& value() const;

  Cost operator+(const Cost& o) const;
  /// Subtraction is checked: the solver never owes a negative amount, so a
  /// result below zero means a bookkeeping bug and throws std::logic_error.
  Cost operator-(const Cost& o) const;
  Cost operator*(const Cost& o) const;
  /// Division by a finite positive cost.
  Cost operator/(const Cost& o) const;
  Cost div_by(unsigned long n) const;

  Cost& operator+=(const Cost& o) { return *this = *this + o; }
  Cost& operator-=(const Cost& o) { return *this = *this - o; }

  bool operator==(const Cost& o) const;
  bool operator!=(const Cost& o) const { return !(*this == o); }
  bool operator<(const Cost& o) const;
  bool operator<=(const Cost& o) const { return *this < o || *this == o; }
  bool operator>(const Cost& o) const { return o < *this; }
  bool operator>=(const Cost& o) const { return o <= *this; }

  /// Canonical text form: "p/q" reduced, "p" when integral, "inf".
  std::string str() const;

 private:
  explicit Cost(mpq_class v) : inf_(false), v_(std::move(v)) {}

  bool inf_;
  mpq_class v_;
};

inline Cost min(const Cost& a, const Cost& b) { return a < b ? a : b; }
inline Cost max(const Cost& a, const Cost& b) { return a < b ? b : a; }

/// H(g) = sum of 1/i for i in [1, g], exactly; H(0) = 0.
Cost harmonic(unsigned long g);

}  // namespace dtc
