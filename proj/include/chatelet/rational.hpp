#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace chatelet {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (the canonical form maintained by GMP's mpq).
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}
  Rational(long v) : v_(v) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "n" or "n/d" (optional sign on n). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  Integer numerator() const { return v_.get_num(); }
  Integer denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  /// "num/den", with the denominator omitted when it is 1.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Field interface used by the generic polynomial code.
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
Rational inverse(const Rational& x);
inline Rational mul_int(const Rational& x, long n) { return x * Rational(n); }

Rational abs(const Rational& x);
Rational pow(const Rational& x, long e);

/// p-adic valuation of a nonzero integer. Throws on zero.
int valuation(const Integer& n, const Integer& p);
/// p-adic valuation of a nonzero rational. Throws on zero.
int valuation(const Rational& x, const Integer& p);

/// Residue of a p-integral rational modulo m (m a power of p, or any
/// modulus coprime to the denominator). Result in [0, m).
Integer mod_reduce(const Rational& x, const Integer& m);
Integer mod_floor(const Integer& a, const Integer& m);

Integer parse_integer(std::string_view text);

}  // namespace chatelet
