#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "chatelet/polynomial.hpp"
#include "chatelet/rational.hpp"

namespace chatelet {

/// Element of the prime field F_p. Carries its modulus; arithmetic across
/// different moduli throws std::invalid_argument.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint64_t p);
  static Fp from_integer(const Integer& v, std::uint64_t p);
  static Fp from_rational(const Rational& v, std::uint64_t p);

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  friend Fp operator+(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a, const Fp& b);
  friend Fp operator*(const Fp& a, const Fp& b);
  Fp operator-() const { return Fp(0, p_) - *this; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

std::ostream& operator<<(std::ostream& os, const Fp& a);

inline bool is_zero(const Fp& x) { return x.value() == 0; }
inline Fp zero_like(const Fp& x) { return Fp(0, x.modulus()); }
inline Fp one_like(const Fp& x) { return Fp(1, x.modulus()); }
Fp inverse(const Fp& x);
Fp mul_int(const Fp& x, long n);
Fp pow(const Fp& x, const Integer& e);

using FpPoly = Polynomial<Fp>;

/// Reduction of an integer-coefficient polynomial modulo p.
FpPoly reduce_mod_p(const Polynomial<Rational>& f, std::uint64_t p);
/// Lift with coefficients in [0, p).
Polynomial<Rational> lift(const FpPoly& f);

FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m);

struct FpFactor {
  FpPoly factor;  // monic irreducible
  int multiplicity = 1;
};

/// Complete factorization of a nonzero polynomial over F_p into monic
/// irreducibles (squarefree decomposition, distinct-degree, then
/// Cantor-Zassenhaus with a fixed seed). Factors are sorted by degree then
/// coefficients, so the output is deterministic.
std::vector<FpFactor> factor_mod_p(const FpPoly& f);

bool is_irreducible_mod_p(const FpPoly& f);

/// Number of distinct roots of f in F_p, via deg gcd(x^p - x, f).
int distinct_root_count(const FpPoly& f);

/// Total order on monic polynomials over F_p used for canonical sorting.
bool canonical_less(const FpPoly& a, const FpPoly& b);

/// The finite field F_p[x]/(g) for monic irreducible g.
class FiniteField {
 public:
  FiniteField(std::uint64_t p, FpPoly g);
  std::uint64_t characteristic() const { return p_; }
  int degree() const { return g_.degree(); }
  const FpPoly& modulus() const { return g_; }
  Integer order() const;

 private:
  std::uint64_t p_;
  FpPoly g_;
};

/// Element of F_p[x]/(g): representative of degree < deg g.
class FiniteFieldElem {
 public:
  FiniteFieldElem(FpPoly modulus, FpPoly rep);
  const FpPoly& rep() const { return rep_; }
  const FpPoly& modulus() const { return g_; }
  std::uint64_t characteristic() const { return g_.leading().modulus(); }
  bool is_zero() const { return rep_.is_zero(); }

  friend FiniteFieldElem operator*(const FiniteFieldElem& a, const FiniteFieldElem& b);
  friend bool operator==(const FiniteFieldElem& a, const FiniteFieldElem& b) {
    return a.g_ == b.g_ && a.rep_ == b.rep_;
  }
  FiniteFieldElem pow(const Integer& e) const;
  FiniteFieldElem inverse() const;

  /// +1 for nonzero squares, -1 for non-squares, 0 for zero.
  int quadratic_character() const;

  std::string str() const;

 private:
  FpPoly g_;
  FpPoly rep_;
};

/// All elements of F_p[x]/(g) in canonical order (0, 1, ..., p-1, x, x+1, ...).
std::vector<FpPoly> enumerate_residues(std::uint64_t p, int degree);

}  // namespace chatelet
