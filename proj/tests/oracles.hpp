#pragma once

// Independent reference computations used only by tests. Nothing here
// calls into the library algorithms being checked.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "chatelet/rational.hpp"
#include "chatelet/sturm.hpp"

namespace oracle {

using chatelet::Integer;
using chatelet::QPoly;
using chatelet::Rational;

/// Determinant of the Sylvester matrix by exact Gaussian elimination.
inline Rational sylvester_resultant(const QPoly& f, const QPoly& g) {
  const int m = f.degree();
  const int n = g.degree();
  const int size = m + n;
  if (size == 0) return Rational(1);
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(size),
                                       std::vector<Rational>(static_cast<std::size_t>(size), Rational(0)));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) a[r][r + i] = f.coeff(m - i, Rational(0));
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) a[n + r][r + i] = g.coeff(n - i, Rational(0));
  }
  Rational det(1);
  for (int c = 0; c < size; ++c) {
    int piv = -1;
    for (int r = c; r < size; ++r) {
      if (!a[r][c].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < size; ++r) {
      if (a[r][c].is_zero()) continue;
      const Rational k = a[r][c] / a[c][c];
      for (int j = c; j < size; ++j) a[r][j] -= k * a[c][j];
    }
  }
  return det;
}

inline QPoly poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return QPoly(std::move(v));
}

inline QPoly random_poly(std::mt19937_64& rng, int degree, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<Rational> v;
  for (int i = 0; i <= degree; ++i) v.emplace_back(dist(rng));
  if (v.back().is_zero()) v.back() = Rational(1);
  return QPoly(std::move(v));
}

inline Integer ipow(long b, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline int vp(const Rational& x, long p) { return chatelet::valuation(x, Integer(p)); }

/// Table of squares modulo p^k (cached per modulus).
inline const std::vector<char>& square_table(long m) {
  static std::map<long, std::vector<char>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<char> t(static_cast<std::size_t>(m), 0);
  for (long x = 0; x < m; ++x) t[static_cast<std::size_t>((static_cast<__int128>(x) * x) % m)] = 1;
  return cache.emplace(m, std::move(t)).first->second;
}

/// Hilbert symbol (alpha, beta)_p over Q, odd p, by exhaustive search for a
/// primitive solution of x^2 - alpha y^2 - beta z^2 = 0 modulo p^k with
/// k = 2 max(v(alpha), v(beta)) + 3. Inputs are first made integral and
/// stripped of p^2 factors (both are squares), so valuations are 0 or 1.
/// A primitive solution needs y or z to be a unit, so it suffices to try
/// z = 1 and y = 1 against the square table.
inline int brute_force_hilbert(const Rational& alpha, const Rational& beta, long p) {
  auto normalize = [p](const Rational& x) {
    Integer n = x.numerator() * x.denominator();
    const Integer p2 = Integer(p) * p;
    while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) n /= p2;
    return n;
  };
  const Integer A = normalize(alpha);
  const Integer B = normalize(beta);
  const int va = chatelet::valuation(A, Integer(p));
  const int vb = chatelet::valuation(B, Integer(p));
  const int k = 2 * std::max(va, vb) + 3;
  const long m = ipow(p, k).get_si();
  const long am = chatelet::mod_floor(A, Integer(m)).get_si();
  const long bm = chatelet::mod_floor(B, Integer(m)).get_si();
  const auto& sq = square_table(m);
  auto mulm = [m](long x, long y) { return static_cast<long>((static_cast<__int128>(x) * y) % m); };
  for (long t = 0; t < m; ++t) {
    const long t2 = mulm(t, t);
    // z = 1: x^2 = alpha t^2 + beta
    if (sq[static_cast<std::size_t>((mulm(am, t2) + bm) % m)]) return 1;
    // y = 1: x^2 = alpha + beta t^2
    if (sq[static_cast<std::size_t>((am + mulm(bm, t2)) % m)]) return 1;
  }
  return -1;
}

/// Local solvability of y^2 - a z^2 = A x^4 + B x^3 + C x^2 + D x + E over
/// Q_p by sampling x over Z/p^k and x' = 1/x over pZ/p^k: a point exists
/// iff P(x) = 0 or (a, P(x))_p = +1.
inline bool brute_force_local(const Integer& a, const std::vector<Integer>& abcde, long p, int k) {
  const long m = ipow(p, k).get_si();
  auto value = [&](long x, bool inf) {
    Integer v = 0;
    Integer xp = 1;
    for (std::size_t i = 0; i < 5; ++i) {
      v += abcde[inf ? i : 4 - i] * xp;
      xp *= x;
    }
    return v;
  };
  for (int chart = 0; chart < 2; ++chart) {
    for (long x = 0; x < m; x += (chart == 1 ? p : 1)) {
      const Integer v = value(x, chart == 1);
      if (v == 0) return true;
      if (brute_force_hilbert(Rational(a), Rational(v), p) == 1) return true;
    }
  }
  return false;
}

inline bool brute_force_local(long a, const std::vector<long>& abcde, long p, int k) {
  std::vector<Integer> c;
  for (long x : abcde) c.emplace_back(x);
  return brute_force_local(Integer(a), c, p, k);
}

}  // namespace oracle
