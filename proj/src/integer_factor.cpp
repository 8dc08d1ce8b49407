#include "chatelet/integer_factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace chatelet {

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Pollard-Brent; returns a nontrivial factor of composite n.
Integer rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const Integer& v) { return mod_floor(v * v + c, n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mod_floor(q * abs(Integer(x - y)), n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  const Integer d = rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<PrimePower> factor_integer(const Integer& n_in) {
  if (n_in == 0) throw std::domain_error("factorization of zero");
  Integer n = abs(n_in);
  std::map<Integer, int> out;
  for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
    if (Integer(p) * p > n) break;
  }
  if (n > 1) split(n, out);
  std::vector<PrimePower> v;
  for (const auto& [p, e] : out) v.push_back({p, e});
  return v;
}

std::vector<Integer> prime_support(const Rational& x) {
  if (x.is_zero()) throw std::domain_error("prime support of zero");
  std::vector<Integer> primes;
  for (const auto& pp : factor_integer(x.numerator())) primes.push_back(pp.prime);
  for (const auto& pp : factor_integer(x.denominator())) primes.push_back(pp.prime);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

}  // namespace chatelet
