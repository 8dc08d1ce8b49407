#pragma once

#include <vector>

#include "chatelet/rational.hpp"

namespace chatelet {

struct PrimePower {
  Integer prime;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

bool is_probable_prime(const Integer& n);

/// Prime factorization of |n| (n != 0), ascending primes. Trial division
/// followed by Pollard-Brent rho.
std::vector<PrimePower> factor_integer(const Integer& n);

/// Distinct primes dividing the numerator or denominator of x (x != 0).
std::vector<Integer> prime_support(const Rational& x);

/// Smallest prime strictly greater than n.
Integer next_prime(const Integer& n);

}  // namespace chatelet
