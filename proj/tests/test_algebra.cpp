#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chatelet/integer_factor.hpp"
#include "chatelet/polynomial.hpp"
#include "chatelet/prime_field.hpp"
#include "chatelet/sturm.hpp"
#include "oracles.hpp"

using namespace chatelet;
using oracle::poly;

TEST_CASE("rational canonical form and parsing") {
  const Rational r(Integer(6), Integer(-4));
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational::parse("10/4") == Rational(Integer(5), Integer(2)));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1/-2"));
  CHECK_THROWS(Rational(1) / Rational(0));
  CHECK(valuation(Rational(Integer(50), Integer(3)), Integer(5)) == 2);
  CHECK(valuation(Rational(Integer(7), Integer(25)), Integer(5)) == -2);
}

TEST_CASE("gcd") {
  CHECK(poly_gcd(poly({-1, 0, 1}), poly({-1, 1})) == poly({-1, 1}));
  CHECK(poly_gcd(poly({2, 4}), QPoly{}) == poly({2, 4}).monic());
  CHECK(poly_gcd(QPoly{}, QPoly{}).is_zero());
  // Euclid by hand: x^4 + 1 = (x/4) * 4x^3 + 1, so the gcd is 1.
  CHECK(poly_gcd(poly({1, 0, 0, 0, 1}), poly({0, 0, 0, 4})) == poly({1}));
}

TEST_CASE("gcd divides both and is divisible by common factors") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const QPoly c = oracle::random_poly(rng, 2, 5);
    const QPoly f = c * oracle::random_poly(rng, 3, 5);
    const QPoly g = c * oracle::random_poly(rng, 2, 5);
    const QPoly d = poly_gcd(f, g);
    CHECK((f % d).is_zero());
    CHECK((g % d).is_zero());
    CHECK((d % c.monic()).is_zero());
  }
}

TEST_CASE("gcd across coefficient domains throws") {
  const FpPoly a(std::vector<Fp>{Fp(1, 5), Fp(1, 5)});
  const FpPoly b(std::vector<Fp>{Fp(1, 7), Fp(1, 7)});
  CHECK_THROWS_AS(poly_gcd(a, b), std::invalid_argument);
}

TEST_CASE("separability") {
  CHECK_FALSE(is_separable(poly({1, -2, 1})));
  CHECK(is_separable(poly({1, 0, 1})));
  CHECK(is_separable(poly({1, 0, 0, 0, 1})));
  CHECK(is_separable(poly({5})));
  CHECK_THROWS(is_separable(QPoly{}));
}

TEST_CASE("discriminant") {
  // x^2 + b x + c -> b^2 - 4c
  CHECK(discriminant(poly({7, 3, 1})) == Rational(9 - 28));
  CHECK(discriminant(poly({1, 0, 0, 0, 1})) == Rational(256));
  CHECK_THROWS(discriminant(poly({3})));
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const QPoly f = oracle::random_poly(rng, 1 + static_cast<int>(rng() % 5), 6);
    const QPoly g = oracle::random_poly(rng, 1 + static_cast<int>(rng() % 5), 6);
    CHECK(resultant(f, g) == oracle::sylvester_resultant(f, g));
  }
}

TEST_CASE("discriminant vanishes exactly for inseparable polynomials") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    QPoly f = oracle::random_poly(rng, 1 + static_cast<int>(rng() % 6), 3);
    if (i % 3 == 0) f = f * oracle::random_poly(rng, 1, 2).pow(2);
    if (f.degree() < 1) continue;
    CHECK((discriminant(f).is_zero()) == !is_separable(f));
  }
}

TEST_CASE("biquadratic discriminant identity") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> dist(-30, 30);
  for (int i = 0; i < 5; ++i) {
    long a = 0, e = 0;
    while (a == 0) a = dist(rng);
    while (e == 0) e = dist(rng);
    const long c = dist(rng);
    const QPoly f = poly({e, 0, c, 0, a});
    const Rational expect = Rational(16 * a * e) * pow(Rational(c * c - 4 * a * e), 2);
    CHECK(discriminant(f) == expect);
    // Oracle: Sylvester determinant, normalized by hand.
    CHECK(oracle::sylvester_resultant(f, f.derivative()) / Rational(a) == expect);
  }
}

TEST_CASE("CRT interpolation") {
  CHECK(crt_interpolate<Rational>({{poly({0, 1}), poly({1})}}) == poly({1}));
  const QPoly g = crt_interpolate<Rational>({{poly({0, 1}), poly({1})}, {poly({1, 0, 1}), poly({0, 1})}});
  CHECK(g == poly({1, 1, 1}));
  CHECK(g % poly({1, 0, 1}) == poly({0, 1}));
  CHECK_THROWS(crt_interpolate<Rational>({{poly({0, 1}), poly({0})}, {poly({0, 1}), poly({1})}}));
  CHECK_THROWS(crt_interpolate<Rational>({{poly({0, 1}), poly({0, 1})}}));
  CHECK_THROWS(crt_interpolate<Rational>({{poly({0, 2}), poly({1})}}));
}

TEST_CASE("reciprocal") {
  CHECK(reciprocal(poly({3, 2, 1}), 2) == poly({1, 2, 3}));
  CHECK(reciprocal(poly({0, 0, 1}), 4) == poly({0, 0, 1}));
  CHECK_THROWS(reciprocal(poly({1, 1, 1}), 1));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    QPoly f = oracle::random_poly(rng, 5, 9);
    if (f.coeff(0, Rational(0)).is_zero()) f = f + poly({1});
    CHECK(reciprocal(reciprocal(f, 5), 5) == f);
  }
}

TEST_CASE("Sturm root counting and signs") {
  CHECK(real_root_count(poly({-2, 0, 1})) == 2);
  CHECK(real_root_count(poly({1, 0, 1})) == 0);
  CHECK(sign_at_root(poly({0, 1}), poly({-2, 0, 1}), 1) == 1);
  CHECK(sign_at_root(poly({0, 1}), poly({-2, 0, 1}), 0) == -1);
  // (t-1)(t-2)(t+3): sign of t-2 at the roots -3, 1, 2
  const QPoly f = poly({-1, 1}) * poly({-2, 1}) * poly({3, 1});
  CHECK(real_root_count(f) == 3);
  CHECK(sign_at_root(poly({-2, 1}), f, 0) == -1);
  CHECK(sign_at_root(poly({-2, 1}), f, 1) == -1);
  CHECK(sign_at_root(poly({-2, 1}), f, 2) == 0);
  // t^2 - 2 at the roots of t^4 - 5t^2 + 6 = (t^2-2)(t^2-3)
  const QPoly h = poly({6, 0, -5, 0, 1});
  CHECK(sign_at_root(poly({-2, 0, 1}), h, 0) == 1);
  CHECK(sign_at_root(poly({-2, 0, 1}), h, 1) == 0);
  CHECK(sign_at_root(poly({-5, 0, 2}), h, 2) == -1);
  CHECK(real_root_count_in(poly({-2, 1}), Rational(0), Rational(2)) == 1);
  CHECK(real_root_count_in(poly({-2, 1}), Rational(2), Rational(3)) == 0);
}

TEST_CASE("perturb_to_separable") {
  const auto r0 = perturb_to_separable(QPoly{}, poly({0, 1, 1}));
  CHECK(r0.n == 1);
  const auto r1 = perturb_to_separable(poly({1, -2, 1}), poly({0, 1}));
  CHECK(r1.n == 1);
  CHECK(r1.result == poly({1, -1, 1}));
  // f0 = -f + (t-1)^2 makes n = 1 inseparable.
  const QPoly f = poly({0, 0, 1}) + poly({3});
  const QPoly f0 = -f + poly({1, -2, 1});
  const auto r2 = perturb_to_separable(f0, f);
  CHECK(r2.n >= 2);
  CHECK(is_separable(r2.result));
  CHECK(!discriminant(r2.result).is_zero());
  CHECK_THROWS(perturb_to_separable(QPoly{}, poly({1, -2, 1})));
}

TEST_CASE("finite fields") {
  const auto fs = factor_mod_p(reduce_mod_p(poly({1, 0, 1}), 5));
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor == reduce_mod_p(poly({2, 1}), 5));
  CHECK(fs[1].factor == reduce_mod_p(poly({-2, 1}), 5));
  CHECK(is_irreducible_mod_p(reduce_mod_p(poly({1, 0, 1}), 3)));
  const auto f2 = factor_mod_p(reduce_mod_p(poly({1, 0, 1}), 2));
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].multiplicity == 2);
  CHECK(distinct_root_count(reduce_mod_p(poly({-3, 0, 1}), 11)) == 2);
  // Factorization reassembles.
  std::mt19937_64 rng(9);
  for (std::uint64_t p : {2ULL, 3ULL, 7ULL, 31ULL}) {
    for (int i = 0; i < 10; ++i) {
      const FpPoly f = reduce_mod_p(oracle::random_poly(rng, 8, 40), p).monic();
      if (f.degree() < 1) continue;
      FpPoly prod = FpPoly::constant(Fp(1, p));
      for (const auto& fa : factor_mod_p(f)) {
        CHECK(is_irreducible_mod_p(fa.factor));
        prod *= fa.factor.pow(static_cast<unsigned>(fa.multiplicity));
      }
      CHECK(prod == f);
    }
  }
  // Quadratic character in F_9 = F_3[x]/(x^2+1): x has order 4, so x is a square.
  const FpPoly g = reduce_mod_p(poly({1, 0, 1}), 3);
  CHECK(FiniteFieldElem(g, reduce_mod_p(poly({0, 1}), 3)).quadratic_character() == 1);
  CHECK(FiniteFieldElem(g, reduce_mod_p(poly({1, 1}), 3)).quadratic_character() == -1);
}

TEST_CASE("integer factorization") {
  const auto f = factor_integer(Integer("600851475143"));
  REQUIRE(f.size() == 4);
  CHECK(f[3].prime == 6857);
  const Integer big = Integer("1000000007") * Integer("998244353");
  const auto g = factor_integer(big * 12);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == PrimePower{2, 2});
  CHECK(g[2].prime == Integer("998244353"));
}
