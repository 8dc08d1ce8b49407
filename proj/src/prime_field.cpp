#include "chatelet/prime_field.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace chatelet {

namespace {

void check_same(const Fp& a, const Fp& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("mixed coefficient domains (different primes)");
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

FpPoly x_poly(std::uint64_t p) { return FpPoly(std::vector<Fp>{Fp(0, p), Fp(1, p)}); }
FpPoly one_poly(std::uint64_t p) { return FpPoly::constant(Fp(1, p)); }

}  // namespace

Fp::Fp(std::int64_t value, std::uint64_t p) : p_(p) {
  if (p < 2) throw std::invalid_argument("prime field modulus must be >= 2");
  const std::int64_t m = static_cast<std::int64_t>(p);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  v_ = static_cast<std::uint64_t>(r);
}

Fp Fp::from_integer(const Integer& v, std::uint64_t p) {
  const Integer r = mod_floor(v, Integer(static_cast<unsigned long>(p)));
  Fp out;
  out.p_ = p;
  out.v_ = r.get_ui();
  return out;
}

Fp Fp::from_rational(const Rational& v, std::uint64_t p) {
  const Fp num = from_integer(v.numerator(), p);
  const Fp den = from_integer(v.denominator(), p);
  if (den.value() == 0) throw std::domain_error("denominator divisible by p");
  return num * inverse(den);
}

Fp operator+(const Fp& a, const Fp& b) {
  check_same(a, b);
  Fp r = a;
  const std::uint64_t s = a.v_ + b.v_;
  r.v_ = (s >= a.p_ || s < a.v_) ? s - a.p_ : s;
  return r;
}

Fp operator-(const Fp& a, const Fp& b) {
  check_same(a, b);
  Fp r = a;
  r.v_ = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + (a.p_ - b.v_);
  return r;
}

Fp operator*(const Fp& a, const Fp& b) {
  check_same(a, b);
  Fp r = a;
  r.v_ = mulmod(a.v_, b.v_, a.p_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value(); }

Fp pow(const Fp& x, const Integer& e) {
  Fp result(1, x.modulus());
  Fp base = x;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * base;
  }
  return result;
}

Fp inverse(const Fp& x) {
  if (x.value() == 0) throw std::domain_error("inverse of zero in F_p");
  // p is prime: x^(p-2).
  return pow(x, Integer(static_cast<unsigned long>(x.modulus() - 2)));
}

Fp mul_int(const Fp& x, long n) { return x * Fp(n, x.modulus()); }

FpPoly reduce_mod_p(const Polynomial<Rational>& f, std::uint64_t p) {
  return f.map([p](const Rational& c) { return Fp::from_rational(c, p); });
}

Polynomial<Rational> lift(const FpPoly& f) {
  return f.map([](const Fp& c) { return Rational(Integer(static_cast<unsigned long>(c.value()))); });
}

FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m) {
  const std::uint64_t p = m.leading().modulus();
  FpPoly result = one_poly(p) % m;
  FpPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

bool canonical_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  for (std::size_t i = ca.size(); i-- > 0;) {
    if (ca[i].value() != cb[i].value()) return ca[i].value() < cb[i].value();
  }
  return false;
}

namespace {

FpPoly pth_root(const FpPoly& f, std::uint64_t p) {
  // f = sum a_{ip} x^{ip}; over F_p the coefficient p-th root is the identity.
  std::vector<Fp> v;
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i < c.size(); i += p) v.push_back(c[i]);
  return FpPoly(std::move(v));
}

void squarefree_decomposition(const FpPoly& f, int scale, std::vector<FpFactor>& out) {
  const std::uint64_t p = f.leading().modulus();
  if (f.degree() <= 0) return;
  FpPoly c = poly_gcd(f, f.derivative());
  FpPoly w = f.monic() / c;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = poly_gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * scale});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_decomposition(pth_root(c.monic(), p), scale * static_cast<int>(p), out);
}

std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) {
  const std::uint64_t p = f.leading().modulus();
  std::vector<std::pair<FpPoly, int>> out;
  const FpPoly x = x_poly(p);
  FpPoly h = x % f;
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = powmod(h, Integer(static_cast<unsigned long>(p)), f);
    FpPoly g = poly_gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t p = f.leading().modulus();
  Integer q = 1;
  for (int i = 0; i < d; ++i) q *= static_cast<unsigned long>(p);
  for (;;) {
    std::vector<Fp> coeffs;
    for (int i = 0; i < f.degree(); ++i) coeffs.emplace_back(static_cast<std::int64_t>(rng() % p), p);
    FpPoly a(std::move(coeffs));
    if (a.degree() < 1) continue;
    FpPoly b;
    if (p == 2) {
      // Trace map from F_{2^d}: a + a^2 + ... + a^{2^{d-1}}.
      FpPoly term = a % f;
      b = term;
      for (int i = 1; i < d; ++i) {
        term = (term * term) % f;
        b = b + term;
      }
    } else {
      b = powmod(a, (q - 1) / 2, f) - one_poly(p);
    }
    FpPoly g = poly_gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpFactor> factor_mod_p(const FpPoly& f) {
  if (f.is_zero()) throw std::domain_error("factorization of the zero polynomial");
  std::vector<FpFactor> sqf;
  squarefree_decomposition(f.monic(), 1, sqf);
  std::vector<FpFactor> out;
  std::mt19937_64 rng(0x5eed5eedULL);
  for (const auto& part : sqf) {
    for (const auto& [block, d] : distinct_degree(part.factor)) {
      std::vector<FpPoly> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (auto& g : irreducibles) out.push_back({std::move(g), part.multiplicity});
    }
  }
  // Merge duplicates (possible across squarefree layers only by construction error).
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
    return canonical_less(a.factor, b.factor);
  });
  return out;
}

bool is_irreducible_mod_p(const FpPoly& f) {
  if (f.degree() < 1) return false;
  const auto fs = factor_mod_p(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

int distinct_root_count(const FpPoly& f) {
  if (f.is_zero()) throw std::domain_error("root count of the zero polynomial");
  const std::uint64_t p = f.leading().modulus();
  if (f.degree() < 1) return 0;
  const FpPoly x = x_poly(p);
  const FpPoly xp = powmod(x, Integer(static_cast<unsigned long>(p)), f.monic());
  return poly_gcd(xp - x, f).degree();
}

FiniteField::FiniteField(std::uint64_t p, FpPoly g) : p_(p), g_(g.monic()) {
  if (g_.degree() < 1) throw std::invalid_argument("finite field modulus must have positive degree");
}

Integer FiniteField::order() const {
  Integer q = 1;
  for (int i = 0; i < g_.degree(); ++i) q *= static_cast<unsigned long>(p_);
  return q;
}

FiniteFieldElem::FiniteFieldElem(FpPoly modulus, FpPoly rep) : g_(std::move(modulus)) {
  if (g_.degree() < 1) throw std::invalid_argument("finite field modulus must have positive degree");
  rep_ = rep % g_;
}

FiniteFieldElem operator*(const FiniteFieldElem& a, const FiniteFieldElem& b) {
  if (!(a.g_ == b.g_)) throw std::invalid_argument("mixed coefficient domains (different residue fields)");
  return FiniteFieldElem(a.g_, a.rep_ * b.rep_);
}

FiniteFieldElem FiniteFieldElem::pow(const Integer& e) const {
  return FiniteFieldElem(g_, powmod(rep_, e, g_));
}

FiniteFieldElem FiniteFieldElem::inverse() const {
  if (rep_.is_zero()) throw std::domain_error("inverse of zero in a finite field");
  return FiniteFieldElem(g_, poly_inverse_mod(rep_, g_));
}

int FiniteFieldElem::quadratic_character() const {
  if (rep_.is_zero()) return 0;
  const std::uint64_t p = characteristic();
  if (p == 2) return 1;
  Integer q = 1;
  for (int i = 0; i < g_.degree(); ++i) q *= static_cast<unsigned long>(p);
  const FpPoly r = powmod(rep_, (q - 1) / 2, g_);
  if (r.degree() == 0 && r.leading().value() == 1) return 1;
  if (r.degree() == 0 && r.leading().value() == p - 1) return -1;
  throw std::logic_error("quadratic character is not +-1; modulus not irreducible?");
}

std::string FiniteFieldElem::str() const {
  std::ostringstream os;
  os << coefficient_list(rep_, [](const Fp& c) { return std::to_string(c.value()); });
  return os.str();
}

std::vector<FpPoly> enumerate_residues(std::uint64_t p, int degree) {
  std::vector<FpPoly> out;
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(degree), 0);
  for (;;) {
    std::vector<Fp> c;
    for (auto d : digits) c.emplace_back(static_cast<std::int64_t>(d), p);
    out.emplace_back(std::move(c));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

}  // namespace chatelet
