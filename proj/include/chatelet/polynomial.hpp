#pragma once

// Dense univariate polynomials over an exact field.
//
// The coefficient type T must provide, via ADL:
//   bool is_zero(const T&);  T zero_like(const T&);  T one_like(const T&);
//   T inverse(const T&);     T mul_int(const T&, long);
// together with the usual + - * operators. Elements that carry their own
// domain (prime fields, number fields) throw std::invalid_argument when
// combined across domains.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chatelet {

namespace detail {
// Found by ADL at instantiation; the member Polynomial::is_zero would
// otherwise hide the coefficient-level function.
template <class T>
bool coeff_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
  static Polynomial monomial(const T& c, int deg) {
    if (detail::coeff_is_zero(c)) return {};
    std::vector<T> v(static_cast<std::size_t>(deg) + 1, zero_like(c));
    v.back() = c;
    return Polynomial(std::move(v));
  }
  /// x as a polynomial, with coefficients in the domain of `sample`.
  static Polynomial x(const T& sample) { return monomial(one_like(sample), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coefficients() const { return c_; }
  const T& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  /// i-th coefficient; `zero` is returned past the degree.
  T coeff(int i, const T& zero) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : zero;
  }
  const T& operator[](std::size_t i) const { return c_.at(i); }

  template <class U>
  U evaluate(const U& x) const {
    U acc = zero_like(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial operator-() const {
    std::vector<T> v;
    v.reserve(c_.size());
    for (const T& a : c_) v.push_back(zero_like(a) - a);
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    if (f.c_.size() < g.c_.size()) return g + f;
    std::vector<T> v = f.c_;
    for (std::size_t i = 0; i < g.c_.size(); ++i) v[i] = v[i] + g.c_[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return f + (-g); }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero() || g.is_zero()) return {};
    std::vector<T> v(f.c_.size() + g.c_.size() - 1, zero_like(f.c_[0]));
    for (std::size_t i = 0; i < f.c_.size(); ++i) {
      if (detail::coeff_is_zero(f.c_[i])) continue;
      for (std::size_t j = 0; j < g.c_.size(); ++j) v[i + j] = v[i + j] + f.c_[i] * g.c_[j];
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const T& s, const Polynomial& f) {
    std::vector<T> v;
    v.reserve(f.c_.size());
    for (const T& a : f.c_) v.push_back(s * a);
    return Polynomial(std::move(v));
  }
  Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
  Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

  friend bool operator==(const Polynomial& f, const Polynomial& g) { return f.c_ == g.c_; }

  /// Quotient and remainder; g must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& g) const {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < g.degree()) return {Polynomial{}, *this};
    const T inv_lead = inverse(g.leading());
    std::vector<T> r = c_;
    std::vector<T> q(c_.size() - g.c_.size() + 1, zero_like(inv_lead));
    const std::size_t gd = g.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      const T coef = r[k + gd] * inv_lead;
      q[k] = coef;
      if (detail::coeff_is_zero(coef)) continue;
      for (std::size_t j = 0; j <= gd; ++j) r[k + j] = r[k + j] - coef * g.c_[j];
    }
    r.resize(gd);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }
  friend Polynomial operator/(const Polynomial& f, const Polynomial& g) { return f.divmod(g).first; }
  friend Polynomial operator%(const Polynomial& f, const Polynomial& g) { return f.divmod(g).second; }

  bool divides(const Polynomial& f) const { return (f % *this).is_zero(); }

  Polynomial monic() const {
    if (is_zero()) return {};
    const T inv = inverse(leading());
    return inv * *this;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> v;
    v.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(mul_int(c_[i], static_cast<long>(i)));
    return Polynomial(std::move(v));
  }

  /// f(g(x)).
  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
    return acc;
  }

  /// f(x + s).
  Polynomial shift(const T& s) const {
    if (is_zero()) return {};
    return compose(Polynomial(std::vector<T>{s, one_like(s)}));
  }

  Polynomial pow(unsigned e) const {
    if (is_zero()) return e == 0 ? *this : Polynomial{};
    Polynomial result = constant(one_like(c_[0]));
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  /// Applies `f` to every coefficient, building a polynomial over another domain.
  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> v;
    v.reserve(c_.size());
    for (const T& a : c_) v.push_back(f(a));
    return Polynomial<U>(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <class T>
Polynomial<T> poly_gcd(Polynomial<T> f, Polynomial<T> g) {
  while (!g.is_zero()) {
    Polynomial<T> r = f % g;
    f = std::move(g);
    g = r.monic();
  }
  return f.monic();
}

template <class T>
struct ExtendedGcd {
  Polynomial<T> gcd;  // monic
  Polynomial<T> s;    // s*f + t*g = gcd
  Polynomial<T> t;
};

template <class T>
ExtendedGcd<T> poly_xgcd(const Polynomial<T>& f, const Polynomial<T>& g) {
  if (f.is_zero() && g.is_zero()) return {{}, {}, {}};
  const T sample = f.is_zero() ? g.leading() : f.leading();
  Polynomial<T> r0 = f, r1 = g;
  Polynomial<T> s0 = Polynomial<T>::constant(one_like(sample)), s1;
  Polynomial<T> t0, t1 = Polynomial<T>::constant(one_like(sample));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial<T> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial<T> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const T inv = inverse(r0.leading());
  return {inv * r0, inv * s0, inv * t0};
}

/// Inverse of f modulo m; throws when gcd(f, m) != 1.
template <class T>
Polynomial<T> poly_inverse_mod(const Polynomial<T>& f, const Polynomial<T>& m) {
  auto eg = poly_xgcd(f % m, m);
  if (eg.gcd.degree() != 0) throw std::domain_error("polynomial not invertible modulo m");
  return eg.s % m;
}

/// True iff gcd(f, f') = 1. Nonzero constants are separable; zero throws.
template <class T>
bool is_separable(const Polynomial<T>& f) {
  if (f.is_zero()) throw std::domain_error("separability of the zero polynomial");
  if (f.degree() == 0) return true;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

/// Squarefree part f / gcd(f, f') (characteristic zero), made monic.
template <class T>
Polynomial<T> radical(const Polynomial<T>& f) {
  if (f.is_zero()) throw std::domain_error("radical of the zero polynomial");
  if (f.degree() == 0) return Polynomial<T>::constant(one_like(f.leading()));
  return (f / poly_gcd(f, f.derivative())).monic();
}

/// Resultant over a field by the Euclidean recurrence
///   res(f, g) = (-1)^{deg f deg g} lc(g)^{deg f - deg r} res(g, r),  r = f mod g.
template <class T>
T resultant(Polynomial<T> f, Polynomial<T> g) {
  if (f.is_zero() || g.is_zero()) {
    if (!f.is_zero()) return zero_like(f.leading());
    if (!g.is_zero()) return zero_like(g.leading());
    throw std::domain_error("resultant of two zero polynomials");
  }
  T acc = one_like(f.leading());
  for (;;) {
    const int m = f.degree();
    const int n = g.degree();
    if (n == 0) {
      T p = one_like(acc);
      for (int i = 0; i < m; ++i) p = p * g.leading();
      return acc * p;
    }
    Polynomial<T> r = f % g;
    if (r.is_zero()) return zero_like(acc);
    const int k = r.degree();
    if ((static_cast<long>(m) * n) % 2 == 1) acc = zero_like(acc) - acc;
    for (int i = 0; i < m - k; ++i) acc = acc * g.leading();
    f = std::move(g);
    g = std::move(r);
  }
}

/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f); deg f >= 1.
template <class T>
T discriminant(const Polynomial<T>& f) {
  if (f.degree() < 1) throw std::domain_error("discriminant of a constant polynomial");
  const int n = f.degree();
  if (n == 1) return one_like(f.leading());
  T r = resultant(f, f.derivative()) * inverse(f.leading());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) r = zero_like(r) - r;
  return r;
}

/// x^d f(1/x); requires d >= deg f.
template <class T>
Polynomial<T> reciprocal(const Polynomial<T>& f, int d) {
  if (d < f.degree()) throw std::invalid_argument("reciprocal degree below polynomial degree");
  if (f.is_zero()) return {};
  const auto& c = f.coefficients();
  std::vector<T> v(static_cast<std::size_t>(d) + 1, zero_like(c[0]));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<std::size_t>(d) - i] = c[i];
  return Polynomial<T>(std::move(v));
}

template <class T>
struct CrtPair {
  Polynomial<T> modulus;
  Polynomial<T> residue;
};

/// Unique g with deg g < sum of modulus degrees and g = residue_i mod modulus_i.
/// Moduli must be monic and pairwise coprime; residues of lower degree.
template <class T>
Polynomial<T> crt_interpolate(const std::vector<CrtPair<T>>& pairs) {
  for (const auto& pr : pairs) {
    if (pr.modulus.degree() < 1) throw std::invalid_argument("CRT modulus must have positive degree");
    if (!detail::coeff_is_zero(pr.modulus.leading() - one_like(pr.modulus.leading()))) {
      throw std::invalid_argument("CRT modulus must be monic");
    }
    if (pr.residue.degree() >= pr.modulus.degree()) {
      throw std::invalid_argument("CRT residue degree not below its modulus degree");
    }
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (poly_gcd(pairs[i].modulus, pairs[j].modulus).degree() != 0) {
        throw std::invalid_argument("CRT moduli are not pairwise coprime");
      }
    }
  }
  Polynomial<T> g;
  Polynomial<T> big_m;
  bool first = true;
  for (const auto& pr : pairs) {
    if (first) {
      g = pr.residue;
      big_m = pr.modulus;
      first = false;
      continue;
    }
    // g' = g + M * ((r - g) * M^{-1} mod m)
    const Polynomial<T> inv = poly_inverse_mod(big_m % pr.modulus, pr.modulus);
    const Polynomial<T> k = ((pr.residue - g) * inv) % pr.modulus;
    g = g + big_m * k;
    big_m = big_m * pr.modulus;
  }
  for (const auto& pr : pairs) {
    if (!((g - pr.residue) % pr.modulus).is_zero()) {
      throw std::logic_error("CRT output failed its residue re-check");
    }
  }
  return g;
}

template <class T>
struct Perturbation {
  long n = 0;
  Polynomial<T> result;
};

/// Smallest n >= 1 with f0 + n f separable (f separable, non-constant).
/// Termination is guaranteed when deg f >= deg f0; otherwise `cap` bounds the scan.
template <class T>
Perturbation<T> perturb_to_separable(const Polynomial<T>& f0, const Polynomial<T>& f, long cap = 100000) {
  if (f.is_zero() || !is_separable(f)) throw std::invalid_argument("perturbation direction must be separable");
  if (f.degree() < 1) throw std::invalid_argument("perturbation direction must be non-constant");
  for (long n = 1; n <= cap; ++n) {
    Polynomial<T> cand = f0 + mul_int(one_like(f.leading()), n) * f;
    if (!cand.is_zero() && is_separable(cand)) return {n, std::move(cand)};
  }
  throw std::runtime_error("perturb_to_separable: scan cap exceeded");
}

/// Coefficient list rendering, lowest degree first, e.g. "[1, 0, 1]".
template <class T, class Fmt>
std::string coefficient_list(const Polynomial<T>& f, Fmt&& fmt) {
  std::string s = "[";
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += fmt(c[i]);
  }
  return s + "]";
}

}  // namespace chatelet
