#include "chatelet/hilbert.hpp"

namespace chatelet {

namespace {

// Dyadic symbol over Q: alpha = 2^a u, beta = 2^b w with 2-adic units u, w,
//   (alpha, beta)_2 = (-1)^{eps(u) eps(w) + a omega(w) + b omega(u)}.
int dyadic_symbol_q(const Rational& alpha, const Rational& beta) {
  const Integer two = 2;
  const int a = valuation(alpha, two);
  const int b = valuation(beta, two);
  const Rational u = alpha * pow(Rational(2), -a);
  const Rational w = beta * pow(Rational(2), -b);
  const long u8 = mod_reduce(u, 8).get_si();
  const long w8 = mod_reduce(w, 8).get_si();
  auto eps = [](long x) { return ((x - 1) / 2) % 2; };
  auto omega = [](long x) { return ((x * x - 1) / 8) % 2; };
  const long e = eps(u8) * eps(w8) + a * omega(w8) + b * omega(u8);
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace

int hilbert_symbol(const NfElement& alpha, const NfElement& beta, const Place& w) {
  if (alpha.is_zero() || beta.is_zero()) throw std::domain_error("Hilbert symbol with a zero argument");
  switch (w.kind()) {
    case PlaceKind::Complex: return 1;
    case PlaceKind::Real: return (real_sign(alpha, w) < 0 && real_sign(beta, w) < 0) ? -1 : 1;
    case PlaceKind::Finite: break;
  }
  if (w.is_dyadic()) {
    if (w.field()->is_rationals()) return dyadic_symbol_q(alpha.to_rational(), beta.to_rational());
    if (is_local_square(alpha, w) || is_local_square(beta, w)) return 1;
    throw UnsupportedDyadicSymbol("dyadic Hilbert symbol at " + w.label() +
                                  " over a proper extension with neither argument a local square");
  }
  const int va = valuation(alpha, w);
  const int vb = valuation(beta, w);
  int s = 1;
  const Integer half = (w.q() - 1) / 2;
  if ((static_cast<long>(va) * vb) % 2 != 0 && mpz_odd_p(half.get_mpz_t())) s = -s;
  if (vb % 2 != 0) s *= unit_residue(alpha, w).quadratic_character();
  if (va % 2 != 0) s *= unit_residue(beta, w).quadratic_character();
  return s;
}

bool conic_solvable(const NfElement& alpha, const NfElement& beta, const Place& w) {
  return hilbert_symbol(alpha, beta, w) == 1;
}

NfElement find_unit_beta(const NfElement& alpha, const Place& w) {
  if (!w.is_odd()) throw std::invalid_argument("find_unit_beta needs an odd finite place");
  const int v = valuation(alpha, w);
  if (v == kInfiniteValuation || v % 2 == 0) {
    throw std::invalid_argument("find_unit_beta needs an odd valuation at " + w.label());
  }
  for (const auto& r : enumerate_residues(w.p64(), w.f())) {
    if (r.is_zero()) continue;
    if (FiniteFieldElem(w.local_factor(), r).quadratic_character() == -1) {
      const NfElement beta = lift_residue(w, r);
      if (hilbert_symbol(alpha, beta, w) != -1) throw std::logic_error("find_unit_beta: symbol check failed");
      return beta;
    }
  }
  throw std::logic_error("residue field without non-squares");
}

LocalInvariant LocalInvariant::parse(const std::string& s) {
  if (s == "0") return LocalInvariant();
  if (s == "1/2") return half();
  throw std::invalid_argument("local invariant must be \"0\" or \"1/2\"");
}

LocalInvariant local_invariant(int symbol) {
  if (symbol == 1) return LocalInvariant();
  if (symbol == -1) return LocalInvariant::half();
  throw std::invalid_argument("Hilbert symbol must be +1 or -1");
}

}  // namespace chatelet
