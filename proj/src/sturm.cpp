#include "chatelet/sturm.hpp"

#include <stdexcept>

namespace chatelet {

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int variations_at(const std::vector<QPoly>& seq, const Rational& x) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(p.evaluate(x).sign());
  return sign_changes(s);
}

int variations_at_infinity(const std::vector<QPoly>& seq, bool positive) {
  std::vector<int> s;
  for (const auto& p : seq) {
    int sg = p.leading().sign();
    if (!positive && p.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return sign_changes(s);
}

Rational cauchy_bound(const QPoly& f) {
  Rational m(0);
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    Rational r = abs(c[i] / f.leading());
    if (r > m) m = r;
  }
  return m + Rational(1);
}

}  // namespace

std::vector<QPoly> sturm_sequence(const QPoly& f) {
  if (f.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
  std::vector<QPoly> seq{f};
  QPoly next = f.derivative();
  while (!next.is_zero()) {
    seq.push_back(next);
    QPoly r = seq[seq.size() - 2] % seq.back();
    next = -r;
  }
  return seq;
}

int real_root_count(const QPoly& f) {
  if (f.degree() < 1) return 0;
  const auto seq = sturm_sequence(f);
  return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

int real_root_count_in(const QPoly& f, const Rational& lo, const Rational& hi) {
  if (f.degree() < 1) return 0;
  if (!(lo < hi)) return 0;
  // For squarefree f, V(lo) - V(hi) counts the roots in (lo, hi], also when
  // lo or hi is itself a root.
  const auto seq = sturm_sequence(radical(f));
  return variations_at(seq, lo) - variations_at(seq, hi);
}

std::pair<Rational, Rational> isolate_root(const QPoly& f, int k) {
  const QPoly sq = radical(f);
  const int total = real_root_count(sq);
  if (k < 0 || k >= total) throw std::out_of_range("real root index out of range");
  const Rational b = cauchy_bound(sq);
  Rational lo = -b;
  Rational hi = b;
  int below = 0;  // roots of sq that are <= lo
  for (;;) {
    const int inside = real_root_count_in(sq, lo, hi);
    if (inside == 1 && below == k) return {lo, hi};
    const Rational mid = (lo + hi) / Rational(2);
    if (sq.evaluate(mid).is_zero()) {
      const int left = real_root_count_in(sq, lo, mid);  // includes mid
      if (below + left - 1 == k) return {mid, mid};
      if (below + left - 1 > k) {
        hi = mid;
      } else {
        below += left;
        lo = mid;
      }
      continue;
    }
    const int left = real_root_count_in(sq, lo, mid);
    if (below + left > k) {
      hi = mid;
    } else {
      below += left;
      lo = mid;
    }
  }
}

int sign_at_root(const QPoly& g, const QPoly& f, int k) {
  if (g.is_zero()) return 0;
  auto [lo, hi] = isolate_root(f, k);
  if (lo == hi) return g.evaluate(lo).sign();
  const QPoly sq = radical(f);
  const QPoly common = poly_gcd(sq, g);
  if (common.degree() >= 1 && real_root_count_in(common, lo, hi) > 0) return 0;
  if (g.degree() < 1) return g.leading().sign();
  const QPoly gs = radical(g);
  while (real_root_count_in(gs, lo, hi) > 0) {
    const Rational mid = (lo + hi) / Rational(2);
    if (sq.evaluate(mid).is_zero()) return g.evaluate(mid).sign();
    if (real_root_count_in(sq, lo, mid) == 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return g.evaluate(hi).sign();
}

}  // namespace chatelet
