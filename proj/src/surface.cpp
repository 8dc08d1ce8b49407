#include "chatelet/surface.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "chatelet/integer_factor.hpp"

namespace chatelet {

namespace {

NfElement nf(const FieldPtr& L, const Rational& r) { return NfElement(L, r); }

int vw(const NfElement& x, const Place& w) { return valuation(x, w); }

// Odd places: 1 + (something of valuation >= 1) is a square. Dyadic:
// 1 + (valuation >= 2e + 1) is a square.
int square_radius(const Place& w) { return w.is_dyadic() ? 2 * w.e() + 1 : 1; }

Integer ipow(const Integer& b, int e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Integer rep_denominator(const NfElement& x) {
  Integer d = 1;
  for (const auto& c : x.rep().coefficients()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.denominator().get_mpz_t());
  return d;
}

// F scaled by an even power of p so that all coefficients are w-integral.
NfPoly integral_model(const NfPoly& F, const Place& w) {
  int lo = 0;
  for (const auto& c : F.coefficients()) {
    if (!c.is_zero()) lo = std::min(lo, vw(c, w));
  }
  if (lo == 0) return F;
  const int m = (-lo + 2 * w.e() - 1) / (2 * w.e());
  const NfElement s = nf(F.leading().field(), Rational(ipow(w.p(), 2 * m)));
  return NfPoly::constant(s) * F;
}

QPoly rational_poly(const NfPoly& F) {
  return F.map([](const NfElement& c) { return c.to_rational(); });
}

std::string chart_name(bool at_infinity) { return at_infinity ? "x'" : "x"; }

// min_{j >= 1} v(c_j) + j n over the Taylor expansion G(t) = F(center + t).
int taylor_bound(const NfPoly& G, int n, const Place& w) {
  int m = kInfiniteValuation;
  const auto& c = G.coefficients();
  for (std::size_t j = 1; j < c.size(); ++j) {
    if (c[j].is_zero()) continue;
    m = std::min(m, vw(c[j], w) + static_cast<int>(j) * n);
  }
  return m;
}

bool ball_is_decided(const NfPoly& F, const NfElement& center, int n, const Place& w, NfElement& value) {
  const NfPoly G = F.shift(center);
  value = G.coeff(0, zero_like(center));
  if (value.is_zero()) return false;
  const int m = taylor_bound(G, n, w);
  return m == kInfiniteValuation || static_cast<long>(m) >= static_cast<long>(vw(value, w)) + square_radius(w);
}

std::vector<NfElement> digit_lifts(const Place& w) {
  std::vector<NfElement> out;
  for (const auto& r : enumerate_residues(w.p64(), w.f())) out.push_back(lift_residue(w, r));
  return out;
}

struct BallSearch {
  const ChateletSurface& S;
  const Place& w;
  LocalSearchOptions opts;
  NfElement pi;
  std::vector<NfElement> digits;
  long balls = 0;

  std::optional<LocalPoint> witness;
  DecisionReason witness_reason = DecisionReason::Witness;
  std::vector<Ball> leaves;
  std::vector<LocalPoint> points;

  BallSearch(const ChateletSurface& s, const Place& place, LocalSearchOptions o)
      : S(s), w(place), opts(o), pi(place.data().pi), digits(digit_lifts(place)) {}

  void found(const LocalPoint& pt, DecisionReason why) {
    if (!witness) {
      witness = pt;
      witness_reason = why;
    }
    points.push_back(pt);
  }

  bool done() const { return witness.has_value() && !opts.exhaustive; }

  // Breadth-first refinement of the ball {v(x) >= start} in one chart.
  void run_chart(bool at_infinity, int start) {
    const NfPoly F = integral_model(at_infinity ? S.P_star() : S.P(), w);
    const NfPoly dF = F.derivative();
    const int R = square_radius(w);
    const int k = (R + 1) / 2;
    const NfElement pi2k = pi.pow(2 * k);
    std::deque<std::pair<NfElement, int>> queue;
    queue.emplace_back(nf(S.field(), Rational(0)), start);
    while (!queue.empty() && !done()) {
      auto [center, n] = queue.front();
      queue.pop_front();
      if (++balls > opts.max_balls) throw std::runtime_error("local search exceeded its ball budget at " + w.label());
      NfElement value;
      if (ball_is_decided(F, center, n, w, value)) {
        const int s = hilbert_symbol(S.a(), value, w);
        leaves.push_back(Ball{at_infinity, center, n, s});
        if (s == 1) {
          found(LocalPoint{at_infinity, center}, DecisionReason::Witness);
          if (opts.exhaustive) points.push_back(LocalPoint{at_infinity, center + pi.pow(n)});
        }
        continue;
      }
      if (value.is_zero()) {
        found(LocalPoint{at_infinity, center}, DecisionReason::Root);
        if (opts.exhaustive) continue;
        return;
      }
      const NfElement d = dF.evaluate(center);
      if (!d.is_zero()) {
        const long vf = vw(value, w);
        const long vd = vw(d, w);
        if (vf >= 2 * vd + 2 * k + R) {
          const NfElement x = center + pi2k * d;
          const NfElement fx = F.evaluate(x);
          if (!fx.is_zero() && hilbert_symbol(S.a(), fx, w) == 1) {
            found(LocalPoint{at_infinity, x}, DecisionReason::Witness);
            continue;
          }
        }
      }
      if (n >= opts.max_depth) throw std::runtime_error("local search exceeded its depth at " + w.label());
      const NfElement step = pi.pow(n);
      for (const auto& r : digits) queue.emplace_back(center + r * step, n + 1);
    }
  }
};

// Real place over Q with a < 0: rational points where P >= 0.
std::vector<LocalPoint> real_candidates(const ChateletSurface& S) {
  const QPoly p = rational_poly(S.P());
  const FieldPtr& L = S.field();
  std::vector<LocalPoint> out;
  const Rational zero(0);
  if (p.evaluate(zero) >= zero) out.push_back(LocalPoint{false, nf(L, zero)});
  if (p.leading() > zero) out.push_back(LocalPoint{true, nf(L, zero)});
  const int n = real_root_count(p);
  for (int k = 0; k < n; ++k) {
    const auto [lo, hi] = isolate_root(p, k);
    for (const auto& x : {lo, hi}) {
      if (p.evaluate(x) >= zero) out.push_back(LocalPoint{false, nf(L, x)});
    }
  }
  return out;
}

LocalDecision decide_archimedean(const ChateletSurface& S, const Place& w) {
  LocalDecision d;
  d.place = w;
  if (!w.is_real() || real_sign(S.a(), w) > 0) {
    d.note = w.is_real() ? "a > 0" : "complex place";
    return d;
  }
  if (!S.field()->is_rationals()) {
    const NfElement E = S.coefficient(4);
    const NfElement A = S.coefficient(0);
    if (E.is_zero()) {
      d.reason = DecisionReason::Root;
      d.witness = LocalPoint{false, E};
    } else if (real_sign(E, w) > 0) {
      d.reason = DecisionReason::Witness;
      d.witness = LocalPoint{false, zero_like(E)};
    } else if (real_sign(A, w) > 0) {
      d.reason = DecisionReason::Witness;
      d.witness = LocalPoint{true, zero_like(A)};
    } else {
      throw UnsupportedLocalQuestion("real place " + w.label() + " of a proper extension with a < 0");
    }
    return d;
  }
  const auto cands = real_candidates(S);
  if (!cands.empty()) {
    d.witness = cands.front();
    d.reason = evaluate_at(S, cands.front()).is_zero() ? DecisionReason::Root : DecisionReason::Witness;
    return d;
  }
  d.verdict = Verdict::Insolvable;
  d.reason = DecisionReason::RealSign;
  d.note = "a < 0, P has no real root and P(0) < 0";
  return d;
}

void require(bool ok, const Place& w, const std::string& what) {
  if (!ok) throw CertificateError("certificate check failed at " + w.label() + ": " + what);
}

void check_point(const ChateletSurface& S, const Place& w, const LocalPoint& pt, DecisionReason why) {
  const NfElement v = evaluate_at(S, pt);
  if (why == DecisionReason::Root) {
    require(v.is_zero(), w, "witness is not a root of P");
    return;
  }
  require(!v.is_zero() && hilbert_symbol(S.a(), v, w) == 1, w, "witness gives symbol -1");
}

void check_case_table(const ChateletSurface& S, const Place& w, const std::vector<Ball>& table) {
  require(w.is_finite(), w, "case table at an archimedean place");
  const Rational q(w.q());
  Rational measure[2] = {Rational(0), Rational(0)};
  for (const auto& b : table) {
    const int chart = b.at_infinity ? 1 : 0;
    const int lowest = b.at_infinity ? 1 : 0;
    require(b.radius >= lowest, w, "ball radius below the chart");
    require(b.center.is_zero() || vw(b.center, w) >= lowest, w, "ball center outside the chart");
    require(b.symbol == -1, w, "ball with symbol +1 in an insolvability table");
    const NfPoly F = b.at_infinity ? S.P_star() : S.P();
    NfElement value;
    require(ball_is_decided(F, b.center, b.radius, w, value), w, "ball on which the symbol is not constant");
    require(hilbert_symbol(S.a(), value, w) == -1, w, "ball symbol is +1");
    measure[chart] = measure[chart] + pow(q, -b.radius);
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      const Ball& x = table[i];
      const Ball& y = table[j];
      if (x.at_infinity != y.at_infinity) continue;
      const NfElement diff = x.center - y.center;
      require(!diff.is_zero() && vw(diff, w) < std::min(x.radius, y.radius), w, "overlapping balls");
    }
  }
  require(measure[0] == Rational(1), w, "x-chart balls do not cover O_w");
  require(measure[1] == pow(q, -1), w, "x'-chart balls do not cover the maximal ideal");
}

std::vector<Integer> odd_primes_of(const std::vector<std::pair<std::string, Rational>>& sources) {
  std::set<Integer> ps;
  for (const auto& [label, value] : sources) {
    if (value.is_zero()) continue;
    for (const auto& p : prime_support(value)) {
      if (p != 2) ps.insert(p);
    }
  }
  return {ps.begin(), ps.end()};
}

std::vector<Place> places_to_decide(const FieldPtr& L, const std::vector<Integer>& primes) {
  std::vector<Place> out = infinite_places(L);
  for (const auto& w : dyadic_places(L)) out.push_back(w);
  for (const auto& p : primes) {
    for (const auto& w : decompose_prime(L, p)) out.push_back(w);
  }
  return out;
}

}  // namespace

// --- surfaces ---------------------------------------------------------------

ChateletSurface::ChateletSurface(NfElement a, NfPoly P) : a_(std::move(a)), P_(std::move(P)) {
  if (a_.is_zero()) throw std::invalid_argument("Chatelet surface with a = 0");
  if (P_.degree() != 4) throw std::invalid_argument("Chatelet surface needs deg P = 4");
  for (const auto& c : P_.coefficients()) {
    if (!c.field()->same_as(*a_.field())) throw std::invalid_argument("mixed coefficient domains (different number fields)");
  }
  if (!is_smooth()) throw std::invalid_argument("P is not separable: the surface is singular");
}

ChateletSurface ChateletSurface::from_coefficients(const NfElement& a, const std::vector<NfElement>& abcde) {
  if (abcde.size() != 5) throw std::invalid_argument("expected five coefficients A, B, C, D, E");
  std::vector<NfElement> c(abcde.rbegin(), abcde.rend());
  return ChateletSurface(a, NfPoly(std::move(c)));
}

NfPoly ChateletSurface::P_star() const { return reciprocal(P_, 4); }

NfElement ChateletSurface::coefficient(int i) const {
  if (i < 0 || i > 4) throw std::out_of_range("coefficient index");
  return P_.coeff(4 - i, zero_like(a_));
}

bool ChateletSurface::is_smooth() const { return is_separable(P_) && is_separable(P_star()); }

std::string ChateletSurface::str() const {
  static const char* names[] = {"x^4", "x^3", "x^2", "x", ""};
  std::ostringstream os;
  os << "y^2 - (" << a_.str() << ") z^2 =";
  bool first = true;
  for (int i = 0; i <= 4; ++i) {
    const NfElement c = coefficient(i);
    if (c.is_zero()) continue;
    os << (first ? " " : " + ") << "(" << c.str() << ")" << names[i];
    first = false;
  }
  return os.str();
}

SplitChatelet::SplitChatelet(NfElement a, NfElement b, NfElement c)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      surface_([&] {
        if (a_.is_zero() || b_.is_zero() || c_.is_zero()) throw std::invalid_argument("split surface needs a, b, c != 0");
        return ChateletSurface(a_, first_factor() * second_factor());
      }()) {}

NfPoly SplitChatelet::first_factor() const {
  const NfElement one = one_like(a_);
  return NfPoly(std::vector<NfElement>{-c_, zero_like(a_), one});
}

NfPoly SplitChatelet::second_factor() const {
  const NfElement one = one_like(a_);
  return NfPoly(std::vector<NfElement>{-(b_ * c_) - one, zero_like(a_), b_});
}

NfElement evaluate_at(const ChateletSurface& S, const LocalPoint& pt) {
  return pt.at_infinity ? S.P_star().evaluate(pt.x) : S.P().evaluate(pt.x);
}

// --- names ------------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Solvable: return "solvable";
    case Verdict::Insolvable: return "insolvable";
    case Verdict::GoodReduction: return "good-reduction";
  }
  return "?";
}

std::string to_string(DecisionReason r) {
  switch (r) {
    case DecisionReason::LocalSquare: return "local-square";
    case DecisionReason::GoodReduction: return "good-reduction";
    case DecisionReason::Witness: return "witness";
    case DecisionReason::Root: return "root";
    case DecisionReason::RealSign: return "real-sign";
    case DecisionReason::CaseTable: return "case-table";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::Solvable, Verdict::Insolvable, Verdict::GoodReduction}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict " + s);
}

DecisionReason reason_from_string(const std::string& s) {
  for (auto r : {DecisionReason::LocalSquare, DecisionReason::GoodReduction, DecisionReason::Witness,
                 DecisionReason::Root, DecisionReason::RealSign, DecisionReason::CaseTable}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown decision reason " + s);
}

std::string to_string(BmReason r) {
  switch (r) {
    case BmReason::LocalSquare: return "local-square";
    case BmReason::GoodPlace: return "good-place";
    case BmReason::Sampled: return "sampled";
  }
  return "?";
}

BmReason bm_reason_from_string(const std::string& s) {
  for (auto r : {BmReason::LocalSquare, BmReason::GoodPlace, BmReason::Sampled}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown invariant reason " + s);
}

// --- local decisions --------------------------------------------------------

bool good_reduction_solvable(const ChateletSurface& S, const Place& w) {
  if (!w.is_odd()) return false;
  if (vw(S.a(), w) != 0) return false;
  for (const auto& c : S.P().coefficients()) {
    if (!c.is_zero() && vw(c, w) < 0) return false;
  }
  return vw(S.coefficient(0), w) == 0;
}

LocalDecision has_local_point(const ChateletSurface& S, const Place& w) {
  if (w.is_archimedean()) return decide_archimedean(S, w);
  LocalDecision d;
  d.place = w;
  if (is_local_square(S.a(), w)) {
    d.note = "a is a square";
    return d;
  }
  if (good_reduction_solvable(S, w)) {
    d.verdict = Verdict::GoodReduction;
    d.reason = DecisionReason::GoodReduction;
    d.witness = LocalPoint{false, nf(S.field(), Rational(Integer(1), w.p()))};
    return d;
  }
  BallSearch search(S, w, LocalSearchOptions{});
  search.run_chart(false, 0);
  if (!search.witness) search.run_chart(true, 1);
  if (search.witness) {
    d.reason = search.witness_reason;
    d.witness = search.witness;
    return d;
  }
  d.verdict = Verdict::Insolvable;
  d.reason = DecisionReason::CaseTable;
  d.table = std::move(search.leaves);
  d.note = std::to_string(d.table.size()) + " balls, all with symbol -1";
  return d;
}

LocalExploration explore_local_points(const ChateletSurface& S, const Place& w, const LocalSearchOptions& opts) {
  if (!w.is_finite()) throw std::invalid_argument("ball search needs a finite place");
  LocalSearchOptions o = opts;
  o.exhaustive = true;
  BallSearch search(S, w, o);
  search.run_chart(false, 0);
  search.run_chart(true, 1);
  return LocalExploration{std::move(search.leaves), std::move(search.points)};
}

void verify_decision(const ChateletSurface& S, const LocalDecision& d) {
  const Place& w = d.place;
  require(w.field()->same_as(*S.field()), w, "place of another field");
  if (d.verdict == Verdict::Insolvable) {
    if (d.reason == DecisionReason::RealSign) {
      require(w.is_real() && S.field()->is_rationals(), w, "sign certificate outside a real place of Q");
      const QPoly p = rational_poly(S.P());
      require(real_sign(S.a(), w) < 0, w, "a is positive");
      require(real_root_count(p) == 0, w, "P has a real root");
      require(p.evaluate(Rational(0)) < Rational(0), w, "P(0) >= 0");
      return;
    }
    require(d.reason == DecisionReason::CaseTable, w, "insolvability without a case table");
    check_case_table(S, w, d.table);
    return;
  }
  switch (d.reason) {
    case DecisionReason::LocalSquare:
      if (w.is_real()) require(real_sign(S.a(), w) > 0, w, "a is not positive");
      if (w.is_finite()) require(is_local_square(S.a(), w), w, "a is not a local square");
      return;
    case DecisionReason::GoodReduction:
      require(good_reduction_solvable(S, w), w, "good reduction hypotheses fail");
      if (d.witness) check_point(S, w, *d.witness, DecisionReason::Witness);
      return;
    case DecisionReason::Witness:
    case DecisionReason::Root:
      require(d.witness.has_value(), w, "missing witness");
      check_point(S, w, *d.witness, d.reason);
      return;
    default: require(false, w, "reason " + to_string(d.reason) + " for a solvable verdict");
  }
}

BadSet solvability_bad_set(const ChateletSurface& S) {
  BadSet bs;
  Integer den = rep_denominator(S.a());
  for (const auto& c : S.P().coefficients()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rep_denominator(c).get_mpz_t());
  bs.sources.emplace_back("norm(a)", norm(S.a()));
  bs.sources.emplace_back("norm(A)", norm(S.coefficient(0)));
  bs.sources.emplace_back("denominators", Rational(den));
  bs.primes = odd_primes_of(bs.sources);
  return bs;
}

SolvabilityReport global_solvability_report(const ChateletSurface& S) {
  SolvabilityReport r;
  r.bad_set = solvability_bad_set(S);
  for (const auto& w : places_to_decide(S.field(), r.bad_set.primes)) {
    r.decisions.push_back(has_local_point(S, w));
    if (!r.decisions.back().solvable()) {
      r.everywhere_solvable = false;
      r.failing.push_back(w);
    }
  }
  return r;
}

// --- Brauer-Manin ------------------------------------------------------------

LocalInvariant brauer_local_invariant(const SplitChatelet& S, const Place& w, const LocalPoint& pt) {
  const NfElement one = one_like(S.a());
  const NfElement x2 = pt.x * pt.x;
  NfElement f1, f2;
  if (pt.at_infinity) {
    f1 = one - S.c() * x2;
    f2 = S.b() - (S.b() * S.c() + one) * x2;
  } else {
    f1 = x2 - S.c();
    f2 = S.b() * x2 - S.b() * S.c() - one;
  }
  const int s1 = f1.is_zero() ? 0 : hilbert_symbol(S.a(), f1, w);
  const int s2 = f2.is_zero() ? 0 : hilbert_symbol(S.a(), f2, w);
  if (s1 == 0 && s2 == 0) throw CertificateError("both representatives vanish at " + w.label());
  if (s1 != 0 && s2 != 0 && s1 != s2) {
    throw CertificateError("representatives disagree at " + w.label() + " (" + chart_name(pt.at_infinity) +
                           " = " + pt.x.str() + ")");
  }
  return local_invariant(s1 != 0 ? s1 : s2);
}

BadSet brauer_bad_set(const SplitChatelet& S) {
  BadSet bs;
  Integer den = rep_denominator(S.a());
  for (const auto* x : {&S.b(), &S.c()}) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rep_denominator(*x).get_mpz_t());
  bs.sources.emplace_back("norm(a)", norm(S.a()));
  bs.sources.emplace_back("denominators", Rational(den));
  bs.primes = odd_primes_of(bs.sources);
  return bs;
}

BmCertificate bm_sum_certificate(const SplitChatelet& S) {
  const auto report = global_solvability_report(S.surface());
  if (!report.everywhere_solvable) {
    throw CertificateError("surface is not everywhere locally solvable (fails at " + report.failing.front().label() + ")");
  }
  BmCertificate cert;
  cert.bad_set = brauer_bad_set(S);
  for (const auto& w : places_to_decide(S.field(), cert.bad_set.primes)) {
    BmPlaceEntry e;
    e.place = w;
    const bool square = w.is_finite() ? is_local_square(S.a(), w) : (!w.is_real() || real_sign(S.a(), w) > 0);
    if (square) {
      e.reason = BmReason::LocalSquare;
      cert.entries.push_back(e);
      continue;
    }
    std::vector<LocalPoint> pts;
    if (w.is_finite()) {
      pts = explore_local_points(S.surface(), w).points;
    } else if (S.field()->is_rationals()) {
      pts = real_candidates(S.surface());
    } else {
      throw UnsupportedLocalQuestion("real place " + w.label() + " of a proper extension with a < 0");
    }
    if (pts.empty()) throw CertificateError("no local points sampled at " + w.label());
    e.invariant = brauer_local_invariant(S, w, pts.front());
    for (const auto& pt : pts) {
      if (!(brauer_local_invariant(S, w, pt) == e.invariant)) {
        throw CertificateError("invariant is not constant at " + w.label());
      }
    }
    e.samples = pts.size();
    e.points.assign(pts.begin(), pts.begin() + static_cast<long>(std::min(pts.size(), kRetainedSamples)));
    cert.total = cert.total + e.invariant;
    cert.entries.push_back(e);
  }
  return cert;
}

namespace {

void check_coverage(const std::vector<Place>& expected, const std::vector<Place>& got, const std::string& what) {
  for (const auto& w : got) {
    if (std::count(got.begin(), got.end(), w) != 1) throw CertificateError(what + ": place " + w.label() + " listed twice");
    if (std::find(expected.begin(), expected.end(), w) == expected.end()) {
      throw CertificateError(what + ": unexpected place " + w.label());
    }
  }
  for (const auto& w : expected) {
    if (std::find(got.begin(), got.end(), w) == got.end()) throw CertificateError(what + ": place " + w.label() + " missing");
  }
}

}  // namespace

void verify_report(const ChateletSurface& S, const SolvabilityReport& r) {
  const BadSet bad = solvability_bad_set(S);
  if (bad.primes != r.bad_set.primes) throw CertificateError("solvability bad set differs from its recomputation");
  std::vector<Place> got;
  for (const auto& d : r.decisions) got.push_back(d.place);
  check_coverage(places_to_decide(S.field(), bad.primes), got, "solvability report");
  std::vector<Place> failing;
  for (const auto& d : r.decisions) {
    try {
      verify_decision(S, d);
    } catch (const CertificateError& e) {
      throw CertificateError("place " + d.place.label() + ": " + e.what());
    }
    if (!d.solvable()) failing.push_back(d.place);
  }
  if (failing != r.failing || r.everywhere_solvable != failing.empty()) {
    throw CertificateError("failing places disagree with the decisions");
  }
}

void verify_bm_certificate(const SplitChatelet& S, const BmCertificate& cert) {
  const BadSet bad = brauer_bad_set(S);
  if (bad.primes != cert.bad_set.primes) throw CertificateError("Brauer bad set differs from its recomputation");
  std::vector<Place> got;
  for (const auto& e : cert.entries) got.push_back(e.place);
  check_coverage(places_to_decide(S.field(), bad.primes), got, "Brauer-Manin certificate");
  LocalInvariant total;
  for (const auto& e : cert.entries) {
    const Place& w = e.place;
    if (e.reason == BmReason::LocalSquare) {
      const bool square = w.is_finite() ? is_local_square(S.a(), w) : (!w.is_real() || real_sign(S.a(), w) > 0);
      if (!square) throw CertificateError("place " + w.label() + ": a is not a local square");
      if (e.invariant.is_half()) throw CertificateError("place " + w.label() + ": nonzero invariant at a local square");
      continue;
    }
    if (e.reason != BmReason::Sampled) throw CertificateError("place " + w.label() + ": unsupported reason " + to_string(e.reason));
    if (e.points.empty()) throw CertificateError("place " + w.label() + ": no retained points");
    for (const auto& pt : e.points) {
      if (!pt.x.field()->same_as(*S.field())) throw CertificateError("place " + w.label() + ": point in the wrong field");
      if (w.is_finite() && valuation(pt.x, w) < 0) throw CertificateError("place " + w.label() + ": point outside its chart");
      const NfElement value = evaluate_at(S.surface(), pt);
      if (!value.is_zero() && hilbert_symbol(S.a(), value, w) != 1) throw CertificateError("place " + w.label() + ": retained point is not a local point");
      if (!(brauer_local_invariant(S, w, pt) == e.invariant)) {
        throw CertificateError("place " + w.label() + ": invariant " + e.invariant.str() + " does not match the points");
      }
    }
    total = total + e.invariant;
  }
  if (!(total == cert.total)) throw CertificateError("invariant sum " + cert.total.str() + " differs from " + total.str());
}

}  // namespace chatelet
