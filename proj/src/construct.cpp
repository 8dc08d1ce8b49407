#include "chatelet/construct.hpp"

#include <set>

#include "chatelet/integer_factor.hpp"

namespace chatelet {

namespace {

NfElement one(const FieldPtr& L) { return NfElement(L, Rational(1)); }

Condition cond(ConditionKind k, std::string label, NfElement x, NfElement y, std::optional<Place> w, int expected) {
  return Condition{k, std::move(label), std::move(x), std::move(y), std::move(w), expected};
}

Condition symbol_cond(const std::string& label, const NfElement& x, const NfElement& y, const Place& w, int e) {
  return cond(ConditionKind::Symbol, label, x, y, w, e);
}

Condition valuation_cond(const std::string& label, const NfElement& x, const Place& w, int e) {
  return cond(ConditionKind::ValuationEq, label, x, one(x.field()), w, e);
}

void require_preconditions(const NfElement& a, const Place& w0) {
  if (a.is_zero()) throw std::invalid_argument("a must be nonzero");
  if (!w0.is_odd()) throw std::invalid_argument("the distinguished place must be odd and finite");
  if (!w0.field()->same_as(*a.field())) throw std::invalid_argument("place and element live in different fields");
  if (valuation(a, w0) % 2 == 0) throw std::invalid_argument("v(a) must be odd at " + w0.label());
  if (!is_2R_local_square(a)) throw std::invalid_argument("a must be a square at every dyadic and real place");
}

std::string at(const std::string& what, const Place& w) { return what + " at " + w.label(); }

void check_trace(const ConstructionTrace& t) {
  const auto bad = t.failures();
  if (!bad.empty()) throw std::logic_error("construction condition does not hold: " + bad.front());
}

}  // namespace

std::string to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::Symbol: return "symbol";
    case ConditionKind::ValuationEq: return "valuation-eq";
    case ConditionKind::ValuationGe: return "valuation-ge";
    case ConditionKind::LocalSquare: return "local-square";
    case ConditionKind::TwoRSquare: return "2R-square";
    case ConditionKind::Eisenstein: return "eisenstein";
  }
  return "?";
}

ConditionKind condition_kind_from_string(const std::string& s) {
  for (auto k : {ConditionKind::Symbol, ConditionKind::ValuationEq, ConditionKind::ValuationGe,
                 ConditionKind::LocalSquare, ConditionKind::TwoRSquare, ConditionKind::Eisenstein}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown condition kind " + s);
}

bool recheck(const Condition& c) {
  if (c.kind == ConditionKind::TwoRSquare) return is_2R_local_square(c.x);
  if (!c.place) return false;
  const Place& w = *c.place;
  switch (c.kind) {
    case ConditionKind::Symbol: return hilbert_symbol(c.x, c.y, w) == c.expected;
    case ConditionKind::ValuationEq: return valuation(c.x, w) == c.expected;
    case ConditionKind::ValuationGe: return c.x.is_zero() || valuation(c.x, w) >= c.expected;
    case ConditionKind::LocalSquare: return is_local_square(c.x, w) == (c.expected == 1);
    case ConditionKind::Eisenstein: return valuation(c.x, w) == 0 && valuation(c.y, w) == 1;
    default: return false;
  }
}

std::vector<std::string> ConstructionTrace::failures() const {
  std::vector<std::string> out;
  for (const auto& c : conditions) {
    bool ok = false;
    try {
      ok = recheck(c);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) out.push_back(c.label);
  }
  return out;
}

std::vector<Place> odd_support(const NfElement& a) {
  std::set<Integer> primes;
  for (const auto& p : prime_support(norm(a))) primes.insert(p);
  for (const auto& c : a.rep().coefficients()) {
    for (const auto& p : prime_support(Rational(c.denominator()))) primes.insert(p);
  }
  std::vector<Place> out;
  for (const auto& p : primes) {
    if (p == 2) continue;
    for (const auto& w : decompose_prime(a.field(), p)) {
      if (valuation(a, w) != 0) out.push_back(w);
    }
  }
  return out;
}

NfElement construct_a(const FieldPtr& K, const Place& v0) {
  if (!v0.is_odd()) throw std::invalid_argument("v0 must be an odd finite place");
  ApproximationProblem prob;
  for (const auto& w : dyadic_places(K)) prob.congruences.push_back({w, one(K), 2 * w.e() + 1});
  prob.pins.push_back({v0, 1});
  if (K->is_rationals()) {
    for (const auto& w : infinite_places(K)) prob.signs.push_back({w, 1});
  }
  NfElement a = approximate(K, prob);
  if (!K->is_rationals()) {
    // 8 p0^2 keeps every congruence and the pin; adding enough of it makes
    // every real embedding positive.
    NfElement step(K, Rational(Integer(Integer(8) * v0.p() * v0.p())));
    auto positive = [&] {
      for (const auto& w : infinite_places(K)) {
        if (w.is_real() && real_sign(a, w) < 0) return false;
      }
      return true;
    };
    for (int i = 0; !positive(); ++i) {
      if (i > 256) throw std::logic_error("no positive representative found");
      a = a + step;
      step = step + step;
    }
  }
  if (valuation(a, v0) != 1 || !is_2R_local_square(a)) throw std::logic_error("construct_a produced an invalid element");
  return a;
}

ViolatingConstruction construct_violating_surface(const FieldPtr& K, const NfElement& a, const Place& v0) {
  require_preconditions(a, v0);
  ConstructionTrace t;
  t.constants.emplace_back("a", a);
  t.places.emplace_back("v0", v0);
  t.conditions.push_back(cond(ConditionKind::TwoRSquare, "a is a square at dyadic and real places", a, one(K), {}, 1));
  t.conditions.push_back(valuation_cond(at("v(a) odd", v0), a, v0, valuation(a, v0)));

  const auto S1 = odd_support(a);
  t.sets.emplace_back("S1", S1);

  ApproximationProblem pb;
  pb.congruences.push_back({v0, find_unit_beta(a, v0), 1});
  for (const auto& w : S1) {
    if (!(w == v0)) pb.congruences.push_back({w, one(K), 1});
  }
  const NfElement b = approximate(K, pb);
  t.constants.emplace_back("b", b);
  t.conditions.push_back(symbol_cond(at("(a,b) = -1", v0), a, b, v0, -1));
  for (const auto& w : S1) {
    if (!(w == v0)) t.conditions.push_back(symbol_cond(at("(a,b) = +1", w), a, b, w, 1));
  }

  std::vector<Place> S2;
  for (const auto& w : odd_support(b)) {
    if (valuation(b, w) % 2 != 0) S2.push_back(w);
  }
  t.sets.emplace_back("S2", S2);

  ApproximationProblem pc;
  for (const auto& w : S1) pc.congruences.push_back({w, one(K), 1});
  for (const auto& w : S2) {
    bool in_s1 = false;
    for (const auto& u : S1) in_s1 = in_s1 || u == w;
    if (!in_s1) pc.pins.push_back({w, 1});
  }
  const NfElement c = approximate(K, pc);
  t.constants.emplace_back("c", c);
  for (const auto& w : S1) t.conditions.push_back(cond(ConditionKind::LocalSquare, at("c is a square", w), c, one(K), w, 1));
  for (const auto& pin : pc.pins) t.conditions.push_back(valuation_cond(at("v(c) = 1", pin.place), c, pin.place, 1));
  check_trace(t);

  const NfElement zero(K, Rational(0));
  ChateletSurface S = ChateletSurface::from_coefficients(a, {b, zero, zero, zero, -(a * b * c)});
  SolvabilityReport report = global_solvability_report(S);
  if (report.failing.size() != 1 || !(report.failing.front() == v0)) {
    throw std::logic_error("constructed surface does not fail exactly at " + v0.label());
  }
  return ViolatingConstruction{std::move(S), std::move(t), std::move(report)};
}

CounterexampleConstruction construct_hp_counterexample(const FieldPtr& L, const NfElement& a, const Place& w0) {
  require_preconditions(a, w0);
  ConstructionTrace t;
  const NfElement u = one(L);
  t.constants.emplace_back("a", a);
  t.places.emplace_back("w0", w0);
  t.conditions.push_back(cond(ConditionKind::TwoRSquare, "a is a square at dyadic and real places", a, u, {}, 1));
  t.conditions.push_back(valuation_cond(at("w(a) odd", w0), a, w0, valuation(a, w0)));

  const auto S1 = odd_support(a);
  t.sets.emplace_back("S1", S1);

  ApproximationProblem pb;
  pb.congruences.push_back({w0, find_unit_beta(a, w0), 1});
  for (const auto& w : S1) {
    if (!(w == w0)) pb.congruences.push_back({w, u, 1});
  }
  const NfElement b = approximate(L, pb);
  t.constants.emplace_back("b", b);
  t.conditions.push_back(valuation_cond(at("w(b) = 0", w0), b, w0, 0));
  t.conditions.push_back(symbol_cond(at("(a,b) = -1", w0), a, b, w0, -1));
  for (const auto& w : S1) {
    if (w == w0) continue;
    t.conditions.push_back(valuation_cond(at("w(b) = 0", w), b, w, 0));
    t.conditions.push_back(symbol_cond(at("(a,b) = +1", w), a, b, w, 1));
  }

  const auto S2 = odd_support(b);
  t.sets.emplace_back("S2", S2);

  PlaceSet excluded;
  for (const auto& w : S1) excluded.add(w, "S1");
  for (const auto& w : S2) excluded.add(w, "S2");
  for (const auto& w : dyadic_places(L)) excluded.add(w, "dyadic");
  const auto split = split_in_quadratic_search(a, excluded, 2);
  const Place& w1 = split.at(0);
  const Place& w2 = split.at(1);
  t.places.emplace_back("w1", w1);
  t.places.emplace_back("w2", w2);

  const NfElement binv = inverse(b);
  ApproximationProblem pc;
  for (const auto& w : S1) pc.congruences.push_back({w, -binv, 3});
  for (const auto& w : S2) pc.pins.push_back({w, 0});
  pc.pins.push_back({w1, 1});
  pc.congruences.push_back({w2, (w2.data().pi - u) * binv, 2});
  const NfElement c = approximate(L, pc);
  t.constants.emplace_back("c", c);
  const NfElement bc1 = b * c + u;
  for (const auto& w : S1) {
    t.conditions.push_back(cond(ConditionKind::ValuationGe, at("w(bc+1) >= 3", w), bc1, u, w, 3));
  }
  for (const auto& w : S2) {
    t.conditions.push_back(valuation_cond(at("w(c) = 0", w), c, w, 0));
    t.conditions.push_back(symbol_cond(at("(a,c) = +1", w), a, c, w, 1));
  }
  for (const auto& w : split) {
    t.conditions.push_back(valuation_cond(at("w(a) = 0", w), a, w, 0));
    t.conditions.push_back(cond(ConditionKind::LocalSquare, at("a is a square", w), a, u, w, 1));
  }
  t.conditions.push_back(cond(ConditionKind::Eisenstein, at("x^2 - c is Eisenstein", w1), u, c, w1, 1));
  t.conditions.push_back(cond(ConditionKind::Eisenstein, at("b x^2 - (bc+1) is Eisenstein", w2), b, bc1, w2, 1));
  check_trace(t);

  SplitChatelet S(a, b, c);
  SolvabilityReport report = global_solvability_report(S.surface());
  if (!report.everywhere_solvable) {
    throw std::logic_error("constructed surface is not locally solvable at " + report.failing.front().label());
  }
  BmCertificate bm = bm_sum_certificate(S);
  if (!bm.obstruction()) throw std::logic_error("Brauer-Manin sum of the constructed surface is 0");
  return CounterexampleConstruction{std::move(S), std::move(t), std::move(report), std::move(bm)};
}

NfElement base_change(const NfElement& a, const FieldPtr& M) {
  if (a.field()->same_as(*M)) return NfElement(M, a.rep());
  if (a.field()->is_rationals()) return NfElement(M, a.to_rational());
  throw std::invalid_argument("no embedding of the base field into the target field is available");
}

ChateletSurface base_change_surface(const ChateletSurface& S, const FieldPtr& M) {
  std::vector<NfElement> c;
  for (int i = 0; i <= 4; ++i) c.push_back(base_change(S.coefficient(i), M));
  return ChateletSurface::from_coefficients(base_change(S.a(), M), c);
}

}  // namespace chatelet
