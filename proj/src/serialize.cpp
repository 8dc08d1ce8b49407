#include "chatelet/serialize.hpp"

#include <sstream>

namespace chatelet {

namespace {

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_of(const Json& j) {
  if (!j.is_string()) throw FormatError("expected a string, got " + j.dump());
  return j.get<std::string>();
}

int int_of(const Json& j) {
  if (!j.is_number_integer()) throw FormatError("expected an integer, got " + j.dump());
  return j.get<int>();
}

bool bool_of(const Json& j) {
  if (!j.is_boolean()) throw FormatError("expected a boolean, got " + j.dump());
  return j.get<bool>();
}

const Json& array_of(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array, got " + j.dump());
  return j;
}

Json places_json(const std::vector<Place>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(to_json(w));
  return out;
}

std::vector<Place> places_from(const Json& j, const FieldPtr& K) {
  std::vector<Place> out;
  for (const auto& x : array_of(j)) out.push_back(place_from_json(x, K));
  return out;
}

Json bad_set_json(const BadSet& b) {
  Json sources = Json::array();
  for (const auto& [name, value] : b.sources) sources.push_back({{"source", name}, {"value", to_json(value)}});
  Json primes = Json::array();
  for (const auto& p : b.primes) primes.push_back(p.get_str());
  return {{"sources", sources}, {"primes", primes}};
}

BadSet bad_set_from(const Json& j) {
  BadSet b;
  for (const auto& s : array_of(field_of(j, "sources"))) {
    b.sources.emplace_back(string_of(field_of(s, "source")), rational_from_json(field_of(s, "value")));
  }
  for (const auto& p : array_of(field_of(j, "primes"))) b.primes.push_back(parse_integer(string_of(p)));
  return b;
}

std::string chart(bool at_infinity) { return at_infinity ? "x'" : "x"; }

bool chart_from(const Json& j) {
  const std::string s = string_of(j);
  if (s == "x") return false;
  if (s == "x'") return true;
  throw FormatError("unknown chart '" + s + "'");
}

template <typename F>
auto wrap(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  return wrap("rational", [&] { return Rational::parse(string_of(j)); });
}

Json to_json(const QPoly& f) {
  Json out = Json::array();
  for (const auto& c : f.coefficients()) out.push_back(to_json(c));
  return out;
}

QPoly qpoly_from_json(const Json& j) {
  std::vector<Rational> c;
  for (const auto& x : array_of(j)) c.push_back(rational_from_json(x));
  return QPoly(std::move(c));
}

QPoly parse_coefficient_list(const std::string& text) {
  std::vector<Rational> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t[");
    const auto e = item.find_last_not_of(" \t]");
    if (b == std::string::npos) throw FormatError("empty coefficient in '" + text + "'");
    c.push_back(wrap("coefficient", [&] { return Rational::parse(item.substr(b, e - b + 1)); }));
  }
  if (c.empty()) throw FormatError("empty coefficient list");
  return QPoly(std::move(c));
}

Json field_to_json(const FieldPtr& K) { return {{"phi", to_json(K->min_poly())}}; }

FieldPtr field_from_json(const Json& j) {
  const QPoly phi = qpoly_from_json(field_of(j, "phi"));
  return wrap("field", [&] { return phi.degree() == 1 ? NumberField::rationals() : NumberField::create(phi); });
}

Json to_json(const NfElement& x) { return x.coefficient_strings(); }

NfElement element_from_json(const Json& j, const FieldPtr& K) {
  const QPoly rep = qpoly_from_json(j);
  if (rep.degree() >= K->degree()) throw FormatError("element " + j.dump() + " is not reduced");
  return NfElement(K, rep);
}

Json to_json(const Place& w) {
  switch (w.kind()) {
    case PlaceKind::Real: return {{"kind", "real"}, {"root_index", w.index()}};
    case PlaceKind::Complex: return {{"kind", "complex"}, {"pair_index", w.index()}};
    case PlaceKind::Finite: break;
  }
  Json factor = Json::array();
  for (const auto& c : w.data().g_lift.coefficients()) factor.push_back(c.str());
  return {{"kind", "finite"}, {"p", w.p().get_str()}, {"factor", factor}, {"e", w.e()}, {"f", w.f()}};
}

Place place_from_json(const Json& j, const FieldPtr& K) {
  const std::string kind = string_of(field_of(j, "kind"));
  if (kind == "real" || kind == "complex") {
    const int idx = int_of(field_of(j, kind == "real" ? "root_index" : "pair_index"));
    for (const auto& w : infinite_places(K)) {
      if ((kind == "real") == w.is_real() && w.index() == idx) return w;
    }
    throw FormatError("no " + kind + " place with index " + std::to_string(idx));
  }
  if (kind != "finite") throw FormatError("unknown place kind '" + kind + "'");
  const Integer p = wrap("prime", [&] { return parse_integer(string_of(field_of(j, "p"))); });
  std::vector<Integer> g;
  for (const auto& c : array_of(field_of(j, "factor"))) g.push_back(wrap("factor", [&] { return parse_integer(string_of(c)); }));
  const Place w = wrap("place", [&] { return find_place(K, p, g); });
  if (int_of(field_of(j, "e")) != w.e() || int_of(field_of(j, "f")) != w.f()) {
    throw FormatError("ramification data of " + w.label() + " does not match");
  }
  return w;
}

Place parse_place(const std::string& text, const FieldPtr& K) {
  if (text == "inf") {
    const auto inf = infinite_places(K);
    if (inf.size() != 1) throw FormatError("'inf' is ambiguous here; use real:k or complex:k");
    return inf.front();
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "real" || head == "complex") {
    return place_from_json({{"kind", head}, {head == "real" ? "root_index" : "pair_index", std::stoi(tail)}}, K);
  }
  const Integer p = wrap("prime", [&] { return parse_integer(head); });
  std::vector<Integer> g;
  if (!tail.empty()) {
    const QPoly factor = parse_coefficient_list(tail);
    for (const auto& c : factor.coefficients()) {
      if (!(c.denominator() == 1)) throw FormatError("local factor coefficients must be integers");
      g.push_back(c.numerator());
    }
  }
  return wrap("place", [&] { return find_place(K, p, g); });
}

Json to_json(const NfPoly& P) {
  Json out = Json::array();
  for (const auto& c : P.coefficients()) out.push_back(to_json(c));
  return out;
}

NfPoly nfpoly_from_json(const Json& j, const FieldPtr& K) {
  std::vector<NfElement> c;
  for (const auto& x : array_of(j)) c.push_back(element_from_json(x, K));
  return NfPoly(std::move(c));
}

Json to_json(const ChateletSurface& S) {
  return {{"field", field_to_json(S.field())}, {"a", to_json(S.a())}, {"P", to_json(S.P())}};
}

ChateletSurface surface_from_json(const Json& j) {
  const FieldPtr K = field_from_json(field_of(j, "field"));
  const NfElement a = element_from_json(field_of(j, "a"), K);
  const NfPoly P = nfpoly_from_json(field_of(j, "P"), K);
  return wrap("surface", [&] { return ChateletSurface(a, P); });
}

Json to_json(const SplitChatelet& S) {
  return {{"field", field_to_json(S.field())}, {"a", to_json(S.a())}, {"b", to_json(S.b())}, {"c", to_json(S.c())}};
}

SplitChatelet split_from_json(const Json& j) {
  const FieldPtr K = field_from_json(field_of(j, "field"));
  const NfElement a = element_from_json(field_of(j, "a"), K);
  const NfElement b = element_from_json(field_of(j, "b"), K);
  const NfElement c = element_from_json(field_of(j, "c"), K);
  return wrap("split surface", [&] { return SplitChatelet(a, b, c); });
}

Json to_json(const LocalPoint& pt) { return {{"chart", chart(pt.at_infinity)}, {"x", to_json(pt.x)}}; }

LocalPoint point_from_json(const Json& j, const FieldPtr& K) {
  return LocalPoint{chart_from(field_of(j, "chart")), element_from_json(field_of(j, "x"), K)};
}

Json to_json(const LocalDecision& d) {
  Json table = Json::array();
  for (const auto& b : d.table) {
    table.push_back({{"chart", chart(b.at_infinity)}, {"center", to_json(b.center)}, {"radius", b.radius}, {"symbol", b.symbol}});
  }
  Json out{{"place", to_json(d.place)},
           {"verdict", to_string(d.verdict)},
           {"reason", to_string(d.reason)},
           {"table", table},
           {"note", d.note}};
  out["witness"] = d.witness ? to_json(*d.witness) : Json();
  return out;
}

LocalDecision decision_from_json(const Json& j, const FieldPtr& K) {
  LocalDecision d;
  d.place = place_from_json(field_of(j, "place"), K);
  d.verdict = wrap("verdict", [&] { return verdict_from_string(string_of(field_of(j, "verdict"))); });
  d.reason = wrap("reason", [&] { return reason_from_string(string_of(field_of(j, "reason"))); });
  if (!field_of(j, "witness").is_null()) d.witness = point_from_json(j.at("witness"), K);
  for (const auto& b : array_of(field_of(j, "table"))) {
    d.table.push_back(Ball{chart_from(field_of(b, "chart")), element_from_json(field_of(b, "center"), K),
                           int_of(field_of(b, "radius")), int_of(field_of(b, "symbol"))});
  }
  d.note = string_of(field_of(j, "note"));
  return d;
}

Json to_json(const SolvabilityReport& r) {
  Json decisions = Json::array();
  for (const auto& d : r.decisions) decisions.push_back(to_json(d));
  return {{"bad_set", bad_set_json(r.bad_set)},
          {"decisions", decisions},
          {"everywhere_solvable", r.everywhere_solvable},
          {"failing", places_json(r.failing)}};
}

SolvabilityReport report_from_json(const Json& j, const FieldPtr& K) {
  SolvabilityReport r;
  r.bad_set = bad_set_from(field_of(j, "bad_set"));
  for (const auto& d : array_of(field_of(j, "decisions"))) r.decisions.push_back(decision_from_json(d, K));
  r.everywhere_solvable = bool_of(field_of(j, "everywhere_solvable"));
  r.failing = places_from(field_of(j, "failing"), K);
  return r;
}

Json to_json(const BmCertificate& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    Json pts = Json::array();
    for (const auto& pt : e.points) pts.push_back(to_json(pt));
    entries.push_back({{"place", to_json(e.place)},
                       {"invariant", e.invariant.str()},
                       {"reason", to_string(e.reason)},
                       {"samples", e.samples},
                       {"points", pts}});
  }
  return {{"bad_set", bad_set_json(c.bad_set)}, {"entries", entries}, {"total", c.total.str()}};
}

BmCertificate bm_from_json(const Json& j, const FieldPtr& K) {
  BmCertificate c;
  c.bad_set = bad_set_from(field_of(j, "bad_set"));
  for (const auto& e : array_of(field_of(j, "entries"))) {
    BmPlaceEntry x;
    x.place = place_from_json(field_of(e, "place"), K);
    x.invariant = wrap("invariant", [&] { return LocalInvariant::parse(string_of(field_of(e, "invariant"))); });
    x.reason = wrap("reason", [&] { return bm_reason_from_string(string_of(field_of(e, "reason"))); });
    if (!field_of(e, "samples").is_number_unsigned()) throw FormatError("samples must be a non-negative integer");
    x.samples = e.at("samples").get<std::size_t>();
    for (const auto& pt : array_of(field_of(e, "points"))) x.points.push_back(point_from_json(pt, K));
    c.entries.push_back(std::move(x));
  }
  c.total = wrap("total", [&] { return LocalInvariant::parse(string_of(field_of(j, "total"))); });
  return c;
}

Json to_json(const ConstructionTrace& t) {
  Json constants = Json::object(), places = Json::object(), sets = Json::object(), conditions = Json::array();
  for (const auto& [name, x] : t.constants) constants[name] = to_json(x);
  for (const auto& [name, w] : t.places) places[name] = to_json(w);
  for (const auto& [name, ws] : t.sets) sets[name] = places_json(ws);
  for (const auto& c : t.conditions) {
    conditions.push_back({{"kind", to_string(c.kind)},
                          {"label", c.label},
                          {"x", to_json(c.x)},
                          {"y", to_json(c.y)},
                          {"place", c.place ? to_json(*c.place) : Json()},
                          {"expected", c.expected}});
  }
  return {{"constants", constants}, {"places", places}, {"sets", sets}, {"conditions", conditions}};
}

ConstructionTrace trace_from_json(const Json& j, const FieldPtr& K) {
  ConstructionTrace t;
  for (const auto& [name, x] : field_of(j, "constants").items()) t.constants.emplace_back(name, element_from_json(x, K));
  for (const auto& [name, w] : field_of(j, "places").items()) t.places.emplace_back(name, place_from_json(w, K));
  for (const auto& [name, ws] : field_of(j, "sets").items()) t.sets.emplace_back(name, places_from(ws, K));
  for (const auto& c : array_of(field_of(j, "conditions"))) {
    Condition x;
    x.kind = wrap("condition kind", [&] { return condition_kind_from_string(string_of(field_of(c, "kind"))); });
    x.label = string_of(field_of(c, "label"));
    x.x = element_from_json(field_of(c, "x"), K);
    x.y = element_from_json(field_of(c, "y"), K);
    if (!field_of(c, "place").is_null()) x.place = place_from_json(c.at("place"), K);
    x.expected = int_of(field_of(c, "expected"));
    t.conditions.push_back(std::move(x));
  }
  return t;
}

Json to_json(const BundlePoly& V) {
  return {{"a", to_json(V.a())}, {"A_t", to_json(V.A())}, {"C_t", to_json(V.C())}, {"E_t", to_json(V.E())}, {"d", V.d()}};
}

BundlePoly bundle_from_json(const Json& j) {
  const Rational a = rational_from_json(field_of(j, "a"));
  const QPoly A = qpoly_from_json(field_of(j, "A_t"));
  const QPoly C = qpoly_from_json(field_of(j, "C_t"));
  const QPoly E = qpoly_from_json(field_of(j, "E_t"));
  const int d = int_of(field_of(j, "d"));
  return wrap("bundle", [&] { return BundlePoly(a, A, C, E, d); });
}

Json to_json(const BranchLocus& b) { return {{"finite", to_json(b.finite)}, {"infinity", b.infinity}}; }

BranchLocus branch_from_json(const Json& j) {
  return BranchLocus{qpoly_from_json(field_of(j, "finite")), bool_of(field_of(j, "infinity"))};
}

Json to_json(const InterpolationNode& n) {
  return {{"phi", to_json(n.phi)}, {"field", field_to_json(n.a.field())}, {"a", to_json(n.a)}, {"P", to_json(n.P)}};
}

InterpolationNode node_from_json(const Json& j) {
  const FieldPtr K = field_from_json(field_of(j, "field"));
  return InterpolationNode{qpoly_from_json(field_of(j, "phi")), element_from_json(field_of(j, "a"), K),
                           nfpoly_from_json(field_of(j, "P"), K)};
}

Json to_json(const HyperellipticCurve& C) {
  Json out{{"H", to_json(C.H())}, {"genus", C.genus()}};
  if (const auto& pv = C.provenance()) {
    out["provenance"] = {{"a", to_json(pv->a)}, {"b", to_json(pv->b)}, {"h", to_json(pv->h)}};
  } else {
    out["provenance"] = nullptr;
  }
  return out;
}

HyperellipticCurve curve_from_json(const Json& j) {
  const QPoly H = qpoly_from_json(field_of(j, "H"));
  std::optional<CurveProvenance> pv;
  if (!field_of(j, "provenance").is_null()) {
    const Json& p = j.at("provenance");
    pv = CurveProvenance{rational_from_json(field_of(p, "a")), rational_from_json(field_of(p, "b")),
                         qpoly_from_json(field_of(p, "h"))};
  }
  HyperellipticCurve C = wrap("curve", [&] { return HyperellipticCurve(H, pv); });
  if (int_of(field_of(j, "genus")) != C.genus()) throw FormatError("recorded genus differs from the degree of H");
  return C;
}

}  // namespace chatelet
