#include "chatelet/bundle.hpp"

#include <sstream>

namespace chatelet {

namespace {

const Rational kZero(0);

QPoly constant(const Rational& c) { return c.is_zero() ? QPoly{} : QPoly::constant(c); }

bool separable_nonzero(const QPoly& f) { return !f.is_zero() && is_separable(f); }

// Residue class in Q[t] of a coefficient prescribed at a node.
QPoly residue_of(const NfElement& x) { return x.field()->is_rationals() ? constant(x.to_rational()) : x.rep(); }

std::string poly_str(const QPoly& f) {
  return coefficient_list(f, [](const Rational& r) { return r.str(); });
}

void validate_nodes(const std::vector<InterpolationNode>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("interpolation needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.phi.degree() < 1 || !(n.phi.leading() == Rational(1))) {
      throw std::invalid_argument("node polynomial must be monic of positive degree");
    }
    if (!is_separable(n.phi)) throw std::invalid_argument("node polynomial must be squarefree");
    const FieldPtr& F = n.a.field();
    if (!F->is_rationals() && !(F->min_poly() == n.phi)) {
      throw std::invalid_argument("node surface is not defined over the residue field of its point");
    }
    for (const auto& c : n.P.coefficients()) {
      if (!c.field()->same_as(*F)) throw std::invalid_argument("mixed coefficient domains (different number fields)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (poly_gcd(n.phi, nodes[j].phi).degree() != 0) throw std::invalid_argument("duplicate or overlapping nodes");
    }
  }
}

QPoly interpolate_coefficient(const std::vector<InterpolationNode>& nodes, int power) {
  std::vector<CrtPair<Rational>> pairs;
  for (const auto& n : nodes) {
    const NfElement c = power < 0 ? n.a : n.P.coeff(power, zero_like(n.a));
    pairs.push_back({n.phi, residue_of(c) % n.phi});
  }
  return crt_interpolate(pairs);
}

// prod (t - r) over the `count` smallest non-negative integers r with
// avoid(r) != 0.
QPoly small_root_product(int count, const QPoly& avoid) {
  QPoly out = QPoly::constant(Rational(1));
  long r = 0;
  for (int found = 0; found < count; ++r) {
    if (avoid.evaluate(Rational(r)).is_zero()) continue;
    out *= QPoly(std::vector<Rational>{Rational(-r), Rational(1)});
    ++found;
  }
  return out;
}

}  // namespace

BundlePoly::BundlePoly(Rational a, QPoly A, QPoly C, QPoly E, int d)
    : a_(std::move(a)), A_(std::move(A)), C_(std::move(C)), E_(std::move(E)), d_(d) {
  if (a_.is_zero()) throw std::invalid_argument("bundle with a = 0");
  if (d_ < 0 || d_ % 2 != 0) throw std::invalid_argument("bundle degree d must be even and non-negative");
  for (const QPoly* f : {&A_, &C_, &E_}) {
    if (f->degree() > d_) throw std::invalid_argument("coefficient polynomial of degree above d");
  }
}

QPoly BundlePoly::delta() const { return C_ * C_ - QPoly::constant(Rational(4)) * A_ * E_; }

Rational BundlePoly::A_inf() const { return A_.coeff(d_, kZero); }
Rational BundlePoly::C_inf() const { return C_.coeff(d_, kZero); }
Rational BundlePoly::E_inf() const { return E_.coeff(d_, kZero); }

std::string ClosedPoint::str() const { return infinity ? "inf" : poly_str(phi); }

bool Fiber::smooth() const { return P.degree() == 4 && is_separable(P) && is_separable(reciprocal(P, 4)); }

ChateletSurface Fiber::surface() const {
  if (!smooth()) throw std::invalid_argument("singular fiber");
  return ChateletSurface(a, P);
}

FieldPtr residue_field(const ClosedPoint& theta) {
  if (theta.infinity) return NumberField::rationals();
  if (theta.phi.degree() < 1 || !(theta.phi.leading() == Rational(1))) {
    throw std::invalid_argument("closed point must be given by a monic polynomial");
  }
  if (theta.phi.degree() == 1) return NumberField::rationals();
  return NumberField::create(theta.phi);
}

NfElement reduce_at(const QPoly& f, const ClosedPoint& theta, const FieldPtr& field) {
  if (theta.phi.degree() == 1) return NfElement(field, f.evaluate(-theta.phi.coeff(0, kZero)));
  return NfElement(field, f);
}

Fiber fiber_at(const BundlePoly& V, const ClosedPoint& theta) {
  const FieldPtr F = residue_field(theta);
  auto value = [&](const QPoly& f, const Rational& at_inf) {
    return theta.infinity ? NfElement(F, at_inf) : reduce_at(f, theta, F);
  };
  const NfElement z(F, kZero);
  std::vector<NfElement> c{value(V.E(), V.E_inf()), z, value(V.C(), V.C_inf()), z, value(V.A(), V.A_inf())};
  return Fiber{NfElement(F, V.a()), NfPoly(std::move(c))};
}

AdmissibilityReport is_admissible(const BundlePoly& V) {
  AdmissibilityReport r;
  r.A_separable = separable_nonzero(V.A());
  r.E_separable = separable_nonzero(V.E());
  r.data.delta = V.delta();
  r.delta_separable = separable_nonzero(r.data.delta);
  r.coprime = poly_gcd(V.A(), poly_gcd(V.C(), V.E())).degree() == 0;
  for (const QPoly* f : {&V.A(), &V.C(), &V.E()}) r.data.homogenized.push_back(reciprocal(*f, V.d()));
  const QPoly prod = V.A() * V.E() * r.data.delta;
  r.data.branch = prod.is_zero() ? QPoly{} : radical(prod);
  const Rational Ai = V.A_inf(), Ci = V.C_inf(), Ei = V.E_inf();
  r.data.infinity_smooth = !(Ai * Ei * (Ci * Ci - Rational(4) * Ai * Ei)).is_zero();
  return r;
}

BranchLocus branch_locus(const BundlePoly& V) {
  const auto r = is_admissible(V);
  if (!r.admissible()) throw std::invalid_argument("branch locus of an inadmissible bundle");
  return BranchLocus{r.data.branch, !r.data.infinity_smooth};
}

bool check_disjoint(const BranchLocus& bundle, const BranchLocus& curve) {
  if (bundle.finite.is_zero() || curve.finite.is_zero()) return false;
  if (bundle.infinity && curve.infinity) return false;
  return poly_gcd(bundle.finite, curve.finite).degree() == 0;
}

GeneralInterpolation interpolate_general(const std::vector<InterpolationNode>& nodes) {
  validate_nodes(nodes);
  GeneralInterpolation g;
  g.a = interpolate_coefficient(nodes, -1);
  g.A = interpolate_coefficient(nodes, 4);
  g.B = interpolate_coefficient(nodes, 3);
  g.C = interpolate_coefficient(nodes, 2);
  g.D = interpolate_coefficient(nodes, 1);
  g.E = interpolate_coefficient(nodes, 0);
  g.modulus = QPoly::constant(Rational(1));
  for (const auto& n : nodes) g.modulus *= n.phi;
  return g;
}

bool fiber_matches(const BundlePoly& V, const InterpolationNode& node) {
  if (!node.a.is_rational() || !(node.a.to_rational() == V.a())) return false;
  const NfElement z = zero_like(node.a);
  if (!node.P.coeff(3, z).is_zero() || !node.P.coeff(1, z).is_zero()) return false;
  const std::pair<const QPoly*, int> pairs[] = {{&V.A(), 4}, {&V.C(), 2}, {&V.E(), 0}};
  for (const auto& [f, k] : pairs) {
    if (!((*f - residue_of(node.P.coeff(k, z))) % node.phi).is_zero()) return false;
  }
  return true;
}

AdmissibleInterpolation interpolate_admissible(const std::vector<InterpolationNode>& nodes, long cap) {
  validate_nodes(nodes);
  const NfElement& a0 = nodes.front().a;
  if (!a0.is_rational()) throw std::invalid_argument("the shared a must be rational");
  for (const auto& n : nodes) {
    if (!n.a.is_rational() || !(n.a.to_rational() == a0.to_rational())) {
      throw std::invalid_argument("surfaces at the nodes have different a");
    }
    const NfElement z = zero_like(n.a);
    if (!n.P.coeff(3, z).is_zero() || !n.P.coeff(1, z).is_zero()) throw std::invalid_argument("nodes need B = D = 0");
    if (n.P.coeff(0, z).is_zero()) throw std::invalid_argument("nodes need E != 0");
    ChateletSurface(n.a, n.P);  // smoothness and degree
  }
  const GeneralInterpolation g = interpolate_general(nodes);
  const QPoly& phi = g.modulus;
  const int m = phi.degree();
  const int base = std::max({g.A.degree(), g.C.degree(), g.E.degree()});

  AdmissibleInterpolation out{BundlePoly(a0.to_rational(), {}, {}, {}, 0), 0, 0, 0, {}, {}, {}, {}};
  int d0 = 0;
  while ((d0 + m) % 2 != 0 || d0 + m < base + 1) ++d0;
  const int d = d0 + m;
  out.d0 = d0;
  out.psi_C = QPoly::monomial(Rational(1), d0);
  const QPoly C = g.C + phi * out.psi_C;

  out.psi_E = small_root_product(d0, phi * C);
  QPoly E;
  for (long n = 1;; ++n) {
    if (n > cap) throw std::runtime_error("E-scan exceeded its cap");
    E = g.E + QPoly::constant(Rational(n)) * phi * out.psi_E;
    if (is_separable(E) && poly_gcd(E, C).degree() == 0) {
      out.n_E = n;
      break;
    }
  }
  out.psi_A = small_root_product(d0, phi * E);
  QPoly A;
  for (long n = 1;; ++n) {
    if (n > cap) throw std::runtime_error("A-scan exceeded its cap");
    A = g.A + QPoly::constant(Rational(n)) * phi * out.psi_A;
    if (is_separable(A) && separable_nonzero(C * C - QPoly::constant(Rational(4)) * A * E)) {
      out.n_A = n;
      break;
    }
  }
  out.bundle = BundlePoly(a0.to_rational(), A, C, E, d);
  if (A.degree() != d || C.degree() != d || E.degree() != d) throw std::logic_error("interpolated degrees differ from d");
  out.report = is_admissible(out.bundle);
  if (!out.report.admissible()) throw std::logic_error("interpolated bundle is not admissible");
  for (const auto& n : nodes) {
    if (!fiber_matches(out.bundle, n)) throw std::logic_error("interpolated fiber differs at " + poly_str(n.phi));
  }
  return out;
}

NfElement shift_generator(const NfElement& alpha, const FieldPtr& target, const Rational& shift) {
  const QPoly lin(std::vector<Rational>{shift, Rational(1)});
  const FieldPtr& src = alpha.field();
  if (src->is_rationals()) return NfElement(target, alpha.to_rational());
  if (!(src->min_poly().compose(lin) == target->min_poly())) {
    throw std::invalid_argument("target field is not generated by theta - shift");
  }
  return NfElement(target, alpha.rep().compose(lin));
}

ChateletSurface shift_generator(const ChateletSurface& S, const FieldPtr& target, const Rational& shift) {
  std::vector<NfElement> c;
  for (const auto& x : S.P().coefficients()) c.push_back(shift_generator(x, target, shift));
  return ChateletSurface(shift_generator(S.a(), target, shift), NfPoly(std::move(c)));
}

}  // namespace chatelet
