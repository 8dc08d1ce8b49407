#include "chatelet/curve.hpp"

namespace chatelet {

namespace {

QPoly c_(const Rational& r) { return r.is_zero() ? QPoly{} : QPoly::constant(r); }

// p + q s in Q[t, s] / (s^2 - H).
struct QuadraticElement {
  QPoly p, q;
};

QuadraticElement mul(const QuadraticElement& x, const QuadraticElement& y, const QPoly& H) {
  return {x.p * y.p + x.q * y.q * H, x.p * y.q + x.q * y.p};
}

QuadraticElement scale(const QPoly& k, const QuadraticElement& x) { return {k * x.p, k * x.q}; }

QuadraticElement add(const QuadraticElement& x, const QuadraticElement& y) { return {x.p + y.p, x.q + y.q}; }

QuadraticElement sub(const QuadraticElement& x, const QuadraticElement& y) { return {x.p - y.p, x.q - y.q}; }

}  // namespace

EllipticCurve::EllipticCurve(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if ((Rational(4) * a_ * a_ * a_ + Rational(27) * b_ * b_).is_zero()) {
    throw std::invalid_argument("singular Weierstrass equation: 4a^3 + 27b^2 = 0");
  }
}

HyperellipticCurve::HyperellipticCurve(QPoly H, std::optional<CurveProvenance> provenance)
    : H_(std::move(H)), genus_(0), provenance_(std::move(provenance)) {
  if (H_.degree() <= 4) throw std::invalid_argument("hyperelliptic curve needs deg H > 4");
  if (!is_separable(H_)) throw std::invalid_argument("H is not separable");
  genus_ = (H_.degree() + 1) / 2 - 1;
}

QPoly build_H(const EllipticCurve& E, const QPoly& h) {
  if (h.degree() < 2) throw std::invalid_argument("h must be non-constant and non-linear");
  const QPoly h3 = h.pow(3);
  return h + c_(E.a()) * h3 + c_(E.b()) * h3 * h;
}

QPoly h_c(const QPoly& phi, const Rational& c) {
  if (c.is_zero()) throw std::invalid_argument("c must be nonzero");
  if (phi.degree() < 2) throw std::invalid_argument("phi must define a nontrivial extension (degree >= 2)");
  const QPoly lin(std::vector<Rational>{c, Rational(1)});
  const Rational norm = c * phi.evaluate(c);
  if (norm.is_zero()) throw std::invalid_argument("phi(c) = 0");
  return QPoly::constant(Rational(1) / norm) * lin * phi.compose(lin);
}

CurveSearch search_c(const EllipticCurve& E, const QPoly& phi, long cap) {
  NumberField::create(phi);  // monic, integral, irreducible
  if (phi.degree() < 2) throw std::invalid_argument("phi must define a nontrivial extension (degree >= 2)");
  for (long k = 1; k <= cap; ++k) {
    const Rational c(k);
    const QPoly h = h_c(phi, c);
    const QPoly H = build_H(E, h);
    if (!is_separable(H)) continue;
    const QPoly lin(std::vector<Rational>{c, Rational(1)});
    return CurveSearch{c, HyperellipticCurve(H, CurveProvenance{E.a(), E.b(), h}), ClosedPoint::finite(lin),
                       ClosedPoint::finite(phi.compose(lin)), k};
  }
  throw std::runtime_error("search_c exceeded its cap");
}

bool verify_morphism_to_E(const HyperellipticCurve& C) {
  if (!C.provenance()) return false;
  const auto& pv = *C.provenance();
  const QPoly& H = C.H();
  const QPoly& h = pv.h;
  const QPoly one = QPoly::constant(Rational(1));
  const QuadraticElement x{{}, one};
  const QuadraticElement y{one + c_(pv.a) * h * h + c_(pv.b) * h.pow(3), {}};
  const QuadraticElement z{{}, h};
  const QuadraticElement zz = mul(z, z, H);
  const QuadraticElement lhs = mul(mul(y, y, H), z, H);
  const QuadraticElement rhs =
      add(add(mul(mul(x, x, H), x, H), scale(c_(pv.a), mul(x, zz, H))), scale(c_(pv.b), mul(zz, z, H)));
  const QuadraticElement diff = sub(lhs, rhs);
  return diff.p.is_zero() && diff.q.is_zero();
}

BranchLocus curve_branch_locus(const HyperellipticCurve& C) {
  return BranchLocus{radical(C.H()), C.degree() % 2 == 1};
}

}  // namespace chatelet
