#pragma once

#include <optional>

#include "chatelet/bundle.hpp"

namespace chatelet {

/// y^2 = x^3 + a x + b with 4a^3 + 27b^2 != 0.
class EllipticCurve {
 public:
  EllipticCurve(Rational a, Rational b);
  /// y^2 = x^3 - 4x (LMFDB 64.a3).
  static EllipticCurve curve_64a3() { return EllipticCurve(Rational(-4), Rational(0)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

 private:
  Rational a_, b_;
};

struct CurveProvenance {
  Rational a, b;  // of the elliptic curve
  QPoly h;
};

/// s^2 = H(t), H separable of degree n > 4, genus ceil(n/2) - 1.
class HyperellipticCurve {
 public:
  explicit HyperellipticCurve(QPoly H, std::optional<CurveProvenance> provenance = std::nullopt);

  const QPoly& H() const { return H_; }
  int degree() const { return H_.degree(); }
  int genus() const { return genus_; }
  /// t'^(2g+2) H(1/t').
  QPoly H_dagger() const { return reciprocal(H_, 2 * genus_ + 2); }
  const std::optional<CurveProvenance>& provenance() const { return provenance_; }

 private:
  QPoly H_;
  int genus_;
  std::optional<CurveProvenance> provenance_;
};

/// h + a h^3 + b h^4; h must have degree >= 2.
QPoly build_H(const EllipticCurve& E, const QPoly& h);

/// (t + c) phi(t + c) / (c phi(c)); c != 0, deg phi >= 2.
QPoly h_c(const QPoly& phi, const Rational& c);

struct CurveSearch {
  Rational c;
  HyperellipticCurve curve;
  ClosedPoint O;      // t = -c
  ClosedPoint Theta;  // phi(t + c) = 0, residue field L
  long tried = 0;
};

/// First c = 1, 2, ... with build_H(E, h_c) separable.
CurveSearch search_c(const EllipticCurve& E, const QPoly& phi, long cap = 10000);

/// y^2 z - x^3 - a x z^2 - b z^3 vanishes modulo s^2 - H at
/// (x, y, z) = (s, 1 + a h^2 + b h^3, h s). False without provenance.
bool verify_morphism_to_E(const HyperellipticCurve& C);

/// Roots of H, plus infinity when deg H is odd.
BranchLocus curve_branch_locus(const HyperellipticCurve& C);

}  // namespace chatelet
