#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chatelet/surface.hpp"

namespace chatelet {

/// y^2 - a z^2 = A_t x^4 + C_t x^2 + E_t over P^1_Q, all t-degrees <= d.
class BundlePoly {
 public:
  /// Requires a != 0, d even and deg A_t, C_t, E_t <= d.
  BundlePoly(Rational a, QPoly A, QPoly C, QPoly E, int d);

  const Rational& a() const { return a_; }
  const QPoly& A() const { return A_; }
  const QPoly& C() const { return C_; }
  const QPoly& E() const { return E_; }
  int d() const { return d_; }

  /// C_t^2 - 4 A_t E_t.
  QPoly delta() const;
  /// Coefficient of t^d in each of A_t, C_t, E_t: the fiber at t = infinity.
  Rational A_inf() const;
  Rational C_inf() const;
  Rational E_inf() const;

 private:
  Rational a_;
  QPoly A_, C_, E_;
  int d_;
};

/// A closed point of P^1_Q: a monic irreducible polynomial, or infinity.
struct ClosedPoint {
  bool infinity = false;
  QPoly phi;

  static ClosedPoint at_infinity() { return {true, {}}; }
  static ClosedPoint finite(QPoly phi) { return {false, std::move(phi)}; }
  std::string str() const;
};

/// Fiber y^2 - a z^2 = P(x) over the residue field, possibly singular.
struct Fiber {
  NfElement a;
  NfPoly P;

  bool smooth() const;
  /// Throws std::invalid_argument when the fiber is singular.
  ChateletSurface surface() const;
};

/// Residue field of a finite closed point: Q for degree 1, else Q[t]/(phi).
FieldPtr residue_field(const ClosedPoint& theta);

/// Image of f(t) in the residue field.
NfElement reduce_at(const QPoly& f, const ClosedPoint& theta, const FieldPtr& field);

/// Reducible phi: std::invalid_argument.
Fiber fiber_at(const BundlePoly& V, const ClosedPoint& theta);

struct DegeneracyData {
  QPoly delta;                     // C_t^2 - 4 A_t E_t
  std::vector<QPoly> homogenized;  // t'^d P_i(1/t') for x^4, x^2, x^0
  QPoly branch;                    // radical of A_t E_t delta
  bool infinity_smooth = false;
};

struct AdmissibilityReport {
  bool A_separable = false;
  bool E_separable = false;
  bool delta_separable = false;
  bool coprime = false;  // gcd(A_t, C_t, E_t) = 1
  DegeneracyData data;

  bool admissible() const { return A_separable && E_separable && delta_separable && coprime; }
};

AdmissibilityReport is_admissible(const BundlePoly& V);

/// Branch data on P^1: a squarefree monic polynomial and a flag for infinity.
struct BranchLocus {
  QPoly finite;
  bool infinity = false;
};

/// Requires an admissible bundle (std::invalid_argument otherwise).
BranchLocus branch_locus(const BundlePoly& V);

bool check_disjoint(const BranchLocus& bundle, const BranchLocus& curve);

/// Prescribed fiber over the roots of a squarefree monic phi. The surface
/// lives over Q[t]/(phi), or over Q, in which case it is the fiber at
/// every root.
struct InterpolationNode {
  QPoly phi;
  NfElement a;
  NfPoly P;

  static InterpolationNode of(const QPoly& phi, const ChateletSurface& S) { return {phi, S.a(), S.P()}; }
};

struct GeneralInterpolation {
  QPoly a, A, B, C, D, E;
  QPoly modulus;  // product of the node polynomials
};

/// CRT interpolation of every coefficient, a included. Nodes must be
/// monic, squarefree and pairwise coprime.
GeneralInterpolation interpolate_general(const std::vector<InterpolationNode>& nodes);

struct AdmissibleInterpolation {
  BundlePoly bundle;
  int d0 = 0;
  long n_E = 0;
  long n_A = 0;
  QPoly psi_C, psi_E, psi_A;
  AdmissibilityReport report;
};

/// Interpolation with the separability modifications: shared rational a,
/// B = D = 0 and E != 0 at every node.
AdmissibleInterpolation interpolate_admissible(const std::vector<InterpolationNode>& nodes, long cap = 100000);

/// True when every coefficient of V reduces to the node's prescribed value.
bool fiber_matches(const BundlePoly& V, const InterpolationNode& node);

/// alpha(theta) in Q[theta]/(phi) sent to alpha(t + shift) in
/// Q[t]/(phi(t + shift)).
NfElement shift_generator(const NfElement& alpha, const FieldPtr& target, const Rational& shift);
ChateletSurface shift_generator(const ChateletSurface& S, const FieldPtr& target, const Rational& shift);

}  // namespace chatelet
