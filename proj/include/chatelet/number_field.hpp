#pragma once

#include <climits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "chatelet/polynomial.hpp"
#include "chatelet/prime_field.hpp"
#include "chatelet/rational.hpp"
#include "chatelet/sturm.hpp"

namespace chatelet {

/// Raised for primes dividing the index [O_L : Z[theta]] (Dedekind's
/// criterion fails) or too large for the word-size residue arithmetic.
class UnsupportedPrime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// L = Q[theta]/(phi), phi monic irreducible with integer coefficients.
/// Q itself is phi = t.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  /// Validates phi and certifies irreducibility: an irreducible reduction
  /// mod a small prime, else incompatible factor-degree patterns across
  /// primes, else rational-root and quadratic-factor trial (degree <= 4).
  /// Beyond that `assume_irreducible` must be set, otherwise
  /// std::invalid_argument.
  static FieldPtr create(const QPoly& phi, bool assume_irreducible = false);
  static FieldPtr rationals();

  const QPoly& min_poly() const { return phi_; }
  int degree() const { return phi_.degree(); }
  bool is_rationals() const { return phi_.degree() == 1; }
  const Rational& disc() const { return disc_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  /// How irreducibility was established ("degree 1", "mod p", ...).
  const std::string& irreducibility_proof() const { return irreducibility_proof_; }

  bool same_as(const NumberField& o) const { return phi_ == o.phi_; }

 private:
  NumberField() = default;
  QPoly phi_;
  Rational disc_;
  int r1_ = 0;
  int r2_ = 0;
  std::string irreducibility_proof_;
};

/// Element of a number field: a polynomial in theta of degree < [L:Q].
class NfElement {
 public:
  NfElement() = default;
  NfElement(FieldPtr field, const Rational& c);
  NfElement(FieldPtr field, QPoly rep);
  static NfElement theta(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const QPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  /// The rational value; throws unless is_rational().
  Rational to_rational() const;
  /// True when all coefficients are integers (an element of Z[theta]).
  bool in_z_theta() const;

  friend NfElement operator+(const NfElement& a, const NfElement& b);
  friend NfElement operator-(const NfElement& a, const NfElement& b);
  friend NfElement operator*(const NfElement& a, const NfElement& b);
  friend NfElement operator/(const NfElement& a, const NfElement& b);
  NfElement operator-() const;
  friend bool operator==(const NfElement& a, const NfElement& b);

  NfElement pow(long e) const;
  /// Coefficient strings, lowest power of theta first.
  std::vector<std::string> coefficient_strings() const;
  std::string str() const;

 private:
  FieldPtr field_;
  QPoly rep_;
};

std::ostream& operator<<(std::ostream& os, const NfElement& a);

inline bool is_zero(const NfElement& x) { return x.is_zero(); }
inline NfElement zero_like(const NfElement& x) { return NfElement(x.field(), Rational(0)); }
inline NfElement one_like(const NfElement& x) { return NfElement(x.field(), Rational(1)); }
NfElement inverse(const NfElement& x);
NfElement mul_int(const NfElement& x, long n);

/// Norm_{L/Q}, via res(phi, rep).
Rational norm(const NfElement& a);

struct FinitePlaceData;

enum class PlaceKind { Real, Complex, Finite };

class Place {
 public:
  static Place real(FieldPtr field, int root_index);
  static Place complex(FieldPtr field, int pair_index);
  static Place finite(std::shared_ptr<const FinitePlaceData> data);

  PlaceKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == PlaceKind::Finite; }
  bool is_real() const { return kind_ == PlaceKind::Real; }
  bool is_archimedean() const { return kind_ != PlaceKind::Finite; }
  bool is_dyadic() const;
  bool is_odd() const { return is_finite() && !is_dyadic(); }

  const FieldPtr& field() const { return field_; }
  int index() const { return index_; }
  const Integer& p() const;
  std::uint64_t p64() const;
  int e() const;
  int f() const;
  /// Residue field size p^f.
  Integer q() const;
  const FpPoly& local_factor() const;
  const FinitePlaceData& data() const;

  /// "real:k", "complex:k", "p" (over Q) or "p:[g0, g1, ...]".
  std::string label() const;

  friend bool operator==(const Place& a, const Place& b);

 private:
  PlaceKind kind_ = PlaceKind::Finite;
  FieldPtr field_;
  int index_ = 0;
  std::shared_ptr<const FinitePlaceData> data_;
};

/// Total order used for canonical iteration: archimedean first, then by
/// rational prime and local factor.
bool place_less(const Place& a, const Place& b);

struct FinitePlaceData {
  FieldPtr field;
  Integer p;
  std::uint64_t p64 = 0;
  FpPoly g;          // monic irreducible factor of phi mod p
  QPoly g_lift;      // coefficients in [0, p)
  int e = 1;
  int f = 1;
  int index = 0;     // position among the places above p
  NfElement tau;     // v(tau) = -1 here, v >= 0 at the other places above p
  NfElement pi;      // integral uniformizer: p (e = 1) or g(theta)
  NfElement cofactor;  // unit here, in every other prime above p
};

/// A finite list of places with provenance labels and no duplicates.
class PlaceSet {
 public:
  /// Returns false (and does nothing) when the place is already present.
  bool add(const Place& w, const std::string& label);
  bool contains(const Place& w) const;
  bool contains_prime(const Integer& p) const;
  std::size_t size() const { return places_.size(); }
  const std::vector<Place>& places() const { return places_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<Place> places_;
  std::vector<std::string> labels_;
};

/// Kummer-Dedekind places above p, in canonical factor order.
std::vector<Place> decompose_prime(const FieldPtr& field, const Integer& p);
/// Real embeddings (increasing roots) then complex pairs.
std::vector<Place> infinite_places(const FieldPtr& field);
/// Places above 2.
std::vector<Place> dyadic_places(const FieldPtr& field);
/// The place above p whose local factor has the given lifted coefficients;
/// an empty factor is accepted when exactly one place lies above p.
Place find_place(const FieldPtr& field, const Integer& p, const std::vector<Integer>& factor);

constexpr int kInfiniteValuation = INT_MAX;

/// Normalized valuation; kInfiniteValuation for zero.
int valuation(const NfElement& a, const Place& w);
/// Image in the residue field; requires v_w(a) >= 0.
FiniteFieldElem reduce(const NfElement& a, const Place& w);
/// Residue of a * tau^{v(a)}: the unit part with respect to the
/// uniformizer 1/tau. Requires a != 0.
FiniteFieldElem unit_residue(const NfElement& a, const Place& w);
/// a * tau^{v(a)}.
NfElement unit_part(const NfElement& a, const Place& w);

/// Sign of a under a real embedding.
int real_sign(const NfElement& a, const Place& w);

bool is_local_square(const NfElement& a, const Place& w);
/// Square at every dyadic and every real place.
bool is_2R_local_square(const NfElement& a);

/// Representatives of O_w / p_w^k: sum_{i<k} r_i pi^i with r_i lifts of
/// residue classes in canonical order.
std::vector<NfElement> residue_representatives(const Place& w, int k);
/// Lift of a residue class (polynomial over F_p of degree < f) to Z[theta].
NfElement lift_residue(const Place& w, const FpPoly& r);

class ContradictoryConditions : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Congruence {
  Place place;
  NfElement target;
  int precision = 1;  // a = target mod p^precision
};

struct ValuationPin {
  Place place;
  int valuation = 0;
};

struct SignCondition {
  Place place;  // real place
  int sign = 1;
};

struct ApproximationProblem {
  std::vector<Congruence> congruences;
  std::vector<ValuationPin> pins;
  std::vector<SignCondition> signs;
};

/// Independent checker for approximation outputs.
bool satisfies(const NfElement& a, const ApproximationProblem& prob);

/// An element of Z[theta] meeting every condition. Sign conditions are
/// only available over Q (std::invalid_argument otherwise); incompatible
/// conditions raise ContradictoryConditions.
NfElement approximate(const FieldPtr& field, const ApproximationProblem& prob);

/// Smallest odd prime p, not dividing disc(phi) and with no place in
/// `excluded`, such that phi splits into distinct linear factors mod p.
Integer split_completely_search(const FieldPtr& field, const PlaceSet& excluded, long cap = 1000000);

/// The first `count` odd places (increasing p, canonical order above p)
/// outside `excluded` with v(a) = 0 and a a residue square.
std::vector<Place> split_in_quadratic_search(const NfElement& a, const PlaceSet& excluded, int count,
                                             long cap = 1000000);

}  // namespace chatelet
