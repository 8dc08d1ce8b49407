#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chatelet/hilbert.hpp"
#include "chatelet/number_field.hpp"

namespace chatelet {

using NfPoly = Polynomial<NfElement>;

/// A real place of a proper extension with a < 0 there, or another local
/// question outside the supported range.
class UnsupportedLocalQuestion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certificate that does not re-verify.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// y^2 - a z^2 = P(x) with P = A x^4 + B x^3 + C x^2 + D x + E, glued with
/// the chart y'^2 - a z'^2 = P*(x') along x' = 1/x.
class ChateletSurface {
 public:
  /// Requires a != 0, deg P = 4 and P, P* separable.
  ChateletSurface(NfElement a, NfPoly P);
  /// Coefficients (A, B, C, D, E), highest degree first.
  static ChateletSurface from_coefficients(const NfElement& a, const std::vector<NfElement>& abcde);

  const FieldPtr& field() const { return a_.field(); }
  const NfElement& a() const { return a_; }
  const NfPoly& P() const { return P_; }
  NfPoly P_star() const;
  /// Coefficient of x^(4 - i): i = 0 is A, i = 4 is E.
  NfElement coefficient(int i) const;
  bool is_smooth() const;
  std::string str() const;

 private:
  NfElement a_;
  NfPoly P_;
};

/// y^2 - a z^2 = (x^2 - c)(b x^2 - b c - 1).
class SplitChatelet {
 public:
  /// Requires a, b, c != 0 and a smooth product.
  SplitChatelet(NfElement a, NfElement b, NfElement c);

  const FieldPtr& field() const { return a_.field(); }
  const NfElement& a() const { return a_; }
  const NfElement& b() const { return b_; }
  const NfElement& c() const { return c_; }
  NfPoly first_factor() const;
  NfPoly second_factor() const;
  const ChateletSurface& surface() const { return surface_; }

 private:
  NfElement a_, b_, c_;
  ChateletSurface surface_;
};

/// x in the affine chart, or x' = 1/x in the chart at infinity.
struct LocalPoint {
  bool at_infinity = false;
  NfElement x;
};

/// Value of P (or P* at infinity) at the point.
NfElement evaluate_at(const ChateletSurface& S, const LocalPoint& pt);

/// Ball {x : v(x - center) >= radius} in one chart, with the common symbol
/// (a, P(x)) on it (0 when undecided).
struct Ball {
  bool at_infinity = false;
  NfElement center;
  int radius = 0;
  int symbol = 0;
};

enum class Verdict { Solvable, Insolvable, GoodReduction };

enum class DecisionReason {
  LocalSquare,    // a is a square at w
  GoodReduction,  // units at an odd place
  Witness,        // (a, P(x0)) = +1
  Root,           // P(x0) = 0
  RealSign,       // real place: P < 0 everywhere while a < 0
  CaseTable,      // every ball of the cover has symbol -1
};

std::string to_string(Verdict v);
std::string to_string(DecisionReason r);
Verdict verdict_from_string(const std::string& s);
DecisionReason reason_from_string(const std::string& s);

struct LocalDecision {
  Place place;
  Verdict verdict = Verdict::Solvable;
  DecisionReason reason = DecisionReason::LocalSquare;
  std::optional<LocalPoint> witness;
  /// Insolvable: a cover of both charts by balls of symbol -1.
  std::vector<Ball> table;
  std::string note;

  bool solvable() const { return verdict != Verdict::Insolvable; }
};

struct LocalSearchOptions {
  /// Explore every ball instead of stopping at the first witness.
  bool exhaustive = false;
  int max_depth = 40;
  long max_balls = 400000;
};

/// Result of an exhaustive search: decided leaves and sample points.
struct LocalExploration {
  std::vector<Ball> leaves;
  std::vector<LocalPoint> points;
};

bool good_reduction_solvable(const ChateletSurface& S, const Place& w);

LocalDecision has_local_point(const ChateletSurface& S, const Place& w);

/// Exhaustive ball search at a finite place; points are centers and one
/// further element of each +1 ball together with Hensel witnesses.
LocalExploration explore_local_points(const ChateletSurface& S, const Place& w,
                                      const LocalSearchOptions& opts = LocalSearchOptions{true});

/// Rechecks a decision from its own data; throws CertificateError.
void verify_decision(const ChateletSurface& S, const LocalDecision& d);

/// Rational primes whose places must be decided one by one, with the
/// quantities they come from.
struct BadSet {
  std::vector<std::pair<std::string, Rational>> sources;
  std::vector<Integer> primes;  // odd, ascending
};

BadSet solvability_bad_set(const ChateletSurface& S);

struct SolvabilityReport {
  BadSet bad_set;
  std::vector<LocalDecision> decisions;  // archimedean, dyadic, then odd bad places
  bool everywhere_solvable = true;
  std::vector<Place> failing;
};

SolvabilityReport global_solvability_report(const ChateletSurface& S);

/// Recomputes the bad set, checks that every place over it is decided
/// exactly once, rechecks each decision and the failing list. Throws
/// CertificateError naming the offending place.
void verify_report(const ChateletSurface& S, const SolvabilityReport& r);

/// Invariant of the class (a, x^2 - c) at a local point. Throws
/// CertificateError when the two representatives disagree.
LocalInvariant brauer_local_invariant(const SplitChatelet& S, const Place& w, const LocalPoint& pt);

enum class BmReason { LocalSquare, GoodPlace, Sampled };
std::string to_string(BmReason r);
BmReason bm_reason_from_string(const std::string& s);

struct BmPlaceEntry {
  Place place;
  LocalInvariant invariant;
  BmReason reason = BmReason::Sampled;
  std::size_t samples = 0;
  std::vector<LocalPoint> points;  // retained samples, at most kRetainedSamples
};

constexpr std::size_t kRetainedSamples = 4;

struct BmCertificate {
  BadSet bad_set;  // primes of a, and of the denominators of a, b, c
  std::vector<BmPlaceEntry> entries;
  LocalInvariant total;
  /// total = 1/2: no adelic point is orthogonal to the class.
  bool obstruction() const { return total.is_half(); }
};

BadSet brauer_bad_set(const SplitChatelet& S);

/// Requires an everywhere-solvable surface (CertificateError otherwise).
/// Throws CertificateError when the invariant varies at a place.
BmCertificate bm_sum_certificate(const SplitChatelet& S);

/// Coverage of the Brauer bad set, local squares, invariants at the
/// retained points and the total. Throws CertificateError.
void verify_bm_certificate(const SplitChatelet& S, const BmCertificate& cert);

}  // namespace chatelet
