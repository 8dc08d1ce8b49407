#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chatelet/surface.hpp"

namespace chatelet {

enum class ConditionKind {
  Symbol,       // (x, y)_place == expected
  ValuationEq,  // v_place(x) == expected
  ValuationGe,  // v_place(x) >= expected
  LocalSquare,  // x is a square at place iff expected == 1
  TwoRSquare,   // x is a square at every dyadic and real place
  Eisenstein,   // x t^2 - y is Eisenstein at place: v(x) = 0, v(y) = 1
};

std::string to_string(ConditionKind k);
ConditionKind condition_kind_from_string(const std::string& s);

struct Condition {
  ConditionKind kind = ConditionKind::Symbol;
  std::string label;
  NfElement x;
  NfElement y;
  std::optional<Place> place;
  int expected = 1;
};

/// Recomputes the condition from scratch.
bool recheck(const Condition& c);

struct ConstructionTrace {
  std::vector<std::pair<std::string, NfElement>> constants;
  std::vector<std::pair<std::string, Place>> places;
  std::vector<std::pair<std::string, std::vector<Place>>> sets;
  std::vector<Condition> conditions;

  /// Labels of conditions that fail to re-verify (empty when all hold).
  std::vector<std::string> failures() const;
  bool verify() const { return failures().empty(); }
};

/// Integral a with v0(a) = 1 that is a square at every dyadic place and
/// positive at every real place.
NfElement construct_a(const FieldPtr& K, const Place& v0);

struct ViolatingConstruction {
  ChateletSurface surface;
  ConstructionTrace trace;
  SolvabilityReport report;
};

/// y^2 - a z^2 = b (x^4 - a c), solvable at every place except v0.
ViolatingConstruction construct_violating_surface(const FieldPtr& K, const NfElement& a, const Place& v0);

struct CounterexampleConstruction {
  SplitChatelet surface;
  ConstructionTrace trace;
  SolvabilityReport report;
  BmCertificate brauer;
};

/// y^2 - a z^2 = (x^2 - c)(b x^2 - b c - 1) over L: everywhere locally
/// solvable with Brauer-Manin sum 1/2.
CounterexampleConstruction construct_hp_counterexample(const FieldPtr& L, const NfElement& a, const Place& w0);

/// Odd places of the field of `a` with v(a) != 0, in canonical order.
std::vector<Place> odd_support(const NfElement& a);

/// Coefficients of S pushed into M. Only K = Q (canonical embedding) or
/// K = M (identity) are supported; otherwise std::invalid_argument.
ChateletSurface base_change_surface(const ChateletSurface& S, const FieldPtr& M);

/// a viewed in M, under the same embeddings as base_change_surface.
NfElement base_change(const NfElement& a, const FieldPtr& M);

}  // namespace chatelet
