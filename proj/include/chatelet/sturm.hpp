#pragma once

#include <utility>
#include <vector>

#include "chatelet/polynomial.hpp"
#include "chatelet/rational.hpp"

namespace chatelet {

using QPoly = Polynomial<Rational>;

/// Sturm sequence f, f', -rem(f, f'), ...
std::vector<QPoly> sturm_sequence(const QPoly& f);

/// Number of distinct real roots of f (f nonzero).
int real_root_count(const QPoly& f);

/// Number of distinct roots of f in the half-open interval (lo, hi].
int real_root_count_in(const QPoly& f, const Rational& lo, const Rational& hi);

/// Isolating interval (lo, hi] for the k-th real root of f (increasing
/// order, k from 0). When the root is rational it may be returned as
/// lo == hi == root.
std::pair<Rational, Rational> isolate_root(const QPoly& f, int k);

/// Sign (-1, 0, +1) of g at the k-th real root of the separable f. Uses
/// exact bisection; 0 means g vanishes at that root.
int sign_at_root(const QPoly& g, const QPoly& f, int k);

}  // namespace chatelet
