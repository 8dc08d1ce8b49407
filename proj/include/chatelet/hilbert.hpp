#pragma once

#include <stdexcept>
#include <string>

#include "chatelet/number_field.hpp"

namespace chatelet {

/// Dyadic place of a proper extension where neither argument is a local
/// square: the general dyadic symbol is not implemented.
class UnsupportedDyadicSymbol : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (alpha, beta)_w in {+1, -1}.
int hilbert_symbol(const NfElement& alpha, const NfElement& beta, const Place& w);

bool conic_solvable(const NfElement& alpha, const NfElement& beta, const Place& w);

/// beta with v_w(beta) = 0 and (alpha, beta)_w = -1: the lift of the first
/// non-square residue in canonical order. Needs w odd and v_w(alpha) odd.
NfElement find_unit_beta(const NfElement& alpha, const Place& w);

/// Element of (1/2)Z/Z.
class LocalInvariant {
 public:
  LocalInvariant() = default;
  static LocalInvariant half() { return LocalInvariant(true); }
  bool is_half() const { return half_; }
  std::string str() const { return half_ ? "1/2" : "0"; }
  static LocalInvariant parse(const std::string& s);
  friend LocalInvariant operator+(LocalInvariant a, LocalInvariant b) { return LocalInvariant(a.half_ != b.half_); }
  friend bool operator==(LocalInvariant a, LocalInvariant b) = default;

 private:
  explicit LocalInvariant(bool h) : half_(h) {}
  bool half_ = false;
};

/// +1 -> 0, -1 -> 1/2.
LocalInvariant local_invariant(int symbol);

}  // namespace chatelet
