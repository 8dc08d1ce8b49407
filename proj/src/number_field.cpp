#include "chatelet/number_field.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "chatelet/integer_factor.hpp"

namespace chatelet {

namespace {

void check_field(const NfElement& a, const NfElement& b) {
  if (!a.field() || !b.field()) throw std::invalid_argument("number field element without a field");
  if (a.field() != b.field() && !a.field()->same_as(*b.field())) {
    throw std::invalid_argument("mixed coefficient domains (different number fields)");
  }
}

Integer common_denominator(const QPoly& f) {
  Integer d = 1;
  for (const auto& c : f.coefficients()) {
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.denominator().get_mpz_t());
  }
  return d;
}

bool p_integral(const QPoly& f, const Integer& p) {
  for (const auto& c : f.coefficients()) {
    if (mpz_divisible_p(c.denominator().get_mpz_t(), p.get_mpz_t())) return false;
  }
  return true;
}

Integer ipow(const Integer& b, int e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (const auto& pp : factor_integer(n)) {
    const std::size_t k = ds.size();
    Integer pk = 1;
    for (int i = 1; i <= pp.exponent; ++i) {
      pk *= pp.prime;
      for (std::size_t j = 0; j < k; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

bool is_square_integer(const Integer& n, Integer& root) {
  if (n < 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root * root == n;
}

// Trial test for an integer root or (degree 4) a monic integer quadratic
// factor of a monic integer polynomial. Gauss's lemma makes this complete
// for degree <= 4.
bool has_small_factor(const QPoly& phi) {
  const int m = phi.degree();
  const Integer c0 = phi.coeff(0, Rational(0)).numerator();
  if (c0 == 0) return true;
  for (const auto& d : divisors(c0)) {
    for (int s : {1, -1}) {
      if (phi.evaluate(Rational(Integer(d * s))).is_zero()) return true;
    }
  }
  if (m != 4) return false;
  const Integer a3 = phi.coeff(3, Rational(0)).numerator();
  const Integer a2 = phi.coeff(2, Rational(0)).numerator();
  const Integer a1 = phi.coeff(1, Rational(0)).numerator();
  for (const auto& d : divisors(c0)) {
    for (int s : {1, -1}) {
      const Integer c1 = d * s;
      const Integer c2 = c0 / c1;
      std::vector<Integer> b1s;
      if (c1 != c2) {
        const Integer num = a1 - a3 * c1;
        const Integer den = c2 - c1;
        if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) b1s.push_back(num / den);
      } else if (a1 == a3 * c1) {
        // b1 (a3 - b1) = a2 - 2 c1
        const Integer disc = a3 * a3 - 4 * (a2 - 2 * c1);
        Integer r;
        if (is_square_integer(disc, r)) {
          for (const Integer& cand : {Integer(a3 + r), Integer(a3 - r)}) {
            if (mpz_even_p(cand.get_mpz_t())) b1s.push_back(cand / 2);
          }
        }
      }
      for (const auto& b1 : b1s) {
        const Integer b2 = a3 - b1;
        if (c1 + c2 + b1 * b2 == a2 && b1 * c2 + b2 * c1 == a1) return true;
      }
    }
  }
  return false;
}

std::set<int> subset_sums(const std::vector<int>& degs) {
  std::set<int> s{0};
  for (int d : degs) {
    std::set<int> next = s;
    for (int x : s) next.insert(x + d);
    s = std::move(next);
  }
  return s;
}

std::string certify_irreducible(const QPoly& phi) {
  const int m = phi.degree();
  if (m == 1) return "degree 1";
  const Integer disc_num = discriminant(phi).numerator();
  std::set<int> possible;
  for (int d = 0; d <= m; ++d) possible.insert(d);
  Integer p = 1;
  for (int tried = 0; tried < 60;) {
    p = next_prime(p);
    if (mpz_divisible_p(disc_num.get_mpz_t(), p.get_mpz_t())) continue;
    ++tried;
    const auto fs = factor_mod_p(reduce_mod_p(phi, p.get_ui()));
    if (fs.size() == 1) return "irreducible mod " + p.get_str();
    std::vector<int> degs;
    for (const auto& fa : fs) degs.push_back(fa.factor.degree());
    const auto sums = subset_sums(degs);
    std::set<int> inter;
    std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(),
                          std::inserter(inter, inter.begin()));
    possible = std::move(inter);
    if (possible.size() == 2) return "factor degree patterns mod primes up to " + p.get_str();
  }
  if (m <= 4) {
    if (has_small_factor(phi)) throw std::invalid_argument("defining polynomial is reducible over Q");
    return "no rational root or quadratic factor";
  }
  return "";
}

}  // namespace

// ---------------------------------------------------------------- fields

FieldPtr NumberField::create(const QPoly& phi, bool assume_irreducible) {
  if (phi.degree() < 1) throw std::invalid_argument("defining polynomial must have positive degree");
  if (phi.leading() != Rational(1)) throw std::invalid_argument("defining polynomial must be monic");
  for (const auto& c : phi.coefficients()) {
    if (!c.is_integer()) throw std::invalid_argument("defining polynomial must have integer coefficients");
  }
  if (phi.degree() > 1 && !is_separable(phi)) throw std::invalid_argument("defining polynomial is reducible over Q");
  std::shared_ptr<NumberField> field(new NumberField());
  field->phi_ = phi;
  field->disc_ = discriminant(phi);
  field->r1_ = real_root_count(phi);
  field->r2_ = (phi.degree() - field->r1_) / 2;
  std::string proof = certify_irreducible(phi);
  if (proof.empty()) {
    if (!assume_irreducible) {
      throw std::invalid_argument("could not certify irreducibility of the defining polynomial; pass the assume flag");
    }
    proof = "assumed";
  }
  field->irreducibility_proof_ = proof;
  return field;
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = create(QPoly(std::vector<Rational>{Rational(0), Rational(1)}));
  return q;
}

// -------------------------------------------------------------- elements

NfElement::NfElement(FieldPtr field, const Rational& c) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("number field element without a field");
  rep_ = QPoly::constant(c);
}

NfElement::NfElement(FieldPtr field, QPoly rep) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("number field element without a field");
  rep_ = rep.degree() >= field_->degree() ? rep % field_->min_poly() : std::move(rep);
}

NfElement NfElement::theta(FieldPtr field) {
  return NfElement(field, QPoly(std::vector<Rational>{Rational(0), Rational(1)}));
}

Rational NfElement::to_rational() const {
  if (!is_rational()) throw std::domain_error("element is not rational");
  return rep_.coeff(0, Rational(0));
}

bool NfElement::in_z_theta() const {
  return std::all_of(rep_.coefficients().begin(), rep_.coefficients().end(),
                     [](const Rational& c) { return c.is_integer(); });
}

NfElement operator+(const NfElement& a, const NfElement& b) {
  check_field(a, b);
  return NfElement(a.field_, a.rep_ + b.rep_);
}

NfElement operator-(const NfElement& a, const NfElement& b) {
  check_field(a, b);
  return NfElement(a.field_, a.rep_ - b.rep_);
}

NfElement operator*(const NfElement& a, const NfElement& b) {
  check_field(a, b);
  return NfElement(a.field_, (a.rep_ * b.rep_) % a.field_->min_poly());
}

NfElement operator/(const NfElement& a, const NfElement& b) { return a * inverse(b); }

NfElement NfElement::operator-() const { return NfElement(field_, -rep_); }

bool operator==(const NfElement& a, const NfElement& b) {
  check_field(a, b);
  return a.rep_ == b.rep_;
}

NfElement NfElement::pow(long e) const {
  if (e < 0) return inverse(*this).pow(-e);
  NfElement result(field_, Rational(1));
  NfElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::vector<std::string> NfElement::coefficient_strings() const {
  std::vector<std::string> out;
  for (const auto& c : rep_.coefficients()) out.push_back(c.str());
  return out;
}

std::string NfElement::str() const {
  if (rep_.degree() <= 0) return to_rational().str();
  std::string s;
  const auto& c = rep_.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    std::string term = c[i].str();
    if (i > 0) {
      const std::string mono = i == 1 ? "th" : "th^" + std::to_string(i);
      term = c[i] == Rational(1) ? mono : (c[i] == Rational(-1) ? "-" + mono : term + "*" + mono);
    }
    if (!s.empty()) s += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else s = term;
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const NfElement& a) { return os << a.str(); }

NfElement inverse(const NfElement& x) {
  if (x.is_zero()) throw std::domain_error("inverse of zero in a number field");
  if (x.rep().degree() == 0) return NfElement(x.field(), inverse(x.rep().leading()));
  return NfElement(x.field(), poly_inverse_mod(x.rep(), x.field()->min_poly()));
}

NfElement mul_int(const NfElement& x, long n) { return NfElement(x.field(), Rational(n) * x.rep()); }

Rational norm(const NfElement& a) {
  if (a.is_zero()) return Rational(0);
  return resultant(a.field()->min_poly(), a.rep());
}

// ---------------------------------------------------------------- places

Place Place::real(FieldPtr field, int root_index) {
  if (root_index < 0 || root_index >= field->r1()) throw std::out_of_range("real place index out of range");
  Place w;
  w.kind_ = PlaceKind::Real;
  w.field_ = std::move(field);
  w.index_ = root_index;
  return w;
}

Place Place::complex(FieldPtr field, int pair_index) {
  if (pair_index < 0 || pair_index >= field->r2()) throw std::out_of_range("complex place index out of range");
  Place w;
  w.kind_ = PlaceKind::Complex;
  w.field_ = std::move(field);
  w.index_ = pair_index;
  return w;
}

Place Place::finite(std::shared_ptr<const FinitePlaceData> data) {
  Place w;
  w.kind_ = PlaceKind::Finite;
  w.field_ = data->field;
  w.index_ = data->index;
  w.data_ = std::move(data);
  return w;
}

const FinitePlaceData& Place::data() const {
  if (!data_) throw std::logic_error("finite place data requested for an archimedean place");
  return *data_;
}

bool Place::is_dyadic() const { return is_finite() && data().p == 2; }
const Integer& Place::p() const { return data().p; }
std::uint64_t Place::p64() const { return data().p64; }
int Place::e() const { return data().e; }
int Place::f() const { return data().f; }
const FpPoly& Place::local_factor() const { return data().g; }
Integer Place::q() const { return ipow(p(), f()); }

std::string Place::label() const {
  switch (kind_) {
    case PlaceKind::Real: return "real:" + std::to_string(index_);
    case PlaceKind::Complex: return "complex:" + std::to_string(index_);
    case PlaceKind::Finite: break;
  }
  if (field_->is_rationals()) return p().get_str();
  std::string s = p().get_str() + ":";
  const auto& c = local_factor().coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i].value());
  return s;
}

bool operator==(const Place& a, const Place& b) {
  if (a.kind_ != b.kind_) return false;
  if (!a.field_->same_as(*b.field_)) return false;
  if (a.kind_ != PlaceKind::Finite) return a.index_ == b.index_;
  return a.p() == b.p() && a.local_factor() == b.local_factor();
}

bool place_less(const Place& a, const Place& b) {
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind());
  if (!a.is_finite()) return a.index() < b.index();
  if (a.p() != b.p()) return a.p() < b.p();
  return canonical_less(a.local_factor(), b.local_factor());
}

bool PlaceSet::add(const Place& w, const std::string& label) {
  if (contains(w)) return false;
  places_.push_back(w);
  labels_.push_back(label);
  return true;
}

bool PlaceSet::contains(const Place& w) const {
  return std::any_of(places_.begin(), places_.end(), [&](const Place& x) { return x == w; });
}

bool PlaceSet::contains_prime(const Integer& p) const {
  return std::any_of(places_.begin(), places_.end(),
                     [&](const Place& x) { return x.is_finite() && x.p() == p; });
}

std::vector<Place> decompose_prime(const FieldPtr& field, const Integer& p) {
  if (!is_probable_prime(p)) throw std::invalid_argument(p.get_str() + " is not a prime");
  if (mpz_sizeinbase(p.get_mpz_t(), 2) > 62) {
    throw UnsupportedPrime("prime " + p.get_str() + " exceeds the residue arithmetic word size");
  }
  const std::uint64_t p64 = p.get_ui();
  const QPoly& phi = field->min_poly();
  const FpPoly phi_bar = reduce_mod_p(phi, p64);
  const auto factors = factor_mod_p(phi_bar);

  QPoly prod = QPoly::constant(Rational(1));
  for (const auto& fa : factors) prod *= lift(fa.factor).pow(static_cast<unsigned>(fa.multiplicity));
  const FpPoly f_bar = reduce_mod_p(Rational(Integer(1), p) * (phi - prod), p64);
  for (const auto& fa : factors) {
    if (fa.multiplicity >= 2 && (f_bar % fa.factor).is_zero()) {
      throw UnsupportedPrime("prime " + p.get_str() + " divides the index of Z[theta] (Dedekind criterion)");
    }
  }

  std::vector<Place> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& fa = factors[i];
    auto d = std::make_shared<FinitePlaceData>();
    d->field = field;
    d->p = p;
    d->p64 = p64;
    d->g = fa.factor;
    d->g_lift = lift(fa.factor);
    d->e = fa.multiplicity;
    d->f = fa.factor.degree();
    d->index = static_cast<int>(i);
    d->tau = NfElement(field, Rational(Integer(1), p) * lift(phi_bar / fa.factor));
    d->pi = d->e == 1 ? NfElement(field, Rational(p)) : NfElement(field, d->g_lift);
    d->cofactor = NfElement(field, lift(phi_bar / fa.factor.pow(static_cast<unsigned>(fa.multiplicity))));
    Place w = Place::finite(d);
    if (valuation(d->pi, w) != 1) throw std::logic_error("uniformizer check failed above " + p.get_str());
    out.push_back(std::move(w));
  }
  int total = 0;
  for (const auto& w : out) total += w.e() * w.f();
  if (total != field->degree()) throw std::logic_error("sum of e*f differs from the field degree");
  return out;
}

std::vector<Place> infinite_places(const FieldPtr& field) {
  std::vector<Place> out;
  for (int k = 0; k < field->r1(); ++k) out.push_back(Place::real(field, k));
  for (int k = 0; k < field->r2(); ++k) out.push_back(Place::complex(field, k));
  return out;
}

std::vector<Place> dyadic_places(const FieldPtr& field) { return decompose_prime(field, Integer(2)); }

Place find_place(const FieldPtr& field, const Integer& p, const std::vector<Integer>& factor) {
  const auto places = decompose_prime(field, p);
  if (factor.empty()) {
    if (places.size() == 1) return places.front();
    throw std::invalid_argument("several places above " + p.get_str() + "; give the local factor");
  }
  for (const auto& w : places) {
    const auto& c = w.local_factor().coefficients();
    if (c.size() != factor.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (Integer(static_cast<unsigned long>(c[i].value())) != mod_floor(factor[i], p)) same = false;
    }
    if (same) return w;
  }
  throw std::invalid_argument("no place above " + p.get_str() + " with that local factor");
}

// ------------------------------------------------------------ valuations

namespace {

void require_finite(const NfElement& a, const Place& w) {
  if (!w.is_finite()) throw std::invalid_argument("finite place required");
  if (!a.field()->same_as(*w.field())) throw std::invalid_argument("element and place belong to different fields");
}

// Image in F_p[x]/(g) of an element that is integral at w.
FiniteFieldElem reduce_local(const NfElement& a, const Place& w) {
  // The cofactor is a unit at w and lies in every other prime above p, so
  // enough powers of it clear the p-denominators.
  const auto& d = w.data();
  const FiniteFieldElem s(d.g, reduce_mod_p(d.cofactor.rep(), d.p64));
  FiniteFieldElem den(d.g, FpPoly::constant(Fp(1, d.p64)));
  NfElement y = a;
  for (int guard = 0; !p_integral(y.rep(), d.p); ++guard) {
    if (guard > 10000) throw std::logic_error("residue reduction did not converge");
    y = y * d.cofactor;
    den = den * s;
  }
  return FiniteFieldElem(d.g, reduce_mod_p(y.rep(), d.p64)) * den.inverse();
}

}  // namespace

int valuation(const NfElement& a, const Place& w) {
  require_finite(a, w);
  if (a.is_zero()) return kInfiniteValuation;
  const auto& d = w.data();
  const Integer den = common_denominator(a.rep());
  QPoly b = Rational(den) * a.rep();
  int v = -d.e * valuation(den, d.p);
  Integer content = 0;
  for (const auto& c : b.coefficients()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.numerator().get_mpz_t());
  const int s = valuation(content, d.p);
  if (s > 0) {
    b = Rational(Integer(1), ipow(d.p, s)) * b;
    v += d.e * s;
  }
  NfElement x(a.field(), b);
  for (;;) {
    NfElement y = x * d.tau;
    if (!p_integral(y.rep(), d.p)) break;
    x = std::move(y);
    ++v;
  }
  return v;
}

NfElement unit_part(const NfElement& a, const Place& w) {
  const int v = valuation(a, w);
  if (v == kInfiniteValuation) throw std::domain_error("unit part of zero");
  return a * w.data().tau.pow(v);
}

FiniteFieldElem reduce(const NfElement& a, const Place& w) {
  const int v = valuation(a, w);
  if (v < 0) throw std::domain_error("reduction of an element with negative valuation at " + w.label());
  const auto& d = w.data();
  if (v > 0) return FiniteFieldElem(d.g, FpPoly{});
  return reduce_local(a, w);
}

FiniteFieldElem unit_residue(const NfElement& a, const Place& w) { return reduce_local(unit_part(a, w), w); }

int real_sign(const NfElement& a, const Place& w) {
  if (!w.is_real()) throw std::invalid_argument("real place required");
  return sign_at_root(a.rep(), a.field()->min_poly(), w.index());
}

NfElement lift_residue(const Place& w, const FpPoly& r) { return NfElement(w.field(), lift(r)); }

std::vector<NfElement> residue_representatives(const Place& w, int k) {
  const auto& d = w.data();
  const auto digits = enumerate_residues(d.p64, d.f);
  std::vector<NfElement> lifts;
  for (const auto& r : digits) lifts.push_back(lift_residue(w, r));
  std::vector<NfElement> reps{NfElement(w.field(), Rational(0))};
  NfElement pik(w.field(), Rational(1));
  for (int i = 0; i < k; ++i) {
    std::vector<NfElement> next;
    next.reserve(reps.size() * lifts.size());
    for (const auto& x : reps) {
      for (const auto& l : lifts) next.push_back(x + l * pik);
    }
    reps = std::move(next);
    pik = pik * d.pi;
  }
  return reps;
}

bool is_local_square(const NfElement& a, const Place& w) {
  if (a.is_zero()) throw std::domain_error("local square test of zero");
  switch (w.kind()) {
    case PlaceKind::Real: return real_sign(a, w) > 0;
    case PlaceKind::Complex: return true;
    case PlaceKind::Finite: break;
  }
  const int v = valuation(a, w);
  if (v % 2 != 0) return false;
  if (!w.is_dyadic()) return unit_residue(a, w).quadratic_character() == 1;
  // u is a square iff x^2 = u mod p^{2e+1} is solvable; x mod p^{e+1} suffices.
  const NfElement u = unit_part(a, w);
  const int need = 2 * w.e() + 1;
  for (const auto& x : residue_representatives(w, w.e() + 1)) {
    if (valuation(x * x - u, w) >= need) return true;
  }
  return false;
}

bool is_2R_local_square(const NfElement& a) {
  for (const auto& w : dyadic_places(a.field())) {
    if (!is_local_square(a, w)) return false;
  }
  for (const auto& w : infinite_places(a.field())) {
    if (w.is_real() && !is_local_square(a, w)) return false;
  }
  return true;
}

// ---------------------------------------------------------- approximation

bool satisfies(const NfElement& a, const ApproximationProblem& prob) {
  if (a.is_zero() || !a.in_z_theta()) return false;
  for (const auto& c : prob.congruences) {
    if (c.precision > 0 && valuation(a - c.target, c.place) < c.precision) return false;
  }
  for (const auto& pin : prob.pins) {
    if (valuation(a, pin.place) != pin.valuation) return false;
  }
  for (const auto& s : prob.signs) {
    if (real_sign(a, s.place) != s.sign) return false;
  }
  return true;
}

namespace {

struct Requirement {
  Place place;
  NfElement target;
  int precision;
};

// Coefficientwise reduction of a p-integral element into [0, m).
QPoly reduce_coefficients(const QPoly& f, const Integer& m) {
  std::vector<Rational> v;
  for (const auto& c : f.coefficients()) v.emplace_back(mod_reduce(c, m));
  return QPoly(std::move(v));
}

// Element of Z[theta] congruent to 1 at w and to 0 at the other places
// above p, modulo p^n.
NfElement idempotent(const Place& w, const std::vector<Place>& above, int n) {
  const auto& d = w.data();
  std::vector<CrtPair<Fp>> pairs;
  for (const auto& x : above) {
    const FpPoly mod = x.local_factor().pow(static_cast<unsigned>(x.e()));
    const bool here = x == w;
    pairs.push_back({mod, here ? FpPoly::constant(Fp(1, d.p64)) : FpPoly{}});
  }
  const Integer pn = ipow(d.p, n);
  NfElement eps(w.field(), lift(crt_interpolate(pairs)));
  for (int prec = 1; prec < n; prec *= 2) {
    const NfElement e2 = eps * eps;
    eps = NfElement(w.field(), reduce_coefficients((mul_int(e2, 3) - mul_int(e2 * eps, 2)).rep(), pn));
  }
  const NfElement defect = eps * eps - eps;
  for (const auto& c : defect.rep().coefficients()) {
    if (!mpz_divisible_p(c.numerator().get_mpz_t(), pn.get_mpz_t())) {
      throw std::logic_error("idempotent lift failed");
    }
  }
  return eps;
}

Integer crt_integer(const Integer& x, const Integer& m1, const Integer& y, const Integer& m2) {
  Integer inv;
  mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  return x + m1 * mod_floor((y - x) * inv, m2);
}

}  // namespace

NfElement approximate(const FieldPtr& field, const ApproximationProblem& prob) {
  if (!prob.signs.empty() && !field->is_rationals()) {
    throw std::invalid_argument("sign conditions are only supported over Q");
  }
  std::vector<Requirement> reqs;
  auto locate = [&](const Place& w) -> Requirement* {
    for (auto& r : reqs) {
      if (r.place == w) return &r;
    }
    return nullptr;
  };
  for (const auto& c : prob.congruences) {
    if (!c.place.is_finite()) throw std::invalid_argument("congruence at an archimedean place");
    if (c.precision <= 0) continue;
    const int vt = valuation(c.target, c.place);
    if (vt < 0) throw ContradictoryConditions("integral element cannot approximate a non-integral target at " + c.place.label());
    Requirement* r = locate(c.place);
    if (!r) {
      reqs.push_back({c.place, c.target, c.precision});
      continue;
    }
    const int k = std::min(r->precision, c.precision);
    if (valuation(r->target - c.target, c.place) < k) {
      throw ContradictoryConditions("incompatible congruences at " + c.place.label());
    }
    if (c.precision > r->precision) {
      r->target = c.target;
      r->precision = c.precision;
    }
  }
  std::vector<ValuationPin> pins;
  for (const auto& pin : prob.pins) {
    if (!pin.place.is_finite()) throw std::invalid_argument("valuation pin at an archimedean place");
    if (pin.valuation < 0) throw ContradictoryConditions("negative valuation pin for an integral element");
    for (const auto& other : pins) {
      if (other.place == pin.place && other.valuation != pin.valuation) {
        throw ContradictoryConditions("two different valuations pinned at " + pin.place.label());
      }
    }
    pins.push_back(pin);
  }
  for (const auto& pin : pins) {
    const int j = pin.valuation;
    const NfElement pij = pin.place.data().pi.pow(j);
    Requirement* r = locate(pin.place);
    if (!r) {
      reqs.push_back({pin.place, pij, j + 1});
      continue;
    }
    const int vr = valuation(r->target, pin.place);
    if (r->precision > j) {
      if (vr != j) throw ContradictoryConditions("valuation pin contradicts a congruence at " + pin.place.label());
    } else {
      if (vr < r->precision) throw ContradictoryConditions("valuation pin contradicts a congruence at " + pin.place.label());
      r->target = pij;
      r->precision = j + 1;
    }
  }
  int sign = 0;
  for (const auto& s : prob.signs) {
    if (!s.place.is_real()) throw std::invalid_argument("sign condition needs a real place");
    if (s.sign != 1 && s.sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if (sign != 0 && sign != s.sign) throw ContradictoryConditions("conflicting sign conditions");
    sign = s.sign;
  }

  std::vector<Integer> primes;
  for (const auto& r : reqs) {
    if (std::find(primes.begin(), primes.end(), r.place.p()) == primes.end()) primes.push_back(r.place.p());
  }
  std::sort(primes.begin(), primes.end());

  const int m = field->degree();
  std::vector<Integer> coeffs(static_cast<std::size_t>(m), Integer(0));
  Integer modulus = 1;
  for (const auto& p : primes) {
    const auto above = decompose_prime(field, p);
    int n = 1;
    for (const auto& r : reqs) {
      if (r.place.p() == p) n = std::max(n, (r.precision + r.place.e() - 1) / r.place.e());
    }
    const Integer pn = ipow(p, n);
    NfElement xp(field, Rational(0));
    for (const auto& r : reqs) {
      if (r.place.p() != p) continue;
      // Push the target into Z[theta] with an idempotent concentrated at w.
      NfElement y;
      for (int np = n;; ++np) {
        if (np > n + 64) throw std::logic_error("target localization did not converge");
        y = idempotent(r.place, above, np) * r.target;
        if (p_integral(y.rep(), p)) break;
      }
      y = NfElement(field, reduce_coefficients(y.rep(), pn));
      xp = xp + idempotent(r.place, above, n) * y;
    }
    const QPoly xr = reduce_coefficients(xp.rep(), pn);
    for (int i = 0; i < m; ++i) {
      const Integer c = xr.coeff(i, Rational(0)).numerator();
      coeffs[static_cast<std::size_t>(i)] = crt_integer(coeffs[static_cast<std::size_t>(i)], modulus, c, pn);
    }
    modulus *= pn;
  }
  std::vector<Rational> rc;
  for (const auto& c : coeffs) rc.emplace_back(mod_floor(c, modulus));
  QPoly rep(std::move(rc));
  if (rep.is_zero()) rep = QPoly::constant(Rational(modulus));
  if (sign < 0) rep = rep - QPoly::constant(Rational(modulus));
  NfElement out(field, rep);
  if (!satisfies(out, prob)) throw std::logic_error("approximation output failed verification");
  return out;
}

Integer split_completely_search(const FieldPtr& field, const PlaceSet& excluded, long cap) {
  const Integer disc = field->disc().numerator();
  Integer p = 2;
  for (long i = 0; i < cap; ++i) {
    p = next_prime(p);
    if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
    if (excluded.contains_prime(p)) continue;
    if (distinct_root_count(reduce_mod_p(field->min_poly(), p.get_ui())) == field->degree()) return p;
  }
  throw std::runtime_error("split_completely_search: iteration cap exceeded");
}

std::vector<Place> split_in_quadratic_search(const NfElement& a, const PlaceSet& excluded, int count, long cap) {
  if (a.is_zero()) throw std::invalid_argument("split_in_quadratic_search needs a nonzero element");
  std::vector<Place> out;
  if (count <= 0) return out;
  Integer p = 2;
  for (long i = 0; i < cap; ++i) {
    p = next_prime(p);
    std::vector<Place> places;
    try {
      places = decompose_prime(a.field(), p);
    } catch (const UnsupportedPrime&) {
      continue;
    }
    for (const auto& w : places) {
      if (excluded.contains(w)) continue;
      if (valuation(a, w) != 0) continue;
      if (reduce(a, w).quadratic_character() != 1) continue;
      out.push_back(w);
      if (static_cast<int>(out.size()) == count) return out;
    }
  }
  throw std::runtime_error("split_in_quadratic_search: iteration cap exceeded");
}

}  // namespace chatelet
