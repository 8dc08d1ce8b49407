// Acceptance criteria: one PASS/FAIL line per criterion. Exact arithmetic
// throughout; the only tolerances are the wall-clock limits below.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "chatelet/integer_factor.hpp"
#include "chatelet/pipeline.hpp"
#include "oracles.hpp"

using namespace chatelet;
using oracle::poly;

namespace {

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<bool(std::ostream&)> run;
};

FieldPtr Q() { return NumberField::rationals(); }
NfElement q(const FieldPtr& K, const Rational& r) { return NfElement(K, r); }
Place at(long p) { return decompose_prime(Q(), Integer(p)).front(); }

Rational random_with_valuation(std::mt19937_64& rng, long p, int v) {
  std::uniform_int_distribution<long> d(1, 400);
  long u = 0;
  do {
    u = d(rng);
  } while (u % p == 0);
  long w = 0;
  do {
    w = d(rng) % 9 + 1;
  } while (w % p == 0);
  Rational x = Rational(Integer(rng() % 2 ? u : -u), Integer(w));
  return v >= 0 ? x * Rational(oracle::ipow(p, v)) : x / Rational(oracle::ipow(p, -v));
}

bool criterion_hilbert_oracle(std::ostream& log) {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> val(-3, 3);
  const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29};
  int pairs = 0, mismatches = 0;
  for (long p : primes) {
    for (int i = 0; i < 24; ++i) {
      const Rational alpha = random_with_valuation(rng, p, val(rng));
      const Rational beta = random_with_valuation(rng, p, val(rng));
      const int got = hilbert_symbol(q(Q(), alpha), q(Q(), beta), at(p));
      const int want = oracle::brute_force_hilbert(alpha, beta, p);
      ++pairs;
      if (got != want) {
        ++mismatches;
        log << "  mismatch (" << alpha << ", " << beta << ")_" << p << ": " << got << " vs " << want << "\n";
      }
    }
  }
  log << "  " << pairs << " pairs over p <= 29, " << mismatches << " mismatches\n";
  return pairs >= 200 && mismatches == 0;
}

bool criterion_product_formula(std::ostream& log) {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 60);
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    Rational alpha, beta;
    do {
      alpha = Rational(Integer(num(rng)), Integer(den(rng)));
      beta = Rational(Integer(num(rng)), Integer(den(rng)));
    } while (alpha.is_zero() || beta.is_zero());
    std::vector<Integer> primes{2};
    for (const Rational& x : {alpha, beta}) {
      for (const auto& p : prime_support(x)) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    int product = hilbert_symbol(q(Q(), alpha), q(Q(), beta), infinite_places(Q()).front());
    for (const auto& p : primes) product *= hilbert_symbol(q(Q(), alpha), q(Q(), beta), decompose_prime(Q(), p).front());
    if (product != 1) {
      ++bad;
      log << "  product " << product << " for (" << alpha << ", " << beta << ")\n";
    }
  }
  log << "  50 pairs, " << bad << " violations\n";
  return bad == 0;
}

bool criterion_shift_and_constancy(std::ostream& log) {
  std::mt19937_64 rng(1003);
  const FieldPtr Qi = NumberField::create(poly({1, 0, 1}));
  std::vector<Place> places;
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    for (const auto& w : decompose_prime(Q(), Integer(p))) places.push_back(w);
    for (const auto& w : decompose_prime(Qi, Integer(p))) places.push_back(w);
  }
  std::uniform_int_distribution<long> coef(-30, 30);
  std::uniform_int_distribution<int> val(0, 3), gap(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, places.size() - 1);
  const auto random_element = [&](const FieldPtr& K, const Place& w, int v) {
    for (;;) {
      std::vector<Rational> c;
      for (int i = 0; i < K->degree(); ++i) c.emplace_back(coef(rng));
      const NfElement u(K, QPoly(std::move(c)));
      if (!u.is_zero() && valuation(u, w) == 0) return u * w.data().pi.pow(v);
    }
  };
  int shift_bad = 0, const_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Place& w = places[pick(rng)];
    const FieldPtr& K = w.field();
    const NfElement alpha = random_element(K, w, val(rng));
    const int vb = val(rng);
    const NfElement beta = random_element(K, w, vb);
    const NfElement beta1 = random_element(K, w, vb + gap(rng));
    const int s = hilbert_symbol(alpha, beta, w);
    if (hilbert_symbol(alpha, beta + beta1, w) != s || hilbert_symbol(alpha, beta - beta1, w) != s) ++shift_bad;
    // beta'' = beta mod p^{v(beta) + 2}
    const NfElement beta2 = beta + random_element(K, w, vb + 2 + gap(rng) - 1);
    if (hilbert_symbol(alpha, beta2, w) != s) ++const_bad;
  }
  log << "  100 instances over Q and Q(i): shift violations " << shift_bad << ", constancy violations " << const_bad << "\n";
  return shift_bad == 0 && const_bad == 0;
}

bool criterion_violating_surface(std::ostream& log) {
  const Place v5 = at(5);
  const NfElement a = construct_a(Q(), v5);
  const auto res = construct_violating_surface(Q(), a, v5);
  verify_report(res.surface, res.report);
  log << "  a = " << a << ", surface " << res.surface.str() << "\n";
  bool ok = a == q(Q(), Rational(105)) && res.trace.verify();
  ok = ok && res.report.failing.size() == 1 && res.report.failing.front() == v5;
  std::vector<Integer> c;
  for (int i = 0; i < 5; ++i) c.push_back(res.surface.coefficient(i).to_rational().numerator());
  const Integer an = a.to_rational().numerator();
  const bool brute5 = oracle::brute_force_local(an, c, 5, 5);
  log << "  failing places: " << res.report.failing.size() << "; brute force mod 5^5 finds a point: " << brute5 << "\n";
  ok = ok && !brute5;
  // the other odd bad places are solvable by brute force as well
  for (const auto& p : res.report.bad_set.primes) {
    if (p == 5 || p > 13) continue;
    const bool brute = oracle::brute_force_local(an, c, p.get_si(), 3);
    log << "  brute force at " << p << ": " << (brute ? "solvable" : "insolvable") << "\n";
    ok = ok && brute;
  }
  return ok;
}

bool criterion_counterexample(std::ostream& log) {
  const FieldPtr Qi = NumberField::create(poly({1, 0, 1}));
  const Place w0 = decompose_prime(Qi, Integer(5)).front();
  const NfElement a = construct_a(Qi, w0);
  const auto res = construct_hp_counterexample(Qi, a, w0);
  verify_report(res.surface.surface(), res.report);
  verify_bm_certificate(res.surface, res.brauer);
  log << "  a = " << a << ", b = " << res.surface.b() << ", c = " << res.surface.c() << "\n";
  log << "  everywhere solvable: " << res.report.everywhere_solvable << ", Brauer-Manin sum " << res.brauer.total.str() << "\n";
  return res.trace.verify() && res.report.everywhere_solvable && res.brauer.total == LocalInvariant::half();
}

bool criterion_interpolation(std::ostream& log) {
  const FieldPtr Qi = NumberField::create(poly({1, 0, 1}));
  const NfElement th = NfElement::theta(Qi);
  const auto bq = [](const NfElement& A, const NfElement& E) {
    const NfElement z = zero_like(A);
    return NfPoly(std::vector<NfElement>{E, z, z, z, A});
  };
  const auto g = interpolate_general({{poly({0, 1}), q(Q(), 5), bq(q(Q(), 1), q(Q(), 1))},
                                      {poly({1, 0, 1}), q(Qi, 5), bq(q(Qi, 1), th)}});
  log << "  two-node E_t = " << to_json(g.E).dump() << "\n";
  bool ok = g.E == poly({1, 1, 1});

  const CurveSearch cs = search_c(EllipticCurve::curve_64a3(), poly({1, 0, 1}));
  const Place v5 = at(5);
  const NfElement a = construct_a(Q(), v5);
  const auto viol = construct_violating_surface(Q(), a, v5);
  const auto hp = construct_hp_counterexample(Qi, base_change(a, Qi), decompose_prime(Qi, Integer(5)).front());
  const FieldPtr Lt = NumberField::create(cs.Theta.phi);
  const ChateletSurface S_theta = shift_generator(hp.surface.surface(), Lt, cs.c);
  const auto res = interpolate_admissible({InterpolationNode::of(cs.O.phi, viol.surface), InterpolationNode::of(cs.Theta.phi, S_theta)});
  const auto rep = is_admissible(res.bundle);
  const Fiber fo = fiber_at(res.bundle, cs.O);
  const Fiber ft = fiber_at(res.bundle, cs.Theta);
  const bool exact = fo.a == viol.surface.a() && fo.P == viol.surface.P() && ft.a == S_theta.a() && ft.P == S_theta.P();
  log << "  nodes " << cs.O.str() << " and " << cs.Theta.str() << ", d = " << res.bundle.d() << "; fibers exact: " << exact
      << "; (1) A_t, E_t separable: " << (rep.A_separable && rep.E_separable) << " (2) delta separable: " << rep.delta_separable
      << " (3) coprime: " << rep.coprime << "\n";
  return ok && exact && rep.admissible();
}

bool criterion_discriminant(std::ostream& log) {
  const auto check = [](const Rational& A, const Rational& C, const Rational& E) {
    const QPoly f(std::vector<Rational>{E, Rational(0), C, Rational(0), A});
    const Rational rhs = Rational(16) * A * E * (C * C - Rational(4) * A * E) * (C * C - Rational(4) * A * E);
    // disc = res(f, f') / A for a quartic, by the Sylvester determinant
    const Rational sylvester = oracle::sylvester_resultant(f, f.derivative()) / A;
    return discriminant(f) == rhs && sylvester == rhs;
  };
  // Both sides have degree <= 6 in each of A, C, E; agreement on a 7x7x7
  // grid of distinct values forces equality as polynomials.
  int grid = 0, bad = 0;
  for (long A = 1; A <= 7; ++A) {
    for (long C = -3; C <= 3; ++C) {
      for (long E = -3; E <= 3; ++E) {
        ++grid;
        if (!check(Rational(A), Rational(C), Rational(E))) ++bad;
      }
    }
  }
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<long> d(-100000, 100000);
  int random_bad = 0;
  for (int i = 0; i < 5; ++i) {
    Rational A;
    do {
      A = Rational(Integer(d(rng)), Integer(std::abs(d(rng)) + 1));
    } while (A.is_zero());
    const Rational C(Integer(d(rng)), Integer(std::abs(d(rng)) + 1)), E(Integer(d(rng)), Integer(std::abs(d(rng)) + 1));
    if (!check(A, C, E)) ++random_bad;
  }
  log << "  symbolic grid: " << grid << " points, " << bad << " failures; random triples: 5, " << random_bad << " failures\n";
  return bad == 0 && random_bad == 0;
}

bool criterion_curve(std::ostream& log) {
  const CurveSearch cs = search_c(EllipticCurve::curve_64a3(), poly({1, 0, 1}));
  const HyperellipticCurve& C = cs.curve;
  const bool separable = is_separable(C.H());
  const bool morphism = verify_morphism_to_E(C);
  const int expected_genus = 2 * 3 - 1;
  log << "  c = " << cs.c << ", deg H = " << C.degree() << ", separable " << separable << ", morphism " << morphism
      << ", genus " << C.genus() << " (expected " << expected_genus << ")\n";
  if (C.genus() != expected_genus) {
    log << "  blocking: for 64.a3 the coefficient b is 0, so H = h - 4h^3 has degree 3 deg h = 9 and genus "
           "ceil(9/2) - 1 = 4; genus 5 needs deg H in {11, 12}, i.e. b != 0\n";
  }
  return separable && morphism && C.genus() == expected_genus;
}

int run_cli(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool criterion_end_to_end(std::ostream& log, const std::string& cli, const std::string& dir) {
  bool ok = true;
  const std::string cert_path = dir + "/acceptance_cert.json";
  if (!cli.empty()) {
    const int run = run_cli(cli + " pipeline run --phi 1,0,1 --out " + cert_path);
    const int check = run_cli(cli + " certify check " + cert_path);
    log << "  CLI: pipeline run exit " << run << ", certify check exit " << check << "\n";
    ok = ok && run == 0 && check == 0;
  } else {
    log << "  CLI path not given; library only\n";
    PipelineConfig cfg;
    cfg.phi = poly({1, 0, 1});
    std::ofstream(cert_path) << run_pipeline(cfg).doc.dump(1) << "\n";
  }
  std::ifstream in(cert_path);
  const Json doc = Json::parse(in);
  bool stages_pass = doc.at("verdict") == "pass";
  for (const auto& s : doc.at("stages")) {
    stages_pass = stages_pass && s.at("verdict") == "pass";
    if (s.at("name") == "disjointness") stages_pass = stages_pass && s.at("disjoint") == true;
  }
  const bool round_trip = certify_check(doc).ok();
  log << "  all stages pass with disjoint branch loci: " << stages_pass << "; library round trip: " << round_trip << "\n";
  ok = ok && stages_pass && round_trip;

  const std::string text = doc.dump(1);
  std::size_t flips = 0, undetected = 0;
  for (std::size_t pos = 0; pos < text.size(); pos += 11) {
    std::string t = text;
    t[pos] = static_cast<char>(t[pos] ^ (1 << (pos % 7)));
    ++flips;
    try {
      const Json d = Json::parse(t);
      if (certificate_digest(d) == d.value("digest", std::string())) ++undetected;
    } catch (const Json::exception&) {
      // rejected as malformed
    }
  }
  log << "  single-bit flips: " << flips << ", undetected " << undetected << "\n";
  ok = ok && undetected == 0;
  if (!cli.empty()) {
    const std::string tampered = dir + "/acceptance_tampered.json";
    int cli_detected = 0;
    const std::size_t positions[] = {text.find("\"1/2\""), text.find("\"105\""), text.size() / 3, text.size() / 2};
    for (std::size_t pos : positions) {
      std::string t = text;
      t[pos + 1] = static_cast<char>(t[pos + 1] ^ 1);
      std::ofstream(tampered) << t;
      if (run_cli(cli + " certify check " + tampered) != 0) ++cli_detected;
    }
    log << "  CLI rejects " << cli_detected << " of 4 tampered files\n";
    ok = ok && cli_detected == 4;
    std::remove(tampered.c_str());
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string cli, dir = ".";
  app.add_option("--criterion", only, "run a single criterion (1-9)");
  app.add_option("--cli", cli, "path to the chatelet executable");
  app.add_option("--workdir", dir);
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "Hilbert symbol matches exhaustive search, odd p <= 29, >= 200 pairs", 60, criterion_hilbert_oracle},
      {2, "product formula over Q, 50 pairs", 10, criterion_product_formula},
      {3, "shift identity and local constancy, 100 instances", 10, criterion_shift_and_constancy},
      {4, "surface over Q failing exactly at 5, confirmed by brute force", 60, criterion_violating_surface},
      {5, "counterexample over Q(i): everywhere solvable, Brauer-Manin sum 1/2", 300, criterion_counterexample},
      {6, "two-node CRT and admissible interpolation", 30, criterion_interpolation},
      {7, "disc(Ax^4 + Cx^2 + E) = 16AE(C^2 - 4AE)^2", 5, criterion_discriminant},
      {8, "curve for 64.a3 and t^2 + 1: separable, genus 5, morphism to E", 30, criterion_curve},
      {9, "end to end: pipeline run, certify check, tamper detection", 600,
       [&](std::ostream& log) { return criterion_end_to_end(log, cli, dir); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    std::ostringstream log;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log << "  exception: " << e.what() << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < c.limit_seconds;
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s)\n", c.id, ok ? "PASS" : "FAIL", c.title, secs, c.limit_seconds);
    std::cout << log.str() << std::flush;
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
