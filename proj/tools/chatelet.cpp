#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "chatelet/pipeline.hpp"

using namespace chatelet;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(1) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(1) << "\n";
}

FieldPtr field_option(const std::string& phi) {
  if (phi.empty()) return NumberField::rationals();
  const QPoly f = parse_coefficient_list(phi);
  return f.degree() == 1 ? NumberField::rationals() : NumberField::create(f);
}

NfElement element_option(const std::string& text, const FieldPtr& K) { return NfElement(K, parse_coefficient_list(text)); }

std::pair<Rational, Rational> curve_option(const std::string& text) {
  const QPoly ab = parse_coefficient_list(text);
  if (ab.coefficients().size() > 2) throw std::invalid_argument("--curve expects a,b");
  const Rational zero(0);
  return {ab.coeff(0, zero), ab.coeff(1, zero)};
}

void print_report(const SolvabilityReport& r) {
  for (const auto& d : r.decisions) {
    std::cout << d.place.label() << "\t" << to_string(d.verdict) << "\t" << to_string(d.reason) << "\n";
  }
  if (r.everywhere_solvable) {
    std::cout << "everywhere locally solvable\n";
  } else {
    std::cout << "fails at";
    for (const auto& w : r.failing) std::cout << " " << w.label();
    std::cout << "\n";
  }
}

struct Options {
  std::string alpha, beta, place, field;
  std::string file, out;
  std::string mode = "violating";
  std::string a_text, phi, c_text, curve = "-4,0", v0, config;
  std::vector<std::string> extra;
};

int cmd_hilbert(const Options& o) {
  const FieldPtr K = field_option(o.field);
  std::cout << hilbert_symbol(element_option(o.alpha, K), element_option(o.beta, K), parse_place(o.place, K)) << "\n";
  return kOk;
}

int cmd_local_square(const Options& o) {
  const FieldPtr K = field_option(o.field);
  std::cout << (is_local_square(element_option(o.alpha, K), parse_place(o.place, K)) ? "true" : "false") << "\n";
  return kOk;
}

int cmd_surface_verify(const Options& o) {
  const Json j = read_json(o.file);
  const Json& sj = j.contains("surface") ? j.at("surface") : j;
  const ChateletSurface S = surface_from_json(sj);
  if (j.contains("report")) {
    verify_report(S, report_from_json(j.at("report"), S.field()));
    std::cout << "report verified\n";
    return kOk;
  }
  const SolvabilityReport r = global_solvability_report(S);
  print_report(r);
  return r.everywhere_solvable ? kOk : kFail;
}

int cmd_surface_construct(const Options& o) {
  const FieldPtr K = field_option(o.field);
  const NfElement a = element_option(o.a_text, K);
  const Place w = parse_place(o.place, K);
  Json out;
  if (o.mode == "violating") {
    const auto v = construct_violating_surface(K, a, w);
    out = {{"surface", to_json(v.surface)}, {"trace", to_json(v.trace)}, {"report", to_json(v.report)}};
    print_report(v.report);
  } else if (o.mode == "counterexample") {
    const auto h = construct_hp_counterexample(K, a, w);
    out = {{"surface", to_json(h.surface.surface())},
           {"split", to_json(h.surface)},
           {"trace", to_json(h.trace)},
           {"report", to_json(h.report)},
           {"brauer", to_json(h.brauer)}};
    print_report(h.report);
    std::cout << "Brauer-Manin sum " << h.brauer.total.str() << "\n";
  } else {
    throw std::invalid_argument("--mode must be violating or counterexample");
  }
  if (!o.out.empty()) write_json(out, o.out);
  return kOk;
}

int cmd_bundle_interpolate(const Options& o) {
  const Json j = read_json(o.file);
  std::vector<InterpolationNode> nodes;
  for (const auto& n : j.at("nodes")) nodes.push_back(node_from_json(n));
  const auto res = interpolate_admissible(nodes);
  write_json({{"bundle", to_json(res.bundle)}, {"admissible", res.report.admissible()}, {"d0", res.d0}}, o.out);
  return kOk;
}

int cmd_bundle_admissible(const Options& o) {
  const Json j = read_json(o.file);
  const BundlePoly V = bundle_from_json(j.contains("bundle") ? j.at("bundle") : j);
  const auto r = is_admissible(V);
  std::cout << "A_t separable: " << r.A_separable << "\nE_t separable: " << r.E_separable
            << "\ndelta separable: " << r.delta_separable << "\ncoprime: " << r.coprime
            << "\nadmissible: " << r.admissible() << "\n";
  return r.admissible() ? kOk : kFail;
}

int cmd_curve_build(const Options& o) {
  const auto [ea, eb] = curve_option(o.curve);
  const EllipticCurve E(ea, eb);
  const QPoly phi = parse_coefficient_list(o.phi);
  std::optional<HyperellipticCurve> C;
  Rational c;
  if (o.c_text.empty()) {
    const auto res = search_c(E, phi);
    c = res.c;
    C = res.curve;
  } else {
    c = Rational::parse(o.c_text);
    const QPoly h = h_c(phi, c);
    C = HyperellipticCurve(build_H(E, h), CurveProvenance{ea, eb, h});
  }
  const bool morphism = verify_morphism_to_E(*C);
  write_json({{"c", to_json(c)},
              {"curve", to_json(*C)},
              {"branch", to_json(curve_branch_locus(*C))},
              {"morphism", morphism}},
             o.out);
  return morphism ? kOk : kFail;
}

int cmd_pipeline_run(const Options& o) {
  PipelineConfig cfg;
  if (!o.config.empty()) cfg = config_from_json(read_json(o.config));
  if (!o.phi.empty()) cfg.phi = parse_coefficient_list(o.phi);
  if (!o.config.empty() && o.curve == "-4,0") {
    // keep the configured curve
  } else {
    std::tie(cfg.curve_a, cfg.curve_b) = curve_option(o.curve);
  }
  if (!o.v0.empty()) cfg.v0 = parse_integer(o.v0);
  for (const auto& e : o.extra) cfg.extra_nodes.push_back(parse_coefficient_list(e));
  validate_config(cfg);
  const ConstructionCertificate cert = run_pipeline(cfg);
  for (const auto& s : cert.doc.at("stages")) {
    std::cout << s.at("name").get<std::string>() << "\t" << s.at("verdict").get<std::string>() << "\n";
  }
  std::cout << "verdict\t" << cert.verdict() << "\n";
  for (const auto& n : cert.doc.at("conditional_notes")) std::cout << n.get<std::string>() << "\n";
  write_json(cert.doc, o.out.empty() ? "cert.json" : o.out);
  return cert.verdict() == "pass" ? kOk : kFail;
}

int cmd_certify_check(const Options& o) {
  const CertificateCheck r = certify_check(read_json(o.file));
  for (const auto& s : r.passed) std::cout << "pass\t" << s << "\n";
  for (const auto& f : r.failures) std::cout << "FAIL\t" << f << "\n";
  std::cout << (r.ok() ? "certificate verified" : "certificate rejected") << "\n";
  return r.ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chatelet surface bundles: local solvability, Brauer-Manin sums and certificates"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;
  const auto bind = [&](CLI::App* sub, int (*f)(const Options&)) { sub->callback([&action, f, &o] { action = [f, &o] { return f(o); }; }); };

  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (alpha, beta)_w");
  hil->add_option("alpha", o.alpha)->required();
  hil->add_option("beta", o.beta)->required();
  hil->add_option("--place", o.place, "inf | real:k | complex:k | p | p:g0,g1,...")->required();
  hil->add_option("--field", o.field, "coefficients of phi, lowest first (default Q)");
  bind(hil, cmd_hilbert);

  auto* sq = app.add_subcommand("local-square", "Is alpha a square in L_w?");
  sq->add_option("alpha", o.alpha)->required();
  sq->add_option("--place", o.place)->required();
  sq->add_option("--field", o.field);
  bind(sq, cmd_local_square);

  auto* surf = app.add_subcommand("surface", "Chatelet surfaces");
  surf->require_subcommand(1);
  auto* sv = surf->add_subcommand("verify", "Decide local solvability, or re-verify a stored report");
  sv->add_option("file", o.file)->required();
  bind(sv, cmd_surface_verify);
  auto* sc = surf->add_subcommand("construct", "Build a surface failing exactly at a place, or a counterexample");
  sc->add_option("--mode", o.mode)->check(CLI::IsMember({"violating", "counterexample"}));
  sc->add_option("--field", o.field);
  sc->add_option("--a", o.a_text)->required();
  sc->add_option("--place", o.place)->required();
  sc->add_option("--out", o.out);
  bind(sc, cmd_surface_construct);

  auto* bun = app.add_subcommand("bundle", "Chatelet surface bundles over P^1");
  bun->require_subcommand(1);
  auto* bi = bun->add_subcommand("interpolate", "Admissible interpolation of prescribed fibers");
  bi->add_option("nodes-file", o.file)->required();
  bi->add_option("--out", o.out);
  bind(bi, cmd_bundle_interpolate);
  auto* ba = bun->add_subcommand("admissible", "Check the separability and coprimality conditions");
  ba->add_option("file", o.file)->required();
  bind(ba, cmd_bundle_admissible);

  auto* cur = app.add_subcommand("curve", "Hyperelliptic curves over an elliptic curve");
  cur->require_subcommand(1);
  auto* cb = cur->add_subcommand("build", "H = h + a h^3 + b h^4 with h = h_c");
  cb->add_option("--phi", o.phi)->required();
  cb->add_option("--c", o.c_text);
  cb->add_option("--curve", o.curve, "a,b of y^2 = x^3 + a x + b");
  cb->add_option("--out", o.out);
  bind(cb, cmd_curve_build);

  auto* pipe = app.add_subcommand("pipeline", "End-to-end construction");
  pipe->require_subcommand(1);
  auto* pr = pipe->add_subcommand("run", "Run the construction and write a certificate");
  pr->add_option("--phi", o.phi);
  pr->add_option("--curve", o.curve);
  pr->add_option("--v0", o.v0);
  pr->add_option("--extra-node", o.extra, "asserted closed point, coefficients lowest first");
  pr->add_option("--config", o.config);
  pr->add_option("--out", o.out);
  bind(pr, cmd_pipeline_run);

  auto* cert = app.add_subcommand("certify", "Certificates");
  cert->require_subcommand(1);
  auto* cc = cert->add_subcommand("check", "Re-verify a certificate without search");
  cc->add_option("file", o.file)->required();
  bind(cc, cmd_certify_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    if (o.phi.empty() && o.config.empty() && pr->parsed()) throw std::invalid_argument("--phi or --config is required");
    return action();
  } catch (const PipelineError& e) {
    std::cerr << "stage " << e.what() << "\n";
    return kFail;
  } catch (const CertificateError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
