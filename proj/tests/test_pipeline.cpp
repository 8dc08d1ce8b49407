#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chatelet/pipeline.hpp"
#include "oracles.hpp"

using namespace chatelet;
using oracle::poly;

namespace {

PipelineConfig config(const QPoly& phi) {
  PipelineConfig cfg;
  cfg.phi = phi;
  return cfg;
}

const Json& gaussian_certificate() {
  static const Json doc = run_pipeline(config(poly({1, 0, 1}))).doc;
  return doc;
}

Json& stage(Json& doc, const std::string& name) {
  for (auto& s : doc.at("stages")) {
    if (s.at("name") == name) return s;
  }
  throw std::runtime_error("no stage " + name);
}

bool mentions(const CertificateCheck& r, const std::string& text) {
  for (const auto& f : r.failures) {
    if (f.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(validate_config(config(poly({-1, 1}))), std::invalid_argument);
  CHECK_THROWS_AS(validate_config(config(poly({-1, 0, 1}))), std::invalid_argument);
  PipelineConfig bad = config(poly({1, 0, 1}));
  bad.curve_a = Rational(-3);
  bad.curve_b = Rational(2);
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  CHECK_THROWS_AS(run_pipeline(bad), PipelineError);
  try {
    run_pipeline(config(poly({-1, 1})));
  } catch (const PipelineError& e) {
    CHECK(e.stage() == "config");
  }
  const PipelineConfig cfg = config_from_json(config_to_json(config(poly({1, 0, 1}))));
  CHECK(cfg.phi == poly({1, 0, 1}));
  CHECK(cfg.curve_a == Rational(-4));
  CHECK(cfg.curve_b == Rational(0));
}

TEST_CASE("Gaussian certificate round trip") {
  const Json& doc = gaussian_certificate();
  CHECK(doc.at("version") == kCertificateVersion);
  CHECK(doc.at("verdict") == "pass");
  for (const auto& s : doc.at("stages")) CHECK(s.at("verdict") == "pass");
  const auto r = certify_check(doc);
  CHECK(r.ok());
  CHECK(r.passed.size() == doc.at("stages").size());
  // reparsed from text
  CHECK(certify_check(Json::parse(doc.dump(1))).ok());
}

TEST_CASE("Gaussian certificate contents") {
  Json doc = gaussian_certificate();
  CHECK(stage(doc, "v0").at("p") == "5");
  CHECK(stage(doc, "a").at("a") == Json::array({"105"}));
  CHECK(stage(doc, "fiber-Theta").at("bm_sum") == "1/2");
  CHECK(stage(doc, "disjointness").at("disjoint") == true);
  const HyperellipticCurve C = curve_from_json(stage(doc, "curve").at("curve"));
  CHECK(C.degree() == 9);
  CHECK(verify_morphism_to_E(C));
  // fiber at O fails at 5 only; an independent sampling over Z/5^4 agrees
  const ChateletSurface S = surface_from_json(stage(doc, "fiber-O").at("surface"));
  std::vector<Integer> c;
  for (int i = 0; i < 5; ++i) c.push_back(S.coefficient(i).to_rational().numerator());
  CHECK_FALSE(oracle::brute_force_local(S.a().to_rational().numerator(), c, 5, 4));
  const auto notes = doc.at("conditional_notes");
  REQUIRE(notes.size() >= 1);
  CHECK(notes.front().get<std::string>().rfind("CONDITIONAL", 0) == 0);
}

TEST_CASE("determinism") {
  CHECK(run_pipeline(config(poly({1, 0, 1}))).doc == gaussian_certificate());
}

TEST_CASE("tampering") {
  SUBCASE("symbol sign flipped") {
    Json doc = gaussian_certificate();
    for (auto& c : stage(doc, "fiber-O").at("trace").at("conditions")) {
      if (c.at("kind") == "symbol") {
        c["expected"] = -c.at("expected").get<int>();
        break;
      }
    }
    const auto r = certify_check(doc);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "fiber-O"));
    CHECK(mentions(r, "at 5"));
  }
  SUBCASE("Brauer-Manin total set to 0") {
    Json doc = gaussian_certificate();
    stage(doc, "fiber-Theta")["brauer"]["total"] = "0";
    const auto r = certify_check(doc);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "fiber-Theta"));
  }
  SUBCASE("invariant moved to another place") {
    Json doc = gaussian_certificate();
    for (auto& e : stage(doc, "fiber-Theta")["brauer"]["entries"]) {
      e["invariant"] = e.at("invariant") == "0" && e.at("reason") == "sampled" ? "1/2" : e.at("invariant");
    }
    CHECK_FALSE(certify_check(doc).ok());
  }
  SUBCASE("ball removed from a case table") {
    Json doc = gaussian_certificate();
    bool removed = false;
    for (auto& d : stage(doc, "fiber-O")["report"]["decisions"]) {
      if (d.at("reason") == "case-table" && !removed) {
        d["table"].erase(d["table"].begin());
        removed = true;
      }
    }
    REQUIRE(removed);
    const auto r = certify_check(doc);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "place 5"));
  }
  SUBCASE("bundle coefficient edited, digest recomputed") {
    Json doc = gaussian_certificate();
    auto& E = stage(doc, "bundle")["bundle"]["E_t"];
    E[0] = (Rational::parse(E[0].get<std::string>()) + Rational(1)).str();
    doc["digest"] = certificate_digest(doc);
    const auto r = certify_check(doc);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "bundle"));
  }
  SUBCASE("conditional note removed, digest recomputed") {
    Json doc = gaussian_certificate();
    doc["conditional_notes"] = Json::array();
    doc["digest"] = certificate_digest(doc);
    CHECK(mentions(certify_check(doc), "conditional_notes"));
  }
  SUBCASE("stage missing") {
    Json doc = gaussian_certificate();
    doc["stages"].erase(doc["stages"].begin() + 3);
    CHECK_FALSE(certify_check(doc).ok());
  }
}

TEST_CASE("single-bit flips are detected") {
  const std::string text = gaussian_certificate().dump(1);
  std::size_t parsed = 0;
  for (std::size_t pos = 0; pos < text.size(); pos += 37) {
    for (int bit = 0; bit < 8; bit += 3) {
      std::string t = text;
      t[pos] = static_cast<char>(t[pos] ^ (1 << bit));
      Json doc;
      try {
        doc = Json::parse(t);
      } catch (const Json::exception&) {
        continue;
      }
      ++parsed;
      CHECK(certificate_digest(doc) != doc.value("digest", std::string()));
    }
  }
  CHECK(parsed > 100);
}

TEST_CASE("other fields") {
  for (const auto& phi : {poly({-2, 0, 1}), poly({1, 1, 1}), poly({-2, 0, 0, 1})}) {
    const Json doc = run_pipeline(config(phi)).doc;
    CHECK(doc.at("verdict") == "pass");
    CHECK(certify_check(doc).ok());
  }
}

TEST_CASE("asserted extra nodes") {
  PipelineConfig cfg = config(poly({1, 0, 1}));
  cfg.extra_nodes = {poly({-100, 1}), poly({5, 4, 1})};
  const Json doc = run_pipeline(cfg).doc;
  CHECK(certify_check(doc).ok());
  CHECK(doc.at("conditional_notes").size() == 2);
  cfg.extra_nodes = {poly({1, 0, 1}).compose(poly({1, 1}))};  // Theta itself
  CHECK_THROWS_AS(run_pipeline(cfg), PipelineError);
}

TEST_CASE("v0 override") {
  PipelineConfig cfg = config(poly({1, 0, 1}));
  cfg.v0 = Integer(13);
  const Json doc = run_pipeline(cfg).doc;
  CHECK(certify_check(doc).ok());
  cfg.v0 = Integer(7);  // inert in Q(i)
  CHECK_THROWS_AS(run_pipeline(cfg), PipelineError);
}

TEST_CASE("place syntax and JSON round trips") {
  const FieldPtr Qi = NumberField::create(poly({1, 0, 1}));
  for (const auto& w : decompose_prime(Qi, Integer(5))) {
    const Place u = parse_place(w.label(), Qi);
    CHECK(u == w);
    CHECK(place_from_json(to_json(w), Qi) == w);
  }
  CHECK(parse_place("5:2,1", Qi) == decompose_prime(Qi, Integer(5)).front());
  CHECK(parse_place("inf", Qi).kind() == PlaceKind::Complex);
  CHECK(parse_place("3", Qi).f() == 2);
  CHECK_THROWS(parse_place("5", Qi));
  CHECK_THROWS(parse_place("5:1/2,1", Qi));
  CHECK(parse_coefficient_list("[1, -2/3, 0]") == QPoly(std::vector<Rational>{Rational(1), Rational(-2, 3)}));
  CHECK_THROWS_AS(parse_coefficient_list("1,,2"), FormatError);
  const NfElement x(Qi, poly({3, -7}));
  CHECK(element_from_json(to_json(x), Qi) == x);
  CHECK_THROWS_AS(element_from_json(Json::array({"1", "2", "3"}), Qi), FormatError);
}
