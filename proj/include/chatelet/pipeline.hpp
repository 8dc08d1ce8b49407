#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chatelet/serialize.hpp"

namespace chatelet {

inline constexpr int kCertificateVersion = 1;

struct PipelineConfig {
  Rational curve_a = Rational(-4);  // 64.a3
  Rational curve_b = Rational(0);
  QPoly phi;                         // defines L
  std::optional<Integer> v0;         // otherwise the smallest completely split prime
  long c_cap = 10000;
  long interpolation_cap = 100000;
  /// User-asserted closed points of intermediate residue fields; each
  /// gets the base change of the fiber at O.
  std::vector<QPoly> extra_nodes;
};

Json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const Json& j);
/// phi monic, integral, irreducible of degree >= 2; nonsingular curve.
void validate_config(const PipelineConfig& cfg);

/// A stage of the construction failed; `stage` names it.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Certificate document with top-level {version, config, stages[],
/// verdict, conditional_notes[], digest}.
struct ConstructionCertificate {
  Json doc;
  std::string verdict() const { return doc.value("verdict", ""); }
};

ConstructionCertificate run_pipeline(const PipelineConfig& cfg);

/// Hex SHA-256 of the compact dump of everything but "digest".
std::string certificate_digest(const Json& doc);

struct CertificateCheck {
  std::vector<std::string> passed;    // stage names
  std::vector<std::string> failures;  // "stage: reason"
  bool ok() const { return failures.empty(); }
};

/// Re-derives every recorded verdict from the stored data.
CertificateCheck certify_check(const Json& doc);

}  // namespace chatelet
