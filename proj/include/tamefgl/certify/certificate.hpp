#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tamefgl/padic/rational.hpp"

namespace tamefgl {

inline constexpr const char* kCertificateSchema = "tamefgl.certificate/1";

/// Names of the results a certificate can rest on.
namespace trail {
inline constexpr const char* kTorsionValuation = "torsion-valuation";        // symmetric, h = 4, r = 2 ⇒ min v = α
inline constexpr const char* kDim2WildInertia = "dim2-wild-inertia-trivial";  // same hypotheses ⇒ tame action
inline constexpr const char* kValuationToTame = "valuation-implies-tame";     // common valuation α ⇒ tame
inline constexpr const char* kRelaxedSymmetry = "relaxed-symmetry";           // (ℓ⁴)-perturbations keep α
inline constexpr const char* kFirstFamily = "first-family";                   // symmetric sextics over Z_ℓ
inline constexpr const char* kMainFamily = "main-family";                     // (ℓ⁴)-asymmetric sextics
}  // namespace trail

enum class Verdict { CertifiedTame, Refused, Error };
std::string_view to_string(Verdict v);

struct ChecklistEntry {
  std::string name;
  std::string anchor;
  bool pass = false;
  std::optional<std::string> witness;
};

struct TameCertificate {
  std::string subject;
  std::string provenance;
  int ell = 0;
  std::optional<Rational> alpha;
  Verdict verdict = Verdict::Error;
  std::vector<ChecklistEntry> checklist;
  std::vector<std::string> trail;
  std::vector<std::string> diagnostics;

  /// Appends an entry and returns its pass flag.
  bool check(std::string name, std::string anchor, bool pass, std::optional<std::string> witness = std::nullopt);
  /// CERTIFIED_TAME with α when every entry passed (and there is at least
  /// one), REFUSED without α otherwise.
  void conclude(const Rational& alpha_if_certified);
  /// ERROR verdict with the message as a diagnostic.
  void fail(const std::string& message);
  const ChecklistEntry* first_failure() const;
};

nlohmann::json certificate_to_json(const TameCertificate& c);
/// Throws ParseError.
TameCertificate certificate_from_json(const nlohmann::json& j);
/// Human-readable checklist with anchors.
std::string explain(const TameCertificate& c);

}  // namespace tamefgl
