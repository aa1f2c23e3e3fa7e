#include "tamefgl/certify/certificate.hpp"

#include <sstream>

#include "tamefgl/error.hpp"

namespace tamefgl {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedTame: return "CERTIFIED_TAME";
    case Verdict::Refused: return "REFUSED";
    case Verdict::Error: return "ERROR";
  }
  return "ERROR";
}

namespace {

Verdict verdict_from(const std::string& s) {
  if (s == "CERTIFIED_TAME") return Verdict::CertifiedTame;
  if (s == "REFUSED") return Verdict::Refused;
  if (s == "ERROR") return Verdict::Error;
  throw Error(ErrorCode::ParseError, "unknown verdict " + s);
}

Rational parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad fraction " + s);
  }
}

}  // namespace

bool TameCertificate::check(std::string name, std::string anchor, bool pass, std::optional<std::string> witness) {
  checklist.push_back({std::move(name), std::move(anchor), pass, std::move(witness)});
  return pass;
}

void TameCertificate::conclude(const Rational& alpha_if_certified) {
  if (!checklist.empty() && first_failure() == nullptr) {
    verdict = Verdict::CertifiedTame;
    alpha = alpha_if_certified;
  } else {
    verdict = Verdict::Refused;
    alpha.reset();
  }
}

void TameCertificate::fail(const std::string& message) {
  verdict = Verdict::Error;
  alpha.reset();
  diagnostics.push_back(message);
}

const ChecklistEntry* TameCertificate::first_failure() const {
  for (const auto& e : checklist)
    if (!e.pass) return &e;
  return nullptr;
}

nlohmann::json certificate_to_json(const TameCertificate& c) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& e : c.checklist) {
    items.push_back({{"name", e.name},
                     {"anchor", e.anchor},
                     {"pass", e.pass},
                     {"witness", e.witness ? nlohmann::json(*e.witness) : nlohmann::json(nullptr)}});
  }
  return {{"schema", kCertificateSchema},
          {"subject", c.subject},
          {"provenance", c.provenance},
          {"ell", c.ell},
          {"alpha", c.alpha ? nlohmann::json(c.alpha->to_fraction_string()) : nlohmann::json(nullptr)},
          {"verdict", std::string(to_string(c.verdict))},
          {"checklist", std::move(items)},
          {"trail", c.trail},
          {"diagnostics", c.diagnostics}};
}

TameCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema") != kCertificateSchema) throw Error(ErrorCode::ParseError, "unexpected certificate schema");
    TameCertificate c;
    c.subject = j.at("subject").get<std::string>();
    c.provenance = j.value("provenance", std::string());
    c.ell = j.at("ell").get<int>();
    if (!j.at("alpha").is_null()) c.alpha = parse_fraction(j.at("alpha").get<std::string>());
    c.verdict = verdict_from(j.at("verdict").get<std::string>());
    for (const auto& e : j.at("checklist")) {
      ChecklistEntry entry{e.at("name").get<std::string>(), e.at("anchor").get<std::string>(), e.at("pass").get<bool>(),
                           std::nullopt};
      if (!e.at("witness").is_null()) entry.witness = e.at("witness").get<std::string>();
      c.checklist.push_back(std::move(entry));
    }
    c.trail = j.at("trail").get<std::vector<std::string>>();
    c.diagnostics = j.value("diagnostics", std::vector<std::string>{});
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

std::string explain(const TameCertificate& c) {
  std::ostringstream out;
  out << "subject:  " << c.subject << "\n";
  if (!c.provenance.empty()) out << "origin:   " << c.provenance << "\n";
  out << "ell:      " << c.ell << "\n";
  out << "verdict:  " << to_string(c.verdict);
  if (c.alpha) out << "  (alpha = " << c.alpha->to_fraction_string() << ")";
  out << "\n\nchecklist:\n";
  int i = 1;
  for (const auto& e : c.checklist) {
    out << "  " << i++ << ". [" << (e.pass ? "pass" : "FAIL") << "] " << e.name << "\n";
    out << "       anchor:  " << e.anchor << "\n";
    if (e.witness) out << "       witness: " << *e.witness << "\n";
  }
  if (!c.trail.empty()) {
    out << "\ntrail:\n";
    for (const auto& t : c.trail) out << "  - " << t << "\n";
  }
  if (!c.diagnostics.empty()) {
    out << "\ndiagnostics:\n";
    for (const auto& d : c.diagnostics) out << "  - " << d << "\n";
  }
  return out.str();
}

}  // namespace tamefgl
