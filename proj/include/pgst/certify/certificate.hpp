#pragma once

#include <json.hpp>
#include <string>

#include "pgst/errors.hpp"

namespace pgst::certify {

using Json = nlohmann::json;

enum class Verdict { ProvenPGST, ProvenNoPGST, HeuristicObstruction, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ProvenPGST: return "ProvenPGST";
    case Verdict::ProvenNoPGST: return "ProvenNoPGST";
    case Verdict::HeuristicObstruction: return "HeuristicObstruction";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  throw InternalError("unknown verdict");
}

inline Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::ProvenPGST, Verdict::ProvenNoPGST, Verdict::HeuristicObstruction,
                 Verdict::Inconclusive})
    if (to_string(v) == s) return v;
  throw ParseError("unknown verdict '" + s + "'");
}

/// A verdict plus everything needed to check it again without the original matrix.
/// Polynomials in the evidence are canonical strings.
struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  std::string method;
  std::string reason;
  Json evidence = Json::object();

  Json to_json() const {
    return Json{{"verdict", to_string(verdict)}, {"method", method}, {"reason", reason},
                {"evidence", evidence}};
  }

  static Certificate from_json(const Json& j) {
    Certificate c;
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.method = j.at("method").get<std::string>();
    c.reason = j.value("reason", "");
    c.evidence = j.at("evidence");
    return c;
  }
};

}  // namespace pgst::certify
