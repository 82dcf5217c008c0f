#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "superlin/canonical.hpp"
#include "superlin/model.hpp"

namespace superlin {

// On-disk description of a system and (optionally) an embedding. All
// numbers are "num/den" strings so files are exact and round-trip
// bit-identically through the serializer.
//
// {
//   "n": 2, "m": 1,
//   "f": [[{"coefficient": "-1/1", "exponents": [1, 0]}, ...], ...],
//   "g": [[{"coefficient": "1/1", "exponents": [0, 0]}], []],
//   "embedding": {
//     "A_ell": [["-1/1", ...], ...],
//     "B_ell": ["1/1", ...],
//     "D_ell": ["0/1", ...],
//     "p": [[{"coefficient": "1/1", "exponents": [0, 2]}]]
//   }
// }
struct SystemFile {
  ControlSystem system;
  std::optional<Embedding> embedding;
};

SystemFile load_system_file(const std::string& path);
SystemFile parse_system_json(const nlohmann::json& j);
nlohmann::json system_file_to_json(const SystemFile& sf);

nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j, int n_vars, const std::string& where);

nlohmann::json matrix_to_json(const RatMatrix& M);
nlohmann::json vector_to_json(const RatVector& v);
RatMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);
RatVector vector_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json embedding_to_json(const Embedding& emb);
nlohmann::json canonical_form_to_json(const CanonicalForm& cf);
nlohmann::json classification_to_json(const ObservableClassification& cls);
nlohmann::json report_to_json(const VerificationReport& rep);

// FNV-1a over the canonical serialization; identifies the input exactly.
std::string input_digest(const nlohmann::json& canonical);

// One text line per verdict, derived from the same json the machine report
// carries, so the two renderings cannot disagree.
std::string render_report_text(const nlohmann::json& report);

}  // namespace superlin
