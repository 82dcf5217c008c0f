#include "superlin/io.hpp"

#include <fstream>
#include <sstream>

namespace superlin {

namespace {

using nlohmann::json;

const json& expect(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

int expect_int(const json& j, const char* key, const std::string& where) {
  const json& v = expect(j, key, where);
  if (!v.is_number_integer())
    throw SchemaError(where + ": field \"" + key + "\" must be an integer");
  return v.get<int>();
}

Rational rational_from_json(const json& j, const std::string& where) {
  if (!j.is_string())
    throw SchemaError(where + ": rationals must be \"num/den\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

}  // namespace

nlohmann::json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    json t;
    t["coefficient"] = format_rational(coeff);
    t["exponents"] = mono.exponents();
    terms.push_back(std::move(t));
  }
  return terms;
}

Polynomial polynomial_from_json(const nlohmann::json& j, int n_vars,
                                const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": polynomial must be a list of terms");
  Polynomial p(n_vars);
  int idx = 0;
  for (const json& t : j) {
    const std::string at = where + ", term " + std::to_string(idx++);
    const Rational c = rational_from_json(expect(t, "coefficient", at), at);
    const json& ex = expect(t, "exponents", at);
    if (!ex.is_array() || static_cast<int>(ex.size()) != n_vars)
      throw SchemaError(at + ": exponent list must have length " + std::to_string(n_vars));
    std::vector<std::uint32_t> exps;
    exps.reserve(ex.size());
    for (const json& e : ex) {
      if (!e.is_number_integer() || e.get<long long>() < 0)
        throw SchemaError(at + ": exponents must be non-negative integers");
      exps.push_back(e.get<std::uint32_t>());
    }
    p.add_term(Monomial(std::move(exps)), c);
  }
  return p;
}

nlohmann::json matrix_to_json(const RatMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(format_rational(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_to_json(const RatVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v(i)));
  return out;
}

RatMatrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": matrix must be a list of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw SchemaError(where + ": matrix rows must be lists");
    cols = static_cast<Eigen::Index>(j[0].size());
  }
  RatMatrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw SchemaError(where + ": ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c)
      M(i, c) = rational_from_json(row[static_cast<size_t>(c)],
                                   where + "(" + std::to_string(i) + "," + std::to_string(c) + ")");
  }
  return M;
}

RatVector vector_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": vector must be a list");
  RatVector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        rational_from_json(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

SystemFile parse_system_json(const nlohmann::json& j) {
  const int n = expect_int(j, "n", "system");
  const int m = expect_int(j, "m", "system");
  if (n < 1) throw SchemaError("system: n must be >= 1");
  if (m < 0) throw SchemaError("system: m must be >= 0");

  auto field_from = [&](const char* key) -> PolyVectorField {
    const json& arr = expect(j, key, "system");
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
      throw SchemaError(std::string("system: \"") + key + "\" must list n polynomials");
    std::vector<Polynomial> comps;
    comps.reserve(arr.size());
    int i = 0;
    for (const json& pj : arr)
      comps.push_back(polynomial_from_json(pj, n, std::string(key) + "[" + std::to_string(i++) + "]"));
    return PolyVectorField(n, std::move(comps));
  };

  ControlSystem sys(n, field_from("f"), field_from("g"));

  std::optional<Embedding> emb;
  if (j.contains("embedding") && !j.at("embedding").is_null()) {
    const json& ej = j.at("embedding");
    RatMatrix A_ell = matrix_from_json(expect(ej, "A_ell", "embedding"), "A_ell");
    RatVector B_ell = vector_from_json(expect(ej, "B_ell", "embedding"), "B_ell");
    RatVector D_ell = vector_from_json(expect(ej, "D_ell", "embedding"), "D_ell");
    const json& pj = expect(ej, "p", "embedding");
    if (!pj.is_array() || static_cast<int>(pj.size()) != m)
      throw SchemaError("embedding: \"p\" must list m polynomials");
    std::vector<Polynomial> obs;
    obs.reserve(pj.size());
    int i = 0;
    for (const json& oj : pj)
      obs.push_back(polynomial_from_json(oj, n, "p[" + std::to_string(i++) + "]"));
    try {
      emb.emplace(n, m, std::move(A_ell), std::move(B_ell), std::move(D_ell),
                  PolyVectorField(n, std::move(obs)));
    } catch (const DimensionMismatch& e) {
      throw SchemaError(std::string("embedding: ") + e.what());
    }
  }
  return SystemFile{std::move(sys), std::move(emb)};
}

SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_system_json(j);
}

nlohmann::json system_file_to_json(const SystemFile& sf) {
  json j;
  j["n"] = sf.system.n;
  j["m"] = sf.embedding ? sf.embedding->m : 0;
  json f = json::array(), g = json::array();
  for (int i = 0; i < sf.system.n; ++i) {
    f.push_back(polynomial_to_json(sf.system.f[i]));
    g.push_back(polynomial_to_json(sf.system.g[i]));
  }
  j["f"] = std::move(f);
  j["g"] = std::move(g);
  if (sf.embedding) {
    const Embedding& e = *sf.embedding;
    json ej;
    ej["A_ell"] = matrix_to_json(e.A_ell);
    ej["B_ell"] = vector_to_json(e.B_ell);
    ej["D_ell"] = vector_to_json(e.D_ell);
    json p = json::array();
    for (int i = 0; i < e.m; ++i) p.push_back(polynomial_to_json(e.p[i]));
    ej["p"] = std::move(p);
    j["embedding"] = std::move(ej);
  }
  return j;
}

nlohmann::json embedding_to_json(const Embedding& emb) {
  json ej;
  ej["A_ell"] = matrix_to_json(emb.A_ell);
  ej["B_ell"] = vector_to_json(emb.B_ell);
  ej["D_ell"] = vector_to_json(emb.D_ell);
  json p = json::array();
  for (int i = 0; i < emb.m; ++i) p.push_back(polynomial_to_json(emb.p[i]));
  ej["p"] = std::move(p);
  return ej;
}

nlohmann::json canonical_form_to_json(const CanonicalForm& cf) {
  json j;
  j["k"] = cf.k;
  j["T"] = matrix_to_json(cf.T);
  j["T_inv"] = matrix_to_json(cf.T_inv);
  j["A11"] = matrix_to_json(cf.A11);
  j["A12"] = matrix_to_json(cf.A12);
  j["A22"] = matrix_to_json(cf.A22);
  j["B_prime"] = vector_to_json(cf.Bp);
  j["gbar_prime"] = vector_to_json(cf.Gbar_p);
  j["D_prime"] = vector_to_json(cf.Dp);
  j["q_prime"] = cf.qp.to_string();
  return j;
}

nlohmann::json classification_to_json(const ObservableClassification& cls) {
  json j;
  json vis = json::array(), hid = json::array();
  for (int v : cls.visible) vis.push_back(v + 1);  // observables are p_1..p_m
  for (int h : cls.hidden) hid.push_back(h + 1);
  j["visible"] = std::move(vis);
  j["hidden"] = std::move(hid);
  j["g_rank"] = cls.g_rank;
  if (cls.gbar.size() > 0) j["gbar"] = vector_to_json(cls.gbar);
  return j;
}

nlohmann::json report_to_json(const VerificationReport& rep) {
  json j;
  j["system_form_ok"] = rep.system_form_ok;
  j["necessary_ok"] = rep.necessary_ok;
  j["sufficient_ok"] = rep.sufficient_ok;
  json fails = json::array();
  for (const FailedIdentity& f : rep.failures) {
    json fj;
    fj["identity"] = f.identity;
    fj["residual"] = f.residual.to_string();
    fails.push_back(std::move(fj));
  }
  j["failures"] = std::move(fails);
  return j;
}

std::string input_digest(const nlohmann::json& canonical) {
  const std::string s = canonical.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void render_value(std::ostringstream& os, const std::string& key, const json& v,
                  int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k, sub] : v.items()) render_value(os, k, sub, indent + 2);
  } else if (v.is_array() && !v.empty() && v[0].is_object()) {
    os << pad << key << ":\n";
    int i = 0;
    for (const json& item : v) render_value(os, "[" + std::to_string(i++) + "]", item, indent + 2);
  } else {
    os << pad << key << " = " << v.dump() << "\n";
  }
}

}  // namespace

std::string render_report_text(const nlohmann::json& report) {
  std::ostringstream os;
  for (const auto& [k, v] : report.items()) {
    if (k == "timing_ms") continue;
    render_value(os, k, v, 0);
  }
  return os.str();
}

}  // namespace superlin
