#include <fstream>

#include "support.hpp"
#include "superlin/io.hpp"

using namespace testsup;
using nlohmann::json;

#ifndef DATA_DIR
#define DATA_DIR "data"
#endif

TEST_CASE("rational text round trip") {
  CHECK(format_rational(parse_rational("-7/21")) == "-1/3");
  CHECK(format_rational(parse_rational("5")) == "5/1");
  CHECK(format_rational(Rational(0)) == "0/1");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("the shipped example file parses to the worked system") {
  const SystemFile sf = load_system_file(std::string(DATA_DIR) + "/brunton.json");
  CHECK(sf.system.n == 2);
  CHECK(sf.system.f == example_system().f);
  CHECK(sf.system.g == example_system().g);
  REQUIRE(sf.embedding.has_value());
  CHECK(sf.embedding->A_ell == example_embedding().A_ell);
  CHECK(sf.embedding->B_ell == example_embedding().B_ell);
  CHECK(sf.embedding->p == example_embedding().p);
}

TEST_CASE("serialization round trips bit-identically") {
  const SystemFile sf = load_system_file(std::string(DATA_DIR) + "/brunton.json");
  const json once = system_file_to_json(sf);
  const SystemFile back = parse_system_json(once);
  const json twice = system_file_to_json(back);
  CHECK(once.dump() == twice.dump());
  CHECK(input_digest(once) == input_digest(twice));
}

TEST_CASE("schema violations are reported by field") {
  json j;
  j["n"] = 2;
  j["m"] = 0;
  j["f"] = json::array({json::array(), json::array()});
  j["g"] = json::array({json::array(), json::array()});
  CHECK_NOTHROW(parse_system_json(j));

  // wrong exponent length
  json bad = j;
  bad["f"][0] = json::array({json{{"coefficient", "1/1"}, {"exponents", {1}}}});
  CHECK_THROWS_AS(parse_system_json(bad), SchemaError);

  // missing field
  json missing = j;
  missing.erase("g");
  CHECK_THROWS_AS(parse_system_json(missing), SchemaError);

  // junk coefficient
  json junk = j;
  junk["f"][0] = json::array({json{{"coefficient", "a/b"}, {"exponents", {1, 0}}}});
  CHECK_THROWS_AS(parse_system_json(junk), SchemaError);

  // negative exponent
  json neg = j;
  neg["f"][0] = json::array({json{{"coefficient", "1/1"}, {"exponents", {-1, 0}}}});
  CHECK_THROWS_AS(parse_system_json(neg), SchemaError);

  // embedding with inconsistent shapes
  json shapes = j;
  shapes["m"] = 1;
  shapes["embedding"] = {{"A_ell", {{"1/1"}}}, {"B_ell", {"1/1"}}, {"D_ell", {"0/1"}},
                         {"p", json::array({json::array()})}};
  CHECK_THROWS_AS(parse_system_json(shapes), SchemaError);
}

TEST_CASE("file-level errors") {
  CHECK_THROWS_AS(load_system_file("/nonexistent/file.json"), ParseError);
  const std::string path = "malformed_test_input.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_system_file(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("an absent embedding block parses as a bare system") {
  const SystemFile sf = load_system_file(std::string(DATA_DIR) + "/rotation.json");
  CHECK(sf.system.n == 3);
  CHECK_FALSE(sf.embedding.has_value());
}

TEST_CASE("machine reports are deterministic") {
  const Embedding emb = example_embedding();
  const json a = classification_to_json(classify_observables(emb));
  const json b = classification_to_json(classify_observables(emb));
  CHECK(a.dump() == b.dump());

  const CanonicalForm cf = canonicalize(example_system(), emb);
  CHECK(canonical_form_to_json(cf).dump() == canonical_form_to_json(cf).dump());

  // observables report 1-based in renderings
  CHECK(a.at("visible") == json::array({1}));
}

TEST_CASE("text rendering tracks the machine report") {
  json report;
  report["command"] = "verify";
  report["verdict"] = true;
  report["timing_ms"] = 1234;
  const std::string text = render_report_text(report);
  CHECK(text.find("verdict = true") != std::string::npos);
  CHECK(text.find("timing_ms") == std::string::npos);
}
