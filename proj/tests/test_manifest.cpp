#include <string>

#include "amalg/errors.hpp"
#include "amalg/manifest.hpp"
#include "amalg/space.hpp"
#include "doctest.h"

using namespace amalg;

namespace {

Manifest parse(const std::string& text) { return parse_manifest_text(text); }

}  // namespace

TEST_CASE("rationals travel as exact strings") {
  CHECK(json_to_rat(Json::parse("\"3/4\"")) == rat(3, 4));
  CHECK(json_to_rat(Json::parse("\"-7\"")) == rat(-7));
  CHECK(json_to_rat(Json::parse("\"0.5\"")) == rat(1, 2));
  CHECK(json_to_rat(Json::parse("5")) == rat(5));
  CHECK(json_to_rat(Json::parse("-2")) == rat(-2));
  CHECK_THROWS_AS(json_to_rat(Json::parse("0.5")), SchemaError);
  CHECK_THROWS_AS(json_to_rat(Json::parse("\"1/0\"")), SchemaError);
  CHECK_THROWS_AS(json_to_rat(Json::parse("\"x\"")), SchemaError);
  CHECK_THROWS_AS(json_to_rat(Json::parse("null")), SchemaError);

  CHECK(rat_to_json(rat(3, 4)).get<std::string>() == "3/4");
  CHECK(rat_to_json(rat(-7)).get<std::string>() == "-7");
}

TEST_CASE("documents round-trip through serialization") {
  const char* docs[] = {
      R"({"schemaVersion": 1,
          "space": {"kind": "finiteSup", "dualWeights": ["1", "2"]},
          "weight": {"kind": "sup", "values": ["1", "1/2"]},
          "vectors": {"x": {"kind": "sup", "coords": ["3", "-1"]}}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "seqLim", "theta": "2"},
          "weight": {"kind": "seq", "prefix": ["4"], "tail": "2", "limit": "1"},
          "vectors": {"x": {"kind": "seq", "prefix": [], "tail": "1"}}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "supDirectSum",
                    "left": {"kind": "finiteSup", "dualWeights": ["1"]},
                    "right": {"kind": "seqLim", "theta": "3"}},
          "vectors": {"x": {"kind": "pair",
                            "left": {"kind": "sup", "coords": ["2"]},
                            "right": {"kind": "seq", "prefix": ["1"], "tail": "0"}}}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "finiteAL", "atoms": 2, "nonatomicBand": true},
          "alWeight": ["1", "2"],
          "vectors": {"x": {"kind": "al", "atoms": ["1", "2"], "mass": "5"}}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "finiteSup", "dualWeights": ["1", "1"]},
          "tensor": {"n": 2,
                     "entries": ["1", "0", "0", "0", "0", "0", "0", "1/2"]}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "finiteSup", "dualWeights": ["4", "1"]},
          "codomainSpace": {"kind": "finiteSup", "dualWeights": ["1", "1"]},
          "operator": {"kind": "matrix", "rows": 2, "cols": 2,
                       "entries": ["4", "0", "0", "0"]}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "seqLim", "theta": "2"},
          "operator": {"kind": "indexMap", "codSeqExplicit": 1,
                       "entries": [{"cod": {"kind": "coord", "index": 0},
                                    "source": {"kind": "tail"},
                                    "scale": "1"}]}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "seqLim", "theta": "2"},
          "operator": {"kind": "seqMul", "prefix": ["3"], "tail": "1",
                       "limitValue": "1"}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "seqLim", "theta": "2"},
          "nakano": {"kind": "indicatorChain"}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "finiteSup", "dualWeights": ["1", "1"]},
          "nakano": {"kind": "explicit",
                     "members": [{"kind": "sup", "coords": ["1", "0"]}]}})",
      R"({"schemaVersion": 1,
          "space": {"kind": "finiteSup", "dualWeights": ["1"]},
          "vectors": {"x": {"kind": "sup", "coords": ["4"]}},
          "rootDegree": 2})",
      R"({"schemaVersion": 1,
          "sweep": {"kind": "hom", "maxDim": 2,
                    "weightGrid": ["1", "2"], "nonzeroValues": ["1"]}})",
  };
  for (const char* text : docs) {
    CAPTURE(text);
    Json once = serialize_manifest(parse(text));
    Json twice = serialize_manifest(parse_manifest(once));
    CHECK(once.dump(2) == twice.dump(2));
  }
}

TEST_CASE("malformed documents are rejected") {
  // not JSON at all
  CHECK_THROWS_AS(parse("{nope"), SchemaError);
  // missing / wrong version
  CHECK_THROWS_AS(parse(R"({"space": {"kind": "seqLim", "theta": "1"}})"),
                  SchemaError);
  CHECK_THROWS_AS(parse(R"({"schemaVersion": 2})"), SchemaError);
  // floats cannot carry exact inputs
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1,
                "space": {"kind": "seqLim", "theta": 1.5}})"),
      SchemaError);
  // unknown top-level fields are rejected; nested objects tolerate extras
  // (a typo in a required nested key still fails via the missing field)
  CHECK_THROWS_AS(parse(R"({"schemaVersion": 1, "spice": {}})"), SchemaError);
  CHECK_NOTHROW(parse(R"({"schemaVersion": 1,
                          "space": {"kind": "seqLim", "theta": "1", "x": 1}})"));
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1,
                "space": {"kind": "seqLim", "thetta": "1"}})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1, "space": {"kind": "banach"}})"),
      SchemaError);
  // an impossible space is not a valid document
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1,
                "space": {"kind": "seqLim", "theta": "1/2"}})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1,
                "space": {"kind": "finiteSup", "dualWeights": []}})"),
      SchemaError);
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1,
                "space": {"kind": "finiteAL", "atoms": 2, "nonatomicBand": true},
                "alWeight": ["1", "-1"]})"),
      SchemaError);
  // tensor entry count must be n^3
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1,
                "space": {"kind": "finiteSup", "dualWeights": ["1", "1"]},
                "tensor": {"n": 2, "entries": ["1", "0"]}})"),
      SchemaError);
  // duplicate index-map slots
  CHECK_THROWS_AS(
      parse(R"({"schemaVersion": 1,
                "space": {"kind": "seqLim", "theta": "2"},
                "operator": {"kind": "indexMap",
                             "entries": [{"cod": {"kind": "tail"},
                                          "source": {"kind": "tail"}, "scale": "1"},
                                         {"cod": {"kind": "tail"},
                                          "source": {"kind": "limit"}, "scale": "2"}]}})"),
      SchemaError);
}

TEST_CASE("atom addresses") {
  AtomId tail{{1}, LeafKind::Tail, 0};
  Json j = atom_to_json(tail);
  CHECK(atom_from_json(j) == tail);
  CHECK_THROWS_AS(atom_from_json(Json::parse(R"({"kind": "spine"})")),
                  SchemaError);
  // sums are binary: path steps are 0 (left) or 1 (right), any depth
  AtomId deep{{0, 1, 0}, LeafKind::Coord, 2};
  CHECK(atom_from_json(atom_to_json(deep)) == deep);
  CHECK_THROWS_AS(atom_from_json(Json::parse(
                      R"({"path": [2], "kind": "coord", "index": 0})")),
                  SchemaError);
}

TEST_CASE("text rendering aligns keys and inlines scalar arrays") {
  Json doc;
  doc["isAMAlgebra"] = true;
  doc["amWeight"] = Json::array({"1", "1"});
  doc["unit"]["coords"] = Json::array({"1/4", "1"});
  std::string text = render_text(doc);
  CHECK(text.find("isAMAlgebra") != std::string::npos);
  CHECK(text.find("[1, 1]") != std::string::npos);
  CHECK(text.find("unit.coords") != std::string::npos);
  // deterministic
  CHECK(render_text(doc) == text);
}
