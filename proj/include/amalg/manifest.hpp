#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>

#include "amalg/al.hpp"
#include "amalg/operator_spec.hpp"
#include "amalg/products.hpp"

namespace amalg {

// Insertion-ordered documents so every emission is byte-deterministic.
using Json = nlohmann::ordered_json;

// One self-contained document per invocation: a space plus whatever the
// command needs (weights, tensor, operator, vectors, parameters).
// Two-space commands embed the codomain in the same document.
struct Manifest {
  int schemaVersion = 1;
  std::optional<ModelSpace> space;
  std::optional<ModelSpace> codomainSpace;
  std::optional<Weight> weight;
  std::optional<Weight> codomainWeight;
  std::optional<ALWeight> alWeight;
  std::optional<ProductTensor> tensor;
  std::optional<OperatorSpec> op;
  std::map<std::string, Vec> vectors;
  std::optional<unsigned> rootDegree;
  std::optional<BoundedFamily> nakano;
  Json sweep;  // raw sweep parameters; null when absent
};

// Rationals travel as exact strings ("p/q", integers, or exact decimals);
// plain JSON integers are accepted too. Binary floats are rejected: they
// cannot carry exact inputs.
Rat json_to_rat(const Json& j);
Json rat_to_json(const Rat& r);

// SchemaError on anything malformed, including values that violate the
// constructors' invariants (a document describing an impossible space is
// not a valid document).
Manifest parse_manifest(const Json& doc);
Manifest parse_manifest_text(const std::string& text);

// Exact round-trip: parse(serialize(m)) is semantically identical to m.
Json serialize_manifest(const Manifest& m);

Json space_to_json(const ModelSpace& s);
Json vec_to_json(const Vec& x);
Json weight_to_json(const Weight& w);
Json atom_to_json(const AtomId& a);

ModelSpace space_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Weight weight_from_json(const Json& j);
AtomId atom_from_json(const Json& j);

// Aligned plain-text rendering of a report document.
std::string render_text(const Json& j);

}  // namespace amalg
