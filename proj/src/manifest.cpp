#include "amalg/manifest.hpp"

#include <algorithm>

#include "amalg/errors.hpp"

namespace amalg {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw SchemaError(msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with '") + key + "'");
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) bad("'kind' must be a string");
  return k.get<std::string>();
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    bad(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

bool bool_field(const Json& j, const char* key, bool fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_boolean()) bad(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

// Constructor invariants are part of the schema: a document describing an
// impossible object is rejected as a document.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

std::vector<Rat> rat_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(json_to_rat(e));
  return out;
}

Json rat_list_to_json(const std::vector<Rat>& v) {
  Json out = Json::array();
  for (const Rat& r : v) out.push_back(rat_to_json(r));
  return out;
}

}  // namespace

Rat json_to_rat(const Json& j) {
  if (j.is_string()) {
    std::optional<Rat> r = parse_rat(j.get<std::string>());
    if (!r) bad("not an exact rational: \"" + j.get<std::string>() + "\"");
    return *r;
  }
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_number_unsigned()) {
    if (j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<long>::max()))
      bad("integer too large");
    return Rat(static_cast<long>(j.get<std::uint64_t>()));
  }
  if (j.is_number_float())
    bad("binary floats are not exact; write the value as a string");
  bad("expected a rational (string or integer)");
}

Json rat_to_json(const Rat& r) { return Json(rat_str(r)); }

ModelSpace space_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "finiteSup")
    return guarded("space", [&] {
      return ModelSpace::finite_sup(rat_list(field(j, "dualWeights"), "'dualWeights'"));
    });
  if (kind == "seqLim")
    return guarded("space", [&] { return ModelSpace::seq_lim(json_to_rat(field(j, "theta"))); });
  if (kind == "finiteAL")
    return guarded("space", [&] {
      return ModelSpace::finite_al(int_field(j, "atoms"),
                                   bool_field(j, "nonatomicBand", false));
    });
  if (kind == "supDirectSum")
    return guarded("space", [&] {
      return ModelSpace::sup_sum(space_from_json(field(j, "left")),
                                 space_from_json(field(j, "right")));
    });
  bad("unknown space kind '" + kind + "'");
}

Json space_to_json(const ModelSpace& s) {
  Json out;
  if (auto* f = s.as_finite_sup()) {
    out["kind"] = "finiteSup";
    out["dualWeights"] = rat_list_to_json(f->dualWeights);
    return out;
  }
  if (auto* q = s.as_seq_lim()) {
    out["kind"] = "seqLim";
    out["theta"] = rat_to_json(q->theta);
    return out;
  }
  if (auto* a = s.as_finite_al()) {
    out["kind"] = "finiteAL";
    out["atoms"] = a->atoms;
    out["nonatomicBand"] = a->nonatomicBand;
    return out;
  }
  auto* p = s.as_sum();
  out["kind"] = "supDirectSum";
  out["left"] = space_to_json(*p->left);
  out["right"] = space_to_json(*p->right);
  return out;
}

Vec vec_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "sup") return Vec::sup(rat_list(field(j, "coords"), "'coords'"));
  if (kind == "seq")
    return Vec::seq(rat_list(field(j, "prefix"), "'prefix'"),
                    json_to_rat(field(j, "tail")));
  if (kind == "al")
    return Vec::al(rat_list(field(j, "atoms"), "'atoms'"),
                   json_to_rat(field(j, "mass")));
  if (kind == "pair")
    return Vec::pair(vec_from_json(field(j, "left")),
                     vec_from_json(field(j, "right")));
  bad("unknown vector kind '" + kind + "'");
}

Json vec_to_json(const Vec& x) {
  Json out;
  if (auto* v = x.as_sup()) {
    out["kind"] = "sup";
    out["coords"] = rat_list_to_json(v->coords);
    return out;
  }
  if (auto* q = x.as_seq()) {
    out["kind"] = "seq";
    out["prefix"] = rat_list_to_json(q->prefix);
    out["tail"] = rat_to_json(q->tail);
    return out;
  }
  if (auto* a = x.as_al()) {
    out["kind"] = "al";
    out["atoms"] = rat_list_to_json(a->atoms);
    out["mass"] = rat_to_json(a->mass);
    return out;
  }
  auto* p = x.as_pair();
  out["kind"] = "pair";
  out["left"] = vec_to_json(*p->left);
  out["right"] = vec_to_json(*p->right);
  return out;
}

Weight weight_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "sup") return Weight::sup(rat_list(field(j, "values"), "'values'"));
  if (kind == "seq")
    return Weight::seq(rat_list(field(j, "prefix"), "'prefix'"),
                       json_to_rat(field(j, "tail")),
                       json_to_rat(field(j, "limit")));
  if (kind == "pair")
    return Weight::pair(weight_from_json(field(j, "left")),
                        weight_from_json(field(j, "right")));
  bad("unknown weight kind '" + kind + "'");
}

Json weight_to_json(const Weight& w) {
  Json out;
  if (auto* v = w.as_sup()) {
    out["kind"] = "sup";
    out["values"] = rat_list_to_json(v->values);
    return out;
  }
  if (auto* q = w.as_seq()) {
    out["kind"] = "seq";
    out["prefix"] = rat_list_to_json(q->prefix);
    out["tail"] = rat_to_json(q->tail);
    out["limit"] = rat_to_json(q->limit);
    return out;
  }
  auto* p = w.as_pair();
  out["kind"] = "pair";
  out["left"] = weight_to_json(*p->left);
  out["right"] = weight_to_json(*p->right);
  return out;
}

AtomId atom_from_json(const Json& j) {
  AtomId out;
  if (j.contains("path")) {
    const Json& p = j.at("path");
    if (!p.is_array()) bad("'path' must be an array of 0/1 steps");
    for (const Json& e : p) {
      if (!e.is_number_integer() && !e.is_number_unsigned())
        bad("'path' must be an array of 0/1 steps");
      int step = e.get<int>();
      if (step != 0 && step != 1) bad("'path' steps are 0 (left) or 1 (right)");
      out.path.push_back(step);
    }
  }
  std::string kind = kind_of(j);
  if (kind == "coord") {
    out.kind = LeafKind::Coord;
    out.index = int_field(j, "index");
  } else if (kind == "tail") {
    out.kind = LeafKind::Tail;
  } else if (kind == "limit") {
    out.kind = LeafKind::Limit;
  } else {
    bad("unknown atom kind '" + kind + "'");
  }
  return out;
}

Json atom_to_json(const AtomId& a) {
  Json out;
  if (!a.path.empty()) out["path"] = a.path;
  switch (a.kind) {
    case LeafKind::Coord:
      out["kind"] = "coord";
      out["index"] = a.index;
      break;
    case LeafKind::Tail:
      out["kind"] = "tail";
      break;
    case LeafKind::Limit:
      out["kind"] = "limit";
      break;
  }
  return out;
}

namespace {

ProductTensor tensor_from_json(const Json& j) {
  int n = int_field(j, "n");
  if (n < 0) bad("'n' must be >= 0");
  std::vector<Rat> entries = rat_list(field(j, "entries"), "'entries'");
  if (entries.size() != static_cast<std::size_t>(n) * n * n)
    bad("tensor needs n^3 entries");
  ProductTensor B = ProductTensor::zeros(n);
  B.b = std::move(entries);
  return B;
}

Json tensor_to_json(const ProductTensor& B) {
  Json out;
  out["n"] = B.n;
  out["entries"] = rat_list_to_json(B.b);
  return out;
}

OperatorSpec operator_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "matrix") {
    int rows = int_field(j, "rows");
    int cols = int_field(j, "cols");
    std::vector<Rat> entries = rat_list(field(j, "entries"), "'entries'");
    return guarded("operator", [&] {
      require(rows >= 1 && cols >= 1 &&
                  entries.size() == static_cast<std::size_t>(rows) * cols,
              "matrix needs rows*cols entries");
      MatrixOp m;
      m.rows = rows;
      m.cols = cols;
      m.a = std::move(entries);
      return OperatorSpec::matrix(std::move(m));
    });
  }
  if (kind == "indexMap") {
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) bad("'entries' must be an array");
    IndexMapOp m;
    m.codSeqExplicit = j.contains("codSeqExplicit") ? int_field(j, "codSeqExplicit") : 0;
    for (const Json& e : entries) {
      AtomId cod = atom_from_json(field(e, "cod"));
      IndexMapEntry entry{atom_from_json(field(e, "source")),
                          json_to_rat(field(e, "scale"))};
      if (m.sigma.count(cod)) bad("duplicate index-map entry");
      m.sigma.emplace(std::move(cod), std::move(entry));
    }
    return guarded("operator", [&] { return OperatorSpec::index_map(std::move(m)); });
  }
  if (kind == "seqMul")
    return OperatorSpec::seq_mul(rat_list(field(j, "prefix"), "'prefix'"),
                                 json_to_rat(field(j, "tail")),
                                 json_to_rat(field(j, "limitValue")));
  bad("unknown operator kind '" + kind + "'");
}

Json operator_to_json(const OperatorSpec& T) {
  Json out;
  if (auto* m = T.as_matrix()) {
    out["kind"] = "matrix";
    out["rows"] = m->rows;
    out["cols"] = m->cols;
    out["entries"] = rat_list_to_json(m->a);
    return out;
  }
  if (auto* m = T.as_index_map()) {
    out["kind"] = "indexMap";
    out["codSeqExplicit"] = m->codSeqExplicit;
    Json entries = Json::array();
    for (const auto& [cod, entry] : m->sigma) {
      Json e;
      e["cod"] = atom_to_json(cod);
      e["source"] = atom_to_json(entry.source);
      e["scale"] = rat_to_json(entry.scale);
      entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    return out;
  }
  auto* m = T.as_seq_mul();
  out["kind"] = "seqMul";
  out["prefix"] = rat_list_to_json(m->prefix);
  out["tail"] = rat_to_json(m->tail);
  out["limitValue"] = rat_to_json(m->limitValue);
  return out;
}

BoundedFamily nakano_from_json(const Json& j) {
  std::string kind = kind_of(j);
  if (kind == "indicatorChain") return IndicatorChain{};
  if (kind == "explicit") {
    const Json& members = field(j, "members");
    if (!members.is_array()) bad("'members' must be an array");
    ExplicitFamily fam;
    for (const Json& e : members) fam.members.push_back(vec_from_json(e));
    return fam;
  }
  bad("unknown family kind '" + kind + "'");
}

Json nakano_to_json(const BoundedFamily& f) {
  Json out;
  if (std::holds_alternative<IndicatorChain>(f)) {
    out["kind"] = "indicatorChain";
    return out;
  }
  out["kind"] = "explicit";
  Json members = Json::array();
  for (const Vec& v : std::get<ExplicitFamily>(f).members)
    members.push_back(vec_to_json(v));
  out["members"] = std::move(members);
  return out;
}

const char* const kKnownKeys[] = {
    "schemaVersion", "space",      "codomainSpace", "weight",
    "codomainWeight", "alWeight",  "tensor",        "operator",
    "vectors",        "rootDegree", "nakano",       "sweep"};

}  // namespace

Manifest parse_manifest(const Json& doc) {
  if (!doc.is_object()) bad("manifest must be an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                     [&](const char* k) { return key == k; }) ==
        std::end(kKnownKeys))
      bad("unknown field '" + key + "'");
  }
  Manifest m;
  m.schemaVersion = int_field(doc, "schemaVersion");
  if (m.schemaVersion != 1) bad("unsupported schemaVersion");
  if (doc.contains("space")) m.space = space_from_json(doc.at("space"));
  if (doc.contains("codomainSpace"))
    m.codomainSpace = space_from_json(doc.at("codomainSpace"));
  if (doc.contains("weight")) m.weight = weight_from_json(doc.at("weight"));
  if (doc.contains("codomainWeight"))
    m.codomainWeight = weight_from_json(doc.at("codomainWeight"));
  if (doc.contains("alWeight"))
    m.alWeight = guarded("alWeight", [&] {
      return ALWeight::of(rat_list(doc.at("alWeight"), "'alWeight'"));
    });
  if (doc.contains("tensor")) m.tensor = tensor_from_json(doc.at("tensor"));
  if (doc.contains("operator")) m.op = operator_from_json(doc.at("operator"));
  if (doc.contains("vectors")) {
    const Json& vs = doc.at("vectors");
    if (!vs.is_object()) bad("'vectors' must be an object");
    for (const auto& [name, v] : vs.items()) m.vectors.emplace(name, vec_from_json(v));
  }
  if (doc.contains("rootDegree")) {
    int d = int_field(doc, "rootDegree");
    if (d < 1) bad("'rootDegree' must be >= 1");
    m.rootDegree = static_cast<unsigned>(d);
  }
  if (doc.contains("nakano")) m.nakano = nakano_from_json(doc.at("nakano"));
  if (doc.contains("sweep")) m.sweep = doc.at("sweep");
  return m;
}

Manifest parse_manifest_text(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) bad("not valid JSON");
  return parse_manifest(doc);
}

Json serialize_manifest(const Manifest& m) {
  Json out;
  out["schemaVersion"] = m.schemaVersion;
  if (m.space) out["space"] = space_to_json(*m.space);
  if (m.codomainSpace) out["codomainSpace"] = space_to_json(*m.codomainSpace);
  if (m.weight) out["weight"] = weight_to_json(*m.weight);
  if (m.codomainWeight) out["codomainWeight"] = weight_to_json(*m.codomainWeight);
  if (m.alWeight) out["alWeight"] = rat_list_to_json(m.alWeight->w);
  if (m.tensor) out["tensor"] = tensor_to_json(*m.tensor);
  if (m.op) out["operator"] = operator_to_json(*m.op);
  if (!m.vectors.empty()) {
    Json vs;
    for (const auto& [name, v] : m.vectors) vs[name] = vec_to_json(v);
    out["vectors"] = std::move(vs);
  }
  if (m.rootDegree) out["rootDegree"] = *m.rootDegree;
  if (m.nakano) out["nakano"] = nakano_to_json(*m.nakano);
  if (!m.sweep.is_null()) out["sweep"] = m.sweep;
  return out;
}

namespace {

std::string scalar_str(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool scalar_array(const Json& v) {
  for (const Json& e : v)
    if (e.is_object() || e.is_array()) return false;
  return true;
}

void collect_lines(const Json& j, const std::string& prefix,
                   std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    if (j.empty()) out.emplace_back(prefix, "{}");
    for (const auto& [k, v] : j.items()) {
      std::string path = prefix.empty() ? k : prefix + "." + k;
      if (v.is_object() || (v.is_array() && !scalar_array(v)))
        collect_lines(v, path, out);
      else if (v.is_array()) {
        std::string line = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) line += ", ";
          line += scalar_str(v[i]);
        }
        out.emplace_back(path, line + "]");
      } else {
        out.emplace_back(path, scalar_str(v));
      }
    }
    return;
  }
  if (j.is_array()) {
    if (j.empty()) out.emplace_back(prefix, "[]");
    for (std::size_t i = 0; i < j.size(); ++i)
      collect_lines(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out.emplace_back(prefix, scalar_str(j));
}

}  // namespace

std::string render_text(const Json& j) {
  std::vector<std::pair<std::string, std::string>> lines;
  collect_lines(j, "", lines);
  std::size_t width = 0;
  for (const auto& [path, value] : lines) width = std::max(width, path.size());
  std::string out;
  for (const auto& [path, value] : lines) {
    out += path;
    out.append(width - path.size() + 2, ' ');
    out += value;
    out += '\n';
  }
  return out;
}

}  // namespace amalg
