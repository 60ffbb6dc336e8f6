#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "amalg/al.hpp"
#include "amalg/center.hpp"
#include "amalg/errors.hpp"
#include "amalg/homs.hpp"
#include "amalg/manifest.hpp"
#include "amalg/products.hpp"
#include "amalg/sweep.hpp"

namespace {

using namespace amalg;

struct Args {
  std::string path;
  bool json = false;
  int workers = 0;  // 0 = serial reference; N >= 1 = OpenMP with N workers
};

// Fixed verification knobs; manifests never carry tolerances.
constexpr int kSampleBudget = 4;
constexpr double kRootTol = 1e-12;

std::string double_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const ModelSpace& need_space(const Manifest& m) {
  require(m.space.has_value(), "manifest has no 'space'");
  return *m.space;
}

const Vec& need_vector(const Manifest& m, const char* name) {
  auto it = m.vectors.find(name);
  require(it != m.vectors.end(),
          std::string("manifest has no vector '") + name + "'");
  return it->second;
}

template <typename W>  // WxWitness or ContinuityWitness
Json witness_json(const W& w) {
  Json out;
  out["net"] = atom_to_json(w.datum.net.id);
  out["limit"] = atom_to_json(w.datum.limit.id);
  out["alongNet"] = rat_to_json(w.alongNet);
  out["atLimit"] = rat_to_json(w.atLimit);
  return out;
}

Json discrepancy_json(const std::vector<long>& d) {
  Json out = Json::array();
  for (long i : d) out.push_back(i);
  return out;
}

// --- sweep-parameter access (document shape, so failures are schema errors)

const Json& sw_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("sweep needs '") + key + "'");
  return j.at(key);
}

long sw_long(const Json& j, const char* key) {
  const Json& v = sw_field(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw SchemaError(std::string("sweep '") + key + "' must be an integer");
  return v.get<long>();
}

std::vector<Rat> sw_rats(const Json& j, const char* key) {
  const Json& v = sw_field(j, key);
  if (!v.is_array())
    throw SchemaError(std::string("sweep '") + key + "' must be an array");
  std::vector<Rat> out;
  for (const Json& e : v) out.push_back(json_to_rat(e));
  return out;
}

// --- commands

Json cmd_classify(const Manifest& m, const Args&) {
  const ModelSpace& s = need_space(m);
  AMClassification c = classify_am_algebra(s);
  Json out;
  out["isAMAlgebra"] = c.isAMAlgebra;
  if (c.witness) out["normContinuityWitness"] = witness_json(*c.witness);
  if (c.amWeight) out["amWeight"] = weight_to_json(*c.amWeight);
  if (m.nakano) {
    NakanoReport n = nakano_witness(s, *m.nakano);
    Json nj;
    nj["supNorms"] = rat_to_json(n.supNorms);
    nj["infBoundNorms"] = rat_to_json(n.infBoundNorms);
    nj["equal"] = n.equal;
    nj["minimizingBound"] = vec_to_json(n.minimizingBound);
    out["nakanoWitness"] = nj;
  }
  return out;
}

Json cmd_wx_check(const Manifest& m, const Args&) {
  const ModelSpace& s = need_space(m);
  require(m.weight.has_value(), "wx-check needs 'weight'");
  WxReport r = wx_membership(s, *m.weight);
  Json out;
  out["member"] = r.member;
  if (r.witness) out["witness"] = witness_json(*r.witness);
  return out;
}

Json cmd_product(const Manifest& m, const Args&) {
  const ModelSpace& s = need_space(m);
  require(m.weight.has_value(), "product needs 'weight'");
  const Vec& x = need_vector(m, "x");
  const Vec& y = need_vector(m, "y");
  Vec p = product(s, *m.weight, x, y);
  Json out;
  out["weight"] = weight_to_json(*m.weight);
  out["x"] = vec_to_json(x);
  out["y"] = vec_to_json(y);
  out["product"] = vec_to_json(p);
  out["productNorm"] = rat_to_json(norm(s, p));
  return out;
}

Json cmd_root(const Manifest& m, const Args&) {
  const ModelSpace& s = need_space(m);
  const Vec& x = need_vector(m, "x");
  require(m.rootDegree.has_value(), "root needs 'rootDegree'");
  unsigned n = *m.rootDegree;
  RootResult g = nth_root(s, x, n);
  RootCheck c = root_check(s, x, g, n);
  Json out;
  out["x"] = vec_to_json(x);
  out["degree"] = n;
  out["exact"] = g.exact.has_value();
  if (g.exact) {
    out["root"] = vec_to_json(*g.exact);
  } else {
    Json approx = Json::array();
    for (double v : g.flat) approx.push_back(double_str(v));
    out["approx"] = approx;
  }
  out["productResidual"] = double_str(c.productResidual);
  out["normResidual"] = double_str(c.normResidual);
  return out;
}

Json cmd_check_falgebra(const Manifest& m, const Args&) {
  const ModelSpace& s = need_space(m);
  Json out;
  if (m.tensor) {
    AxiomReport rep =
        verify_falgebra_axioms(s, tensor_product_fn(s, *m.tensor), kSampleBudget);
    out["axiomsHold"] = rep.ok();
    Json viols = Json::array();
    for (const AxiomViolation& v : rep.violations) {
      Json vj;
      vj["axiom"] = v.axiom;
      vj["detail"] = v.detail;
      viols.push_back(vj);
    }
    out["violations"] = viols;
    if (s.as_finite_al()) {
      std::optional<ALWeight> w = al_decide_tensor(s, *m.tensor);
      out["isWeightProduct"] = w.has_value();
      if (w) {
        Json wj = Json::array();
        for (const Rat& r : w->w) wj.push_back(rat_to_json(r));
        out["alWeight"] = wj;
      }
    } else {
      std::optional<Weight> w = decide_tensor(s, *m.tensor);
      out["isWeightProduct"] = w.has_value();
      if (w) out["weight"] = weight_to_json(*w);
    }
    return out;
  }
  require(m.weight.has_value(), "check-falgebra needs 'tensor' or 'weight'");
  AxiomReport rep =
      verify_falgebra_axioms(s, weight_product_fn(s, *m.weight), kSampleBudget);
  out["axiomsHold"] = rep.ok();
  Json viols = Json::array();
  for (const AxiomViolation& v : rep.violations) {
    Json vj;
    vj["axiom"] = v.axiom;
    vj["detail"] = v.detail;
    viols.push_back(vj);
  }
  out["violations"] = viols;
  SubmultReport sm = is_submultiplicative(s, *m.weight);
  out["submultiplicative"] = sm.submultiplicative;
  out["weightSupAbs"] = rat_to_json(sm.supAbs);
  return out;
}

Json cmd_check_hom(const Manifest& m, const Args&) {
  const ModelSpace& dom = need_space(m);
  require(m.codomainSpace.has_value(), "check-hom needs 'codomainSpace'");
  require(m.op.has_value(), "check-hom needs 'operator'");
  const ModelSpace& cod = *m.codomainSpace;
  const OperatorSpec& T = *m.op;

  LatticeHomReport lat = is_lattice_hom(dom, cod, T);
  Json out;
  out["latticeHom"] = lat.isLatticeHom;
  if (lat.witness) out["latticeWitness"] = vec_to_json(*lat.witness);

  bool bothSup = dom.as_finite_sup() && cod.as_finite_sup();
  bool canonical = !m.weight && !m.codomainWeight;  // unit-weight products
  if (bothSup && canonical) out["ballSquare"] = ball_square_condition(dom, cod, T);

  Weight wd = m.weight ? *m.weight : unit_weight(dom);
  Weight wc = m.codomainWeight ? *m.codomainWeight : unit_weight(cod);
  AlgebraHomReport alg = is_algebra_hom(dom, cod, T, wd, wc);
  out["algebraHom"] = alg.isAlgebraHom;
  if (alg.witness) {
    Json wj;
    wj["x"] = vec_to_json(alg.witness->first);
    wj["y"] = vec_to_json(alg.witness->second);
    out["witness"] = wj;
  }

  if (alg.isAlgebraHom && bothSup && canonical && T.as_matrix()) {
    CompositionForm phi = composition_form(dom, cod, T);
    Json pj;
    pj["source"] = phi.source;
    Json coeff = Json::array();
    for (const Rat& r : phi.coefficient) coeff.push_back(rat_to_json(r));
    pj["coefficient"] = coeff;
    out["phi"] = pj;
  }
  return out;
}

Json cmd_al_product(const Manifest& m, const Args&) {
  const ModelSpace& s = need_space(m);
  require(m.alWeight.has_value(), "al-product needs 'alWeight'");
  const Vec& x = need_vector(m, "x");
  const Vec& y = need_vector(m, "y");
  Vec p = al_product(s, *m.alWeight, x, y);
  Json out;
  Json wj = Json::array();
  for (const Rat& r : m.alWeight->w) wj.push_back(rat_to_json(r));
  out["alWeight"] = wj;
  out["x"] = vec_to_json(x);
  out["y"] = vec_to_json(y);
  out["product"] = vec_to_json(p);
  out["productNorm"] = rat_to_json(norm(s, p));
  return out;
}

Json cmd_sweep(const Manifest& m, const Args& a) {
  // an absent sweep object is a valid document this command cannot act on;
  // a present but malformed one is a schema problem
  if (m.sweep.is_null())
    throw PreconditionError("the document carries no 'sweep' object");
  if (!m.sweep.is_object()) throw SchemaError("'sweep' must be an object");
  const Json& kj = sw_field(m.sweep, "kind");
  if (!kj.is_string()) throw SchemaError("sweep 'kind' must be a string");
  std::string kind = kj.get<std::string>();

  SweepOptions opt;
  opt.mode = a.workers >= 1 ? SweepMode::Parallel : SweepMode::Serial;
  opt.workers = a.workers;

  Json out;
  out["kind"] = kind;
  if (kind == "tensor") {
    TensorSweepReport r =
        tensor_sweep(need_space(m), sw_rats(m.sweep, "grid"), opt);
    out["total"] = r.total;
    out["accepted"] = r.accepted;
    out["discrepancies"] = discrepancy_json(r.discrepancies);
    return out;
  }
  if (kind == "hom") {
    HomSweepReport r =
        hom_sweep(static_cast<int>(sw_long(m.sweep, "maxDim")),
                  sw_rats(m.sweep, "weightGrid"),
                  sw_rats(m.sweep, "nonzeroValues"), opt);
    out["total"] = r.total;
    out["algebraHoms"] = r.algebraHoms;
    out["discrepancies"] = discrepancy_json(r.discrepancies);
    return out;
  }
  if (kind == "uniqueness") {
    UniquenessReport r =
        am_product_is_unique(need_space(m), sw_rats(m.sweep, "grid"));
    out["unique"] = r.unique;
    out["total"] = r.total;
    Json ws = Json::array();
    for (const Weight& w : r.identityWeights) ws.push_back(weight_to_json(w));
    out["identityWeights"] = ws;
    return out;
  }
  if (kind == "submult") {
    SubmultBatchReport r = submult_random_batch(
        sw_long(m.sweep, "count"),
        static_cast<std::uint64_t>(sw_long(m.sweep, "seed")), opt);
    out["total"] = r.total;
    out["submultiplicative"] = r.submultiplicative;
    out["discrepancies"] = discrepancy_json(r.discrepancies);
    return out;
  }
  if (kind == "root") {
    RootBatchReport r = root_random_batch(
        sw_long(m.sweep, "count"),
        static_cast<std::uint64_t>(sw_long(m.sweep, "seed")), kRootTol,
        rat(1, 8), opt);
    out["total"] = r.total;
    out["exactCount"] = r.exactCount;
    out["maxProductResidual"] = double_str(r.maxProductResidual);
    out["maxNormResidual"] = double_str(r.maxNormResidual);
    out["discrepancies"] = discrepancy_json(r.discrepancies);
    return out;
  }
  if (kind == "central") {
    CentralBatchReport r = central_random_batch(
        sw_long(m.sweep, "count"),
        static_cast<std::uint64_t>(sw_long(m.sweep, "seed")), opt);
    out["total"] = r.total;
    out["accepted"] = r.accepted;
    out["discrepancies"] = discrepancy_json(r.discrepancies);
    return out;
  }
  throw SchemaError("unknown sweep kind '" + kind + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact f-algebra products on sup- and additive-norm model spaces"};
  app.require_subcommand(1);

  Args args;
  Json (*handler)(const Manifest&, const Args&) = nullptr;
  auto add = [&](const char* name, const char* desc,
                 Json (*fn)(const Manifest&, const Args&), bool workers) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("manifest", args.path, "manifest file (JSON)")->required();
    c->add_flag("--json", args.json, "emit one JSON document");
    if (workers)
      c->add_option("--workers", args.workers,
                    "run the sweep on this many OpenMP workers (default: serial)");
    c->callback([&handler, fn] { handler = fn; });
  };
  add("classify", "decide whether the space is an AM-algebra", cmd_classify, false);
  add("wx-check", "membership of a weight in the product-defining class",
      cmd_wx_check, false);
  add("product", "evaluate the weighted product of two vectors", cmd_product,
      false);
  add("root", "positive n-th root in the canonical algebra", cmd_root, false);
  add("check-falgebra", "verify the f-algebra axioms for a tensor or weight",
      cmd_check_falgebra, false);
  add("check-hom", "lattice/algebra homomorphism checks for an operator",
      cmd_check_hom, false);
  add("al-product", "evaluate an additive-norm atom product", cmd_al_product,
      false);
  add("sweep", "run an exhaustive or randomized verification sweep", cmd_sweep,
      true);

  try {
    app.parse(argc, argv);
    Manifest m = parse_manifest_text(read_file(args.path));
    Json doc = handler(m, args);
    if (args.json)
      std::cout << doc.dump(2) << '\n';
    else
      std::cout << render_text(doc);
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
