// Acceptance gate: ten end-to-end checks, one verdict line each.
// Exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "amalg/al.hpp"
#include "amalg/homs.hpp"
#include "amalg/lattice.hpp"
#include "amalg/manifest.hpp"
#include "amalg/products.hpp"
#include "amalg/space.hpp"
#include "amalg/sweep.hpp"

using namespace amalg;
namespace fs = std::filesystem;

namespace {

// Pinned once for the whole gate.
constexpr double kRootTol = 1e-12;
const Rat kGridResolution = rat(1, 8);
constexpr std::uint64_t kSeed = 20260822;
constexpr int kSampleBudget = 4;

int failures = 0;
std::vector<std::string> notes;

#define EXPECT(cond)                                                       \
  do {                                                                     \
    if (!(cond)) {                                                         \
      notes.push_back(std::string("    at ") + __FILE__ + ":" +            \
                      std::to_string(__LINE__) + "  " #cond);              \
      return false;                                                        \
    }                                                                      \
  } while (0)

void verdict(int index, bool pass, const char* what) {
  std::printf("criterion %2d: %s  %s\n", index, pass ? "PASS" : "FAIL", what);
  if (!pass) {
    ++failures;
    for (const std::string& n : notes) std::printf("%s\n", n.c_str());
  }
  notes.clear();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(AMALG_BIN) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_doc(const std::string& name, const std::string& text) {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("amalg_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return "\"" + p.string() + "\"";
}

// 1. The divergent-norm sequence space, driven through the binary: the
// constant-one weight is rejected with the exact 1-vs-2 witness, and the
// classification is negative with the exact 1-vs-1/2 witness.
bool criterion1() {
  std::string wx = write_doc("wx.json", R"({
    "schemaVersion": 1,
    "space": {"kind": "seqLim", "theta": "2"},
    "weight": {"kind": "seq", "prefix": [], "tail": "1", "limit": "1"}
  })");
  RunResult r = run_cli("wx-check " + wx + " --json");
  EXPECT(r.code == 0);
  Json w = Json::parse(r.out, nullptr, false);
  EXPECT(!w.is_discarded());
  EXPECT(w.at("member") == false);
  EXPECT(w.at("witness").at("alongNet") == "1");
  EXPECT(w.at("witness").at("atLimit") == "2");

  std::string cl = write_doc("classify.json", R"({
    "schemaVersion": 1,
    "space": {"kind": "seqLim", "theta": "2"}
  })");
  RunResult c = run_cli("classify " + cl + " --json");
  EXPECT(c.code == 0);
  Json j = Json::parse(c.out, nullptr, false);
  EXPECT(!j.is_discarded());
  EXPECT(j.at("isAMAlgebra") == false);
  EXPECT(j.at("normContinuityWitness").at("alongNet") == "1");
  EXPECT(j.at("normContinuityWitness").at("atLimit") == "1/2");
  return true;
}

// 2. Every tensor with entries {0, 1/2, 1} on the two-coordinate sup
// space: the diagonal decision agrees with the axiom verifier everywhere,
// and each accepted weight reproduces its tensor.
bool criterion2() {
  TensorSweepReport r = tensor_sweep(ModelSpace::finite_sup({rat(1), rat(1)}),
                                     {rat(0), rat(1, 2), rat(1)});
  EXPECT(r.total == 6561);
  EXPECT(r.accepted == 9);
  EXPECT(r.discrepancies.empty());
  return true;
}

// 3. The same grid on the two-atom additive space, plus: with a diffuse
// band present, every accepted product annihilates the diffuse mass.
bool criterion3() {
  TensorSweepReport r = tensor_sweep(ModelSpace::finite_al(2, false),
                                     {rat(0), rat(1, 2), rat(1)});
  EXPECT(r.total == 6561);
  EXPECT(r.accepted == 9);
  EXPECT(r.discrepancies.empty());

  ModelSpace banded = ModelSpace::finite_al(2, true);
  for (const Rat& w0 : {rat(0), rat(1, 2), rat(1)})
    for (const Rat& w1 : {rat(0), rat(1, 2), rat(1)}) {
      ALWeight w = ALWeight::of({w0, w1});
      for (const Vec& x : positive_probes(banded, kSampleBudget))
        for (const Vec& y : positive_probes(banded, kSampleBudget))
          EXPECT(al_product(banded, w, x, y).as_al()->mass == 0);
    }
  return true;
}

// 4. A thousand random weights: the norm-bound predicate agrees with the
// probe search, every rejection carrying a concrete violating pair.
bool criterion4() {
  SubmultBatchReport r = submult_random_batch(1000, kSeed);
  EXPECT(r.total == 1000);
  EXPECT(r.discrepancies.empty());
  EXPECT(r.submultiplicative > 0);
  EXPECT(r.submultiplicative < 1000);
  return true;
}

// 5. Five hundred random positive vectors: square roots reproduce the
// vector and its norm within 1e-12 (exactly whenever the radicals are
// rational), and a grid search at resolution 1/8 finds no second root.
bool criterion5() {
  RootBatchReport r = root_random_batch(500, kSeed, kRootTol, kGridResolution);
  EXPECT(r.total == 500);
  EXPECT(r.discrepancies.empty());
  EXPECT(r.exactCount > 0);
  EXPECT(r.exactCount < 500);
  EXPECT(r.maxProductResidual <= kRootTol);
  EXPECT(r.maxNormResidual <= kRootTol);
  return true;
}

// 6. Every row-structured matrix between sup spaces of dimensions up to
// three: probe verdict, lattice+unit-idempotency route, and pullback
// reconstruction agree item by item, and the homomorphism count matches
// an independently computed closed form.
bool criterion6() {
  const std::vector<Rat> weights = {rat(1), rat(2), rat(4)};
  const std::vector<Rat> values = {rat(1, 2), rat(1), rat(2), rat(4)};

  // Closed form: a row into codomain atom k is zero or places the forced
  // scale c_i / d_k, admissible iff that ratio is one of the row values.
  long expectedHoms = 0, expectedTotal = 0;
  auto configs = [&](int n, std::vector<std::vector<int>>& out) {
    out.clear();
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      out.push_back(idx);
      int p = 0;
      while (p < n) {
        std::size_t u = static_cast<std::size_t>(p);
        if (++idx[u] < 3) break;
        idx[u] = 0;
        ++p;
      }
      if (p == n) break;
    }
  };
  std::vector<std::vector<int>> cs, ds;
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) {
      configs(n, cs);
      configs(m, ds);
      long rowChoices = 1;  // matrices per (n, m): (1 + |values| * n)^m
      for (int k = 0; k < m; ++k) rowChoices *= 1 + 4 * n;
      for (const auto& cc : cs)
        for (const auto& dd : ds) {
          expectedTotal += rowChoices;
          long homs = 1;
          for (int k = 0; k < m; ++k) {
            long ways = 1;  // the zero row
            for (int i = 0; i < n; ++i) {
              Rat ratio = weights[static_cast<std::size_t>(cc[static_cast<std::size_t>(i)])] /
                          weights[static_cast<std::size_t>(dd[static_cast<std::size_t>(k)])];
              for (const Rat& v : values)
                if (v == ratio) {
                  ++ways;
                  break;
                }
            }
            homs *= ways;
          }
          expectedHoms += homs;
        }
    }
  EXPECT(expectedTotal == 1838529);
  EXPECT(expectedHoms == 46789);

  HomSweepReport r = hom_sweep(3, weights, values,
                               SweepOptions{SweepMode::Parallel, 0});
  EXPECT(r.total == expectedTotal);
  EXPECT(r.discrepancies.empty());
  EXPECT(r.algebraHoms == expectedHoms);
  return true;
}

// 7. Weight grids {0, 1/2, 1, 2}^n, n <= 3: exactly one weight makes the
// order unit an algebraic identity, and it is the constant-one weight.
bool criterion7() {
  const std::vector<Rat> grid = {rat(0), rat(1, 2), rat(1), rat(2)};
  const std::vector<std::vector<Rat>> duals = {
      {rat(2)}, {rat(1), rat(2)}, {rat(1), rat(2), rat(4)}};
  long total = 4;
  for (const auto& dw : duals) {
    ModelSpace s = ModelSpace::finite_sup(dw);
    UniquenessReport r = am_product_is_unique(s, grid);
    EXPECT(r.total == total);
    EXPECT(r.unique);
    EXPECT(r.identityWeights.size() == 1);
    EXPECT(r.identityWeights[0] == unit_weight(s));
    total *= 4;
  }
  return true;
}

// 8. A thousand random operator candidates: the central decision accepts
// exactly the multiplication operators, reports the sup-norm of the
// symbol as the operator norm, and multiplies symbols by composition.
bool criterion8() {
  CentralBatchReport r = central_random_batch(1000, kSeed);
  EXPECT(r.total == 1000);
  EXPECT(r.discrepancies.empty());
  EXPECT(r.accepted > 0);
  EXPECT(r.accepted < 1000);
  return true;
}

// 9. The zero product is forced exactly on the atomless additive space;
// wherever an atom exists, lifting a band product yields a nonzero
// product passing the axiom verifier.
bool criterion9() {
  EXPECT(only_zero_product(ModelSpace::finite_al(0, true)));
  EXPECT(!only_zero_product(ModelSpace::finite_al(1, false)));
  EXPECT(!only_zero_product(ModelSpace::finite_al(2, true)));
  EXPECT(!only_zero_product(ModelSpace::finite_al(3, false)));

  {
    ModelSpace s = ModelSpace::finite_al(2, true);
    ModelSpace atoms = band_space(s, BandSide::Atoms);
    ALWeight w = ALWeight::of({rat(1), rat(1)});
    ProductFn lifted = lift_band_product(
        s, BandSide::Atoms,
        [&](const Vec& a, const Vec& b) { return al_product(atoms, w, a, b); });
    EXPECT(verify_falgebra_axioms(s, lifted, kSampleBudget).ok());
    Vec probe = Vec::al({rat(1), rat(0)}, rat(1));
    EXPECT(!is_zero(lifted(probe, probe)));
  }
  {
    ModelSpace s = ModelSpace::sup_sum(ModelSpace::finite_al(0, true),
                                       ModelSpace::finite_al(1, false));
    ModelSpace right = band_space(s, BandSide::Right);
    ALWeight w = ALWeight::of({rat(1)});
    ProductFn lifted = lift_band_product(
        s, BandSide::Right,
        [&](const Vec& a, const Vec& b) { return al_product(right, w, a, b); });
    EXPECT(verify_falgebra_axioms(s, lifted, kSampleBudget).ok());
    Vec probe = Vec::pair(Vec::al({}, rat(3)), Vec::al({rat(1)}, rat(0)));
    EXPECT(!is_zero(lifted(probe, probe)));
  }
  return true;
}

// 10. The norm of an order-bounded family: with theta = 2 the head
// indicators have sup of norms 1 while every upper bound has norm >= 2;
// with theta = 1 the two quantities agree.
bool criterion10() {
  NakanoReport gap = nakano_witness(ModelSpace::seq_lim(rat(2)), IndicatorChain{});
  EXPECT(gap.supNorms == rat(1));
  EXPECT(gap.infBoundNorms == rat(2));
  EXPECT(!gap.equal);
  EXPECT(gap.minimizingBound == Vec::seq({}, rat(1)));

  NakanoReport flat = nakano_witness(ModelSpace::seq_lim(rat(1)), IndicatorChain{});
  EXPECT(flat.supNorms == rat(1));
  EXPECT(flat.infBoundNorms == rat(1));
  EXPECT(flat.equal);
  return true;
}

}  // namespace

int main() {
  verdict(1, criterion1(), "divergent-norm witnesses through the binary");
  verdict(2, criterion2(), "exhaustive tensors on the sup space match the verifier");
  verdict(3, criterion3(), "exhaustive tensors on the additive space; band annihilates");
  verdict(4, criterion4(), "random weights: predicate vs probe search");
  verdict(5, criterion5(), "random roots reproduce vectors and norms");
  verdict(6, criterion6(), "all small matrices: three routes, closed-form count");
  verdict(7, criterion7(), "the constant-one weight is the unique identity weight");
  verdict(8, criterion8(), "central operators are exactly the multiplications");
  verdict(9, criterion9(), "zero product iff atomless; band lifts verify");
  verdict(10, criterion10(), "bounded-family norms split at theta > 1");

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
