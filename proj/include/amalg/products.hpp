#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "amalg/spectrum.hpp"

namespace amalg {

// ---------------------------------------------------------------------------
// Weights: functions on the norm-one lattice-homomorphism functionals.
// ---------------------------------------------------------------------------

struct Weight;

// Value per coordinate functional's unit representative (c_i * delta_i).
struct SupWeight {
  std::vector<Rat> values;
};

// Values at the delta_j (explicit prefix, then `tail` for all large j) and
// at the unit representative of the limit functional (theta * delta_inf).
struct SeqWeight {
  std::vector<Rat> prefix;
  Rat tail;
  Rat limit;
};

struct PairWeight {
  std::shared_ptr<const Weight> left;
  std::shared_ptr<const Weight> right;
};

struct Weight {
  std::variant<SupWeight, SeqWeight, PairWeight> rep;

  static Weight sup(std::vector<Rat> values);
  // Trims the prefix against `tail` (canonical form, same rule as Vec).
  static Weight seq(std::vector<Rat> prefix, Rat tail, Rat limit);
  static Weight pair(Weight left, Weight right);

  const SupWeight* as_sup() const { return std::get_if<SupWeight>(&rep); }
  const SeqWeight* as_seq() const { return std::get_if<SeqWeight>(&rep); }
  const PairWeight* as_pair() const { return std::get_if<PairWeight>(&rep); }
};

bool operator==(const Weight& a, const Weight& b);

bool weight_conforms(const ModelSpace& s, const Weight& w);
void require_weight(const ModelSpace& s, const Weight& w);
bool weight_nonneg(const Weight& w);

// Value of w at the unit representative addressed by the atom id.
Rat weight_at(const ModelSpace& s, const Weight& w, const AtomId& a);

// sup |w| over the norm-one functionals (max of explicit values, tail,
// limit value).
Rat weight_sup_abs(const ModelSpace& s, const Weight& w);

// Pointwise structure on weights, used by the closure/lattice tests.
Weight weight_join(const Weight& a, const Weight& b);
Weight weight_meet(const Weight& a, const Weight& b);
Weight weight_abs(const Weight& a);
Weight weight_add(const Weight& a, const Weight& b);
Weight weight_scale(const Rat& c, const Weight& a);

// The degree -1 homogeneous extension evaluated at an unnormalized atom:
// w(x*/|x*|)/|x*| at coordinate functionals, tail class, or the limit
// functional (where it equals theta * limit value).
Rat wminus1_at(const ModelSpace& s, const Weight& w, const AtomId& a);

// ---------------------------------------------------------------------------
// Membership in the product-defining class: w_{-1} must be continuous along
// every recorded convergent net. For SeqLim leaves this is the single
// equation tail = theta * limit.
// ---------------------------------------------------------------------------

struct WxWitness {
  ConvergenceDatum datum;
  Rat alongNet;  // limit of w_{-1} along the net (= tail value)
  Rat atLimit;   // w_{-1} at the limit functional (= theta * limit value)
};

struct WxReport {
  bool member = true;
  std::optional<WxWitness> witness;
};

WxReport wx_membership(const ModelSpace& s, const Weight& w);

// ---------------------------------------------------------------------------
// The weighted product and submultiplicativity.
// ---------------------------------------------------------------------------

// P(x,y) has coordinate values w_{-1}(atom) * x(atom) * y(atom); requires
// w >= 0 and wx_membership (PreconditionError otherwise).
Vec product(const ModelSpace& s, const Weight& w, const Vec& x, const Vec& y);

struct SubmultReport {
  bool submultiplicative = false;
  Rat supAbs;
};

// Requires w >= 0 and membership, like product.
SubmultReport is_submultiplicative(const ModelSpace& s, const Weight& w);

// Probe-grid oracle for submultiplicativity: searches normalized probe
// pairs for |P(x,y)| > |x| |y| and returns the first violator found.
// Same preconditions as product. For these model families the probe grid
// is exhaustive: a violation exists on it iff sup w > 1.
struct NormViolation {
  Vec x;
  Vec y;
  Rat productNorm;
  Rat normBound;  // |x| * |y|
};

std::optional<NormViolation> submult_probe_search(const ModelSpace& s,
                                                 const Weight& w);

// ---------------------------------------------------------------------------
// Axiom verifier and tensor oracle.
// ---------------------------------------------------------------------------

using ProductFn = std::function<Vec(const Vec&, const Vec&)>;

ProductFn weight_product_fn(const ModelSpace& s, const Weight& w);

// Bilinear candidate on a coordinate basis: P(e_i, e_j) = sum_k B[i][j][k] e_k.
struct ProductTensor {
  int n = 0;
  std::vector<Rat> b;  // n^3 entries, row-major [i][j][k]

  static ProductTensor zeros(int n);
  Rat& at(int i, int j, int k);
  const Rat& at(int i, int j, int k) const;
};

// FiniteSup or FiniteAL (band products are the al module's business; this
// is the raw bilinear extension of the tensor on the atom coordinates).
ProductFn tensor_product_fn(const ModelSpace& s, const ProductTensor& B);

// Deterministic positive probe vectors (basis-like indicators and a few
// positive rational combinations); budget caps the number of explicit
// SeqLim indices.
std::vector<Vec> positive_probes(const ModelSpace& s, int budget);
// Disjoint positive pairs from the probe set.
std::vector<std::pair<Vec, Vec>> disjoint_probes(const ModelSpace& s, int budget);

struct AxiomViolation {
  std::string axiom;  // "positivity" | "commutativity" | "associativity" | "f-algebra"
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Exact checks of the f-algebra axioms on the structured sample:
// positivity of products of positives, commutativity, associativity, and
// disjointness preservation under one-sided multiplication.
AxiomReport verify_falgebra_axioms(const ModelSpace& s, const ProductFn& P,
                                   int sampleBudget);

// Exact structural decision for FiniteSup: B defines an f-algebra product
// iff all entries are >= 0 and only the diagonal entries B[k][k][k] are
// nonzero; then the product is the weight product with w_k = B[k][k][k]/c_k.
std::optional<Weight> decide_tensor(const ModelSpace& s, const ProductTensor& B);

// ---------------------------------------------------------------------------
// AM-algebra classification, canonical product, uniqueness, roots.
// ---------------------------------------------------------------------------

// Weight of the canonical product (w = 1 at every unit representative) and
// the norm-one order unit it is an identity for.
Weight unit_weight(const ModelSpace& s);
Vec order_unit(const ModelSpace& s);

struct AMClassification {
  bool isAMAlgebra = false;
  std::optional<ContinuityWitness> witness;  // present when false
  std::optional<Weight> amWeight;            // present when true
  std::optional<Vec> unit;                   // order unit (norm one) when true
};

// Decided three ways (norm continuity, membership of the constant-one
// weight, and the leaf-structure rule) with the agreement asserted.
AMClassification classify_am_algebra(const ModelSpace& s);

// Sweeps every weight with values from `grid`; reports the weights that
// make the order unit a two-sided algebraic identity. Uniqueness holds iff
// that list is exactly {constant-one weight}.
struct UniquenessReport {
  bool unique = false;
  long total = 0;
  std::vector<Weight> identityWeights;
};

UniquenessReport am_product_is_unique(const ModelSpace& s,
                                      const std::vector<Rat>& grid);

// Positive n-th root for the canonical AM-algebra product. Exact when all
// radicals are rational; otherwise `flat` carries binary64 coordinates
// (flattened: FiniteSup coords; SeqLim prefix then tail; sums left then
// right) good to 1e-12 relative.
struct RootResult {
  std::optional<Vec> exact;
  std::vector<double> flat;
};

RootResult nth_root(const ModelSpace& s, const Vec& x, unsigned n);

// Max residuals of a root candidate: reproduction |P(g,..,g) - x| and
// norm ||g|^n - |x||, both relative to 1 + |x|. Exact-path results give 0.
struct RootCheck {
  double productResidual = 0.0;
  double normResidual = 0.0;
};

RootCheck root_check(const ModelSpace& s, const Vec& x, const RootResult& g,
                     unsigned n);

// Flattened double view of a vector (same coordinate order as RootResult).
std::vector<double> flatten(const ModelSpace& s, const Vec& x);

// ---------------------------------------------------------------------------
// Norm vs. upper bounds of order-bounded families.
// ---------------------------------------------------------------------------

// A finite explicit family, or the symbolic chain of head indicators
// (1 on the first k coordinates, 0 after; all k) on a SeqLim space.
struct ExplicitFamily {
  std::vector<Vec> members;
};
struct IndicatorChain {};

using BoundedFamily = std::variant<ExplicitFamily, IndicatorChain>;

struct NakanoReport {
  Rat supNorms;
  Rat infBoundNorms;
  bool equal = false;
  Vec minimizingBound;
};

// sup of member norms vs. inf of upper-bound norms, both exact; the inf is
// attained at (sup of the family) v 0 for explicit families and at the
// constant-one sequence for the indicator chain.
NakanoReport nakano_witness(const ModelSpace& s, const BoundedFamily& family);

}  // namespace amalg
