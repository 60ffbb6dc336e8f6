#include "amalg/products.hpp"

#include <algorithm>
#include <cmath>

#include "amalg/errors.hpp"

namespace amalg {

// ---------------------------------------------------------------------------
// Weight basics
// ---------------------------------------------------------------------------

Weight Weight::sup(std::vector<Rat> values) {
  return Weight{SupWeight{std::move(values)}};
}

Weight Weight::seq(std::vector<Rat> prefix, Rat tail, Rat limit) {
  while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
  return Weight{SeqWeight{std::move(prefix), std::move(tail), std::move(limit)}};
}

Weight Weight::pair(Weight left, Weight right) {
  return Weight{PairWeight{std::make_shared<const Weight>(std::move(left)),
                           std::make_shared<const Weight>(std::move(right))}};
}

bool operator==(const Weight& a, const Weight& b) {
  if (a.rep.index() != b.rep.index()) return false;
  if (auto* sa = a.as_sup()) return sa->values == b.as_sup()->values;
  if (auto* qa = a.as_seq()) {
    auto* qb = b.as_seq();
    return qa->prefix == qb->prefix && qa->tail == qb->tail &&
           qa->limit == qb->limit;
  }
  auto* pa = a.as_pair();
  auto* pb = b.as_pair();
  return *pa->left == *pb->left && *pa->right == *pb->right;
}

bool weight_conforms(const ModelSpace& s, const Weight& w) {
  if (auto* f = s.as_finite_sup()) {
    auto* v = w.as_sup();
    return v && static_cast<int>(v->values.size()) == f->dim();
  }
  if (s.as_seq_lim()) return w.as_seq() != nullptr;
  if (s.as_finite_al()) return false;  // AL products use ALWeight
  auto* p = s.as_sum();
  auto* v = w.as_pair();
  return v && weight_conforms(*p->left, *v->left) &&
         weight_conforms(*p->right, *v->right);
}

void require_weight(const ModelSpace& s, const Weight& w) {
  if (!weight_conforms(s, w))
    throw PreconditionError("weight does not match " + describe(s));
}

bool weight_nonneg(const Weight& w) {
  if (auto* v = w.as_sup()) {
    for (const Rat& c : v->values)
      if (c < 0) return false;
    return true;
  }
  if (auto* q = w.as_seq()) {
    if (q->tail < 0 || q->limit < 0) return false;
    for (const Rat& c : q->prefix)
      if (c < 0) return false;
    return true;
  }
  auto* p = w.as_pair();
  return weight_nonneg(*p->left) && weight_nonneg(*p->right);
}

namespace {

// Descend a sum path to the addressed leaf.
const ModelSpace& sub_space(const ModelSpace& s, const std::vector<int>& path) {
  const ModelSpace* sp = &s;
  for (int step : path) {
    auto* p = sp->as_sum();
    require(p != nullptr, "atom path descends into a non-sum space");
    sp = step == 0 ? p->left.get() : p->right.get();
  }
  return *sp;
}

const Weight& sub_weight(const Weight& w, const std::vector<int>& path) {
  const Weight* wp = &w;
  for (int step : path) {
    auto* p = wp->as_pair();
    require(p != nullptr, "atom path descends into a non-pair weight");
    wp = step == 0 ? p->left.get() : p->right.get();
  }
  return *wp;
}

Rat seq_weight_coord(const SeqWeight& q, int j) {
  std::size_t idx = static_cast<std::size_t>(j);
  return idx < q.prefix.size() ? q.prefix[idx] : q.tail;
}

using WOp = Rat (*)(const Rat&, const Rat&);

Weight weight_zip(const Weight& a, const Weight& b, WOp op) {
  require(a.rep.index() == b.rep.index(), "weight shapes differ");
  if (auto* va = a.as_sup()) {
    auto* vb = b.as_sup();
    require(va->values.size() == vb->values.size(), "weight dimensions differ");
    std::vector<Rat> out(va->values.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = op(va->values[i], vb->values[i]);
    return Weight::sup(std::move(out));
  }
  if (auto* qa = a.as_seq()) {
    auto* qb = b.as_seq();
    std::size_t n = std::max(qa->prefix.size(), qb->prefix.size());
    std::vector<Rat> out(n);
    for (std::size_t j = 0; j < n; ++j)
      out[j] = op(seq_weight_coord(*qa, static_cast<int>(j)),
                  seq_weight_coord(*qb, static_cast<int>(j)));
    return Weight::seq(std::move(out), op(qa->tail, qb->tail),
                       op(qa->limit, qb->limit));
  }
  auto* pa = a.as_pair();
  auto* pb = b.as_pair();
  return Weight::pair(weight_zip(*pa->left, *pb->left, op),
                      weight_zip(*pa->right, *pb->right, op));
}

Rat w_max(const Rat& a, const Rat& b) { return a >= b ? a : b; }
Rat w_min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
Rat w_plus(const Rat& a, const Rat& b) { return Rat(a + b); }

}  // namespace

Rat weight_at(const ModelSpace& s, const Weight& w, const AtomId& a) {
  require_weight(s, w);
  const ModelSpace& leafSpace = sub_space(s, a.path);
  const Weight& leaf = sub_weight(w, a.path);
  if (auto* f = leafSpace.as_finite_sup()) {
    if (!(a.kind == LeafKind::Coord && a.index >= 0 && a.index < f->dim()))
      throw PreconditionError("atom does not exist on " + describe(leafSpace));
    return leaf.as_sup()->values[a.index];
  }
  require(leafSpace.as_seq_lim() != nullptr, "weight atom on unsupported space");
  const SeqWeight& q = *leaf.as_seq();
  switch (a.kind) {
    case LeafKind::Coord:
      require(a.index >= 0, "atom index must be >= 0");
      return seq_weight_coord(q, a.index);
    case LeafKind::Tail:
      return q.tail;
    case LeafKind::Limit:
      return q.limit;
  }
  throw InternalError("unhandled leaf kind");
}

Rat weight_sup_abs(const ModelSpace& s, const Weight& w) {
  require_weight(s, w);
  if (auto* v = w.as_sup()) {
    Rat best(0);
    for (const Rat& c : v->values) {
      Rat t = abs(c);
      if (t > best) best = t;
    }
    return best;
  }
  if (auto* q = w.as_seq()) {
    Rat best = abs(q->tail);
    Rat lim = abs(q->limit);
    if (lim > best) best = lim;
    for (const Rat& c : q->prefix) {
      Rat t = abs(c);
      if (t > best) best = t;
    }
    return best;
  }
  auto* p = w.as_pair();
  auto* ps = s.as_sum();
  return w_max(weight_sup_abs(*ps->left, *p->left),
               weight_sup_abs(*ps->right, *p->right));
}

Weight weight_join(const Weight& a, const Weight& b) {
  return weight_zip(a, b, w_max);
}
Weight weight_meet(const Weight& a, const Weight& b) {
  return weight_zip(a, b, w_min);
}
Weight weight_add(const Weight& a, const Weight& b) {
  return weight_zip(a, b, w_plus);
}

Weight weight_abs(const Weight& a) {
  if (auto* v = a.as_sup()) {
    std::vector<Rat> out(v->values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = abs(v->values[i]);
    return Weight::sup(std::move(out));
  }
  if (auto* q = a.as_seq()) {
    std::vector<Rat> out(q->prefix.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = abs(q->prefix[j]);
    return Weight::seq(std::move(out), abs(q->tail), abs(q->limit));
  }
  auto* p = a.as_pair();
  return Weight::pair(weight_abs(*p->left), weight_abs(*p->right));
}

Weight weight_scale(const Rat& c, const Weight& a) {
  if (auto* v = a.as_sup()) {
    std::vector<Rat> out(v->values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * v->values[i];
    return Weight::sup(std::move(out));
  }
  if (auto* q = a.as_seq()) {
    std::vector<Rat> out(q->prefix.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = c * q->prefix[j];
    return Weight::seq(std::move(out), Rat(c * q->tail), Rat(c * q->limit));
  }
  auto* p = a.as_pair();
  return Weight::pair(weight_scale(c, *p->left), weight_scale(c, *p->right));
}

Rat wminus1_at(const ModelSpace& s, const Weight& w, const AtomId& a) {
  const ModelSpace& leafSpace = sub_space(s, a.path);
  Rat value = weight_at(s, w, a);
  // w_{-1}(x*) = w(x*/|x*|)/|x*|; coordinate functionals on FiniteSup have
  // norm 1/c_i, SeqLim coordinates norm 1, the limit functional norm 1/theta.
  if (auto* f = leafSpace.as_finite_sup())
    return Rat(value * f->dualWeights[a.index]);
  auto* q = leafSpace.as_seq_lim();
  if (a.kind == LeafKind::Limit) return Rat(value * q->theta);
  return value;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

WxReport wx_membership(const ModelSpace& s, const Weight& w) {
  require(is_am_family(s), "membership is defined on the sup-normed families");
  require_weight(s, w);
  for (const ConvergenceDatum& d : convergence_data(s)) {
    // Along the net w_{-1}(delta_j) is eventually the tail value; at the
    // limit functional it is theta * (limit value).
    Rat alongNet = wminus1_at(s, w, d.net.id);
    Rat atLimit = wminus1_at(s, w, d.limit.id);
    if (alongNet != atLimit)
      return {false, WxWitness{d, alongNet, atLimit}};
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Product
// ---------------------------------------------------------------------------

namespace {

// The coordinate formula, assuming all preconditions hold.
Vec raw_product(const ModelSpace& s, const Weight& w, const Vec& x, const Vec& y) {
  if (auto* f = s.as_finite_sup()) {
    const auto& wv = w.as_sup()->values;
    const auto& xv = x.as_sup()->coords;
    const auto& yv = y.as_sup()->coords;
    std::vector<Rat> out(wv.size());
    for (int i = 0; i < f->dim(); ++i) {
      if (sgn(xv[i]) == 0 || sgn(yv[i]) == 0) continue;  // out[i] stays 0
      out[i] = f->dualWeights[i] * wv[i] * xv[i] * yv[i];
    }
    return Vec::sup(std::move(out));
  }
  if (s.as_seq_lim()) {
    const SeqWeight& q = *w.as_seq();
    const SeqVec& xq = *x.as_seq();
    const SeqVec& yq = *y.as_seq();
    std::size_t n =
        std::max({q.prefix.size(), xq.prefix.size(), yq.prefix.size()});
    std::vector<Rat> out(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& xc = j < xq.prefix.size() ? xq.prefix[j] : xq.tail;
      const Rat& yc = j < yq.prefix.size() ? yq.prefix[j] : yq.tail;
      if (sgn(xc) == 0 || sgn(yc) == 0) continue;  // out[j] stays 0
      out[j] = seq_weight_coord(q, static_cast<int>(j)) * xc * yc;
    }
    return Vec::seq(std::move(out), Rat(q.tail * xq.tail * yq.tail));
  }
  auto* p = s.as_sum();
  auto* pw = w.as_pair();
  auto* px = x.as_pair();
  auto* py = y.as_pair();
  return Vec::pair(raw_product(*p->left, *pw->left, *px->left, *py->left),
                   raw_product(*p->right, *pw->right, *px->right, *py->right));
}

void require_product_weight(const ModelSpace& s, const Weight& w) {
  require_weight(s, w);
  require(weight_nonneg(w), "product weight must be nonnegative");
  require(wx_membership(s, w).member,
          "weight is not product-defining: continuity along the dual net fails");
}

}  // namespace

Vec product(const ModelSpace& s, const Weight& w, const Vec& x, const Vec& y) {
  require_conforms(s, x);
  require_conforms(s, y);
  require_product_weight(s, w);
  return raw_product(s, w, x, y);
}

SubmultReport is_submultiplicative(const ModelSpace& s, const Weight& w) {
  require_product_weight(s, w);
  Rat sup = weight_sup_abs(s, w);
  return {sup <= 1, sup};
}

namespace {

// Norm-one positive probes: one per coordinate direction plus the
// normalized constant-one element of each leaf, injected through sum
// components. Any weight value > 1 shows up as |P(x,x)| > 1 for one of
// these (coordinate indicators reach every explicit value and the tail;
// the limit value is dominated by the tail for nonnegative member weights).
void collect_norm_probes(const ModelSpace& s, int seqExplicit,
                         std::vector<Vec>& out) {
  if (auto* f = s.as_finite_sup()) {
    for (int i = 0; i < f->dim(); ++i) {
      std::vector<Rat> c(f->dim(), Rat(0));
      c[i] = Rat(1) / f->dualWeights[i];
      out.push_back(Vec::sup(std::move(c)));
    }
    std::vector<Rat> e(f->dim());
    for (int i = 0; i < f->dim(); ++i) e[i] = Rat(1) / f->dualWeights[i];
    out.push_back(Vec::sup(std::move(e)));
    return;
  }
  if (auto* q = s.as_seq_lim()) {
    for (int j = 0; j < seqExplicit; ++j) {
      std::vector<Rat> p(static_cast<std::size_t>(j) + 1, Rat(0));
      p.back() = Rat(1);
      out.push_back(Vec::seq(std::move(p), Rat(0)));
    }
    out.push_back(Vec::seq({}, Rat(1) / q->theta));
    return;
  }
  if (auto* p = s.as_sum()) {
    std::vector<Vec> l, r;
    collect_norm_probes(*p->left, seqExplicit, l);
    collect_norm_probes(*p->right, seqExplicit, r);
    for (Vec& v : l) out.push_back(Vec::pair(std::move(v), zero_vec(*p->right)));
    for (Vec& v : r) out.push_back(Vec::pair(zero_vec(*p->left), std::move(v)));
    return;
  }
  throw PreconditionError("probes are defined on the sup-normed families");
}

int max_seq_prefix(const Weight& w) {
  if (w.as_sup()) return 0;
  if (auto* q = w.as_seq()) return static_cast<int>(q->prefix.size());
  auto* p = w.as_pair();
  return std::max(max_seq_prefix(*p->left), max_seq_prefix(*p->right));
}

}  // namespace

std::optional<NormViolation> submult_probe_search(const ModelSpace& s,
                                                  const Weight& w) {
  require_product_weight(s, w);
  std::vector<Vec> probes;
  collect_norm_probes(s, max_seq_prefix(w) + 2, probes);
  for (const Vec& x : probes)
    for (const Vec& y : probes) {
      Vec p = raw_product(s, w, x, y);
      Rat pn = norm(s, p);
      Rat bound = norm(s, x) * norm(s, y);
      if (pn > bound) return NormViolation{x, y, pn, bound};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tensors, probes, verifier
// ---------------------------------------------------------------------------

ProductFn weight_product_fn(const ModelSpace& s, const Weight& w) {
  require_product_weight(s, w);
  return [s, w](const Vec& x, const Vec& y) {
    require_conforms(s, x);
    require_conforms(s, y);
    return raw_product(s, w, x, y);
  };
}

ProductTensor ProductTensor::zeros(int n) {
  ProductTensor t;
  t.n = n;
  t.b.assign(static_cast<std::size_t>(n) * n * n, Rat(0));
  return t;
}

Rat& ProductTensor::at(int i, int j, int k) {
  return b[(static_cast<std::size_t>(i) * n + j) * n + k];
}

const Rat& ProductTensor::at(int i, int j, int k) const {
  return b[(static_cast<std::size_t>(i) * n + j) * n + k];
}

namespace {

int atom_dim(const ModelSpace& s) {
  if (auto* f = s.as_finite_sup()) return f->dim();
  if (auto* l = s.as_finite_al()) return l->atoms;
  throw PreconditionError("tensor products need a coordinate basis (FiniteSup or FiniteAL)");
}

std::vector<Rat> coord_view(const Vec& x) {
  if (auto* v = x.as_sup()) return v->coords;
  return x.as_al()->atoms;
}

Vec from_coords(const ModelSpace& s, std::vector<Rat> c) {
  if (s.as_finite_sup()) return Vec::sup(std::move(c));
  return Vec::al(std::move(c), Rat(0));
}

}  // namespace

ProductFn tensor_product_fn(const ModelSpace& s, const ProductTensor& B) {
  int n = atom_dim(s);
  require(B.n == n, "tensor dimension does not match the space");
  return [s, B, n](const Vec& x, const Vec& y) {
    require_conforms(s, x);
    require_conforms(s, y);
    std::vector<Rat> xv = coord_view(x), yv = coord_view(y);
    std::vector<Rat> out(static_cast<std::size_t>(n), Rat(0));
    for (int i = 0; i < n; ++i) {
      if (xv[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (yv[j] == 0) continue;
        Rat xy = xv[i] * yv[j];
        for (int k = 0; k < n; ++k) {
          const Rat& bij = B.at(i, j, k);
          if (bij != 0) out[k] += bij * xy;
        }
      }
    }
    return from_coords(s, std::move(out));
  };
}

namespace {

void collect_positive_probes(const ModelSpace& s, int budget,
                             std::vector<Vec>& out) {
  if (auto* f = s.as_finite_sup()) {
    int n = f->dim();
    for (int i = 0; i < n; ++i) {
      std::vector<Rat> c(n, Rat(0));
      c[i] = Rat(1);
      out.push_back(Vec::sup(std::move(c)));
    }
    std::vector<Rat> e(n);
    for (int i = 0; i < n; ++i) e[i] = Rat(1) / f->dualWeights[i];
    out.push_back(Vec::sup(std::move(e)));
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<Rat> c(n, Rat(0));
      c[i] = Rat(1, 2);
      c[i + 1] = Rat(2);
      out.push_back(Vec::sup(std::move(c)));
    }
    return;
  }
  if (s.as_seq_lim()) {
    int k = std::clamp(budget, 2, 4);
    for (int j = 0; j < k; ++j) {
      std::vector<Rat> p(static_cast<std::size_t>(j) + 1, Rat(0));
      p.back() = Rat(1);
      out.push_back(Vec::seq(std::move(p), Rat(0)));
    }
    out.push_back(Vec::seq({}, Rat(1)));                      // constant one
    out.push_back(Vec::seq(std::vector<Rat>(k, Rat(0)), Rat(1)));  // late one
    out.push_back(Vec::seq({Rat(2)}, Rat(1, 2)));
    return;
  }
  if (auto* l = s.as_finite_al()) {
    for (int i = 0; i < l->atoms; ++i) {
      std::vector<Rat> c(l->atoms, Rat(0));
      c[i] = Rat(1);
      out.push_back(Vec::al(std::move(c)));
    }
    if (l->nonatomicBand)
      out.push_back(Vec::al(std::vector<Rat>(l->atoms, Rat(0)), Rat(1)));
    if (l->atoms >= 2) {
      std::vector<Rat> c(l->atoms, Rat(0));
      c[0] = Rat(1, 2);
      c[1] = Rat(2);
      out.push_back(Vec::al(std::move(c), l->nonatomicBand ? Rat(1) : Rat(0)));
    }
    return;
  }
  auto* p = s.as_sum();
  std::vector<Vec> l, r;
  collect_positive_probes(*p->left, budget, l);
  collect_positive_probes(*p->right, budget, r);
  for (const Vec& v : l) out.push_back(Vec::pair(v, zero_vec(*p->right)));
  for (const Vec& v : r) out.push_back(Vec::pair(zero_vec(*p->left), v));
  if (!l.empty() && !r.empty()) out.push_back(Vec::pair(l.back(), r.back()));
}

}  // namespace

std::vector<Vec> positive_probes(const ModelSpace& s, int budget) {
  require(budget >= 1, "budget must be >= 1");
  std::vector<Vec> out;
  collect_positive_probes(s, budget, out);
  return out;
}

std::vector<std::pair<Vec, Vec>> disjoint_probes(const ModelSpace& s, int budget) {
  std::vector<std::pair<Vec, Vec>> out;
  if (auto* f = s.as_finite_sup()) {
    int n = f->dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        std::vector<Rat> a(n, Rat(0)), b(n, Rat(0));
        a[i] = Rat(1);
        b[j] = Rat(1);
        out.emplace_back(Vec::sup(std::move(a)), Vec::sup(std::move(b)));
      }
    return out;
  }
  if (s.as_seq_lim()) {
    int k = std::clamp(budget, 2, 3);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        std::vector<Rat> a(static_cast<std::size_t>(i) + 1, Rat(0));
        a.back() = Rat(1);
        std::vector<Rat> b(static_cast<std::size_t>(j) + 1, Rat(0));
        b.back() = Rat(1);
        out.emplace_back(Vec::seq(std::move(a), Rat(0)),
                         Vec::seq(std::move(b), Rat(0)));
      }
    // head indicator vs. the tail beyond it
    std::vector<Rat> head(1, Rat(1));
    out.emplace_back(Vec::seq(std::move(head), Rat(0)),
                     Vec::seq({Rat(0)}, Rat(1)));
    return out;
  }
  if (auto* l = s.as_finite_al()) {
    for (int i = 0; i < l->atoms; ++i)
      for (int j = 0; j < l->atoms; ++j) {
        if (i == j) continue;
        std::vector<Rat> a(l->atoms, Rat(0)), b(l->atoms, Rat(0));
        a[i] = Rat(1);
        b[j] = Rat(1);
        out.emplace_back(Vec::al(std::move(a)), Vec::al(std::move(b)));
      }
    if (l->nonatomicBand)
      for (int i = 0; i < l->atoms; ++i) {
        std::vector<Rat> a(l->atoms, Rat(0));
        a[i] = Rat(1);
        Vec atom = Vec::al(std::move(a));
        Vec mass = Vec::al(std::vector<Rat>(l->atoms, Rat(0)), Rat(1));
        out.emplace_back(atom, mass);
        out.emplace_back(std::move(mass), std::move(atom));
      }
    return out;
  }
  auto* p = s.as_sum();
  std::vector<Vec> l, r;
  collect_positive_probes(*p->left, budget, l);
  collect_positive_probes(*p->right, budget, r);
  Vec zl = zero_vec(*p->left), zr = zero_vec(*p->right);
  for (const Vec& a : l)
    for (const Vec& b : r)
      out.emplace_back(Vec::pair(a, zr), Vec::pair(zl, b));
  for (auto& [a, b] : disjoint_probes(*p->left, budget))
    out.emplace_back(Vec::pair(a, zr), Vec::pair(b, zr));
  for (auto& [a, b] : disjoint_probes(*p->right, budget))
    out.emplace_back(Vec::pair(zl, a), Vec::pair(zl, b));
  return out;
}

AxiomReport verify_falgebra_axioms(const ModelSpace& s, const ProductFn& P,
                                   int sampleBudget) {
  AxiomReport report;
  auto flag = [&report](const char* axiom, std::string detail) {
    report.violations.push_back({axiom, std::move(detail)});
  };

  std::vector<Vec> probes = positive_probes(s, sampleBudget);
  std::vector<std::pair<Vec, Vec>> disj = disjoint_probes(s, sampleBudget);

  for (const Vec& x : probes)
    for (const Vec& y : probes) {
      Vec p = P(x, y);
      if (!is_positive(p))
        flag("positivity", "P(" + vec_str(x) + ", " + vec_str(y) +
                               ") = " + vec_str(p) + " is not positive");
      if (!(p == P(y, x)))
        flag("commutativity",
             "P(x,y) != P(y,x) for x=" + vec_str(x) + ", y=" + vec_str(y));
    }

  std::size_t core = std::min<std::size_t>(probes.size(), 3);
  for (std::size_t a = 0; a < core; ++a)
    for (std::size_t b = 0; b < core; ++b)
      for (std::size_t c = 0; c < core; ++c) {
        Vec lhs = P(P(probes[a], probes[b]), probes[c]);
        Vec rhs = P(probes[a], P(probes[b], probes[c]));
        if (!(lhs == rhs))
          flag("associativity",
               "P(P(a,b),c) != P(a,P(b,c)) for a=" + vec_str(probes[a]) +
                   ", b=" + vec_str(probes[b]) + ", c=" + vec_str(probes[c]));
      }

  // a ^ b = 0 must force (ca) ^ b = 0 and (ac) ^ b = 0 for every positive c.
  for (const auto& [a, b] : disj)
    for (const Vec& c : probes) {
      Vec ca = P(c, a);
      Vec ac = P(a, c);
      if (!is_zero(meet(abs_vec(ca), b)))
        flag("f-algebra", "a^b=0 but P(c,a)^b != 0 for a=" + vec_str(a) +
                              ", b=" + vec_str(b) + ", c=" + vec_str(c));
      if (!is_zero(meet(abs_vec(ac), b)))
        flag("f-algebra", "a^b=0 but P(a,c)^b != 0 for a=" + vec_str(a) +
                              ", b=" + vec_str(b) + ", c=" + vec_str(c));
    }
  return report;
}

std::optional<Weight> decide_tensor(const ModelSpace& s, const ProductTensor& B) {
  auto* f = s.as_finite_sup();
  require(f != nullptr, "tensor decision is defined on FiniteSup");
  require(B.n == f->dim(), "tensor dimension does not match the space");
  int n = B.n;
  // Positivity forces every entry >= 0 (probe with basis pairs); the
  // disjointness implication then kills everything off the diagonal.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Rat& v = B.at(i, j, k);
        if (v < 0) return std::nullopt;
        if (v != 0 && !(i == j && j == k)) return std::nullopt;
      }
  std::vector<Rat> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    w[k] = B.at(k, k, k) / f->dualWeights[k];
  return Weight::sup(std::move(w));
}

// ---------------------------------------------------------------------------
// Classification, uniqueness, roots
// ---------------------------------------------------------------------------

namespace {

// Leaf-structure rule: AM-algebra iff no SeqLim leaf has theta > 1.
bool am_algebra_structurally(const ModelSpace& s) {
  if (s.as_finite_sup()) return true;
  if (auto* q = s.as_seq_lim()) return q->theta == 1;
  if (s.as_finite_al()) return false;
  auto* p = s.as_sum();
  return am_algebra_structurally(*p->left) && am_algebra_structurally(*p->right);
}

}  // namespace

Weight unit_weight(const ModelSpace& s) {
  if (auto* f = s.as_finite_sup())
    return Weight::sup(std::vector<Rat>(f->dim(), Rat(1)));
  if (s.as_seq_lim()) return Weight::seq({}, Rat(1), Rat(1));
  auto* p = s.as_sum();
  return Weight::pair(unit_weight(*p->left), unit_weight(*p->right));
}

Vec order_unit(const ModelSpace& s) {
  if (auto* f = s.as_finite_sup()) {
    std::vector<Rat> e(f->dim());
    for (int i = 0; i < f->dim(); ++i) e[i] = Rat(1) / f->dualWeights[i];
    return Vec::sup(std::move(e));
  }
  if (s.as_seq_lim()) return Vec::seq({}, Rat(1));
  auto* p = s.as_sum();
  return Vec::pair(order_unit(*p->left), order_unit(*p->right));
}

AMClassification classify_am_algebra(const ModelSpace& s) {
  require(is_am_family(s), "classification applies to the sup-normed families");
  ContinuityReport cont = norm_weakstar_continuous(s);
  WxReport ones = wx_membership(s, unit_weight(s));
  bool structural = am_algebra_structurally(s);
  check_internal(cont.continuous == ones.member &&
                     ones.member == structural,
                 "classification code paths disagree");
  AMClassification out;
  out.isAMAlgebra = cont.continuous;
  if (!out.isAMAlgebra) {
    out.witness = cont.witness;
    return out;
  }
  out.amWeight = unit_weight(s);
  out.unit = order_unit(s);
  return out;
}

UniquenessReport am_product_is_unique(const ModelSpace& s,
                                      const std::vector<Rat>& grid) {
  auto* f = s.as_finite_sup();
  require(f != nullptr, "the uniqueness sweep runs on FiniteSup");
  require(!grid.empty(), "grid must be nonempty");
  for (const Rat& g : grid) require(g >= 0, "grid values must be >= 0");
  int n = f->dim();
  Vec e = order_unit(s);
  std::vector<Vec> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> c(n, Rat(0));
    c[i] = Rat(1);
    basis.push_back(Vec::sup(std::move(c)));
  }

  UniquenessReport out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<Rat> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[i] = grid[idx[i]];
    Weight w = Weight::sup(std::move(values));
    ++out.total;
    // e is an identity iff it reproduces every basis vector (linearity).
    bool identity = true;
    for (const Vec& b : basis)
      if (!(product(s, w, e, b) == b)) {
        identity = false;
        break;
      }
    if (identity) out.identityWeights.push_back(w);

    int pos = 0;
    while (pos < n && ++idx[pos] == grid.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  out.unique = out.identityWeights.size() == 1 &&
               out.identityWeights.front() == unit_weight(s);
  return out;
}

namespace {

struct RootParts {
  std::optional<std::vector<Rat>> exact;
  std::vector<double> flat;
};

// Coordinatewise n-th root data with the dual weight folded in:
// g_i = (x_i / c_i^(n-1))^(1/n) on FiniteSup coordinates, plain roots on
// SeqLim coordinates (theta = 1 there, all dual weights are 1).
RootParts root_slots(const std::vector<Rat>& xs, const std::vector<Rat>& cs,
                     unsigned n) {
  RootParts out;
  std::vector<Rat> exact;
  bool allExact = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rat radicand = xs[i] / pow_rat(cs[i], n - 1);
    if (allExact) {
      if (auto r = exact_nth_root(radicand, n))
        exact.push_back(*r);
      else
        allExact = false;
    }
    out.flat.push_back(std::pow(to_double(radicand), 1.0 / n));
  }
  if (allExact) {
    for (std::size_t i = 0; i < exact.size(); ++i)
      out.flat[i] = to_double(exact[i]);
    out.exact = std::move(exact);
  }
  return out;
}

void flatten_into(const ModelSpace& s, const Vec& x, std::vector<double>& flat,
                  std::vector<Rat>* weights) {
  if (s.as_finite_sup()) {
    const auto& c = x.as_sup()->coords;
    for (std::size_t i = 0; i < c.size(); ++i) {
      flat.push_back(to_double(c[i]));
      if (weights) weights->push_back(s.as_finite_sup()->dualWeights[i]);
    }
    return;
  }
  if (s.as_seq_lim()) {
    const SeqVec& q = *x.as_seq();
    for (const Rat& c : q.prefix) {
      flat.push_back(to_double(c));
      if (weights) weights->push_back(Rat(1));
    }
    flat.push_back(to_double(q.tail));
    if (weights) weights->push_back(Rat(1));
    return;
  }
  auto* p = s.as_sum();
  auto* v = x.as_pair();
  flatten_into(*p->left, *v->left, flat, weights);
  flatten_into(*p->right, *v->right, flat, weights);
}

RootResult nth_root_worker(const ModelSpace& s, const Vec& x, unsigned n) {
  if (auto* f = s.as_finite_sup()) {
    RootParts parts = root_slots(x.as_sup()->coords, f->dualWeights, n);
    RootResult out;
    out.flat = std::move(parts.flat);
    if (parts.exact) out.exact = Vec::sup(std::move(*parts.exact));
    return out;
  }
  if (s.as_seq_lim()) {
    const SeqVec& q = *x.as_seq();
    std::vector<Rat> slots = q.prefix;
    slots.push_back(q.tail);
    RootParts parts =
        root_slots(slots, std::vector<Rat>(slots.size(), Rat(1)), n);
    RootResult out;
    out.flat = std::move(parts.flat);
    if (parts.exact) {
      Rat tail = parts.exact->back();
      parts.exact->pop_back();
      out.exact = Vec::seq(std::move(*parts.exact), std::move(tail));
    }
    return out;
  }
  auto* p = s.as_sum();
  auto* v = x.as_pair();
  RootResult l = nth_root_worker(*p->left, *v->left, n);
  RootResult r = nth_root_worker(*p->right, *v->right, n);
  RootResult out;
  out.flat = l.flat;
  out.flat.insert(out.flat.end(), r.flat.begin(), r.flat.end());
  if (l.exact && r.exact)
    out.exact = Vec::pair(std::move(*l.exact), std::move(*r.exact));
  return out;
}

}  // namespace

std::vector<double> flatten(const ModelSpace& s, const Vec& x) {
  require_conforms(s, x);
  std::vector<double> flat;
  flatten_into(s, x, flat, nullptr);
  return flat;
}

RootResult nth_root(const ModelSpace& s, const Vec& x, unsigned n) {
  require(n >= 1, "root degree must be >= 1");
  require_conforms(s, x);
  require(is_positive(x), "roots are defined for x >= 0");
  require(classify_am_algebra(s).isAMAlgebra,
          "roots need the canonical product (space is not an AM-algebra)");
  return nth_root_worker(s, x, n);
}

RootCheck root_check(const ModelSpace& s, const Vec& x, const RootResult& g,
                     unsigned n) {
  require_conforms(s, x);
  RootCheck out;
  double scale = 1.0 + to_double(norm(s, x));

  if (g.exact) {
    // Exact path: reproduce x exactly and compare norms exactly.
    Weight w = unit_weight(s);
    Vec acc = *g.exact;
    for (unsigned k = 1; k < n; ++k) acc = product(s, w, acc, *g.exact);
    check_internal(acc == x, "exact root does not reproduce its input");
    Rat gn = pow_rat(norm(s, *g.exact), n);
    check_internal(gn == norm(s, x), "exact root norm identity fails");
    return out;
  }

  std::vector<double> xf;
  std::vector<Rat> cw;
  flatten_into(s, x, xf, &cw);
  check_internal(xf.size() == g.flat.size(), "root slot count mismatch");
  double gnorm = 0.0;
  for (std::size_t i = 0; i < xf.size(); ++i) {
    double c = to_double(cw[i]);
    // n-fold canonical product of g with itself at slot i: c^(n-1) * g_i^n.
    double repro = std::pow(c, static_cast<double>(n - 1)) *
                   std::pow(g.flat[i], static_cast<double>(n));
    out.productResidual =
        std::max(out.productResidual, std::abs(repro - xf[i]) / scale);
    gnorm = std::max(gnorm, c * std::abs(g.flat[i]));
  }
  double xnorm = to_double(norm(s, x));
  out.normResidual =
      std::abs(std::pow(gnorm, static_cast<double>(n)) - xnorm) / scale;
  return out;
}

// ---------------------------------------------------------------------------
// Upper-bound norms
// ---------------------------------------------------------------------------

NakanoReport nakano_witness(const ModelSpace& s, const BoundedFamily& family) {
  if (std::holds_alternative<IndicatorChain>(family)) {
    auto* q = s.as_seq_lim();
    require(q != nullptr, "the indicator chain lives on SeqLim spaces");
    // Every head indicator has sup 1 and limit 0, hence norm 1. Any upper
    // bound dominates 1 in every coordinate, so its limit is >= 1 and its
    // norm >= theta; the constant-one sequence attains that.
    NakanoReport out{Rat(1), q->theta, q->theta == 1, Vec::seq({}, Rat(1))};
    return out;
  }
  const auto& members = std::get<ExplicitFamily>(family).members;
  require(!members.empty(), "family must be nonempty");
  for (const Vec& m : members) require_conforms(s, m);
  Rat supNorms(0);
  Vec j = members.front();
  bool first = true;
  for (const Vec& m : members) {
    Rat nm = norm(s, m);
    if (first || nm > supNorms) supNorms = nm;
    first = false;
    j = join(j, m);
  }
  // Any upper bound b satisfies b_i >= max(join_i, 0) coordinatewise in
  // absolute value, so (join v 0) minimizes the norm among upper bounds.
  Vec bound = pos_part(j);
  Rat infNorms = norm(s, bound);
  return NakanoReport{supNorms, infNorms, supNorms == infNorms, bound};
}

}  // namespace amalg
