#include "amalg/spectrum.hpp"

#include "amalg/errors.hpp"

namespace amalg {

std::string atom_str(const AtomId& a) {
  std::string out;
  for (int step : a.path) out += step == 0 ? "L." : "R.";
  switch (a.kind) {
    case LeafKind::Coord:
      return out + "coord[" + std::to_string(a.index) + "]";
    case LeafKind::Tail:
      return out + "tail";
    case LeafKind::Limit:
      return out + "limit";
  }
  return out + "?";
}

namespace {

void collect(const ModelSpace& s, int seqExplicit, std::vector<int>& path,
             std::vector<DualAtom>& out) {
  if (auto* f = s.as_finite_sup()) {
    for (int i = 0; i < f->dim(); ++i)
      out.push_back({AtomId{path, LeafKind::Coord, i}, Rat(1) / f->dualWeights[i]});
    return;
  }
  if (auto* q = s.as_seq_lim()) {
    for (int j = 0; j < seqExplicit; ++j)
      out.push_back({AtomId{path, LeafKind::Coord, j}, Rat(1)});
    out.push_back({AtomId{path, LeafKind::Tail, 0}, Rat(1)});
    out.push_back({AtomId{path, LeafKind::Limit, 0}, Rat(1) / q->theta});
    return;
  }
  if (auto* l = s.as_finite_al()) {
    for (int i = 0; i < l->atoms; ++i)
      out.push_back({AtomId{path, LeafKind::Coord, i}, Rat(1)});
    return;
  }
  auto* p = s.as_sum();
  path.push_back(0);
  collect(*p->left, seqExplicit, path, out);
  path.back() = 1;
  collect(*p->right, seqExplicit, path, out);
  path.pop_back();
}

}  // namespace

std::vector<DualAtom> dual_atoms(const ModelSpace& s, int seqExplicit) {
  require(seqExplicit >= 0, "seqExplicit must be >= 0");
  std::vector<DualAtom> out;
  std::vector<int> path;
  collect(s, seqExplicit, path, out);
  return out;
}

Rat evaluate(const ModelSpace& s, const AtomId& a, const Vec& x) {
  require_conforms(s, x);
  const ModelSpace* sp = &s;
  const Vec* xp = &x;
  for (int step : a.path) {
    auto* ps = sp->as_sum();
    require(ps != nullptr, "atom path descends into a non-sum space");
    auto* pv = xp->as_pair();
    sp = step == 0 ? ps->left.get() : ps->right.get();
    xp = step == 0 ? pv->left.get() : pv->right.get();
  }
  if (auto* f = sp->as_finite_sup()) {
    if (!(a.kind == LeafKind::Coord && a.index >= 0 && a.index < f->dim()))
      throw PreconditionError("atom does not exist on " + describe(*sp));
    return xp->as_sup()->coords[a.index];
  }
  if (sp->as_seq_lim()) {
    auto* q = xp->as_seq();
    switch (a.kind) {
      case LeafKind::Coord: {
        require(a.index >= 0, "atom index must be >= 0");
        std::size_t j = static_cast<std::size_t>(a.index);
        return j < q->prefix.size() ? q->prefix[j] : q->tail;
      }
      case LeafKind::Tail:
        // Evaluation at any coordinate beyond every explicit prefix.
        return q->tail;
      case LeafKind::Limit:
        return q->tail;
    }
    throw InternalError("unhandled leaf kind");
  }
  if (auto* l = sp->as_finite_al()) {
    if (!(a.kind == LeafKind::Coord && a.index >= 0 && a.index < l->atoms))
      throw PreconditionError("atom does not exist on " + describe(*sp));
    return xp->as_al()->atoms[a.index];
  }
  throw PreconditionError("atom path stops at a sum space");
}

Rat evaluate_unit(const ModelSpace& s, const DualAtom& a, const Vec& x) {
  check_internal(a.dualNorm > 0, "dual atom with nonpositive norm");
  return evaluate(s, a.id, x) / a.dualNorm;
}

namespace {

void collect_conv(const ModelSpace& s, std::vector<int>& path,
                  std::vector<ConvergenceDatum>& out) {
  if (auto* q = s.as_seq_lim()) {
    out.push_back({{AtomId{path, LeafKind::Tail, 0}, Rat(1)},
                   {AtomId{path, LeafKind::Limit, 0}, Rat(1) / q->theta}});
    return;
  }
  if (auto* p = s.as_sum()) {
    path.push_back(0);
    collect_conv(*p->left, path, out);
    path.back() = 1;
    collect_conv(*p->right, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<ConvergenceDatum> convergence_data(const ModelSpace& s) {
  std::vector<ConvergenceDatum> out;
  std::vector<int> path;
  collect_conv(s, path, out);
  return out;
}

ContinuityReport norm_weakstar_continuous(const ModelSpace& s) {
  require(is_am_family(s), "norm continuity is only defined on the sup-normed families");
  for (const ConvergenceDatum& d : convergence_data(s)) {
    // Along the net every functional has dual norm 1; at the limit the norm
    // drops to 1/theta. Continuity holds iff they agree.
    if (d.net.dualNorm != d.limit.dualNorm)
      return {false, ContinuityWitness{d, d.net.dualNorm, d.limit.dualNorm}};
  }
  return {true, std::nullopt};
}

}  // namespace amalg
