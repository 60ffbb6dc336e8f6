#include "amalg/operator_spec.hpp"

#include <algorithm>

#include "amalg/errors.hpp"

namespace amalg {

MatrixOp MatrixOp::zeros(int rows, int cols) {
  MatrixOp m;
  m.rows = rows;
  m.cols = cols;
  m.a.assign(static_cast<std::size_t>(rows) * cols, Rat(0));
  return m;
}

OperatorSpec OperatorSpec::matrix(MatrixOp m) {
  require(m.rows >= 1 && m.cols >= 1, "matrix must be nonempty");
  require(m.a.size() == static_cast<std::size_t>(m.rows) * m.cols,
          "matrix entry count mismatch");
  return OperatorSpec{std::move(m)};
}

OperatorSpec OperatorSpec::index_map(IndexMapOp m) {
  for (const auto& [cod, entry] : m.sigma)
    require(entry.scale >= 0, "index map scales must be >= 0");
  return OperatorSpec{std::move(m)};
}

OperatorSpec OperatorSpec::seq_mul(std::vector<Rat> prefix, Rat tail,
                                   Rat limitValue) {
  return OperatorSpec{
      SeqMulOp{std::move(prefix), std::move(tail), std::move(limitValue)}};
}

namespace {

Rat seq_mul_coord(const SeqMulOp& m, std::size_t j) {
  return j < m.prefix.size() ? m.prefix[j] : m.tail;
}

Vec apply_matrix(const ModelSpace& dom, const ModelSpace& cod,
                 const MatrixOp& m, const Vec& x) {
  auto* fd = dom.as_finite_sup();
  auto* fc = cod.as_finite_sup();
  require(fd && fc, "matrix operators act FiniteSup -> FiniteSup");
  require(m.cols == fd->dim() && m.rows == fc->dim(),
          "matrix shape does not match the spaces");
  require_conforms(dom, x);
  const auto& xv = x.as_sup()->coords;
  std::vector<Rat> out(static_cast<std::size_t>(m.rows), Rat(0));
  for (int k = 0; k < m.rows; ++k)
    for (int i = 0; i < m.cols; ++i) {
      const Rat& a = m.at(k, i);
      if (sgn(a) != 0 && sgn(xv[i]) != 0) out[k] += a * xv[i];
    }
  return Vec::sup(std::move(out));
}

Vec apply_seq_mul(const ModelSpace& dom, const ModelSpace& cod,
                  const SeqMulOp& m, const Vec& x) {
  require(dom.as_seq_lim() && cod.as_seq_lim() &&
              dom.as_seq_lim()->theta == cod.as_seq_lim()->theta,
          "multiplication data acts on one SeqLim space");
  require_conforms(dom, x);
  const SeqVec& q = *x.as_seq();
  std::size_t n = std::max(m.prefix.size(), q.prefix.size());
  std::vector<Rat> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rat& xc = j < q.prefix.size() ? q.prefix[j] : q.tail;
    out[j] = seq_mul_coord(m, j) * xc;
  }
  Rat tail = m.tail * q.tail;
  // The image must evaluate consistently at the limit functional.
  Rat limit = m.limitValue * q.tail;
  require(tail == limit,
          "image leaves the space: coordinate tail and limit value disagree");
  return Vec::seq(std::move(out), std::move(tail));
}

Rat eval_entry(const ModelSpace& dom, const IndexMapOp& m, const AtomId& cod,
               const Vec& x) {
  auto it = m.sigma.find(cod);
  if (it == m.sigma.end()) return Rat(0);
  if (it->second.scale == 0) return Rat(0);
  return Rat(it->second.scale * evaluate(dom, it->second.source, x));
}

Vec apply_index_map(const ModelSpace& dom, const ModelSpace& cod,
                    const IndexMapOp& m, const Vec& x) {
  require_conforms(dom, x);
  if (auto* fc = cod.as_finite_sup()) {
    std::vector<Rat> out(static_cast<std::size_t>(fc->dim()));
    for (int k = 0; k < fc->dim(); ++k)
      out[k] = eval_entry(dom, m, AtomId{{}, LeafKind::Coord, k}, x);
    return Vec::sup(std::move(out));
  }
  require(cod.as_seq_lim() != nullptr,
          "index maps target FiniteSup or SeqLim spaces");
  std::vector<Rat> out(static_cast<std::size_t>(m.codSeqExplicit));
  for (int j = 0; j < m.codSeqExplicit; ++j)
    out[j] = eval_entry(dom, m, AtomId{{}, LeafKind::Coord, j}, x);
  Rat tail = eval_entry(dom, m, AtomId{{}, LeafKind::Tail, 0}, x);
  Rat limit = eval_entry(dom, m, AtomId{{}, LeafKind::Limit, 0}, x);
  require(tail == limit,
          "image leaves the space: coordinate tail and limit value disagree");
  return Vec::seq(std::move(out), std::move(tail));
}

}  // namespace

Vec apply(const ModelSpace& dom, const ModelSpace& cod, const OperatorSpec& T,
          const Vec& x) {
  if (auto* m = T.as_matrix()) return apply_matrix(dom, cod, *m, x);
  if (auto* m = T.as_seq_mul()) return apply_seq_mul(dom, cod, *m, x);
  return apply_index_map(dom, cod, *T.as_index_map(), x);
}

Rat operator_norm(const ModelSpace& dom, const ModelSpace& cod,
                  const OperatorSpec& T) {
  if (auto* m = T.as_matrix()) {
    auto* fd = dom.as_finite_sup();
    auto* fc = cod.as_finite_sup();
    require(fd && fc && m->cols == fd->dim() && m->rows == fc->dim(),
            "matrix shape does not match the spaces");
    // Row k is a functional with norm sum_i |a_ki|/c_i; the codomain
    // weight d_k rescales it.
    Rat best(0);
    for (int k = 0; k < m->rows; ++k) {
      Rat row(0);
      for (int i = 0; i < m->cols; ++i)
        row += abs(m->at(k, i)) / fd->dualWeights[i];
      Rat t = fc->dualWeights[k] * row;
      if (t > best) best = t;
    }
    return best;
  }
  if (auto* m = T.as_seq_mul()) {
    require(dom.as_seq_lim() && cod.as_seq_lim(),
            "multiplication data acts on one SeqLim space");
    require(m->tail == m->limitValue,
            "not a total operator: tail and limit values disagree");
    Rat best = abs(m->tail);
    for (const Rat& c : m->prefix) {
      Rat t = abs(c);
      if (t > best) best = t;
    }
    return best;
  }
  const IndexMapOp& m = *T.as_index_map();
  // Codomain slots are independent except for the tail/limit pairing, whose
  // consistency we require up front.
  if (cod.as_seq_lim()) {
    auto tailIt = m.sigma.find(AtomId{{}, LeafKind::Tail, 0});
    auto limIt = m.sigma.find(AtomId{{}, LeafKind::Limit, 0});
    Rat tailScale = tailIt == m.sigma.end() ? Rat(0) : tailIt->second.scale;
    Rat limScale = limIt == m.sigma.end() ? Rat(0) : limIt->second.scale;
    // The tail marker and the limit functional take the same value on every
    // vector, so sources are compared up to that identification.
    auto canon = [](AtomId a) {
      if (a.kind == LeafKind::Tail) a.kind = LeafKind::Limit;
      return a;
    };
    bool consistent =
        (tailScale == 0 && limScale == 0) ||
        (tailIt != m.sigma.end() && limIt != m.sigma.end() &&
         tailScale == limScale &&
         canon(tailIt->second.source) == canon(limIt->second.source));
    require(consistent, "not a total operator: tail and limit entries disagree");
  }
  Rat best(0);
  for (const auto& [codAtom, entry] : m.sigma) {
    if (entry.scale == 0) continue;
    Rat srcNorm = [&] {
      const ModelSpace& leaf = [&]() -> const ModelSpace& {
        const ModelSpace* sp = &dom;
        for (int step : entry.source.path)
          sp = step == 0 ? sp->as_sum()->left.get() : sp->as_sum()->right.get();
        return *sp;
      }();
      if (auto* f = leaf.as_finite_sup())
        return Rat(1 / f->dualWeights[entry.source.index]);
      if (auto* q = leaf.as_seq_lim())
        // Tail-marker and limit sources both read off the eventual value,
        // a functional of norm 1/theta; explicit coordinates have norm 1.
        return entry.source.kind == LeafKind::Coord ? Rat(1)
                                                    : Rat(1 / q->theta);
      return Rat(1);  // FiniteAL atom functionals
    }();
    Rat slotWeight(1);
    if (auto* fc = cod.as_finite_sup())
      slotWeight = fc->dualWeights[codAtom.index];
    else if (auto* qc = cod.as_seq_lim()) {
      if (codAtom.kind == LeafKind::Tail) slotWeight = qc->theta;
      if (codAtom.kind == LeafKind::Limit) continue;  // folded into Tail
    }
    Rat t = slotWeight * entry.scale * srcNorm;
    if (t > best) best = t;
  }
  return best;
}

}  // namespace amalg
