#include "amalg/center.hpp"

#include <algorithm>

#include "amalg/errors.hpp"
#include "amalg/lattice.hpp"

namespace amalg {

CentralSymbol CentralSymbol::sup(std::vector<Rat> values) {
  return CentralSymbol{SupSymbol{std::move(values)}};
}

CentralSymbol CentralSymbol::seq(std::vector<Rat> prefix, Rat tail) {
  while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
  return CentralSymbol{SeqSymbol{std::move(prefix), std::move(tail)}};
}

bool operator==(const CentralSymbol& a, const CentralSymbol& b) {
  if (a.rep.index() != b.rep.index()) return false;
  if (auto* va = a.as_sup()) return va->values == b.as_sup()->values;
  auto* qa = a.as_seq();
  auto* qb = b.as_seq();
  return qa->prefix == qb->prefix && qa->tail == qb->tail;
}

Rat symbol_sup_abs(const CentralSymbol& h) {
  if (auto* v = h.as_sup()) {
    Rat best(0);
    for (const Rat& c : v->values) {
      Rat t = abs(c);
      if (t > best) best = t;
    }
    return best;
  }
  auto* q = h.as_seq();
  Rat best = abs(q->tail);
  for (const Rat& c : q->prefix) {
    Rat t = abs(c);
    if (t > best) best = t;
  }
  return best;
}

CentralSymbol symbol_mul(const CentralSymbol& a, const CentralSymbol& b) {
  require(a.rep.index() == b.rep.index(), "symbol shapes differ");
  if (auto* va = a.as_sup()) {
    auto* vb = b.as_sup();
    require(va->values.size() == vb->values.size(), "symbol dimensions differ");
    std::vector<Rat> out(va->values.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = va->values[i] * vb->values[i];
    return CentralSymbol::sup(std::move(out));
  }
  auto* qa = a.as_seq();
  auto* qb = b.as_seq();
  std::size_t n = std::max(qa->prefix.size(), qb->prefix.size());
  std::vector<Rat> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rat& x = j < qa->prefix.size() ? qa->prefix[j] : qa->tail;
    const Rat& y = j < qb->prefix.size() ? qb->prefix[j] : qb->tail;
    out[j] = x * y;
  }
  return CentralSymbol::seq(std::move(out), Rat(qa->tail * qb->tail));
}

namespace {

Vec basis_vec(int n, int i) {
  std::vector<Rat> c(static_cast<std::size_t>(n), Rat(0));
  c[static_cast<std::size_t>(i)] = Rat(1);
  return Vec::sup(std::move(c));
}

Vec seq_indicator(int j) {
  std::vector<Rat> p(static_cast<std::size_t>(j) + 1, Rat(0));
  p.back() = Rat(1);
  return Vec::seq(std::move(p), Rat(0));
}

// Positivity oracle: T is central iff lambda*I - T and lambda*I + T are
// positive operators for some lambda; on coordinate lattices positivity is
// decided by applying to the basis directions.
bool central_oracle_finite(const ModelSpace& s, const OperatorSpec& T,
                           const Rat& lambda) {
  int n = s.as_finite_sup()->dim();
  for (int j = 0; j < n; ++j) {
    Vec e = basis_vec(n, j);
    Vec Te = apply(s, s, T, e);
    Vec le = scale(lambda, e);
    if (!is_positive(sub(le, Te)) || !is_positive(add(le, Te))) return false;
  }
  return true;
}

// Cross-check the reported norm against the ratio attained on probes.
void assert_attained_norm(const ModelSpace& s, const OperatorSpec& T,
                          const Rat& claimed, const std::vector<Vec>& probes) {
  Rat best(0);
  for (const Vec& x : probes) {
    Rat nx = norm(s, x);
    check_internal(nx > 0, "norm probe must be nonzero");
    Rat r = norm(s, apply(s, s, T, x)) / nx;
    if (r > best) best = r;
  }
  check_internal(best == claimed, "multiplier norm is not attained on probes");
}

AtomId canon_atom(AtomId a) {
  // The tail marker and the limit functional agree on every vector.
  if (a.kind == LeafKind::Tail) a.kind = LeafKind::Limit;
  return a;
}

CentralDecision decide_matrix(const ModelSpace& s, const OperatorSpec& T) {
  auto* f = s.as_finite_sup();
  const MatrixOp& m = *T.as_matrix();
  require(f != nullptr && m.rows == f->dim() && m.cols == f->dim(),
          "central candidates must be endomorphisms of the space");
  int n = f->dim();
  bool diagonal = true;
  Rat lambda(0);
  for (int k = 0; k < n && diagonal; ++k)
    for (int i = 0; i < n; ++i) {
      if (k != i && m.at(k, i) != 0) {
        diagonal = false;
        break;
      }
      if (k == i) {
        Rat t = abs(m.at(k, k));
        if (t > lambda) lambda = t;
      }
    }
  check_internal(central_oracle_finite(s, T, lambda) == diagonal,
                 "central decision disagrees with the positivity oracle");
  if (!diagonal) return {};
  std::vector<Rat> values(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) values[k] = m.at(k, k);
  CentralSymbol h = CentralSymbol::sup(std::move(values));
  Rat opNorm = symbol_sup_abs(h);
  check_internal(opNorm == operator_norm(s, s, T),
                 "multiplier norm does not match the operator norm");
  std::vector<Vec> probes;
  for (int i = 0; i < n; ++i)
    probes.push_back(scale(Rat(1) / f->dualWeights[i], basis_vec(n, i)));
  assert_attained_norm(s, T, opNorm, probes);
  return {std::move(h), std::move(opNorm)};
}

CentralDecision decide_seq_mul(const ModelSpace& s, const OperatorSpec& T) {
  auto* q = s.as_seq_lim();
  require(q != nullptr, "multiplication data needs a SeqLim space");
  const SeqMulOp& m = *T.as_seq_mul();
  bool total = m.tail == m.limitValue;
  // Oracle: the constant-one vector exposes any tail/limit clash.
  bool oracleTotal = true;
  try {
    apply(s, s, T, Vec::seq({}, Rat(1)));
  } catch (const PreconditionError&) {
    oracleTotal = false;
  }
  check_internal(oracleTotal == total,
                 "totality decision disagrees with the constant-one probe");
  if (!total) return {};
  CentralSymbol h = CentralSymbol::seq(m.prefix, m.tail);
  Rat opNorm = symbol_sup_abs(h);
  check_internal(opNorm == operator_norm(s, s, T),
                 "multiplier norm does not match the operator norm");
  std::vector<Vec> probes;
  for (int j = 0; j <= static_cast<int>(m.prefix.size()); ++j)
    probes.push_back(seq_indicator(j));
  probes.push_back(Vec::seq({}, Rat(1) / q->theta));
  assert_attained_norm(s, T, opNorm, probes);
  return {std::move(h), std::move(opNorm)};
}

CentralDecision decide_index_map(const ModelSpace& s, const OperatorSpec& T) {
  const IndexMapOp& m = *T.as_index_map();
  if (auto* f = s.as_finite_sup()) {
    int n = f->dim();
    bool selfSourced = true;
    for (const auto& [cod, entry] : m.sigma)
      if (entry.scale != 0 && !(entry.source == cod)) selfSourced = false;
    // Oracle: central means every basis direction maps into its own span.
    bool oracleDiag = true;
    for (int j = 0; j < n && oracleDiag; ++j) {
      Vec e = basis_vec(n, j);
      Vec Te = apply(s, s, T, e);
      const auto& c = Te.as_sup()->coords;
      for (int k = 0; k < n; ++k)
        if (k != j && c[static_cast<std::size_t>(k)] != 0) oracleDiag = false;
    }
    check_internal(oracleDiag == selfSourced,
                   "central decision disagrees with the span oracle");
    if (!selfSourced) return {};
    std::vector<Rat> values(static_cast<std::size_t>(n), Rat(0));
    for (const auto& [cod, entry] : m.sigma)
      if (cod.index >= 0 && cod.index < n)
        values[static_cast<std::size_t>(cod.index)] = entry.scale;
    CentralSymbol h = CentralSymbol::sup(std::move(values));
    Rat opNorm = symbol_sup_abs(h);
    check_internal(opNorm == operator_norm(s, s, T),
                   "multiplier norm does not match the operator norm");
    return {std::move(h), std::move(opNorm)};
  }
  require(s.as_seq_lim() != nullptr,
          "central candidates must be endomorphisms of the space");
  bool self = true;
  Rat tailScale(0), limitScale(0);
  bool haveTail = false, haveLimit = false;
  for (const auto& [cod, entry] : m.sigma) {
    if (entry.scale != 0 && !(canon_atom(entry.source) == canon_atom(cod)))
      self = false;
    if (cod.kind == LeafKind::Tail) {
      tailScale = entry.scale;
      haveTail = true;
    }
    if (cod.kind == LeafKind::Limit) {
      limitScale = entry.scale;
      haveLimit = true;
    }
  }
  bool total = haveTail == haveLimit && tailScale == limitScale;
  bool accept = self && total;
  // Oracle: every coordinate indicator must map into its own span and the
  // constant-one vector must have a consistent image.
  bool oracleAccept = true;
  try {
    for (int j = 0; j < m.codSeqExplicit + 1; ++j) {
      Vec e = seq_indicator(j);
      Vec Te = apply(s, s, T, e);
      Vec diff = sub(Te, scale(evaluate(s, AtomId{{}, LeafKind::Coord, j}, Te), e));
      if (!is_zero(diff)) oracleAccept = false;
    }
    apply(s, s, T, Vec::seq({}, Rat(1)));
  } catch (const PreconditionError&) {
    oracleAccept = false;
  }
  check_internal(oracleAccept == accept,
                 "central decision disagrees with the span oracle");
  if (!accept) return {};
  std::vector<Rat> prefix(static_cast<std::size_t>(m.codSeqExplicit), Rat(0));
  for (const auto& [cod, entry] : m.sigma)
    if (cod.kind == LeafKind::Coord && cod.index >= 0 &&
        cod.index < m.codSeqExplicit)
      prefix[static_cast<std::size_t>(cod.index)] = entry.scale;
  CentralSymbol h = CentralSymbol::seq(std::move(prefix), tailScale);
  Rat opNorm = symbol_sup_abs(h);
  check_internal(opNorm == operator_norm(s, s, T),
                 "multiplier norm does not match the operator norm");
  return {std::move(h), std::move(opNorm)};
}

}  // namespace

CentralDecision decide_central(const ModelSpace& s, const OperatorSpec& T) {
  if (T.as_matrix()) return decide_matrix(s, T);
  if (T.as_seq_mul()) return decide_seq_mul(s, T);
  return decide_index_map(s, T);
}

OperatorSpec mult_operator(const ModelSpace& s, const CentralSymbol& h) {
  if (auto* f = s.as_finite_sup()) {
    auto* v = h.as_sup();
    if (!v || static_cast<int>(v->values.size()) != f->dim())
      throw PreconditionError("symbol does not match " + describe(s));
    MatrixOp m = MatrixOp::zeros(f->dim(), f->dim());
    for (int i = 0; i < f->dim(); ++i) m.at(i, i) = v->values[i];
    return OperatorSpec::matrix(std::move(m));
  }
  auto* q = h.as_seq();
  if (!s.as_seq_lim() || !q)
    throw PreconditionError("symbol does not match " + describe(s));
  return OperatorSpec::seq_mul(q->prefix, q->tail, q->tail);
}

}  // namespace amalg
