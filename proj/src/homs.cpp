#include "amalg/homs.hpp"

#include <algorithm>

#include "amalg/errors.hpp"
#include "amalg/lattice.hpp"
#include "amalg/spectrum.hpp"

namespace amalg {

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

// Indices at which the operator reads specific domain coordinates; beyond
// this horizon it acts uniformly, so one representative index suffices.
int domain_horizon(const OperatorSpec& T) {
  int h = 0;
  if (auto* m = T.as_seq_mul()) h = static_cast<int>(m->prefix.size());
  if (auto* m = T.as_index_map()) {
    h = m->codSeqExplicit;
    for (const auto& [cod, entry] : m->sigma) {
      if (cod.kind == LeafKind::Coord) h = std::max(h, cod.index + 1);
      if (entry.source.kind == LeafKind::Coord)
        h = std::max(h, entry.source.index + 1);
    }
  }
  return h;
}

int weight_horizon(const Weight& w) {
  if (auto* q = w.as_seq()) return static_cast<int>(q->prefix.size());
  return 0;
}

// Positive spanning probes: every vector of the space is a linear
// combination of these (for SeqLim, of vectors behaving like them).
std::vector<Vec> spanning_probes(const ModelSpace& s, int horizon) {
  std::vector<Vec> out;
  if (auto* f = s.as_finite_sup()) {
    for (int i = 0; i < f->dim(); ++i) out.push_back(basis_vec(f->dim(), i));
    return out;
  }
  if (s.as_seq_lim()) {
    for (int j = 0; j <= horizon + 1; ++j) out.push_back(seq_indicator(j));
    out.push_back(Vec::seq({}, Rat(1)));
    return out;
  }
  if (auto* a = s.as_finite_al()) {
    for (int i = 0; i < a->atoms; ++i) {
      std::vector<Rat> c(static_cast<std::size_t>(a->atoms), Rat(0));
      c[static_cast<std::size_t>(i)] = Rat(1);
      out.push_back(Vec::al(std::move(c), Rat(0)));
    }
    if (a->nonatomicBand)
      out.push_back(Vec::al(std::vector<Rat>(a->atoms, Rat(0)), Rat(1)));
    return out;
  }
  auto* p = s.as_sum();
  for (const Vec& v : spanning_probes(*p->left, horizon))
    out.push_back(Vec::pair(v, zero_vec(*p->right)));
  for (const Vec& v : spanning_probes(*p->right, horizon))
    out.push_back(Vec::pair(zero_vec(*p->left), v));
  return out;
}

// Positive probes plus their pairwise differences: complete for the
// modulus identity on row-shaped operators.
std::vector<Vec> modulus_probes(const ModelSpace& s, int horizon) {
  std::vector<Vec> pos = spanning_probes(s, horizon);
  std::vector<Vec> out = pos;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      out.push_back(sub(pos[i], pos[j]));
  return out;
}

bool lattice_hom_structurally(const OperatorSpec& T) {
  if (auto* m = T.as_matrix()) {
    for (int k = 0; k < m->rows; ++k) {
      int nonzero = 0;
      for (int i = 0; i < m->cols; ++i) {
        const Rat& v = m->at(k, i);
        if (v < 0) return false;
        if (v != 0) ++nonzero;
      }
      if (nonzero > 1) return false;
    }
    return true;
  }
  if (auto* m = T.as_seq_mul()) {
    if (m->tail < 0) return false;
    for (const Rat& v : m->prefix)
      if (v < 0) return false;
    return true;
  }
  return true;  // index maps: nonnegative scaled pullbacks
}

}  // namespace

LatticeHomReport is_lattice_hom(const ModelSpace& dom, const ModelSpace& cod,
                                const OperatorSpec& T) {
  if (auto* m = T.as_seq_mul())
    require(m->tail == m->limitValue,
            "not a total operator: tail and limit values disagree");
  bool structural = lattice_hom_structurally(T);
  LatticeHomReport out;
  out.isLatticeHom = true;
  for (const Vec& x : modulus_probes(dom, domain_horizon(T))) {
    Vec tx = apply(dom, cod, T, x);
    Vec lhs = abs_vec(tx);
    // |x| = x for positive probes, so T|x| is the already computed image.
    Vec rhs = is_positive(x) ? tx : apply(dom, cod, T, abs_vec(x));
    if (!(lhs == rhs)) {
      out.isLatticeHom = false;
      out.witness = x;
      break;
    }
  }
  check_internal(out.isLatticeHom == structural,
                 "row-structure verdict disagrees with the modulus probes");
  return out;
}

AlgebraHomReport is_algebra_hom(const ModelSpace& dom, const ModelSpace& cod,
                                const OperatorSpec& T, const Weight& wdom,
                                const Weight& wcod) {
  int horizon = std::max(domain_horizon(T), weight_horizon(wdom));
  std::vector<Vec> probes = spanning_probes(dom, horizon);
  std::vector<Vec> images;
  images.reserve(probes.size());
  for (const Vec& x : probes) images.push_back(apply(dom, cod, T, x));
  AlgebraHomReport out;
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = i; j < probes.size(); ++j) {
      Vec lhs = apply(dom, cod, T, product(dom, wdom, probes[i], probes[j]));
      Vec rhs = product(cod, wcod, images[i], images[j]);
      if (!(lhs == rhs)) {
        out.witness = {probes[i], probes[j]};
        return out;
      }
    }
  out.isAlgebraHom = true;
  return out;
}

bool ball_square_condition(const ModelSpace& dom, const ModelSpace& cod,
                           const OperatorSpec& T) {
  require(dom.as_finite_sup() != nullptr && cod.as_finite_sup() != nullptr,
          "the ball-square collapse needs order units on both sides");
  Vec v = apply(dom, cod, T, order_unit(dom));
  return product(cod, unit_weight(cod), v, v) == v;
}

bool operator==(const CompositionForm& a, const CompositionForm& b) {
  return a.source == b.source && a.coefficient == b.coefficient;
}

std::optional<CompositionForm> derive_composition_form(const ModelSpace& dom,
                                                       const ModelSpace& cod,
                                                       const OperatorSpec& T) {
  auto* fd = dom.as_finite_sup();
  auto* fc = cod.as_finite_sup();
  auto* m = T.as_matrix();
  require(fd && fc && m && m->cols == fd->dim() && m->rows == fc->dim(),
          "pullback derivation needs a matrix between FiniteSup spaces");
  CompositionForm form;
  form.source.assign(static_cast<std::size_t>(m->rows), -1);
  form.coefficient.assign(static_cast<std::size_t>(m->rows), Rat(0));
  for (int k = 0; k < m->rows; ++k) {
    int col = -1;
    for (int i = 0; i < m->cols; ++i) {
      if (m->at(k, i) == 0) continue;
      if (col >= 0) return std::nullopt;  // two nonzeros in one row
      col = i;
    }
    if (col < 0) continue;  // zero functional
    const Rat& a = m->at(k, col);
    // The row must be the unit representative of coordinate `col` read
    // through codomain atom k: a = c_col / d_k, cross-multiplied.
    if (a < 0) return std::nullopt;
    Rat lhs = a * fc->dualWeights[k];
    if (lhs != fd->dualWeights[col]) return std::nullopt;
    form.source[static_cast<std::size_t>(k)] = col;
    form.coefficient[static_cast<std::size_t>(k)] = fd->dualWeights[col];
  }
  return form;
}

OperatorSpec composition_matrix(const ModelSpace& dom, const ModelSpace& cod,
                                const CompositionForm& form) {
  auto* fd = dom.as_finite_sup();
  auto* fc = cod.as_finite_sup();
  require(fd && fc, "pullback matrices act between FiniteSup spaces");
  require(static_cast<int>(form.source.size()) == fc->dim() &&
              form.coefficient.size() == form.source.size(),
          "pullback size does not match the codomain");
  MatrixOp m = MatrixOp::zeros(fc->dim(), fd->dim());
  for (int k = 0; k < fc->dim(); ++k) {
    int i = form.source[static_cast<std::size_t>(k)];
    if (i < 0) continue;
    require(i < fd->dim(), "pullback source out of range");
    m.at(k, i) = Rat(form.coefficient[static_cast<std::size_t>(k)] /
                     fc->dualWeights[k]);
  }
  return OperatorSpec::matrix(std::move(m));
}

CompositionForm composition_form(const ModelSpace& dom, const ModelSpace& cod,
                                 const OperatorSpec& T) {
  AlgebraHomReport rep =
      is_algebra_hom(dom, cod, T, unit_weight(dom), unit_weight(cod));
  require(rep.isAlgebraHom, "not an algebra homomorphism");
  std::optional<CompositionForm> form = derive_composition_form(dom, cod, T);
  check_internal(form.has_value(),
                 "algebra homomorphism without a pullback form");
  // Each nonzero pullback image must again be a unit representative.
  std::vector<DualAtom> atoms = dual_atoms(dom);
  for (std::size_t k = 0; k < form->source.size(); ++k) {
    int i = form->source[k];
    if (i < 0) continue;
    Rat normPreserved = form->coefficient[k] * atoms[static_cast<std::size_t>(i)].dualNorm;
    check_internal(normPreserved == 1, "pullback image is not norm-one");
  }
  OperatorSpec rebuilt = composition_matrix(dom, cod, *form);
  check_internal(rebuilt.as_matrix()->a == T.as_matrix()->a,
                 "pullback does not reconstruct the operator");
  return *form;
}

}  // namespace amalg
