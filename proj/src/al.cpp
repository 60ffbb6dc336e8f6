#include "amalg/al.hpp"

#include "amalg/errors.hpp"
#include "amalg/lattice.hpp"

namespace amalg {

ALWeight ALWeight::of(std::vector<Rat> w) {
  for (const Rat& v : w) require(v >= 0, "atom weights must be >= 0");
  return ALWeight{std::move(w)};
}

bool operator==(const ALWeight& a, const ALWeight& b) { return a.w == b.w; }

namespace {

const FiniteAL& al_space(const ModelSpace& s) {
  auto* a = s.as_finite_al();
  if (!a) throw PreconditionError("expected a FiniteAL space, got " + describe(s));
  return *a;
}

void require_al_weight(const FiniteAL& a, const ALWeight& w) {
  require(static_cast<int>(w.w.size()) == a.atoms,
          "weight has one value per atom");
}

Vec atom_vec(const FiniteAL& a, int i) {
  std::vector<Rat> c(static_cast<std::size_t>(a.atoms), Rat(0));
  c[static_cast<std::size_t>(i)] = Rat(1);
  return Vec::al(std::move(c), Rat(0));
}

}  // namespace

Vec al_product(const ModelSpace& s, const ALWeight& w, const Vec& x,
               const Vec& y) {
  const FiniteAL& a = al_space(s);
  require_al_weight(a, w);
  require_conforms(s, x);
  require_conforms(s, y);
  const ALVec& xv = *x.as_al();
  const ALVec& yv = *y.as_al();
  std::vector<Rat> out(static_cast<std::size_t>(a.atoms));
  for (int i = 0; i < a.atoms; ++i)
    out[i] = w.w[i] * xv.atoms[i] * yv.atoms[i];
  return Vec::al(std::move(out), Rat(0));
}

std::optional<ALWeight> al_decide_tensor(const ModelSpace& s,
                                         const ProductTensor& B) {
  const FiniteAL& a = al_space(s);
  require(!a.nonatomicBand, "tensor decisions need a purely atomic space");
  require(B.n == a.atoms, "tensor size must match the atom count");
  for (int i = 0; i < B.n; ++i)
    for (int j = 0; j < B.n; ++j)
      for (int k = 0; k < B.n; ++k) {
        const Rat& v = B.at(i, j, k);
        if (v < 0) return std::nullopt;
        if (v != 0 && !(i == j && j == k)) return std::nullopt;
      }
  std::vector<Rat> w(static_cast<std::size_t>(B.n));
  for (int k = 0; k < B.n; ++k) w[k] = B.at(k, k, k);
  return ALWeight{std::move(w)};
}

ALSubmultReport al_is_submultiplicative(const ModelSpace& s,
                                        const ALWeight& w) {
  const FiniteAL& a = al_space(s);
  require_al_weight(a, w);
  ALSubmultReport out;
  int worst = -1;
  for (int i = 0; i < a.atoms; ++i)
    if (w.w[i] > out.maxWeight) {
      out.maxWeight = w.w[i];
      worst = i;
    }
  out.submultiplicative = out.maxWeight <= 1;
  if (!out.submultiplicative) {
    // ||P(e_i, e_i)||_1 = w_i > 1 = ||e_i|| * ||e_i||.
    Vec e = atom_vec(a, worst);
    out.violation = NormViolation{e, e, out.maxWeight, Rat(1)};
  }
  return out;
}

bool only_zero_product(const ModelSpace& s) { return al_space(s).atoms == 0; }

ModelSpace band_space(const ModelSpace& s, BandSide side) {
  if (side == BandSide::Atoms) {
    const FiniteAL& a = al_space(s);
    return ModelSpace::finite_al(a.atoms, false);
  }
  auto* p = s.as_sum();
  if (!p)
    throw PreconditionError("band is not a declared component of " + describe(s));
  return side == BandSide::Left ? *p->left : *p->right;
}

Vec band_component(const ModelSpace& s, BandSide side, const Vec& x) {
  require_conforms(s, x);
  if (side == BandSide::Atoms) {
    al_space(s);
    return Vec::al(x.as_al()->atoms, Rat(0));
  }
  auto* p = s.as_sum();
  if (!p)
    throw PreconditionError("band is not a declared component of " + describe(s));
  const PairVec& pv = *x.as_pair();
  return side == BandSide::Left ? *pv.left : *pv.right;
}

Vec band_embed(const ModelSpace& s, BandSide side, const Vec& b) {
  if (side == BandSide::Atoms) {
    require_conforms(band_space(s, side), b);
    return Vec::al(b.as_al()->atoms, Rat(0));
  }
  auto* p = s.as_sum();
  if (!p)
    throw PreconditionError("band is not a declared component of " + describe(s));
  require_conforms(band_space(s, side), b);
  return side == BandSide::Left ? Vec::pair(b, zero_vec(*p->right))
                                : Vec::pair(zero_vec(*p->left), b);
}

Vec band_project(const ModelSpace& s, BandSide side, const Vec& x) {
  return band_embed(s, side, band_component(s, side, x));
}

ProductFn lift_band_product(const ModelSpace& s, BandSide side,
                            ProductFn inner) {
  band_space(s, side);  // validates the declaration up front
  return [s, side, inner = std::move(inner)](const Vec& x, const Vec& y) {
    return band_embed(s, side,
                      inner(band_component(s, side, x),
                            band_component(s, side, y)));
  };
}

}  // namespace amalg
