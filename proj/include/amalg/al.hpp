#pragma once

#include <optional>
#include <vector>

#include "amalg/products.hpp"

namespace amalg {

// Product data on an additive-norm space: one value per atom, nothing on
// the diffuse part (whose products vanish identically).
struct ALWeight {
  std::vector<Rat> w;

  static ALWeight of(std::vector<Rat> w);  // validates w >= 0
};

bool operator==(const ALWeight& a, const ALWeight& b);

// P(x,y): atom i carries w_i * x_i * y_i (atom functionals are norm-one, so
// no rescaling); the diffuse mass of the result is always 0.
Vec al_product(const ModelSpace& s, const ALWeight& w, const Vec& x,
               const Vec& y);

// Same exact diagonal decision as decide_tensor, with w_i = B[i][i][i].
// The space must be purely atomic (no diffuse band).
std::optional<ALWeight> al_decide_tensor(const ModelSpace& s,
                                         const ProductTensor& B);

// ||P(x,y)||_1 <= ||x||_1 * ||y||_1 holds iff max_i w_i <= 1; a failing
// weight is witnessed by an atom pair breaking the bound.
struct ALSubmultReport {
  bool submultiplicative = false;
  Rat maxWeight = Rat(0);
  std::optional<NormViolation> violation;
};

ALSubmultReport al_is_submultiplicative(const ModelSpace& s, const ALWeight& w);

// True exactly for the atomless model, where the zero product is the only
// f-algebra product.
bool only_zero_product(const ModelSpace& s);

// Band plumbing: a product living on one projection band extends to the
// whole space by composing with the band projection Q on both arguments.
enum class BandSide { Left, Right, Atoms };

// The chosen band as a standalone space.
ModelSpace band_space(const ModelSpace& s, BandSide side);

// Component extraction (outer -> band space), re-embedding (band space ->
// outer, zero elsewhere), and their composite Q (outer -> outer).
Vec band_component(const ModelSpace& s, BandSide side, const Vec& x);
Vec band_embed(const ModelSpace& s, BandSide side, const Vec& b);
Vec band_project(const ModelSpace& s, BandSide side, const Vec& x);

// x, y |-> embed(inner(component x, component y)); inner is a product on
// the band space.
ProductFn lift_band_product(const ModelSpace& s, BandSide side,
                            ProductFn inner);

}  // namespace amalg
