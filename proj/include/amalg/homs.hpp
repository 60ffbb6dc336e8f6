#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "amalg/operator_spec.hpp"
#include "amalg/products.hpp"

namespace amalg {

// T(x v y) = Tx v Ty. Matrices qualify exactly when every row is >= 0 with
// at most one nonzero entry; index maps and nonnegative multiplication data
// qualify by construction. The structural verdict is cross-checked against
// T|x| = |Tx| on a probe grid that is complete for these operator shapes.
struct LatticeHomReport {
  bool isLatticeHom = false;
  std::optional<Vec> witness;  // probe with T|x| != |Tx|
};

LatticeHomReport is_lattice_hom(const ModelSpace& dom, const ModelSpace& cod,
                                const OperatorSpec& T);

// T(P(x,y)) = P(Tx,Ty) for the supplied weight products. Decided on all
// pairs from a spanning probe set, which is exact because both sides are
// bilinear. The witness is a failing pair.
struct AlgebraHomReport {
  bool isAlgebraHom = false;
  std::optional<std::pair<Vec, Vec>> witness;
};

AlgebraHomReport is_algebra_hom(const ModelSpace& dom, const ModelSpace& cod,
                                const OperatorSpec& T, const Weight& wdom,
                                const Weight& wcod);

// (Te)^2 = Te, where e is the domain order unit and the square is taken in
// the codomain algebra; both sides carry their unit-weight products. Needs
// order units, so both spaces must be FiniteSup.
bool ball_square_condition(const ModelSpace& dom, const ModelSpace& cod,
                           const OperatorSpec& T);

// Pullback description of an algebra homomorphism between FiniteSup spaces
// with their unit-weight products: codomain unit dual atom k reads the
// domain through coefficient[k] * delta_{source[k]} (the unit representative
// of that coordinate), or through the zero functional when source[k] is -1.
struct CompositionForm {
  std::vector<int> source;
  std::vector<Rat> coefficient;
};

bool operator==(const CompositionForm& a, const CompositionForm& b);

// Row analysis, independent of is_algebra_hom: succeeds exactly when every
// row of the matrix is zero or places its single nonnegative entry a in a
// column i with a * d_k == c_i.
std::optional<CompositionForm> derive_composition_form(const ModelSpace& dom,
                                                       const ModelSpace& cod,
                                                       const OperatorSpec& T);

// Requires an algebra homomorphism (throws otherwise); asserts that the
// pullback preserves dual-atom norms and reconstructs T exactly.
CompositionForm composition_form(const ModelSpace& dom, const ModelSpace& cod,
                                 const OperatorSpec& T);

// The matrix acting as f |-> f o phi for the given pullback.
OperatorSpec composition_matrix(const ModelSpace& dom, const ModelSpace& cod,
                                const CompositionForm& form);

}  // namespace amalg
