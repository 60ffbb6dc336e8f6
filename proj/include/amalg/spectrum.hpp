#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "amalg/lattice.hpp"

namespace amalg {

// Address of a lattice-homomorphism functional on a model space.
// `path` descends through sum components (0 = left, 1 = right); the leaf is
// either a coordinate functional, the symbolic tail marker of a SeqLim leaf
// (evaluation at any index beyond every explicit prefix), or its limit
// functional.
enum class LeafKind { Coord, Tail, Limit };

struct AtomId {
  std::vector<int> path;
  LeafKind kind = LeafKind::Coord;
  int index = 0;  // meaningful for Coord only

  auto operator<=>(const AtomId&) const = default;
};

std::string atom_str(const AtomId& a);

// An extreme-point functional together with its dual norm. The norm-one
// representative used on the unit sphere of the dual is functional/dualNorm.
struct DualAtom {
  AtomId id;
  Rat dualNorm;
};

// The lattice-homomorphism functionals of the space. SeqLim leaves
// contribute `seqExplicit` explicit coordinate functionals, the symbolic
// Tail marker, and the Limit functional; FiniteAL leaves contribute their
// atom coordinate functionals only (the formal nonatomic band carries no
// lattice-homomorphism functional).
std::vector<DualAtom> dual_atoms(const ModelSpace& s, int seqExplicit = 0);

// Raw functional application a(x).
Rat evaluate(const ModelSpace& s, const AtomId& a, const Vec& x);

// Application of the norm-one representative, a(x)/dualNorm(a).
Rat evaluate_unit(const ModelSpace& s, const DualAtom& a, const Vec& x);

// One distinguished weak-* convergent net in the dual unit sphere per
// SeqLim leaf: the coordinate functionals (tail marker) converging to the
// limit functional.
struct ConvergenceDatum {
  DualAtom net;    // Tail marker, dual norm 1
  DualAtom limit;  // Limit functional, dual norm 1/theta
};

std::vector<ConvergenceDatum> convergence_data(const ModelSpace& s);

// Whether x* |-> |x*| (equivalently the norm) is weak-* continuous along
// every recorded net. Fails exactly when some SeqLim leaf has theta > 1;
// the witness carries the constant net norm and the differing limit norm.
struct ContinuityWitness {
  ConvergenceDatum datum;
  Rat alongNet;
  Rat atLimit;
};

struct ContinuityReport {
  bool continuous = true;
  std::optional<ContinuityWitness> witness;
};

ContinuityReport norm_weakstar_continuous(const ModelSpace& s);

}  // namespace amalg
