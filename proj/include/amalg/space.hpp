#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "amalg/rational.hpp"

namespace amalg {

struct ModelSpace;

// R^n with norm max_i c_i|x_i|; the c_i > 0 are the dual weights (the i-th
// coordinate functional has norm 1/c_i).
struct FiniteSup {
  std::vector<Rat> dualWeights;
  int dim() const { return static_cast<int>(dualWeights.size()); }
};

// Eventually constant sequences with norm max(theta*|lim x|, sup_j |x_j|),
// theta >= 1.
struct SeqLim {
  Rat theta;
};

// l^1-type space: `atoms` atom coordinates with additive norm, plus an
// optional single formal coordinate standing in for a nonatomic band
// (it contributes |mass| to the norm and annihilates every product).
struct FiniteAL {
  int atoms = 0;
  bool nonatomicBand = false;
};

// Binary sup direct sum X (+) Y with norm max(|x|_X, |y|_Y). Nestable.
struct SupDirectSum {
  std::shared_ptr<const ModelSpace> left;
  std::shared_ptr<const ModelSpace> right;
};

struct ModelSpace {
  std::variant<FiniteSup, SeqLim, FiniteAL, SupDirectSum> kind;

  // Factories validate construction invariants (throw PreconditionError).
  static ModelSpace finite_sup(std::vector<Rat> dualWeights);
  static ModelSpace seq_lim(Rat theta);
  static ModelSpace finite_al(int atoms, bool nonatomicBand);
  static ModelSpace sup_sum(ModelSpace left, ModelSpace right);

  const FiniteSup* as_finite_sup() const { return std::get_if<FiniteSup>(&kind); }
  const SeqLim* as_seq_lim() const { return std::get_if<SeqLim>(&kind); }
  const FiniteAL* as_finite_al() const { return std::get_if<FiniteAL>(&kind); }
  const SupDirectSum* as_sum() const { return std::get_if<SupDirectSum>(&kind); }
};

bool operator==(const ModelSpace& a, const ModelSpace& b);

// True for the sup-normed families (FiniteSup, SeqLim, and sums of those);
// false as soon as a FiniteAL appears anywhere.
bool is_am_family(const ModelSpace& s);

std::string describe(const ModelSpace& s);

}  // namespace amalg
