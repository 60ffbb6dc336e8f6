#include "amalg/space.hpp"

#include "amalg/errors.hpp"

namespace amalg {

ModelSpace ModelSpace::finite_sup(std::vector<Rat> dualWeights) {
  require(!dualWeights.empty(), "FiniteSup needs dimension >= 1");
  for (const Rat& c : dualWeights)
    require(c > 0, "FiniteSup dual weights must be > 0");
  return ModelSpace{FiniteSup{std::move(dualWeights)}};
}

ModelSpace ModelSpace::seq_lim(Rat theta) {
  require(theta >= 1, "SeqLim needs theta >= 1");
  return ModelSpace{SeqLim{std::move(theta)}};
}

ModelSpace ModelSpace::finite_al(int atoms, bool nonatomicBand) {
  require(atoms >= 0, "FiniteAL needs atoms >= 0");
  require(atoms > 0 || nonatomicBand, "FiniteAL must be nonzero");
  return ModelSpace{FiniteAL{atoms, nonatomicBand}};
}

ModelSpace ModelSpace::sup_sum(ModelSpace left, ModelSpace right) {
  auto l = std::make_shared<const ModelSpace>(std::move(left));
  auto r = std::make_shared<const ModelSpace>(std::move(right));
  return ModelSpace{SupDirectSum{std::move(l), std::move(r)}};
}

bool operator==(const ModelSpace& a, const ModelSpace& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (auto* fa = a.as_finite_sup())
    return fa->dualWeights == b.as_finite_sup()->dualWeights;
  if (auto* sa = a.as_seq_lim()) return sa->theta == b.as_seq_lim()->theta;
  if (auto* la = a.as_finite_al()) {
    auto* lb = b.as_finite_al();
    return la->atoms == lb->atoms && la->nonatomicBand == lb->nonatomicBand;
  }
  auto* pa = a.as_sum();
  auto* pb = b.as_sum();
  return *pa->left == *pb->left && *pa->right == *pb->right;
}

bool is_am_family(const ModelSpace& s) {
  if (s.as_finite_sup() || s.as_seq_lim()) return true;
  if (s.as_finite_al()) return false;
  auto* p = s.as_sum();
  return is_am_family(*p->left) && is_am_family(*p->right);
}

std::string describe(const ModelSpace& s) {
  if (auto* f = s.as_finite_sup()) {
    std::string out = "FiniteSup(c=";
    for (int i = 0; i < f->dim(); ++i)
      out += (i ? "," : "") + rat_str(f->dualWeights[i]);
    return out + ")";
  }
  if (auto* q = s.as_seq_lim()) return "SeqLim(theta=" + rat_str(q->theta) + ")";
  if (auto* l = s.as_finite_al())
    return "FiniteAL(atoms=" + std::to_string(l->atoms) +
           (l->nonatomicBand ? ",band" : "") + ")";
  auto* p = s.as_sum();
  return "Sum(" + describe(*p->left) + ", " + describe(*p->right) + ")";
}

}  // namespace amalg
