#include "amalg/vec.hpp"

#include "amalg/errors.hpp"

namespace amalg {

Vec Vec::sup(std::vector<Rat> coords) { return Vec{SupVec{std::move(coords)}}; }

Vec Vec::seq(std::vector<Rat> prefix, Rat tail) {
  while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
  return Vec{SeqVec{std::move(prefix), std::move(tail)}};
}

Vec Vec::al(std::vector<Rat> atoms, Rat mass) {
  return Vec{ALVec{std::move(atoms), std::move(mass)}};
}

Vec Vec::pair(Vec left, Vec right) {
  return Vec{PairVec{std::make_shared<const Vec>(std::move(left)),
                     std::make_shared<const Vec>(std::move(right))}};
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.rep.index() != b.rep.index()) return false;
  if (auto* sa = a.as_sup()) return sa->coords == b.as_sup()->coords;
  if (auto* qa = a.as_seq()) {
    auto* qb = b.as_seq();
    return qa->prefix == qb->prefix && qa->tail == qb->tail;
  }
  if (auto* la = a.as_al()) {
    auto* lb = b.as_al();
    return la->atoms == lb->atoms && la->mass == lb->mass;
  }
  auto* pa = a.as_pair();
  auto* pb = b.as_pair();
  return *pa->left == *pb->left && *pa->right == *pb->right;
}

bool conforms(const ModelSpace& s, const Vec& x) {
  if (auto* f = s.as_finite_sup()) {
    auto* v = x.as_sup();
    return v && static_cast<int>(v->coords.size()) == f->dim();
  }
  if (s.as_seq_lim()) return x.as_seq() != nullptr;
  if (auto* l = s.as_finite_al()) {
    auto* v = x.as_al();
    return v && static_cast<int>(v->atoms.size()) == l->atoms &&
           (l->nonatomicBand || v->mass == 0);
  }
  auto* p = s.as_sum();
  auto* v = x.as_pair();
  return v && conforms(*p->left, *v->left) && conforms(*p->right, *v->right);
}

void require_conforms(const ModelSpace& s, const Vec& x) {
  if (!conforms(s, x))
    throw PreconditionError("vector does not belong to " + describe(s));
}

Vec zero_vec(const ModelSpace& s) {
  if (auto* f = s.as_finite_sup())
    return Vec::sup(std::vector<Rat>(f->dim(), Rat(0)));
  if (s.as_seq_lim()) return Vec::seq({}, Rat(0));
  if (auto* l = s.as_finite_al())
    return Vec::al(std::vector<Rat>(l->atoms, Rat(0)), Rat(0));
  auto* p = s.as_sum();
  return Vec::pair(zero_vec(*p->left), zero_vec(*p->right));
}

bool is_zero(const Vec& x) {
  if (auto* v = x.as_sup()) {
    for (const Rat& c : v->coords)
      if (c != 0) return false;
    return true;
  }
  if (auto* q = x.as_seq()) return q->prefix.empty() && q->tail == 0;
  if (auto* l = x.as_al()) {
    if (l->mass != 0) return false;
    for (const Rat& c : l->atoms)
      if (c != 0) return false;
    return true;
  }
  auto* p = x.as_pair();
  return is_zero(*p->left) && is_zero(*p->right);
}

std::string vec_str(const Vec& x) {
  if (auto* v = x.as_sup()) {
    std::string out = "(";
    for (std::size_t i = 0; i < v->coords.size(); ++i)
      out += (i ? "," : "") + rat_str(v->coords[i]);
    return out + ")";
  }
  if (auto* q = x.as_seq()) {
    std::string out = "(";
    for (const Rat& c : q->prefix) out += rat_str(c) + ",";
    return out + rat_str(q->tail) + ",...)";
  }
  if (auto* l = x.as_al()) {
    std::string out = "[";
    for (std::size_t i = 0; i < l->atoms.size(); ++i)
      out += (i ? "," : "") + rat_str(l->atoms[i]);
    out += "]";
    if (l->mass != 0) out += "+band*" + rat_str(l->mass);
    return out;
  }
  auto* p = x.as_pair();
  return "<" + vec_str(*p->left) + ", " + vec_str(*p->right) + ">";
}

}  // namespace amalg
