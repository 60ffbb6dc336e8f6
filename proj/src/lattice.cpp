#include "amalg/lattice.hpp"

#include <algorithm>

#include "amalg/errors.hpp"

namespace amalg {

namespace {

Rat rmax(const Rat& a, const Rat& b) { return a >= b ? a : b; }
Rat rmin(const Rat& a, const Rat& b) { return a <= b ? a : b; }

// Pointwise combination; SeqVec operands are aligned by extending the
// shorter prefix with its own tail.
template <typename F>
Vec zip(const Vec& x, const Vec& y, const F& op) {
  require(x.rep.index() == y.rep.index(), "operand shapes differ");
  if (auto* vx = x.as_sup()) {
    auto* vy = y.as_sup();
    require(vx->coords.size() == vy->coords.size(), "operand dimensions differ");
    std::vector<Rat> out(vx->coords.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = op(vx->coords[i], vy->coords[i]);
    return Vec::sup(std::move(out));
  }
  if (auto* qx = x.as_seq()) {
    auto* qy = y.as_seq();
    std::size_t n = std::max(qx->prefix.size(), qy->prefix.size());
    std::vector<Rat> out(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& a = j < qx->prefix.size() ? qx->prefix[j] : qx->tail;
      const Rat& b = j < qy->prefix.size() ? qy->prefix[j] : qy->tail;
      out[j] = op(a, b);
    }
    return Vec::seq(std::move(out), op(qx->tail, qy->tail));
  }
  if (auto* lx = x.as_al()) {
    auto* ly = y.as_al();
    require(lx->atoms.size() == ly->atoms.size(), "operand dimensions differ");
    std::vector<Rat> out(lx->atoms.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = op(lx->atoms[i], ly->atoms[i]);
    return Vec::al(std::move(out), op(lx->mass, ly->mass));
  }
  auto* px = x.as_pair();
  auto* py = y.as_pair();
  return Vec::pair(zip(*px->left, *py->left, op), zip(*px->right, *py->right, op));
}

template <typename F>
Vec map(const Vec& x, const F& op) {
  if (auto* v = x.as_sup()) {
    std::vector<Rat> out(v->coords.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(v->coords[i]);
    return Vec::sup(std::move(out));
  }
  if (auto* q = x.as_seq()) {
    std::vector<Rat> out(q->prefix.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = op(q->prefix[j]);
    return Vec::seq(std::move(out), op(q->tail));
  }
  if (auto* l = x.as_al()) {
    std::vector<Rat> out(l->atoms.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(l->atoms[i]);
    return Vec::al(std::move(out), op(l->mass));
  }
  auto* p = x.as_pair();
  return Vec::pair(map(*p->left, op), map(*p->right, op));
}

}  // namespace

Vec add(const Vec& x, const Vec& y) {
  return zip(x, y, [](const Rat& a, const Rat& b) { return Rat(a + b); });
}

Vec sub(const Vec& x, const Vec& y) {
  return zip(x, y, [](const Rat& a, const Rat& b) { return Rat(a - b); });
}

Vec scale(const Rat& a, const Vec& x) {
  return map(x, [&a](const Rat& c) { return Rat(a * c); });
}

Vec negate(const Vec& x) {
  return map(x, [](const Rat& c) { return Rat(-c); });
}

Vec join(const Vec& x, const Vec& y) { return zip(x, y, rmax); }

Vec meet(const Vec& x, const Vec& y) { return zip(x, y, rmin); }

Vec abs_vec(const Vec& x) {
  return map(x, [](const Rat& c) { return Rat(abs(c)); });
}

Vec pos_part(const Vec& x) {
  return map(x, [](const Rat& c) { return c > 0 ? c : Rat(0); });
}

Vec neg_part(const Vec& x) {
  return map(x, [](const Rat& c) { return c < 0 ? Rat(-c) : Rat(0); });
}

bool leq(const Vec& x, const Vec& y) { return is_positive(sub(y, x)); }

bool is_positive(const Vec& x) {
  if (auto* v = x.as_sup()) {
    for (const Rat& c : v->coords)
      if (c < 0) return false;
    return true;
  }
  if (auto* q = x.as_seq()) {
    if (q->tail < 0) return false;
    for (const Rat& c : q->prefix)
      if (c < 0) return false;
    return true;
  }
  if (auto* l = x.as_al()) {
    if (l->mass < 0) return false;
    for (const Rat& c : l->atoms)
      if (c < 0) return false;
    return true;
  }
  auto* p = x.as_pair();
  return is_positive(*p->left) && is_positive(*p->right);
}

bool disjoint(const Vec& x, const Vec& y) {
  require(is_positive(x) && is_positive(y), "disjointness test needs x, y >= 0");
  return is_zero(meet(x, y));
}

Rat norm(const ModelSpace& s, const Vec& x) {
  require_conforms(s, x);
  if (auto* f = s.as_finite_sup()) {
    auto* v = x.as_sup();
    Rat best(0);
    for (int i = 0; i < f->dim(); ++i) {
      Rat t = f->dualWeights[i] * abs(v->coords[i]);
      if (t > best) best = t;
    }
    return best;
  }
  if (auto* sl = s.as_seq_lim()) {
    auto* q = x.as_seq();
    Rat best = sl->theta * abs(q->tail);
    Rat tail_abs = abs(q->tail);
    if (tail_abs > best) best = tail_abs;
    for (const Rat& c : q->prefix) {
      Rat t = abs(c);
      if (t > best) best = t;
    }
    return best;
  }
  if (s.as_finite_al()) {
    auto* l = x.as_al();
    Rat total = abs(l->mass);
    for (const Rat& c : l->atoms) total += abs(c);
    return total;
  }
  auto* p = s.as_sum();
  auto* v = x.as_pair();
  return rmax(norm(*p->left, *v->left), norm(*p->right, *v->right));
}

}  // namespace amalg
