#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "amalg/space.hpp"

namespace amalg {

struct Vec;

struct SupVec {
  std::vector<Rat> coords;
};

// Eventually constant sequence: explicit prefix, then `tail` forever.
// Canonical form: the last prefix entry differs from tail.
struct SeqVec {
  std::vector<Rat> prefix;
  Rat tail;
};

struct ALVec {
  std::vector<Rat> atoms;
  Rat mass;  // coefficient of the formal nonatomic band coordinate
};

struct PairVec {
  std::shared_ptr<const Vec> left;
  std::shared_ptr<const Vec> right;
};

struct Vec {
  std::variant<SupVec, SeqVec, ALVec, PairVec> rep;

  static Vec sup(std::vector<Rat> coords);
  // Trims to canonical form.
  static Vec seq(std::vector<Rat> prefix, Rat tail);
  static Vec al(std::vector<Rat> atoms, Rat mass = Rat(0));
  static Vec pair(Vec left, Vec right);

  const SupVec* as_sup() const { return std::get_if<SupVec>(&rep); }
  const SeqVec* as_seq() const { return std::get_if<SeqVec>(&rep); }
  const ALVec* as_al() const { return std::get_if<ALVec>(&rep); }
  const PairVec* as_pair() const { return std::get_if<PairVec>(&rep); }
};

// Structural equality; canonical SeqVec form makes it semantic equality.
bool operator==(const Vec& a, const Vec& b);

// Shape check against a space (dimension match, pair arms, band presence:
// mass must be 0 when the space has no nonatomic band).
bool conforms(const ModelSpace& s, const Vec& x);
void require_conforms(const ModelSpace& s, const Vec& x);

Vec zero_vec(const ModelSpace& s);
bool is_zero(const Vec& x);

std::string vec_str(const Vec& x);

}  // namespace amalg
