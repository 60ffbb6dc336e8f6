#include "amalg/rational.hpp"

#include <cctype>
#include <cstddef>

namespace amalg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Integer literal with optional sign.
std::optional<mpz_class> parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return std::nullopt;
  mpz_class z(std::string(s), 10);
  if (neg) z = -z;
  return z;
}

}  // namespace

std::optional<Rat> parse_rat(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(s.substr(0, slash));
    auto den = parse_int(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    Rat r(*num, *den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    bool neg = false;
    if (!whole.empty() && (whole[0] == '+' || whole[0] == '-')) {
      neg = whole[0] == '-';
      whole.remove_prefix(1);
    }
    if (!all_digits(frac) || (!whole.empty() && !all_digits(whole)))
      return std::nullopt;
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
    mpz_class f(std::string(frac), 10);
    mpz_class den(1);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rat r(w * den + f, den);
    r.canonicalize();
    if (neg) r = -r;
    return r;
  }
  auto z = parse_int(s);
  if (!z) return std::nullopt;
  return Rat(*z);
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rat& r) { return r.get_d(); }

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Rat pow_rat(const Rat& base, unsigned e) {
  Rat acc(1);
  for (unsigned i = 0; i < e; ++i) acc *= base;
  return acc;
}

std::optional<Rat> exact_nth_root(const Rat& r, unsigned n) {
  if (r < 0 || n == 0) return std::nullopt;
  mpz_class num_root, den_root;
  // mpz_root returns nonzero iff the root is exact.
  if (!mpz_root(num_root.get_mpz_t(), r.get_num().get_mpz_t(), n))
    return std::nullopt;
  if (!mpz_root(den_root.get_mpz_t(), r.get_den().get_mpz_t(), n))
    return std::nullopt;
  Rat out(num_root, den_root);
  out.canonicalize();
  return out;
}

}  // namespace amalg
