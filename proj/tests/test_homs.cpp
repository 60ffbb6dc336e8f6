#include <optional>
#include <vector>

#include "amalg/errors.hpp"
#include "amalg/homs.hpp"
#include "amalg/lattice.hpp"
#include "amalg/space.hpp"
#include "doctest.h"

using namespace amalg;

namespace {

OperatorSpec matrix2(std::vector<Rat> rowMajor, int rows = 2, int cols = 2) {
  MatrixOp m = MatrixOp::zeros(rows, cols);
  m.a = std::move(rowMajor);
  return OperatorSpec::matrix(std::move(m));
}

}  // namespace

TEST_CASE("lattice homomorphism structure") {
  ModelSpace s = ModelSpace::finite_sup({rat(1), rat(1)});
  SUBCASE("permutations and nonnegative single-entry rows pass") {
    CHECK(is_lattice_hom(s, s, matrix2({rat(0), rat(1), rat(1), rat(0)}))
              .isLatticeHom);
    CHECK(is_lattice_hom(s, s, matrix2({rat(2), rat(0), rat(0), rat(0)}))
              .isLatticeHom);
  }
  SUBCASE("two nonzero entries in a row fail with a witness") {
    LatticeHomReport r =
        is_lattice_hom(s, s, matrix2({rat(1), rat(1), rat(0), rat(1)}));
    REQUIRE(!r.isLatticeHom);
    REQUIRE(r.witness.has_value());
    // the witness probe separates T|x| from |Tx|
    OperatorSpec T = matrix2({rat(1), rat(1), rat(0), rat(1)});
    Vec lhs = apply(s, s, T, abs_vec(*r.witness));
    Vec rhs = abs_vec(apply(s, s, T, *r.witness));
    CHECK(!(lhs == rhs));
  }
  SUBCASE("negative entries fail") {
    LatticeHomReport r =
        is_lattice_hom(s, s, matrix2({rat(-1), rat(0), rat(0), rat(1)}));
    REQUIRE(!r.isLatticeHom);
    REQUIRE(r.witness.has_value());
  }
  SUBCASE("index maps and nonnegative multiplications qualify by shape") {
    ModelSpace q = ModelSpace::seq_lim(rat(2));
    IndexMapOp id;
    id.sigma[AtomId{{}, LeafKind::Tail, 0}] = {AtomId{{}, LeafKind::Tail, 0}, rat(1)};
    id.sigma[AtomId{{}, LeafKind::Limit, 0}] = {AtomId{{}, LeafKind::Limit, 0}, rat(1)};
    CHECK(is_lattice_hom(q, q, OperatorSpec::index_map(id)).isLatticeHom);
    CHECK(is_lattice_hom(q, q, OperatorSpec::seq_mul({rat(2)}, rat(1), rat(1)))
              .isLatticeHom);
    CHECK(!is_lattice_hom(q, q, OperatorSpec::seq_mul({rat(-2)}, rat(1), rat(1)))
               .isLatticeHom);
  }
}

TEST_CASE("algebra homomorphisms between weighted products") {
  SUBCASE("the swap is an algebra homomorphism") {
    ModelSpace s = ModelSpace::finite_sup({rat(1), rat(1)});
    OperatorSpec T = matrix2({rat(0), rat(1), rat(1), rat(0)});
    AlgebraHomReport r = is_algebra_hom(s, s, T, unit_weight(s), unit_weight(s));
    CHECK(r.isAlgebraHom);
    CHECK(!r.witness.has_value());
  }
  SUBCASE("the scale must bridge the dual weights") {
    ModelSpace dom = ModelSpace::finite_sup({rat(4), rat(1)});
    ModelSpace cod = ModelSpace::finite_sup({rat(1), rat(1)});
    // row entry a = c_0 / d_0 = 4 makes T multiplicative
    OperatorSpec good = matrix2({rat(4), rat(0), rat(0), rat(0)});
    CHECK(is_algebra_hom(dom, cod, good, unit_weight(dom), unit_weight(cod))
              .isAlgebraHom);
    // the identity scale does not
    OperatorSpec bad = matrix2({rat(1), rat(0), rat(0), rat(0)});
    AlgebraHomReport r =
        is_algebra_hom(dom, cod, bad, unit_weight(dom), unit_weight(cod));
    REQUIRE(!r.isAlgebraHom);
    REQUIRE(r.witness.has_value());
    // replay the failing pair through both products
    Vec left = apply(dom, cod, bad, product(dom, unit_weight(dom),
                                            r.witness->first, r.witness->second));
    Vec right = product(cod, unit_weight(cod),
                        apply(dom, cod, bad, r.witness->first),
                        apply(dom, cod, bad, r.witness->second));
    CHECK(!(left == right));
  }
  SUBCASE("non-unit weights change the verdict") {
    ModelSpace s = ModelSpace::finite_sup({rat(1), rat(1)});
    OperatorSpec twice = matrix2({rat(2), rat(0), rat(0), rat(2)});
    Weight half = Weight::sup({rat(1, 2), rat(1, 2)});
    // x2 intertwines the unit product with the half-weight product
    CHECK(is_algebra_hom(s, s, twice, unit_weight(s), half).isAlgebraHom);
    CHECK(!is_algebra_hom(s, s, twice, unit_weight(s), unit_weight(s))
               .isAlgebraHom);
  }
}

TEST_CASE("unit image idempotency") {
  ModelSpace s = ModelSpace::finite_sup({rat(1), rat(1)});
  CHECK(ball_square_condition(s, s, matrix2({rat(1), rat(0), rat(0), rat(0)})));
  CHECK(ball_square_condition(s, s, matrix2({rat(0), rat(1), rat(1), rat(0)})));
  CHECK(!ball_square_condition(s, s, matrix2({rat(2), rat(0), rat(0), rat(0)})));
  CHECK_THROWS_AS(
      ball_square_condition(s, ModelSpace::seq_lim(rat(1)),
                            matrix2({rat(1), rat(0), rat(0), rat(0)})),
      PreconditionError);
}

TEST_CASE("pullback form of an algebra homomorphism") {
  SUBCASE("row scales recover sources and dual weights") {
    ModelSpace dom = ModelSpace::finite_sup({rat(4), rat(1)});
    ModelSpace cod = ModelSpace::finite_sup({rat(1), rat(1)});
    OperatorSpec T = matrix2({rat(4), rat(0), rat(0), rat(0)});
    CompositionForm f = composition_form(dom, cod, T);
    CHECK(f.source == std::vector<int>{0, -1});
    CHECK(f.coefficient == std::vector<Rat>{rat(4), rat(0)});
    // the form rebuilds the matrix
    OperatorSpec back = composition_matrix(dom, cod, f);
    CHECK(back.as_matrix()->a == T.as_matrix()->a);
  }
  SUBCASE("the swap pulls back to the swap") {
    ModelSpace s = ModelSpace::finite_sup({rat(1), rat(1)});
    CompositionForm f =
        composition_form(s, s, matrix2({rat(0), rat(1), rat(1), rat(0)}));
    CHECK(f.source == std::vector<int>{1, 0});
    CHECK(f.coefficient == std::vector<Rat>{rat(1), rat(1)});
  }
  SUBCASE("rows that miss the weight bridge have no form") {
    ModelSpace s = ModelSpace::finite_sup({rat(1), rat(1)});
    CHECK(!derive_composition_form(s, s, matrix2({rat(2), rat(0), rat(0), rat(1)}))
               .has_value());
    CHECK(!derive_composition_form(s, s, matrix2({rat(1), rat(1), rat(0), rat(0)}))
               .has_value());
    CHECK_THROWS_AS(
        composition_form(s, s, matrix2({rat(2), rat(0), rat(0), rat(1)})),
        PreconditionError);
  }
}

TEST_CASE("the three descriptions agree on an exhaustive grid") {
  // every 2x2 matrix with small entries, over a few dual-weight choices:
  // probe verdict == row analysis == rebuilt matrix
  const std::vector<Rat> entries = {rat(0), rat(1, 2), rat(1), rat(2)};
  const std::vector<Rat> weights = {rat(1), rat(2)};
  long homs = 0, total = 0;
  for (const Rat& c0 : weights)
    for (const Rat& c1 : weights)
      for (const Rat& d0 : weights)
        for (const Rat& d1 : weights) {
          ModelSpace dom = ModelSpace::finite_sup({c0, c1});
          ModelSpace cod = ModelSpace::finite_sup({d0, d1});
          Weight wd = unit_weight(dom);
          Weight wc = unit_weight(cod);
          for (const Rat& a : entries)
            for (const Rat& b : entries)
              for (const Rat& c : entries)
                for (const Rat& d : entries) {
                  OperatorSpec T = matrix2({a, b, c, d});
                  ++total;
                  bool probe =
                      is_lattice_hom(dom, cod, T).isLatticeHom &&
                      is_algebra_hom(dom, cod, T, wd, wc).isAlgebraHom;
                  auto form = derive_composition_form(dom, cod, T);
                  CHECK(probe == form.has_value());
                  if (form) {
                    ++homs;
                    OperatorSpec back = composition_matrix(dom, cod, *form);
                    CHECK(back.as_matrix()->a == T.as_matrix()->a);
                  }
                }
        }
  CHECK(total == 4096);
  CHECK(homs > 0);
}
