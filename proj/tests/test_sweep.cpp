#include <vector>

#include "amalg/space.hpp"
#include "amalg/sweep.hpp"
#include "doctest.h"

using namespace amalg;

namespace {

const SweepOptions kSerial{SweepMode::Serial, 0};
const SweepOptions kTwo{SweepMode::Parallel, 2};
const SweepOptions kThree{SweepMode::Parallel, 3};

}  // namespace

TEST_CASE("tensor sweep counts and schedule independence") {
  ModelSpace s = ModelSpace::finite_sup({rat(1), rat(1)});
  std::vector<Rat> grid = {rat(0), rat(1, 2), rat(1)};
  TensorSweepReport serial = tensor_sweep(s, grid, kSerial);
  CHECK(serial.total == 6561);  // 3^8 tensors
  CHECK(serial.accepted == 9);  // diagonal choices only: 3^2
  CHECK(serial.discrepancies.empty());

  TensorSweepReport par = tensor_sweep(s, grid, kTwo);
  CHECK(par.total == serial.total);
  CHECK(par.accepted == serial.accepted);
  CHECK(par.discrepancies == serial.discrepancies);

  // dual weights do not change which tensors are f-algebra products
  ModelSpace w = ModelSpace::finite_sup({rat(1), rat(4)});
  CHECK(tensor_sweep(w, grid, kSerial).accepted == 9);

  // same diagonal rule on the additive side
  ModelSpace al = ModelSpace::finite_al(2, false);
  TensorSweepReport alr = tensor_sweep(al, grid, kThree);
  CHECK(alr.total == 6561);
  CHECK(alr.accepted == 9);
  CHECK(alr.discrepancies.empty());
}

TEST_CASE("homomorphism sweep: the three routes agree") {
  std::vector<Rat> weights = {rat(1), rat(2), rat(4)};
  std::vector<Rat> values = {rat(1, 2), rat(1), rat(2), rat(4)};
  HomSweepReport serial = hom_sweep(2, weights, values, kSerial);
  // dims (1,1),(1,2),(2,1),(2,2): 3^(n+m) weight choices, 5^(n*m) matrices
  CHECK(serial.total == 7524);
  CHECK(serial.algebraHoms == 818);
  CHECK(serial.discrepancies.empty());

  HomSweepReport par = hom_sweep(2, weights, values, kThree);
  CHECK(par.total == serial.total);
  CHECK(par.algebraHoms == serial.algebraHoms);
  CHECK(par.discrepancies == serial.discrepancies);
}

TEST_CASE("random weight batch: predicate vs probe search") {
  SubmultBatchReport serial = submult_random_batch(300, 20260822, kSerial);
  CHECK(serial.total == 300);
  CHECK(serial.discrepancies.empty());
  // the value mix makes both verdicts common
  CHECK(serial.submultiplicative > 0);
  CHECK(serial.submultiplicative < 300);

  SubmultBatchReport par = submult_random_batch(300, 20260822, kTwo);
  CHECK(par.submultiplicative == serial.submultiplicative);
  CHECK(par.discrepancies == serial.discrepancies);

  // a different seed draws a different batch
  SubmultBatchReport other = submult_random_batch(300, 7, kSerial);
  CHECK(other.total == 300);
  CHECK(other.discrepancies.empty());
}

TEST_CASE("random root batch") {
  RootBatchReport serial = root_random_batch(120, 20260822, 1e-12, rat(1, 8), kSerial);
  CHECK(serial.total == 120);
  CHECK(serial.discrepancies.empty());
  CHECK(serial.exactCount > 0);
  CHECK(serial.exactCount < 120);
  CHECK(serial.maxProductResidual <= 1e-12);
  CHECK(serial.maxNormResidual <= 1e-12);

  RootBatchReport par = root_random_batch(120, 20260822, 1e-12, rat(1, 8), kThree);
  CHECK(par.exactCount == serial.exactCount);
  CHECK(par.maxProductResidual == serial.maxProductResidual);
  CHECK(par.maxNormResidual == serial.maxNormResidual);
  CHECK(par.discrepancies == serial.discrepancies);
}

TEST_CASE("random central batch") {
  CentralBatchReport serial = central_random_batch(300, 20260822, kSerial);
  CHECK(serial.total == 300);
  CHECK(serial.discrepancies.empty());
  CHECK(serial.accepted > 0);
  CHECK(serial.accepted < 300);

  CentralBatchReport par = central_random_batch(300, 20260822, kTwo);
  CHECK(par.accepted == serial.accepted);
  CHECK(par.discrepancies == serial.discrepancies);
}
