#pragma once

#include <cstdint>
#include <vector>

#include "amalg/al.hpp"
#include "amalg/homs.hpp"
#include "amalg/products.hpp"

// Exhaustive and randomized verification sweeps. Every sweep runs one
// kernel per item; the serial driver is the reference, and the OpenMP
// driver runs the same kernels into preassigned result slots, so both
// schedules produce byte-identical reports.

namespace amalg {

enum class SweepMode { Serial, Parallel };

struct SweepOptions {
  SweepMode mode = SweepMode::Serial;
  int workers = 0;  // parallel only; 0 picks the OpenMP default
};

// Every |grid|^(n^3) tensor on the space (FiniteSup or atomic FiniteAL):
// the diagonal decision procedure must agree with the axiom verifier, and
// each accepted weight must reproduce its tensor on all basis pairs.
// Items are tensors in row-major digit order (B[0][0][0] fastest).
struct TensorSweepReport {
  long total = 0;
  long accepted = 0;
  std::vector<long> discrepancies;
};

TensorSweepReport tensor_sweep(const ModelSpace& s, const std::vector<Rat>& grid,
                               const SweepOptions& opt = {});

// Every pair of FiniteSup spaces with dimensions up to maxDim and dual
// weights drawn from weightGrid, and every row-structured matrix whose
// rows are zero or place one value from nonzeroValues: the three
// homomorphism routes (algebra-hom probes; lattice-hom and ball-square;
// pullback derivation and reconstruction) must return the same verdict.
struct HomSweepReport {
  long total = 0;
  long algebraHoms = 0;
  std::vector<long> discrepancies;
};

HomSweepReport hom_sweep(int maxDim, const std::vector<Rat>& weightGrid,
                         const std::vector<Rat>& nonzeroValues,
                         const SweepOptions& opt = {});

// Random nonnegative member weights on FiniteSup and SeqLim spaces: the
// norm-bound predicate must agree with the probe-grid violation search,
// and every rejection must come with a concrete violating pair.
struct SubmultBatchReport {
  long total = 0;
  long submultiplicative = 0;
  std::vector<long> discrepancies;
};

SubmultBatchReport submult_random_batch(long count, std::uint64_t seed,
                                        const SweepOptions& opt = {});

// Random positive vectors on FiniteSup spaces: square roots must
// reproduce the input and its norm within tol (exactly when rational),
// and a grid search at the given resolution must find no second root.
struct RootBatchReport {
  long total = 0;
  long exactCount = 0;
  double maxProductResidual = 0.0;
  double maxNormResidual = 0.0;
  std::vector<long> discrepancies;
};

RootBatchReport root_random_batch(long count, std::uint64_t seed, double tol,
                                  const Rat& gridResolution,
                                  const SweepOptions& opt = {});

// Random operator candidates, roughly half of them genuine multiplication
// operators: the central decision must accept exactly those, report
// ||M_h|| = ||h||_inf on acceptance, and respect M_h M_h' = M_{hh'} on
// basis probes.
struct CentralBatchReport {
  long total = 0;
  long accepted = 0;
  std::vector<long> discrepancies;
};

CentralBatchReport central_random_batch(long count, std::uint64_t seed,
                                        const SweepOptions& opt = {});

}  // namespace amalg
