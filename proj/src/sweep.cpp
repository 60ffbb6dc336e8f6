#include "amalg/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <random>

#include "amalg/center.hpp"
#include "amalg/errors.hpp"
#include "amalg/lattice.hpp"

namespace amalg {

namespace {

// Shared driver: the parallel path runs the same kernel into the same
// preassigned slots, so scheduling cannot change any report.
template <typename Kernel>
void run_items(long count, const SweepOptions& opt, const Kernel& kernel) {
  if (opt.mode == SweepMode::Parallel) {
    int threads = opt.workers > 0 ? opt.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (long i = 0; i < count; ++i) kernel(i);
  } else {
    for (long i = 0; i < count; ++i) kernel(i);
  }
}

long checked_power(long base, long exponent, long cap) {
  long out = 1;
  for (long e = 0; e < exponent; ++e) {
    require(out <= cap / base, "sweep too large");
    out *= base;
  }
  return out;
}

Vec basis_vec(const ModelSpace& s, int i) {
  if (auto* f = s.as_finite_sup()) {
    std::vector<Rat> c(static_cast<std::size_t>(f->dim()), Rat(0));
    c[static_cast<std::size_t>(i)] = Rat(1);
    return Vec::sup(std::move(c));
  }
  auto* a = s.as_finite_al();
  std::vector<Rat> c(static_cast<std::size_t>(a->atoms), Rat(0));
  c[static_cast<std::size_t>(i)] = Rat(1);
  return Vec::al(std::move(c), Rat(0));
}

std::uint64_t item_rng_seed(std::uint64_t seed, long item) {
  // splitmix-style scramble: each item gets an independent stream no
  // matter which thread runs it.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(item) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long pick(std::mt19937_64& g, long n) { return static_cast<long>(g() % static_cast<std::uint64_t>(n)); }

}  // namespace

TensorSweepReport tensor_sweep(const ModelSpace& s, const std::vector<Rat>& grid,
                               const SweepOptions& opt) {
  require(!grid.empty(), "grid must be nonempty");
  int n = 0;
  bool al = false;
  if (auto* f = s.as_finite_sup()) {
    n = f->dim();
  } else {
    auto* a = s.as_finite_al();
    require(a != nullptr && !a->nonatomicBand,
            "tensor sweeps run on FiniteSup or purely atomic FiniteAL");
    n = a->atoms;
    al = true;
  }
  long slots = static_cast<long>(n) * n * n;
  long total = checked_power(static_cast<long>(grid.size()), slots, 20'000'000L);
  std::vector<unsigned char> ok(static_cast<std::size_t>(total), 0);
  std::vector<unsigned char> acc(static_cast<std::size_t>(total), 0);

  auto kernel = [&](long item) {
    ProductTensor B = ProductTensor::zeros(n);
    long rest = item;
    for (long p = 0; p < slots; ++p) {
      B.b[static_cast<std::size_t>(p)] = grid[static_cast<std::size_t>(rest % grid.size())];
      rest /= static_cast<long>(grid.size());
    }
    bool accepted = false;
    bool reproduced = true;
    if (al) {
      std::optional<ALWeight> w = al_decide_tensor(s, B);
      accepted = w.has_value();
      if (accepted)
        for (int i = 0; i < n && reproduced; ++i)
          for (int j = 0; j < n && reproduced; ++j) {
            Vec p = al_product(s, *w, basis_vec(s, i), basis_vec(s, j));
            for (int k = 0; k < n; ++k)
              if (p.as_al()->atoms[static_cast<std::size_t>(k)] != B.at(i, j, k))
                reproduced = false;
          }
    } else {
      std::optional<Weight> w = decide_tensor(s, B);
      accepted = w.has_value();
      if (accepted)
        for (int i = 0; i < n && reproduced; ++i)
          for (int j = 0; j < n && reproduced; ++j) {
            Vec p = product(s, *w, basis_vec(s, i), basis_vec(s, j));
            for (int k = 0; k < n; ++k)
              if (p.as_sup()->coords[static_cast<std::size_t>(k)] != B.at(i, j, k))
                reproduced = false;
          }
    }
    bool verified = verify_falgebra_axioms(s, tensor_product_fn(s, B), 4).ok();
    ok[static_cast<std::size_t>(item)] = accepted == verified && reproduced;
    acc[static_cast<std::size_t>(item)] = accepted;
  };
  run_items(total, opt, kernel);

  TensorSweepReport out;
  out.total = total;
  for (long i = 0; i < total; ++i) {
    if (acc[static_cast<std::size_t>(i)]) ++out.accepted;
    if (!ok[static_cast<std::size_t>(i)]) out.discrepancies.push_back(i);
  }
  return out;
}

namespace {

struct HomConfig {
  ModelSpace dom;
  ModelSpace cod;
  long offset = 0;
  long count = 0;
};

std::vector<std::vector<Rat>> weight_tuples(int dim, const std::vector<Rat>& grid) {
  std::vector<std::vector<Rat>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  for (;;) {
    std::vector<Rat> t(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) t[static_cast<std::size_t>(i)] = grid[idx[static_cast<std::size_t>(i)]];
    out.push_back(std::move(t));
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == grid.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

}  // namespace

HomSweepReport hom_sweep(int maxDim, const std::vector<Rat>& weightGrid,
                         const std::vector<Rat>& nonzeroValues,
                         const SweepOptions& opt) {
  require(maxDim >= 1, "dimensions start at 1");
  require(!weightGrid.empty() && !nonzeroValues.empty(), "grids must be nonempty");
  for (const Rat& v : nonzeroValues) require(v != 0, "matrix values must be nonzero");

  std::vector<HomConfig> configs;
  long total = 0;
  for (int n = 1; n <= maxDim; ++n)
    for (int m = 1; m <= maxDim; ++m) {
      long rowOptions = 1 + static_cast<long>(n) * static_cast<long>(nonzeroValues.size());
      long count = checked_power(rowOptions, m, 100'000'000L);
      for (auto& c : weight_tuples(n, weightGrid))
        for (auto& d : weight_tuples(m, weightGrid)) {
          HomConfig cfg{ModelSpace::finite_sup(c), ModelSpace::finite_sup(d),
                        total, count};
          require(total <= 100'000'000L - count, "sweep too large");
          total += count;
          configs.push_back(std::move(cfg));
        }
    }

  std::vector<unsigned char> ok(static_cast<std::size_t>(total), 0);
  std::vector<unsigned char> hom(static_cast<std::size_t>(total), 0);

  auto kernel = [&](long ci) {
    const HomConfig& cfg = configs[static_cast<std::size_t>(ci)];
    int n = cfg.dom.as_finite_sup()->dim();
    int m = cfg.cod.as_finite_sup()->dim();
    long rowOptions = 1 + static_cast<long>(n) * static_cast<long>(nonzeroValues.size());
    Weight wd = unit_weight(cfg.dom);
    Weight wc = unit_weight(cfg.cod);
    for (long item = 0; item < cfg.count; ++item) {
      MatrixOp mat = MatrixOp::zeros(m, n);
      long rest = item;
      for (int k = 0; k < m; ++k) {
        long digit = rest % rowOptions;
        rest /= rowOptions;
        if (digit > 0) {
          long v = (digit - 1) % static_cast<long>(nonzeroValues.size());
          long col = (digit - 1) / static_cast<long>(nonzeroValues.size());
          mat.at(k, static_cast<int>(col)) = nonzeroValues[static_cast<std::size_t>(v)];
        }
      }
      OperatorSpec T = OperatorSpec::matrix(std::move(mat));
      bool routeA = is_algebra_hom(cfg.dom, cfg.cod, T, wd, wc).isAlgebraHom;
      bool routeB = is_lattice_hom(cfg.dom, cfg.cod, T).isLatticeHom &&
                    ball_square_condition(cfg.dom, cfg.cod, T);
      std::optional<CompositionForm> form =
          derive_composition_form(cfg.dom, cfg.cod, T);
      bool routeC =
          form.has_value() &&
          composition_matrix(cfg.dom, cfg.cod, *form).as_matrix()->a ==
              T.as_matrix()->a;
      std::size_t slot = static_cast<std::size_t>(cfg.offset + item);
      ok[slot] = routeA == routeB && routeB == routeC;
      hom[slot] = routeA;
    }
  };
  run_items(static_cast<long>(configs.size()), opt, kernel);

  HomSweepReport out;
  out.total = total;
  for (long i = 0; i < total; ++i) {
    if (hom[static_cast<std::size_t>(i)]) ++out.algebraHoms;
    if (!ok[static_cast<std::size_t>(i)]) out.discrepancies.push_back(i);
  }
  return out;
}

namespace {

const long kWeightDualGrid[] = {1, 2, 4};

Rat random_rat(std::mt19937_64& g, long maxNum, long maxDen) {
  return rat(pick(g, maxNum + 1), pick(g, maxDen) + 1);
}

ModelSpace random_sup_space(std::mt19937_64& g, int minDim, int maxDim) {
  int n = minDim + static_cast<int>(pick(g, maxDim - minDim + 1));
  std::vector<Rat> c(static_cast<std::size_t>(n));
  for (auto& v : c) v = Rat(kWeightDualGrid[pick(g, 3)]);
  return ModelSpace::finite_sup(std::move(c));
}

}  // namespace

SubmultBatchReport submult_random_batch(long count, std::uint64_t seed,
                                        const SweepOptions& opt) {
  require(count >= 0, "count must be >= 0");
  std::vector<unsigned char> ok(static_cast<std::size_t>(count), 0);
  std::vector<unsigned char> sub(static_cast<std::size_t>(count), 0);

  auto kernel = [&](long item) {
    std::mt19937_64 g(item_rng_seed(seed, item));
    bool onSeq = pick(g, 2) == 0;
    ModelSpace s = onSeq ? ModelSpace::seq_lim(Rat(1 + pick(g, 2)))
                         : random_sup_space(g, 1, 3);
    Weight w = [&] {
      if (!onSeq) {
        std::vector<Rat> v(static_cast<std::size_t>(s.as_finite_sup()->dim()));
        for (auto& x : v) x = random_rat(g, 8, 4);
        return Weight::sup(std::move(v));
      }
      std::vector<Rat> prefix(static_cast<std::size_t>(pick(g, 3)));
      for (auto& x : prefix) x = random_rat(g, 8, 4);
      Rat limit = random_rat(g, 8, 4);
      Rat tail = s.as_seq_lim()->theta * limit;  // member weight
      return Weight::seq(std::move(prefix), std::move(tail), std::move(limit));
    }();
    SubmultReport pred = is_submultiplicative(s, w);
    std::optional<NormViolation> hit = submult_probe_search(s, w);
    bool good = pred.submultiplicative == !hit.has_value();
    if (hit) {
      // Replay the violating pair through the product itself.
      Vec p = product(s, w, hit->x, hit->y);
      Rat bound = norm(s, hit->x) * norm(s, hit->y);
      good = good && norm(s, p) == hit->productNorm &&
             bound == hit->normBound && hit->productNorm > hit->normBound;
    }
    ok[static_cast<std::size_t>(item)] = good;
    sub[static_cast<std::size_t>(item)] = pred.submultiplicative;
  };
  run_items(count, opt, kernel);

  SubmultBatchReport out;
  out.total = count;
  for (long i = 0; i < count; ++i) {
    if (sub[static_cast<std::size_t>(i)]) ++out.submultiplicative;
    if (!ok[static_cast<std::size_t>(i)]) out.discrepancies.push_back(i);
  }
  return out;
}

RootBatchReport root_random_batch(long count, std::uint64_t seed, double tol,
                                  const Rat& gridResolution,
                                  const SweepOptions& opt) {
  require(count >= 0, "count must be >= 0");
  require(gridResolution > 0, "resolution must be > 0");
  std::vector<unsigned char> ok(static_cast<std::size_t>(count), 0);
  std::vector<unsigned char> exact(static_cast<std::size_t>(count), 0);
  std::vector<double> prodRes(static_cast<std::size_t>(count), 0.0);
  std::vector<double> normRes(static_cast<std::size_t>(count), 0.0);

  auto kernel = [&](long item) {
    std::mt19937_64 g(item_rng_seed(seed, item));
    ModelSpace s = random_sup_space(g, 2, 3);
    auto* f = s.as_finite_sup();
    int n = f->dim();
    bool allSquare = true;
    std::vector<Rat> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (pick(g, 2) == 0) {
        Rat t = rat(1 + pick(g, 6), 1 + pick(g, 3));
        xs[static_cast<std::size_t>(i)] = Rat(f->dualWeights[i] * t * t);
      } else {
        xs[static_cast<std::size_t>(i)] = rat(1 + pick(g, 12), 1 + pick(g, 4));
        Rat radicand = xs[static_cast<std::size_t>(i)] / f->dualWeights[i];
        if (!exact_nth_root(radicand, 2)) allSquare = false;
      }
    }
    Vec x = Vec::sup(xs);
    RootResult r = nth_root(s, x, 2);
    RootCheck chk = root_check(s, x, r, 2);
    bool good = r.exact.has_value() == allSquare;
    good = good && chk.productResidual <= tol && chk.normResidual <= tol;
    if (r.exact)
      good = good && chk.productResidual == 0.0 && chk.normResidual == 0.0;
    // Grid uniqueness: c_i t^2 is strictly increasing in t >= 0, so each
    // coordinate admits at most one grid solution; verify and, when the
    // exact root sits on the grid, confirm the solution is that root.
    for (int i = 0; i < n && good; ++i) {
      std::vector<Rat> sols;
      for (Rat t(0);; t += gridResolution) {
        Rat val = f->dualWeights[i] * t * t;
        if (val > xs[static_cast<std::size_t>(i)]) break;
        if (val == xs[static_cast<std::size_t>(i)]) sols.push_back(t);
      }
      if (sols.size() > 1) good = false;
      if (r.exact && !sols.empty() &&
          sols.front() != r.exact->as_sup()->coords[static_cast<std::size_t>(i)])
        good = false;
    }
    ok[static_cast<std::size_t>(item)] = good;
    exact[static_cast<std::size_t>(item)] = r.exact.has_value();
    prodRes[static_cast<std::size_t>(item)] = chk.productResidual;
    normRes[static_cast<std::size_t>(item)] = chk.normResidual;
  };
  run_items(count, opt, kernel);

  RootBatchReport out;
  out.total = count;
  for (long i = 0; i < count; ++i) {
    if (exact[static_cast<std::size_t>(i)]) ++out.exactCount;
    out.maxProductResidual = std::max(out.maxProductResidual, prodRes[static_cast<std::size_t>(i)]);
    out.maxNormResidual = std::max(out.maxNormResidual, normRes[static_cast<std::size_t>(i)]);
    if (!ok[static_cast<std::size_t>(i)]) out.discrepancies.push_back(i);
  }
  return out;
}

CentralBatchReport central_random_batch(long count, std::uint64_t seed,
                                        const SweepOptions& opt) {
  require(count >= 0, "count must be >= 0");
  std::vector<unsigned char> ok(static_cast<std::size_t>(count), 0);
  std::vector<unsigned char> acc(static_cast<std::size_t>(count), 0);

  auto kernel = [&](long item) {
    std::mt19937_64 g(item_rng_seed(seed, item));
    bool onSeq = pick(g, 2) == 0;
    ModelSpace s = onSeq ? ModelSpace::seq_lim(Rat(1 + pick(g, 2)))
                         : random_sup_space(g, 1, 3);
    auto signedRat = [&] {
      Rat v = random_rat(g, 6, 3);
      return pick(g, 2) == 0 ? Rat(-v) : v;
    };
    bool expectMult = true;
    OperatorSpec T = [&]() -> OperatorSpec {
      if (!onSeq) {
        int n = s.as_finite_sup()->dim();
        bool useMatrix = pick(g, 2) == 0;
        expectMult = n == 1 || pick(g, 2) == 0;
        if (useMatrix) {
          MatrixOp m = MatrixOp::zeros(n, n);
          for (int i = 0; i < n; ++i) m.at(i, i) = signedRat();
          if (!expectMult) {
            int k = static_cast<int>(pick(g, n));
            int i = static_cast<int>((k + 1 + pick(g, n - 1)) % n);
            m.at(k, i) = rat(1 + pick(g, 4), 1 + pick(g, 2));
          }
          return OperatorSpec::matrix(std::move(m));
        }
        std::map<AtomId, IndexMapEntry> sigma;
        for (int k = 0; k < n; ++k) {
          int src = expectMult ? k : static_cast<int>((k + 1) % n);
          sigma[AtomId{{}, LeafKind::Coord, k}] =
              IndexMapEntry{AtomId{{}, LeafKind::Coord, src}, random_rat(g, 6, 3)};
        }
        if (!expectMult) {
          // Self-sourced zero scales would still be central; pin one
          // genuinely off-diagonal read.
          sigma[AtomId{{}, LeafKind::Coord, 0}].scale = Rat(1);
        }
        return OperatorSpec::index_map(IndexMapOp{std::move(sigma), 0});
      }
      bool useSeqMul = pick(g, 2) == 0;
      expectMult = pick(g, 2) == 0;
      if (useSeqMul) {
        std::vector<Rat> prefix(static_cast<std::size_t>(pick(g, 3)));
        for (auto& v : prefix) v = signedRat();
        Rat tail = signedRat();
        Rat limit = expectMult ? tail : Rat(tail + 1);
        return OperatorSpec::seq_mul(std::move(prefix), std::move(tail),
                                     std::move(limit));
      }
      int len = 1 + static_cast<int>(pick(g, 2));
      std::map<AtomId, IndexMapEntry> sigma;
      for (int j = 0; j < len; ++j) {
        int src = expectMult ? j : j + 1;
        sigma[AtomId{{}, LeafKind::Coord, j}] =
            IndexMapEntry{AtomId{{}, LeafKind::Coord, src}, random_rat(g, 6, 3)};
      }
      if (!expectMult) sigma[AtomId{{}, LeafKind::Coord, 0}].scale = Rat(1);
      Rat tailScale = random_rat(g, 6, 3);
      sigma[AtomId{{}, LeafKind::Tail, 0}] =
          IndexMapEntry{AtomId{{}, LeafKind::Tail, 0}, tailScale};
      sigma[AtomId{{}, LeafKind::Limit, 0}] =
          IndexMapEntry{AtomId{{}, LeafKind::Limit, 0}, tailScale};
      return OperatorSpec::index_map(IndexMapOp{std::move(sigma), len});
    }();

    CentralDecision d = decide_central(s, T);
    bool good = d.symbol.has_value() == expectMult;
    if (d.symbol) {
      good = good && d.opNorm.has_value() &&
             *d.opNorm == symbol_sup_abs(*d.symbol);
      // Composites of multiplications multiply the symbols.
      CentralSymbol other = [&] {
        if (auto* v = d.symbol->as_sup()) {
          std::vector<Rat> vals(v->values.size());
          for (auto& x : vals) x = signedRat();
          return CentralSymbol::sup(std::move(vals));
        }
        std::vector<Rat> prefix(d.symbol->as_seq()->prefix.size());
        for (auto& x : prefix) x = signedRat();
        return CentralSymbol::seq(std::move(prefix), signedRat());
      }();
      OperatorSpec M = mult_operator(s, *d.symbol);
      OperatorSpec M2 = mult_operator(s, other);
      OperatorSpec M12 = mult_operator(s, symbol_mul(*d.symbol, other));
      std::vector<Vec> probes;
      if (auto* f = s.as_finite_sup()) {
        for (int i = 0; i < f->dim(); ++i) probes.push_back(basis_vec(s, i));
      } else {
        for (int j = 0; j < 4; ++j) {
          std::vector<Rat> p(static_cast<std::size_t>(j) + 1, Rat(0));
          p.back() = Rat(1);
          probes.push_back(Vec::seq(std::move(p), Rat(0)));
        }
        probes.push_back(Vec::seq({}, Rat(1)));
      }
      for (const Vec& p : probes)
        if (!(apply(s, s, M, apply(s, s, M2, p)) == apply(s, s, M12, p)))
          good = false;
    }
    ok[static_cast<std::size_t>(item)] = good;
    acc[static_cast<std::size_t>(item)] = d.symbol.has_value();
  };
  run_items(count, opt, kernel);

  CentralBatchReport out;
  out.total = count;
  for (long i = 0; i < count; ++i) {
    if (acc[static_cast<std::size_t>(i)]) ++out.accepted;
    if (!ok[static_cast<std::size_t>(i)]) out.discrepancies.push_back(i);
  }
  return out;
}

}  // namespace amalg
