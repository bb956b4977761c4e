// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits non-zero if any criterion fails. Run it through ctest
// or directly from the build tree: ./tests/acceptance

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "f3r/bench.hpp"
#include "f3r/cg.hpp"
#include "f3r/costmodel.hpp"
#include "f3r/fgmres.hpp"
#include "f3r/nesting.hpp"
#include "f3r/richardson.hpp"
#include "f3r/rng.hpp"
#include "f3r/scaling.hpp"
#include "f3r/stencil.hpp"

#include "support/common.hpp"
#include "support/dense.hpp"
#include "support/half_reference.hpp"
#include "support/textbook_cg.hpp"

namespace {

using f3r::DenseVector;
using f3r::Precision;
using f3r::PrecisionReplicas;
using f3r::SparseCsr;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  }
};

// Outermost residual histories gathered from every composed run in this
// suite, together with the outermost cycle length; used by criterion 7.
std::vector<std::pair<std::vector<double>, int>> g_histories;

PrecisionReplicas scaled_replicas(const std::string& name) {
  return f3r::make_replicas(f3r::diagonal_scale(f3r::generate_stencil(f3r::parse_stencil_name(name))).matrix);
}

struct F3rRun {
  f3r::ConvergenceReport report;
  double wall_seconds = 0.0;
};

F3rRun run_f3r(const PrecisionReplicas& reps, f3r::F3rMode mode, std::size_t blocks, bool symmetric,
               std::uint64_t seed, int m1 = 100) {
  f3r::IluConfig ilu;
  ilu.nblocks = blocks;
  ilu.alpha = 1.0;
  ilu.symmetric = symmetric;
  ilu.apply_precision = mode == f3r::F3rMode::FP64   ? Precision::P64
                        : mode == f3r::F3rMode::FP32 ? Precision::P32
                                                     : Precision::P16;
  const auto m = f3r::BlockJacobiIlu0::factorize(reps.a64, ilu);
  f3r::F3rConfig cfg;
  cfg.mode = mode;
  cfg.m1 = m1;
  auto solver = f3r::build_f3r(cfg, reps, m);
  const DenseVector b = f3r::random_rhs(reps.a64.rows(), seed);
  const auto t0 = std::chrono::steady_clock::now();
  auto run = solver.run(b);
  F3rRun out;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_histories.push_back({run.report.residual_history, cfg.m1});
  out.report = std::move(run.report);
  return out;
}

// ---------------------------------------------------------------------------

void criterion_1(Check& c) {
  // fp64-F3R defaults on generated hpcg_5_5_5 with IC(0), 4 blocks, alpha 1
  const PrecisionReplicas reps = scaled_replicas("hpcg_5_5_5");
  c.require(reps.a64.rows() == 32768, "n must be 32768");
  const F3rRun run = run_f3r(reps, f3r::F3rMode::FP64, 4, true, 1);
  c.require(run.report.converged, "fp64-F3R did not converge");
  c.require(run.report.outer_iterations <= 300, "outer iteration cap exceeded");
  c.require(run.report.final_true_residual < 1e-8,
            "true residual " + std::to_string(run.report.final_true_residual));
  c.require(run.wall_seconds < 60.0, "runtime " + std::to_string(run.wall_seconds) + "s exceeds 60s");
}

void criterion_2(Check& c) {
  // invocation counts of fp16/fp32 within 15% of fp64; block count follows
  // the paper's block-per-thread setup (112)
  for (const std::string name : {"hpcg_5_5_5", "hpgmp_5_5_5"}) {
    const PrecisionReplicas reps = scaled_replicas(name);
    const bool symmetric = name == "hpcg_5_5_5";
    std::map<std::string, std::uint64_t> counts;
    for (auto [label, mode] : std::initializer_list<std::pair<const char*, f3r::F3rMode>>{
             {"fp64", f3r::F3rMode::FP64}, {"fp32", f3r::F3rMode::FP32}, {"fp16", f3r::F3rMode::FP16}}) {
      const F3rRun run = run_f3r(reps, mode, 112, symmetric, 1);
      c.require(run.report.converged, name + ": " + label + "-F3R did not converge");
      counts[label] = run.report.precond_invocations;
    }
    const auto base = static_cast<double>(counts["fp64"]);
    for (const char* label : {"fp32", "fp16"}) {
      const double diff = std::abs(static_cast<double>(counts[label]) - base);
      c.require(diff <= 0.15 * base, name + ": " + label + " count " + std::to_string(counts[label]) +
                                         " deviates more than 15% from " + std::to_string(counts["fp64"]));
    }
  }
}

void criterion_3(Check& c) {
  const auto table = f3r::advise_split({45.0, 45.0, 64.0}, true);
  for (const auto& row : table) {
    if (row.inner == f3r::InnerKind::Fgmres) {
      c.require(row.m_outer == 10, "top nested-FGMRES split is m_outer=" + std::to_string(row.m_outer));
      break;
    }
  }
  const auto only_f = f3r::advise_split({45.0, 45.0, 64.0}, false);
  c.require(!only_f.empty() && only_f.front().m_outer == 10, "FGMRES-only ranking top is not 10");
}

void criterion_4(Check& c) {
  // local optimality of omega'_1 on 100 random SPD systems, plus the exact
  // cumulative-average semantics of the weight update
  class DenseOp final : public f3r::LinearOperator {
   public:
    explicit DenseOp(const SparseCsr& a) : a_(&a) {}
    std::size_t size() const override { return a_->rows(); }
    void multiply(const DenseVector& x, DenseVector& y) const override { f3r::spmv(*a_, x, y); }
    void precondition(const DenseVector& v, DenseVector& z) override { f3r::copy_into(v, z); }

   private:
    const SparseCsr* a_;
  };

  const std::size_t n = 50;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const dense::Matrix ad = testutil::random_spd(n, 1000 + trial);
    const SparseCsr a = testutil::csr_from_dense(ad);
    DenseOp op(a);
    f3r::RichardsonState state(1, 1);
    state.record_updates = true;
    const std::vector<double> vd = testutil::random_vector(n, 500 + trial);
    DenseVector v(vd);
    DenseVector z(n, Precision::P64);
    f3r::richardson_apply(op, v, state, z);
    if (state.update_log.empty()) {
      c.require(false, "no weight was computed");
      return;
    }
    const double omega_prime = state.update_log[0];
    const std::vector<double> av = dense::matvec(ad, vd);
    const auto residual_at = [&](double w) {
      std::vector<double> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = vd[i] - w * av[i];
      return dense::norm(r);
    };
    double grid_best = 1e300;
    for (int g = 0; g < 1000; ++g) {
      grid_best = std::min(grid_best, residual_at(-2.0 + 4.0 * static_cast<double>(g) / 999.0));
    }
    c.require(residual_at(omega_prime) <= grid_best + 1e-10,
              "omega' " + std::to_string(omega_prime) + " loses to the grid on trial " + std::to_string(trial));
  }

  // mean semantics: k updates on one operator with changing right-hand sides
  const dense::Matrix ad = testutil::random_spd(n, 4242);
  const SparseCsr a = testutil::csr_from_dense(ad);
  DenseOp op(a);
  f3r::RichardsonState state(1, 1);
  state.record_updates = true;
  const int k = 9;
  for (int i = 0; i < k; ++i) {
    DenseVector v(testutil::random_vector(n, 7000 + static_cast<std::uint64_t>(i)));
    DenseVector z(n, Precision::P64);
    f3r::richardson_apply(op, v, state, z);
  }
  double mean = 0.0;
  for (double w : state.update_log) mean += w;
  mean /= static_cast<double>(state.update_log.size());
  c.require(state.update_log.size() == k, "expected one update per call");
  c.require(std::abs(state.omegas[0] - mean) <= 1e-12,
            "stored weight is not the mean of the computed values");
}

void criterion_5(Check& c) {
  class IdentityPrecondOp final : public f3r::LinearOperator {
   public:
    explicit IdentityPrecondOp(const SparseCsr& a) : a_(&a) {}
    std::size_t size() const override { return a_->rows(); }
    void multiply(const DenseVector& x, DenseVector& y) const override { f3r::spmv(*a_, x, y); }
    void precondition(const DenseVector& v, DenseVector& z) override { f3r::copy_into(v, z); }

   private:
    const SparseCsr* a_;
  };

  const std::size_t n = 20;
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const dense::Matrix ad = testutil::random_well_conditioned(n, 90 + trial);
    const SparseCsr a = testutil::csr_from_dense(ad);
    const std::vector<double> bd = testutil::random_vector(n, 40 + trial);
    const double bnorm = dense::norm(bd);

    const std::vector<double> oracle = dense::gmres_residual_history(ad, bd, static_cast<int>(n));
    IdentityPrecondOp op(a);
    DenseVector b(bd);
    DenseVector x(n, Precision::P64);
    const auto res = f3r::fgmres_cycle(op, b, x, static_cast<int>(n), std::nullopt, true);
    if (res.estimates.size() < oracle.size()) {
      c.require(false, "history shorter than the oracle's");
      return;
    }
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      c.require(std::abs(res.estimates[j] - oracle[j]) <= 1e-8 * bnorm,
                "step " + std::to_string(j) + ": estimate " + std::to_string(res.estimates[j]) +
                    " vs oracle " + std::to_string(oracle[j]));
    }

    // Givens estimate vs explicitly recomputed residual at several prefixes
    for (int steps : {1, 5, 13, 20}) {
      IdentityPrecondOp op2(a);
      DenseVector b2(bd);
      DenseVector x2(n, Precision::P64);
      const auto prefix = f3r::fgmres_cycle(op2, b2, x2, steps, std::nullopt, true);
      std::vector<double> xd(n);
      for (std::size_t i = 0; i < n; ++i) xd[i] = x2.at(i);
      const std::vector<double> ax = dense::matvec(ad, xd);
      std::vector<double> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = bd[i] - ax[i];
      c.require(std::abs(prefix.residual_norm - dense::norm(r)) <= 1e-8 * bnorm,
                "prefix " + std::to_string(steps) + ": Givens estimate deviates from the true residual");
    }
  }
}

void criterion_6(Check& c) {
  const PrecisionReplicas reps = scaled_replicas("hpcg_4_4_4");
  const F3rRun run = run_f3r(reps, f3r::F3rMode::FP64, 4, true, 1);
  c.require(run.report.converged, "fp64-F3R did not converge on hpcg_4_4_4");
  const auto& it = run.report.level_iterations;
  c.require(it.size() == 4, "expected four levels");
  if (it.size() == 4) {
    c.require(it[1] == 8 * it[0], "level-2/level-1 ratio is not m2");
    c.require(it[2] == 4 * it[1], "level-3/level-2 ratio is not m3");
    c.require(it[3] == 2 * it[2], "level-4/level-3 ratio is not m4");
    c.require(run.report.precond_invocations == it[3], "primary count must equal innermost iterations");
  }
}

void criterion_7(Check& c) {
  c.require(!g_histories.empty(), "no composed runs were recorded");
  for (const auto& [history, m1] : g_histories) {
    for (std::size_t i = 2; i < history.size(); ++i) {
      // iteration i-1 -> i within one outermost cycle; cycle boundaries are
      // multiples of m1 where the estimate re-seeds from a true residual
      if (static_cast<int>((i - 1)) % m1 == 0) continue;
      c.require(history[i] <= history[i - 1],
                "estimate rose at outer iteration " + std::to_string(i) + " (" +
                    std::to_string(history[i - 1]) + " -> " + std::to_string(history[i]) + ")");
    }
  }
}

void criterion_8(Check& c) {
  const PrecisionReplicas reps = scaled_replicas("hpcg_5_5_5");
  const auto m = f3r::BlockJacobiIlu0::factorize(reps.a64, {4, 1.0, true, Precision::P64});
  const DenseVector b = f3r::random_rhs(reps.a64.rows(), 1);

  const auto rep = f3r::cg_solve(reps.a64, m, b);
  c.require(rep.converged, "preconditioned CG did not converge");

  std::vector<double> bd(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) bd[i] = b.at(i);
  const auto oracle = textbook::pcg(
      reps.a64.rows(), reps.a64.row_ptr(), reps.a64.col_idx(), reps.a64.values_as<double>(),
      [&](const std::vector<double>& r, std::vector<double>& z) {
        DenseVector rv(r);
        DenseVector zv(r.size(), Precision::P64);
        m.apply(rv, zv);
        for (std::size_t i = 0; i < r.size(); ++i) z[i] = zv.at(i);
      },
      bd, 1e-8, 19200);
  c.require(oracle.converged, "textbook CG oracle did not converge");
  const std::uint64_t a = rep.precond_invocations, o = oracle.precond_applies;
  c.require((a > o ? a - o : o - a) <= 1,
            "CG counts differ: " + std::to_string(a) + " vs oracle " + std::to_string(o));

  // BiCGStab on the non-symmetric stencil: exactly two applications per iteration
  const PrecisionReplicas nsym = scaled_replicas("hpgmp_4_4_4");
  const auto milu = f3r::BlockJacobiIlu0::factorize(nsym.a64, {4, 1.0, false, Precision::P64});
  const auto brep = f3r::bicgstab_solve(nsym.a64, milu, f3r::random_rhs(nsym.a64.rows(), 1));
  c.require(brep.converged, "BiCGStab did not converge");
  c.require(brep.precond_invocations == 2 * brep.outer_iterations,
            "BiCGStab must count two preconditioner invocations per iteration");
}

void criterion_9(Check& c) {
  using f3r::Half;
  // decoding matches the field-formula reference on every pattern
  for (std::uint32_t bits = 0; bits <= 0xffffu; ++bits) {
    const auto h = static_cast<std::uint16_t>(bits);
    const double mine = static_cast<double>(static_cast<float>(Half::from_bits(h)));
    const double ref = halfref::decode(h);
    if (std::isnan(ref)) {
      c.require(std::isnan(mine), "NaN pattern decoded as a number");
    } else {
      c.require(mine == ref, "decode mismatch at pattern " + std::to_string(bits));
    }
    if (halfref::is_finite_pattern(h)) {
      c.require(Half(static_cast<float>(Half::from_bits(h))).bits() == h,
                "round trip broke pattern " + std::to_string(bits));
      c.require(Half(static_cast<double>(static_cast<float>(Half::from_bits(h)))).bits() == h,
                "double round trip broke pattern " + std::to_string(bits));
    }
    if (!c.ok) return;
  }
  // rounding behavior across every adjacent pair (ties must go to even)
  for (std::uint32_t bits = 0; bits + 1 < 0x7c00u; ++bits) {
    const double lo = halfref::decode(static_cast<std::uint16_t>(bits));
    const double hi = halfref::decode(static_cast<std::uint16_t>(bits + 1));
    const double mid = lo + (hi - lo) / 2.0;
    const std::uint16_t even = (bits & 1u) == 0 ? static_cast<std::uint16_t>(bits)
                                                : static_cast<std::uint16_t>(bits + 1);
    c.require(Half(mid).bits() == even, "tie at pattern " + std::to_string(bits) + " not rounded to even");
    c.require(Half(-mid).bits() == (0x8000u | even), "negative tie mishandled");
    if (!c.ok) return;
  }
  // random cross-check of double demotion against the table search
  f3r::SplitMix64 rng(99);
  for (int i = 0; i < 50000; ++i) {
    const double mag = std::ldexp(1.0 + rng.next_unit(), static_cast<int>(rng.next() % 48) - 30);
    const double x = (rng.next() & 1) ? mag : -mag;
    if (Half(x).bits() != halfref::nearest(x)) {
      c.require(false, "demotion mismatch at x = " + std::to_string(x));
      return;
    }
  }
  c.require(Half(65520.0).bits() == 0x7c00u, "65520 must overflow to infinity");
  c.require(Half(65519.9999).bits() == 0x7bffu, "just under 65520 must stay finite");
}

void criterion_10(Check& c) {
  const PrecisionReplicas reps = scaled_replicas("hpcg_4_4_4");
  const std::vector<std::pair<std::string, std::string>> variants = {
      {"F2", "F100:f64/f64 > F64:f32/f32 > ic0(blocks=4,alpha=1.0,prec=f16)"},
      {"fp16-F2", "F100:f64/f64 > F64:f16/f16 > ic0(blocks=4,alpha=1.0,prec=f16)"},
      {"F3", "F100:f64/f64 > F8:f32/f32 > F8:f16/f32 > ic0(blocks=4,alpha=1.0,prec=f16)"},
      {"fp16-F3", "F100:f64/f64 > F8:f32/f32 > F8:f16/f16 > ic0(blocks=4,alpha=1.0,prec=f16)"},
      {"F4", "F100:f64/f64 > F8:f32/f32 > F4:f16/f32 > F2:f16/f16 > ic0(blocks=4,alpha=1.0,prec=f16)"},
  };
  const DenseVector b = f3r::random_rhs(reps.a64.rows(), 1);
  for (const auto& [name, text] : variants) {
    try {
      const f3r::SolverSpec spec = f3r::parse_solver_spec(text);
      f3r::IluConfig ilu;
      ilu.nblocks = *spec.precond->blocks;
      ilu.alpha = *spec.precond->alpha;
      ilu.symmetric = spec.precond->kind == f3r::PrecondKind::Ic0;
      ilu.apply_precision = *spec.precond->precision;
      const auto m = f3r::BlockJacobiIlu0::factorize(reps.a64, ilu);
      auto solver = f3r::build(spec, reps, m);
      f3r::RunOptions opts;
      opts.max_outer_total = 100;  // graceful capping is the acceptance target
      auto run = solver.run(b, opts);
      const auto& rep = run.report;
      g_histories.push_back({rep.residual_history, 100});
      c.require(rep.residual_history.size() == rep.outer_iterations + 1,
                name + ": malformed residual history");
      if (rep.converged) {
        c.require(rep.final_true_residual < 1e-8, name + ": converged flag without a converged residual");
      } else {
        c.require(!rep.flag.empty(), name + ": non-convergence must carry a flag");
      }
    } catch (const std::exception& e) {
      c.require(false, name + ": exception " + e.what());
    }
  }
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    std::function<void(Check&)> fn;
  };
  const std::vector<Entry> entries = {
      {1, "fp64-F3R convergence protocol on hpcg_5_5_5", criterion_1},
      {2, "precision robustness: fp32/fp16 counts within 15% of fp64", criterion_2},
      {3, "cost-model optimum m_outer = 10 at ca = 45, m = 64", criterion_3},
      {4, "Richardson weights: grid-verified local optimality and exact averaging", criterion_4},
      {5, "FGMRES matches the dense Arnoldi + least-squares oracle", criterion_5},
      {6, "nesting counters multiply exactly by m2, m3, m4", criterion_6},
      {7, "outermost residual estimates never increase within a cycle", criterion_7},
      {8, "reference solvers: CG count parity and BiCGStab double counting", criterion_8},
      {9, "binary16 conversions bit-exact against the exhaustive reference", criterion_9},
      {10, "Table-4 depth variants run from spec strings alone", criterion_10},
  };

  // criterion 7 audits the histories the other runs collect, so it executes last
  const int order[] = {1, 2, 3, 4, 5, 6, 8, 9, 10, 7};
  std::map<int, Check> results;
  for (int number : order) {
    const auto& e = entries[static_cast<std::size_t>(number - 1)];
    std::cerr << "running criterion " << e.number << "...\n";
    Check c;
    try {
      e.fn(c);
    } catch (const std::exception& ex) {
      c.require(false, std::string("exception: ") + ex.what());
    }
    results[number] = std::move(c);
  }

  int failures = 0;
  for (const auto& entry : entries) {
    const auto* e = &entry;
    const Check& c = results[e->number];
    if (c.ok) {
      std::printf("[PASS] criterion %2d: %s\n", e->number, e->title);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %2d: %s -- %s\n", e->number, e->title, c.detail.c_str());
    }
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
