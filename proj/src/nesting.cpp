// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/nesting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "f3r/fgmres.hpp"
#include "f3r/operator.hpp"
#include "f3r/richardson.hpp"

namespace f3r {

namespace {

struct LevelPrecisions {
  Precision matrix;
  Precision vectors;
};

LevelPrecisions precisions_of(const LevelSpec& level) {
  if (const auto* f = std::get_if<FgmresLevelSpec>(&level)) return {f->matrix_precision, f->vector_precision};
  const auto& r = std::get<RichardsonLevelSpec>(level);
  return {r.precision, r.precision};
}

int iterations_of(const LevelSpec& level) {
  if (const auto* f = std::get_if<FgmresLevelSpec>(&level)) return f->m;
  return std::get<RichardsonLevelSpec>(level).m;
}

/// A solver run to completion as its parent's preconditioning action.
class InnerSolver {
 public:
  virtual ~InnerSolver() = default;
  virtual void solve(const DenseVector& rhs, DenseVector& out) = 0;
  /// Storage precision of this solver's own vectors; nullopt for the primary
  /// preconditioner, which handles mixed inputs itself.
  virtual std::optional<Precision> vector_precision() const = 0;
  virtual void reset_state() {}
  virtual RichardsonState* richardson_state() { return nullptr; }
};

class LevelOperator final : public LinearOperator {
 public:
  LevelOperator(const SparseCsr& a, InnerSolver& inner) : a_(&a), inner_(&inner) {}

  std::size_t size() const override { return a_->rows(); }
  void multiply(const DenseVector& x, DenseVector& y) const override { spmv(*a_, x, y); }

  void precondition(const DenseVector& v, DenseVector& z) override {
    const auto child_prec = inner_->vector_precision();
    if (!child_prec || *child_prec == v.precision()) {
      inner_->solve(v, z);
      return;
    }
    // demote once on entry, promote once on exit
    DenseVector down = converted(v, *child_prec);
    DenseVector out(v.size(), *child_prec);
    inner_->solve(down, out);
    copy_into(out, z);
  }

 private:
  const SparseCsr* a_;
  InnerSolver* inner_;
};

class PrimarySolver final : public InnerSolver {
 public:
  PrimarySolver(const Preconditioner& m, NestingCounters& counters) : m_(&m), counters_(&counters) {}

  void solve(const DenseVector& rhs, DenseVector& out) override {
    ++counters_->precond_invocations;
    m_->apply(rhs, out);
  }
  std::optional<Precision> vector_precision() const override { return std::nullopt; }

 private:
  const Preconditioner* m_;
  NestingCounters* counters_;
};

class FgmresInner final : public InnerSolver {
 public:
  FgmresInner(const FgmresLevelSpec& spec, const SparseCsr& a, std::unique_ptr<InnerSolver> child,
              NestingCounters& counters, std::size_t level_index)
      : spec_(spec),
        child_(std::move(child)),
        op_(a, *child_),
        counters_(&counters),
        level_index_(level_index) {}

  void solve(const DenseVector& rhs, DenseVector& out) override {
    ++counters_->level_invocations[level_index_];
    fill(out, 0.0);
    const FgmresCycleResult res = fgmres_cycle(op_, rhs, out, spec_.m, std::nullopt, true);
    counters_->level_iterations[level_index_] += static_cast<std::uint64_t>(res.iterations);
  }

  std::optional<Precision> vector_precision() const override { return spec_.vector_precision; }
  void reset_state() override { /* Arnoldi workspace is per-call */ }

 private:
  FgmresLevelSpec spec_;
  std::unique_ptr<InnerSolver> child_;
  LevelOperator op_;
  NestingCounters* counters_;
  std::size_t level_index_;
};

class RichardsonInner final : public InnerSolver {
 public:
  RichardsonInner(const RichardsonLevelSpec& spec, const SparseCsr& a, std::unique_ptr<InnerSolver> child,
                  NestingCounters& counters, std::size_t level_index)
      : spec_(spec),
        child_(std::move(child)),
        op_(a, *child_),
        state_(spec.m, spec.weight_cycle),
        counters_(&counters),
        level_index_(level_index) {
    if (spec_.fixed_omega) std::fill(state_.omegas.begin(), state_.omegas.end(), *spec_.fixed_omega);
  }

  void solve(const DenseVector& rhs, DenseVector& out) override {
    ++counters_->level_invocations[level_index_];
    richardson_apply(op_, rhs, state_, out);
    counters_->level_iterations[level_index_] += static_cast<std::uint64_t>(spec_.m);
  }

  std::optional<Precision> vector_precision() const override { return spec_.precision; }

  void reset_state() override {
    state_.reset();
    if (spec_.fixed_omega) std::fill(state_.omegas.begin(), state_.omegas.end(), *spec_.fixed_omega);
  }

  RichardsonState* richardson_state() override { return &state_; }

 private:
  RichardsonLevelSpec spec_;
  std::unique_ptr<InnerSolver> child_;
  LevelOperator op_;
  RichardsonState state_;
  NestingCounters* counters_;
  std::size_t level_index_;
};

}  // namespace

struct ComposedSolver::Impl {
  SolverSpec spec;
  std::string id;
  const PrecisionReplicas* replicas = nullptr;
  const Preconditioner* precond = nullptr;
  NestingCounters counters;

  // Level 1 is driven by run(); the chain below it is a single InnerSolver.
  std::unique_ptr<InnerSolver> chain;
  std::unique_ptr<LevelOperator> top_op;
  std::vector<InnerSolver*> chain_levels;  // levels 2..D plus the primary, outermost first

  DenseVector true_residual(const DenseVector& b, const DenseVector& x, DenseVector& scratch) const {
    const std::size_t n = replicas->a64.rows();
    DenseVector x64 = x.precision() == Precision::P64 ? x : converted(x, Precision::P64);
    scratch = DenseVector(n, Precision::P64);
    spmv(replicas->a64, x64, scratch);
    DenseVector r(n, Precision::P64);
    add_scaled(b, -1.0, scratch, r);
    return r;
  }
};

ComposedSolver::ComposedSolver(const SolverSpec& spec, const PrecisionReplicas& a, const Preconditioner& m,
                               const BuildOptions& opts)
    : impl_(std::make_unique<Impl>()) {
  if (spec.levels.empty()) throw SolverError("composed solver needs at least one level");
  if (m.rows() != a.a64.rows()) throw DimensionError("preconditioner size does not match the matrix");

  for (const auto& level : spec.levels) {
    if (iterations_of(level) < 1) throw SolverError("every level needs m >= 1");
  }
  if (!opts.allow_precision_increase) {
    for (std::size_t d = 1; d < spec.levels.size(); ++d) {
      const auto up = precisions_of(spec.levels[d - 1]);
      const auto dn = precisions_of(spec.levels[d]);
      if (dn.matrix > up.matrix || dn.vectors > up.vectors) {
        throw SolverError("precision increases from level " + std::to_string(d) + " to level " +
                          std::to_string(d + 1) + " (pass allow_precision_increase to permit)");
      }
    }
  }
  // Resolve every requested replica now so a missing one fails at build time.
  for (const auto& level : spec.levels) (void)a.at(precisions_of(level).matrix);

  impl_->spec = spec;
  impl_->id = spec.to_string();
  impl_->replicas = &a;
  impl_->precond = &m;
  const std::size_t depth = spec.levels.size();
  impl_->counters.level_invocations.assign(depth, 0);
  impl_->counters.level_iterations.assign(depth, 0);

  // Build the chain from the primary preconditioner outwards.
  std::unique_ptr<InnerSolver> inner = std::make_unique<PrimarySolver>(m, impl_->counters);
  std::vector<InnerSolver*> levels_outermost_first;
  for (std::size_t d = depth; d-- > 1;) {
    const auto& level = spec.levels[d];
    const auto prec = precisions_of(level);
    const SparseCsr& mat = a.at(prec.matrix);
    if (const auto* f = std::get_if<FgmresLevelSpec>(&level)) {
      inner = std::make_unique<FgmresInner>(*f, mat, std::move(inner), impl_->counters, d);
    } else {
      inner = std::make_unique<RichardsonInner>(std::get<RichardsonLevelSpec>(level), mat, std::move(inner),
                                                impl_->counters, d);
    }
    levels_outermost_first.push_back(inner.get());
  }
  std::reverse(levels_outermost_first.begin(), levels_outermost_first.end());
  impl_->chain_levels = std::move(levels_outermost_first);
  impl_->chain = std::move(inner);
  impl_->top_op = std::make_unique<LevelOperator>(a.at(precisions_of(spec.levels[0]).matrix), *impl_->chain);
}

ComposedSolver::~ComposedSolver() = default;
ComposedSolver::ComposedSolver(ComposedSolver&&) noexcept = default;
ComposedSolver& ComposedSolver::operator=(ComposedSolver&&) noexcept = default;

const NestingCounters& ComposedSolver::counters() const { return impl_->counters; }
const std::string& ComposedSolver::id() const { return impl_->id; }

std::vector<double> ComposedSolver::innermost_omegas() const {
  std::vector<double> out;
  for (auto it = impl_->chain_levels.rbegin(); it != impl_->chain_levels.rend(); ++it) {
    if (RichardsonState* st = (*it)->richardson_state()) {
      out = st->omegas;
      break;
    }
  }
  return out;
}

RunResult ComposedSolver::run(const DenseVector& b, const RunOptions& opts) {
  Impl& im = *impl_;
  const std::size_t n = im.replicas->a64.rows();
  if (b.size() != n) throw DimensionError("run: rhs length mismatch");

  im.counters.precond_invocations = 0;
  std::fill(im.counters.level_invocations.begin(), im.counters.level_invocations.end(), 0);
  std::fill(im.counters.level_iterations.begin(), im.counters.level_iterations.end(), 0);

  ConvergenceReport rep;
  rep.solver_id = im.id;

  const auto& top = im.spec.levels[0];
  const Precision top_vec = precisions_of(top).vectors;
  DenseVector x(n, top_vec);  // initial guess: zero

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.residual_history.push_back(0.0);
    return {converted(x, Precision::P64), std::move(rep)};
  }
  rep.residual_history.push_back(1.0);

  DenseVector scratch;
  const auto true_rel = [&]() {
    DenseVector r = im.true_residual(b, x, scratch);
    return norm2(r) / bnorm;
  };

  int executions = 0;
  const int max_executions = 1 + std::max(0, opts.max_outer_restarts);

  if (std::holds_alternative<FgmresLevelSpec>(top)) {
    const int m1 = std::get<FgmresLevelSpec>(top).m;
    while (true) {
      const std::uint64_t remaining = opts.max_outer_total - rep.outer_iterations;
      if (remaining == 0) {
        rep.flag = "capped";
        break;
      }
      const int cycle_len = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(m1), remaining));
      ++im.counters.level_invocations[0];
      const FgmresCycleResult res = fgmres_cycle(*im.top_op, b, x, cycle_len, opts.tol, executions == 0);
      im.counters.level_iterations[0] += static_cast<std::uint64_t>(res.iterations);
      rep.outer_iterations += static_cast<std::uint64_t>(res.iterations);
      for (std::size_t i = 1; i < res.estimates.size(); ++i) {
        rep.residual_history.push_back(res.estimates[i] / bnorm);
      }
      if (res.diverged) {
        rep.flag = "divergence at outer step " + std::to_string(res.divergence_step);
        break;
      }
      if (res.residual_norm < opts.tol * bnorm && true_rel() < opts.tol) {
        rep.converged = true;
        break;
      }
      ++executions;
      if (executions >= max_executions) {
        rep.flag = "capped";
        break;
      }
      if (opts.reset_richardson_on_restart) {
        for (InnerSolver* level : im.chain_levels) level->reset_state();
      }
    }
  } else {
    // Richardson outermost: iterative-refinement rounds, each one invocation
    // of the weighted Richardson solve; identical to continuing the
    // stationary iteration. One round counts as one outermost iteration.
    const auto& rtop = std::get<RichardsonLevelSpec>(top);
    RichardsonState state(rtop.m, rtop.weight_cycle);
    if (rtop.fixed_omega) std::fill(state.omegas.begin(), state.omegas.end(), *rtop.fixed_omega);
    DenseVector r(n, top_vec);
    DenseVector z(n, top_vec);
    DenseVector ax(n, top_vec);
    copy_into(b, r);
    while (true) {
      if (rep.outer_iterations >= opts.max_outer_total) {
        rep.flag = "capped";
        break;
      }
      ++im.counters.level_invocations[0];
      richardson_apply(*im.top_op, r, state, z);
      im.counters.level_iterations[0] += static_cast<std::uint64_t>(rtop.m);
      axpy(1.0, z, x);
      ++rep.outer_iterations;
      im.top_op->multiply(x, ax);
      add_scaled(b, -1.0, ax, r);
      const double rel = norm2(r) / bnorm;
      rep.residual_history.push_back(rel);
      if (!std::isfinite(rel)) {
        rep.flag = "divergence";
        break;
      }
      if (rel < opts.tol && true_rel() < opts.tol) {
        rep.converged = true;
        break;
      }
    }
  }

  rep.final_true_residual = true_rel();
  rep.precond_invocations = im.counters.precond_invocations;
  rep.level_iterations = im.counters.level_iterations;
  rep.omegas_final = innermost_omegas();
  return {converted(x, Precision::P64), std::move(rep)};
}

ComposedSolver build(const SolverSpec& spec, const PrecisionReplicas& a, const Preconditioner& m,
                     const BuildOptions& opts) {
  return ComposedSolver(spec, a, m, opts);
}

SolverSpec f3r_spec(const F3rConfig& cfg) {
  SolverSpec spec;
  Precision mid_mat = Precision::P64, mid_vec = Precision::P64;
  Precision low_mat = Precision::P64, low_vec = Precision::P64;
  Precision rich = Precision::P64;
  switch (cfg.mode) {
    case F3rMode::FP16:
      mid_mat = mid_vec = Precision::P32;
      low_mat = Precision::P16;
      low_vec = Precision::P32;
      rich = Precision::P16;
      break;
    case F3rMode::FP32:
      mid_mat = mid_vec = Precision::P32;
      low_mat = low_vec = Precision::P32;
      rich = Precision::P32;
      break;
    case F3rMode::FP64: break;
  }
  spec.levels.push_back(FgmresLevelSpec{cfg.m1, Precision::P64, Precision::P64});
  spec.levels.push_back(FgmresLevelSpec{cfg.m2, mid_mat, mid_vec});
  spec.levels.push_back(FgmresLevelSpec{cfg.m3, low_mat, low_vec});
  spec.levels.push_back(RichardsonLevelSpec{cfg.m4, rich, cfg.c, std::nullopt});
  PrecondSpec p;
  p.precision = rich;
  spec.precond = p;
  return spec;
}

ComposedSolver build_f3r(const F3rConfig& cfg, const PrecisionReplicas& a, const Preconditioner& m) {
  return ComposedSolver(f3r_spec(cfg), a, m);
}

}  // namespace f3r
