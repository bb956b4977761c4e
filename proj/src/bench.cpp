// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/bench.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "f3r/cg.hpp"
#include "f3r/costmodel.hpp"
#include "f3r/fgmres.hpp"
#include "f3r/matrix_market.hpp"
#include "f3r/rng.hpp"
#include "f3r/stencil.hpp"

namespace f3r::bench {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180 quoting for fields that may hold commas (solver ids do).
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

SolverSpec table4_spec(std::string_view name, int m1) {
  const std::string top = "F" + std::to_string(m1) + ":f64/f64 > ";
  std::string body;
  if (name == "f2") {
    body = "F64:f32/f32";
  } else if (name == "fp16-f2") {
    body = "F64:f16/f16";
  } else if (name == "f3") {
    body = "F8:f32/f32 > F8:f16/f32";
  } else if (name == "fp16-f3") {
    body = "F8:f32/f32 > F8:f16/f16";
  } else if (name == "f4") {
    body = "F8:f32/f32 > F4:f16/f32 > F2:f16/f16";
  }
  SolverSpec spec = parse_solver_spec(top + body);
  PrecondSpec p;
  p.precision = Precision::P16;
  spec.precond = p;
  return spec;
}

ordered_json report_json(const ConvergenceReport& r) {
  ordered_json j;
  j["converged"] = r.converged;
  j["outer_iterations"] = r.outer_iterations;
  j["precond_invocations"] = r.precond_invocations;
  j["level_iterations"] = r.level_iterations;
  j["residual_history"] = r.residual_history;
  j["final_true_residual"] = r.final_true_residual;
  j["wall_seconds"] = r.wall_seconds;
  j["omegas_final"] = r.omegas_final;
  j["flag"] = r.flag;
  return j;
}

}  // namespace

PreparedProblem prepare_problem(const ProblemConfig& problem) {
  if (problem.matrix_path.empty() == problem.stencil_name.empty()) {
    throw ParseError("exactly one of --matrix and --stencil is required");
  }
  PreparedProblem prep;
  SparseCsr raw;
  if (!problem.stencil_name.empty()) {
    raw = generate_stencil(parse_stencil_name(problem.stencil_name));
    prep.id = problem.stencil_name;
  } else {
    std::ifstream in(problem.matrix_path);
    if (!in) throw ParseError("cannot open matrix file '" + problem.matrix_path + "'");
    raw = read_matrix_market(in);
    prep.id = problem.matrix_path;
  }
  ScaledMatrix scaled = diagonal_scale(raw);
  prep.scale = std::move(scaled.d);
  prep.symmetric = scaled.matrix.is_symmetric();
  prep.replicas = make_replicas(std::move(scaled.matrix));
  prep.matrix = prep.replicas.a64;
  return prep;
}

SolverPlan plan_solver(const RunConfig& cfg, bool symmetric) {
  SolverPlan plan;
  const std::string& name = cfg.solver;

  if (name == "cg" || name == "bicgstab" || name == "fgmres64") {
    plan.family = name == "cg"           ? SolverFamily::Cg
                  : name == "bicgstab"   ? SolverFamily::Bicgstab
                                         : SolverFamily::FgmresRestarted;
    plan.id = name;
  } else if (name == "fp64-f3r" || name == "fp32-f3r" || name == "fp16-f3r") {
    F3rConfig f;
    f.m1 = cfg.m1;
    f.m2 = cfg.m2;
    f.m3 = cfg.m3;
    f.m4 = cfg.m4;
    f.c = cfg.c;
    f.mode = name == "fp64-f3r" ? F3rMode::FP64 : name == "fp32-f3r" ? F3rMode::FP32 : F3rMode::FP16;
    plan.spec = f3r_spec(f);
  } else if (name == "f2" || name == "fp16-f2" || name == "f3" || name == "fp16-f3" || name == "f4") {
    plan.spec = table4_spec(name, cfg.m1);
  } else if (name.find('>') != std::string::npos || name.find(':') != std::string::npos) {
    plan.spec = parse_solver_spec(name);
  } else {
    throw ParseError("unknown solver '" + name + "'");
  }

  if (plan.family == SolverFamily::Composed && cfg.fixed_omega) {
    for (auto& level : plan.spec.levels) {
      if (auto* r = std::get_if<RichardsonLevelSpec>(&level)) {
        r->weight_cycle = 0;  // never update
        r->fixed_omega = cfg.fixed_omega;
      }
    }
  }

  // Merge the preconditioner configuration: explicit CLI values win, then the
  // spec terminal, then defaults.
  const PrecondSpec* terminal =
      plan.family == SolverFamily::Composed && plan.spec.precond ? &*plan.spec.precond : nullptr;

  PrecondKind kind;
  if (cfg.precond_kind == "ilu0") {
    kind = PrecondKind::Ilu0;
  } else if (cfg.precond_kind == "ic0") {
    kind = PrecondKind::Ic0;
  } else if (cfg.precond_kind == "identity") {
    kind = PrecondKind::Identity;
  } else if (cfg.precond_kind == "auto") {
    kind = terminal && terminal->kind ? *terminal->kind
                                      : (symmetric ? PrecondKind::Ic0 : PrecondKind::Ilu0);
  } else {
    throw ParseError("unknown preconditioner kind '" + cfg.precond_kind + "'");
  }

  plan.use_identity = kind == PrecondKind::Identity;
  plan.ilu.symmetric = kind == PrecondKind::Ic0;
  plan.ilu.nblocks = terminal && terminal->blocks ? *terminal->blocks : cfg.precond_blocks;
  plan.ilu.alpha = terminal && terminal->alpha ? *terminal->alpha : cfg.alpha;
  if (cfg.precond_precision) {
    plan.ilu.apply_precision = *cfg.precond_precision;
  } else if (terminal && terminal->precision) {
    plan.ilu.apply_precision = *terminal->precision;
  } else {
    plan.ilu.apply_precision = Precision::P64;
  }

  if (plan.family == SolverFamily::Composed) {
    PrecondSpec merged;
    merged.kind = kind;
    merged.blocks = plan.ilu.nblocks;
    merged.alpha = plan.ilu.alpha;
    merged.precision = plan.ilu.apply_precision;
    plan.spec.precond = merged;
    plan.id = plan.spec.to_string();
  } else {
    plan.id = name + "/" + (plan.use_identity ? "identity"
                                              : std::string(plan.ilu.symmetric ? "ic0" : "ilu0") + "(blocks=" +
                                                    std::to_string(plan.ilu.nblocks) + ",alpha=" +
                                                    csv_double(plan.ilu.alpha) + ",prec=" +
                                                    std::string(precision_name(plan.ilu.apply_precision)) + ")");
  }
  return plan;
}

SolveOutcome run_once(const SolverPlan& plan, const PreparedProblem& prep, const DenseVector& rhs,
                      const RunConfig& cfg) {
  SolveOutcome out;

  std::unique_ptr<Preconditioner> precond;
  const auto t_factor = Clock::now();
  if (plan.use_identity) {
    precond = std::make_unique<IdentityPrecond>(prep.matrix.rows());
  } else {
    precond = std::make_unique<BlockJacobiIlu0>(BlockJacobiIlu0::factorize(prep.matrix, plan.ilu));
  }
  out.factorization_seconds = seconds_since(t_factor);

  const auto t_solve = Clock::now();
  switch (plan.family) {
    case SolverFamily::Composed: {
      ComposedSolver solver(plan.spec, prep.replicas, *precond);
      RunOptions ropts;
      ropts.tol = cfg.tol;
      ropts.max_outer_restarts = cfg.max_outer_restarts;
      ropts.max_outer_total = cfg.max_outer_total;
      out.report = solver.run(rhs, ropts).report;
      break;
    }
    case SolverFamily::Cg: {
      ReferenceSolveOptions opts;
      opts.tol = cfg.tol;
      out.report = cg_solve(prep.matrix, *precond, rhs, opts);
      break;
    }
    case SolverFamily::Bicgstab: {
      ReferenceSolveOptions opts;
      opts.tol = cfg.tol;
      out.report = bicgstab_solve(prep.matrix, *precond, rhs, opts);
      break;
    }
    case SolverFamily::FgmresRestarted: {
      FgmresOptions opts;
      opts.tol = cfg.tol;
      out.report = fgmres_restarted(prep.matrix, *precond, rhs, plan.restart, opts);
      break;
    }
  }
  out.report.wall_seconds = seconds_since(t_solve);
  out.report.solver_id = plan.id;
  out.report.problem_id = prep.id;
  return out;
}

namespace {

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

DenseVector make_rhs(const RunConfig& cfg, std::size_t n) {
  if (cfg.zero_rhs) return DenseVector(n, Precision::P64);
  return random_rhs(n, cfg.rhs_seed);
}

}  // namespace

std::string cmd_solve(const RunConfig& cfg) {
  apply_threads(cfg.threads);
  PreparedProblem prep = prepare_problem(cfg.problem);
  const SolverPlan plan = plan_solver(cfg, prep.symmetric);
  const DenseVector rhs = make_rhs(cfg, prep.matrix.rows());

  ordered_json j;
  j["schema_version"] = 1;
  j["problem"] = {{"id", prep.id},
                  {"n", prep.matrix.rows()},
                  {"nnz", prep.matrix.nnz()},
                  {"symmetric", prep.symmetric}};
  j["solver"] = {{"id", plan.id}};
  j["config"] = {{"tol", cfg.tol},
                 {"rhs_seed", cfg.rhs_seed},
                 {"zero_rhs", cfg.zero_rhs},
                 {"repeats", cfg.repeats},
                 {"threads", cfg.threads},
                 {"max_outer_total", cfg.max_outer_total},
                 {"max_outer_restarts", cfg.max_outer_restarts}};

  double wall_sum = 0.0;
  double factor_sum = 0.0;
  ordered_json runs = ordered_json::array();
  ConvergenceReport last;
  for (int rep = 0; rep < cfg.repeats; ++rep) {
    SolveOutcome outcome = run_once(plan, prep, rhs, cfg);
    wall_sum += outcome.report.wall_seconds;
    factor_sum += outcome.factorization_seconds;
    runs.push_back(report_json(outcome.report));
    last = std::move(outcome.report);
  }
  j["runs"] = std::move(runs);
  j["average"] = {{"outer_iterations", last.outer_iterations},
                  {"precond_invocations", last.precond_invocations},
                  {"wall_seconds", wall_sum / cfg.repeats},
                  {"factorization_seconds", factor_sum / cfg.repeats}};

  const std::string text = j.dump(2) + "\n";
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) throw Error("cannot write '" + cfg.out_path + "'");
    out << text;
  }
  return text;
}

std::string cmd_compare(const RunConfig& cfg, const std::vector<std::string>& solvers) {
  if (solvers.empty()) throw ParseError("compare: at least one --solver is required");
  apply_threads(cfg.threads);
  PreparedProblem prep = prepare_problem(cfg.problem);
  const DenseVector rhs = make_rhs(cfg, prep.matrix.rows());

  std::ostringstream csv;
  csv << "problem,solver,converged,outer_iterations,precond_invocations,final_true_residual,"
         "wall_seconds,factorization_seconds,speedup_vs_baseline\n";
  double baseline_wall = 0.0;
  for (std::size_t s = 0; s < solvers.size(); ++s) {
    RunConfig one = cfg;
    one.solver = solvers[s];
    const SolverPlan plan = plan_solver(one, prep.symmetric);
    double wall = 0.0, factor = 0.0;
    SolveOutcome outcome;
    for (int rep = 0; rep < cfg.repeats; ++rep) {
      outcome = run_once(plan, prep, rhs, one);
      wall += outcome.report.wall_seconds;
      factor += outcome.factorization_seconds;
    }
    wall /= cfg.repeats;
    factor /= cfg.repeats;
    if (s == 0) baseline_wall = wall;
    csv << csv_field(prep.id) << "," << csv_field(plan.id) << "," << (outcome.report.converged ? 1 : 0) << ","
        << outcome.report.outer_iterations << "," << outcome.report.precond_invocations << ","
        << csv_double(outcome.report.final_true_residual) << "," << csv_double(wall) << ","
        << csv_double(factor) << "," << csv_double(wall > 0.0 ? baseline_wall / wall : 0.0) << "\n";
  }
  const std::string text = csv.str();
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) throw Error("cannot write '" + cfg.out_path + "'");
    out << text;
  }
  return text;
}

std::string cmd_sweep(const RunConfig& cfg, const SweepGrid& grid) {
  apply_threads(cfg.threads);
  PreparedProblem prep = prepare_problem(cfg.problem);
  const DenseVector rhs = make_rhs(cfg, prep.matrix.rows());

  std::ostringstream csv;
  csv << "problem,mode,m1,m2,m3,m4,c,weight_mode,omega,converged,outer_iterations,"
         "precond_invocations,final_true_residual,wall_seconds,factorization_seconds\n";

  const auto emit = [&](const std::string& mode, int m2, int m3, int m4, std::uint64_t c,
                        std::optional<double> fixed_omega) {
    RunConfig one = cfg;
    one.solver = mode + "-f3r";
    one.m2 = m2;
    one.m3 = m3;
    one.m4 = m4;
    one.c = c;
    one.fixed_omega = fixed_omega;
    const SolverPlan plan = plan_solver(one, prep.symmetric);
    const SolveOutcome outcome = run_once(plan, prep, rhs, one);
    csv << csv_field(prep.id) << "," << mode << "," << cfg.m1 << "," << m2 << "," << m3 << "," << m4 << "," << c
        << "," << (fixed_omega ? "fixed" : "adaptive") << ","
        << (fixed_omega ? csv_double(*fixed_omega) : "") << "," << (outcome.report.converged ? 1 : 0)
        << "," << outcome.report.outer_iterations << "," << outcome.report.precond_invocations << ","
        << csv_double(outcome.report.final_true_residual) << ","
        << csv_double(outcome.report.wall_seconds) << "," << csv_double(outcome.factorization_seconds)
        << "\n";
  };

  for (const auto& mode : grid.modes) {
    for (int m2 : grid.m2) {
      for (int m3 : grid.m3) {
        for (int m4 : grid.m4) {
          for (std::uint64_t c : grid.c) emit(mode, m2, m3, m4, c, std::nullopt);
          for (double omega : grid.fixed_omegas) emit(mode, m2, m3, m4, 0, omega);
        }
      }
    }
  }

  const std::string text = csv.str();
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) throw Error("cannot write '" + cfg.out_path + "'");
    out << text;
  }
  return text;
}

std::string cmd_model(double c_a, double c_m, int m, bool allow_richardson) {
  CostParams p{c_a, c_m, static_cast<double>(m)};
  std::ostringstream csv;
  csv << "kind,m_outer,m_inner,cost\n";
  csv << "reference_fgmres,," << m << "," << csv_double(fgmres_cost(p)) << "\n";
  csv << "reference_richardson,," << m << "," << csv_double(richardson_cost(p)) << "\n";
  for (const SplitOption& opt : advise_split(p, allow_richardson)) {
    csv << (opt.inner == InnerKind::Fgmres ? "nested_fgmres" : "fgmres_richardson") << ","
        << opt.m_outer << "," << csv_double(opt.m_inner) << "," << csv_double(opt.cost) << "\n";
  }
  return csv.str();
}

}  // namespace f3r::bench
