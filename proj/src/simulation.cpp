#include "samrad/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "samrad/snapshot.hpp"
#include "samrad/threading.hpp"
#include "samrad/transfer.hpp"

namespace samrad {

MaterialMap RunConfig::material_map() const {
  MaterialMap m;
  m.background_z = 1.0;
  if (material_preset == "marshak1m") return m;
  if (material_preset == "marshak2m") {
    m.regions = {
        {{{0.0625, 0.375, 0.375}, {0.2, 0.625, 0.625}}, 10.0},
        {{{0.125, 0.0, 0.0}, {0.375, 1.0, 0.125}}, 10.0},
        {{{0.125, 0.0, 0.875}, {0.375, 1.0, 1.0}}, 10.0},
    };
    return m;
  }
  fail("unknown material preset: " + material_preset);
}

int RunConfig::effective_resolution() const {
  int r = grid.base_resolution;
  for (int l = 1; l < grid.max_levels; ++l) r *= 2;
  return r;
}

double RunConfig::effective_eps_t() const {
  if (!eps_t_auto) return controller.eps_t;
  return 5e-4 * 32.0 / double(effective_resolution());
}

void RunConfig::validate() const {
  if (grid.base_resolution < 4) fail("grid.base_resolution must be >= 4");
  if (grid.max_levels < 1 || grid.max_levels > 8)
    fail("grid.max_levels out of range");
  if (t_final < 0.0) fail("run.t_final must be >= 0");
  if (threads < 1) fail("run.threads must be >= 1");
  if (regrid.interval < 1) fail("regrid.interval must be >= 1");
  if (regrid.efficiency <= 0.0 || regrid.efficiency > 1.0)
    fail("regrid.efficiency must be in (0, 1]");
  if (controller.dt_initial <= 0.0 || controller.dt_min <= 0.0 ||
      controller.dt_max < controller.dt_min)
    fail("controller step bounds invalid");
  material_map();
}

RunConfig preset_marshak_two_material() {
  RunConfig c;
  c.material_preset = "marshak2m";
  return c;
}

RunConfig preset_marshak_single_material() {
  RunConfig c;
  c.material_preset = "marshak1m";
  return c;
}

ConfigMap RunConfig::to_config() const {
  ConfigMap c;
  c.set_int("grid.base_resolution", grid.base_resolution);
  c.set_int("grid.max_levels", grid.max_levels);
  c.set_real("grid.initial_refine_x", grid.initial_refine_x);
  c.set_bool("grid.static_hierarchy", grid.static_hierarchy);
  c.set_real("physics.conduction_k", physics.conduction_k);
  c.set_real("physics.E0", physics.E0);
  c.set_real("physics.robin_R_xlo", physics.robin_R_xlo);
  c.set_real("physics.robin_R_xhi", physics.robin_R_xhi);
  c.set_str("material.preset", material_preset);
  c.set_str("controller.kind",
            controller.kind == ControllerConfig::Kind::PI47 ? "pi47" : "eps");
  c.set_bool("controller.eps_t_auto", eps_t_auto);
  c.set_real("controller.eps_t", controller.eps_t);
  c.set_real("controller.dt_initial", controller.dt_initial);
  c.set_real("controller.dt_min", controller.dt_min);
  c.set_real("controller.dt_max", controller.dt_max);
  c.set_real("controller.ratio_min", controller.ratio_min);
  c.set_real("controller.ratio_max", controller.ratio_max);
  c.set_real("controller.reject_factor", controller.reject_factor);
  c.set_real("controller.eta_E", controller.scaling.eta_E);
  c.set_real("controller.eta_T", controller.scaling.eta_T);
  c.set_int("solver.max_newton_iters", solver.max_newton_iters);
  c.set_int("solver.max_krylov_dim", solver.max_krylov_dim);
  c.set_real("solver.rel_tol", solver.rel_tol);
  c.set_real("solver.abs_tol", solver.abs_tol);
  c.set_bool("solver.eisenstat_walker", solver.eisenstat_walker);
  c.set_real("solver.fixed_eta", solver.fixed_eta);
  c.set_real("solver.ew_gamma", solver.ew_gamma);
  c.set_real("solver.eta_max", solver.eta_max);
  c.set_real("solver.u_min", solver.u_min);
  c.set_real("solver.theta", solver.theta);
  c.set_real("solver.lambda_min", solver.lambda_min);
  c.set_int("fac.pre_sweeps", fac.pre_sweeps);
  c.set_int("fac.post_sweeps", fac.post_sweeps);
  c.set_int("fac.coarse_sweeps", fac.coarse_sweeps);
  c.set_int("regrid.interval", regrid.interval);
  c.set_real("regrid.tau_c", regrid.tau_c);
  c.set_real("regrid.tau_g", regrid.tau_g);
  c.set_int("regrid.min_patch", regrid.min_patch);
  c.set_real("regrid.efficiency", regrid.efficiency);
  c.set_int("regrid.buffer_cells", regrid.buffer_cells);
  c.set_real("run.t_final", t_final);
  c.set_int("run.threads", threads);
  c.set_real("output.snapshot_dt", output.snapshot_dt);
  return c;
}

RunConfig RunConfig::from_config(const ConfigMap& c) {
  RunConfig r;
  r.grid.base_resolution =
      c.get_int("grid.base_resolution", r.grid.base_resolution);
  r.grid.max_levels = c.get_int("grid.max_levels", r.grid.max_levels);
  r.grid.initial_refine_x =
      c.get_real("grid.initial_refine_x", r.grid.initial_refine_x);
  r.grid.static_hierarchy =
      c.get_bool("grid.static_hierarchy", r.grid.static_hierarchy);
  r.physics.conduction_k =
      c.get_real("physics.conduction_k", r.physics.conduction_k);
  r.physics.E0 = c.get_real("physics.E0", r.physics.E0);
  r.physics.robin_R_xlo =
      c.get_real("physics.robin_R_xlo", r.physics.robin_R_xlo);
  r.physics.robin_R_xhi =
      c.get_real("physics.robin_R_xhi", r.physics.robin_R_xhi);
  r.material_preset = c.get_str("material.preset", r.material_preset);
  const std::string kind = c.get_str("controller.kind", "pi47");
  if (kind == "pi47")
    r.controller.kind = ControllerConfig::Kind::PI47;
  else if (kind == "eps")
    r.controller.kind = ControllerConfig::Kind::EPS;
  else
    fail("controller.kind must be pi47 or eps");
  r.eps_t_auto = c.get_bool("controller.eps_t_auto", r.eps_t_auto);
  r.controller.eps_t = c.get_real("controller.eps_t", r.controller.eps_t);
  r.controller.dt_initial =
      c.get_real("controller.dt_initial", r.controller.dt_initial);
  r.controller.dt_min = c.get_real("controller.dt_min", r.controller.dt_min);
  r.controller.dt_max = c.get_real("controller.dt_max", r.controller.dt_max);
  r.controller.ratio_min =
      c.get_real("controller.ratio_min", r.controller.ratio_min);
  r.controller.ratio_max =
      c.get_real("controller.ratio_max", r.controller.ratio_max);
  r.controller.reject_factor =
      c.get_real("controller.reject_factor", r.controller.reject_factor);
  r.controller.scaling.eta_E =
      c.get_real("controller.eta_E", r.controller.scaling.eta_E);
  r.controller.scaling.eta_T =
      c.get_real("controller.eta_T", r.controller.scaling.eta_T);
  r.solver.max_newton_iters =
      c.get_int("solver.max_newton_iters", r.solver.max_newton_iters);
  r.solver.max_krylov_dim =
      c.get_int("solver.max_krylov_dim", r.solver.max_krylov_dim);
  r.solver.rel_tol = c.get_real("solver.rel_tol", r.solver.rel_tol);
  r.solver.abs_tol = c.get_real("solver.abs_tol", r.solver.abs_tol);
  r.solver.eisenstat_walker =
      c.get_bool("solver.eisenstat_walker", r.solver.eisenstat_walker);
  r.solver.fixed_eta = c.get_real("solver.fixed_eta", r.solver.fixed_eta);
  r.solver.ew_gamma = c.get_real("solver.ew_gamma", r.solver.ew_gamma);
  r.solver.eta_max = c.get_real("solver.eta_max", r.solver.eta_max);
  r.solver.u_min = c.get_real("solver.u_min", r.solver.u_min);
  r.solver.theta = c.get_real("solver.theta", r.solver.theta);
  r.solver.lambda_min = c.get_real("solver.lambda_min", r.solver.lambda_min);
  r.fac.pre_sweeps = c.get_int("fac.pre_sweeps", r.fac.pre_sweeps);
  r.fac.post_sweeps = c.get_int("fac.post_sweeps", r.fac.post_sweeps);
  r.fac.coarse_sweeps = c.get_int("fac.coarse_sweeps", r.fac.coarse_sweeps);
  r.regrid.interval = c.get_int("regrid.interval", r.regrid.interval);
  r.regrid.tau_c = c.get_real("regrid.tau_c", r.regrid.tau_c);
  r.regrid.tau_g = c.get_real("regrid.tau_g", r.regrid.tau_g);
  r.regrid.min_patch = c.get_int("regrid.min_patch", r.regrid.min_patch);
  r.regrid.efficiency = c.get_real("regrid.efficiency", r.regrid.efficiency);
  r.regrid.buffer_cells =
      c.get_int("regrid.buffer_cells", r.regrid.buffer_cells);
  r.t_final = c.get_real("run.t_final", r.t_final);
  r.threads = c.get_int("run.threads", r.threads);
  r.output.snapshot_dt = c.get_real("output.snapshot_dt", r.output.snapshot_dt);
  return r;
}

std::string RunSummary::format() const {
  std::ostringstream os;
  char buf[64];
  auto put_real = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    os << key << " = " << buf << "\n";
  };
  os << "steps_accepted = " << steps_accepted << "\n";
  os << "steps_rejected = " << steps_rejected << "\n";
  os << "solver_retries = " << solver_retries << "\n";
  os << "regrids = " << regrids << "\n";
  os << "warm_restarts = " << warm_restarts << "\n";
  os << "cold_restarts = " << cold_restarts << "\n";
  put_real("avg_newton", avg_newton);
  put_real("avg_gmres", avg_gmres);
  put_real("final_time", final_time);
  os << "levels = " << levels << "\n";
  os << "valid_dofs = " << valid_dofs << "\n";
  put_real("dof_fraction", dof_fraction);
  put_real("min_E", min_E);
  put_real("min_T", min_T);
  return os.str();
}

Simulation::Simulation(const RunConfig& cfg)
    : cfg_(cfg), ctrl_([&] {
        ControllerConfig cc = cfg.controller;
        cc.eps_t = cfg.effective_eps_t();
        return cc;
      }()) {
  cfg_.regrid.max_levels = cfg_.grid.max_levels;
  cfg_.validate();
}

void Simulation::build_initial_hierarchy() {
  DomainSpec dom;
  dom.base_resolution = cfg_.grid.base_resolution;
  std::vector<std::vector<IndexBox>> rb;
  int res = dom.base_resolution;
  double frac = cfg_.grid.initial_refine_x;
  for (int l = 2; l <= cfg_.grid.max_levels; ++l) {
    int nx = std::max(1, int(std::lround(frac * res)));
    nx = std::min(nx, res);
    rb.push_back({IndexBox{{0, 0, 0}, {nx - 1, res - 1, res - 1}}});
    res *= 2;
    frac *= 0.5;
  }
  hier_ = std::make_unique<Hierarchy>(build_hierarchy(dom, rb));
}

void Simulation::rebuild_from(Hierarchy&& nh) {
  hier_ = std::make_unique<Hierarchy>(std::move(nh));
  mat_.build(*hier_, cfg_.material_map());
  re_.define(*hier_, mat_, cfg_.physics);
  pc_.define(*hier_, re_.dofs());
  pc_.options = cfg_.fac;
}

void Simulation::initialize() {
  build_initial_hierarchy();
  mat_.build(*hier_, cfg_.material_map());
  re_.define(*hier_, mat_, cfg_.physics);
  pc_.define(*hier_, re_.dofs());
  pc_.options = cfg_.fac;

  const std::int64_t n = re_.dofs().n_cells;
  std::vector<double> u0(std::size_t(2 * n));
  const double e0 = cfg_.physics.E0;
  const double t0 = std::pow(e0, 0.25);
  for (std::int64_t i = 0; i < n; ++i) u0[std::size_t(i)] = e0;
  for (std::int64_t i = n; i < 2 * n; ++i) u0[std::size_t(i)] = t0;
  re_.eval_f(u0, fu_);
  stepper_.initialize(std::move(u0), fu_);

  t_ = 0.0;
  step_ = 0;
  dt_next_ = std::min(ctrl_.initial_dt(), ctrl_.config().dt_max);
  min_E_seen_ = e0;
  min_T_seen_ = t0;
  initialized_ = true;
}

void Simulation::set_fixed_dt(double dt) {
  if (dt <= 0.0) fail("fixed dt must be positive");
  fixed_dt_ = dt;
}

void Simulation::set_dt_schedule(std::vector<double> dts) {
  schedule_ = std::move(dts);
  sched_pos_ = 0;
}

double Simulation::next_dt() const {
  if (!schedule_.empty()) {
    if (sched_pos_ >= schedule_.size()) fail("dt schedule exhausted");
    return schedule_[sched_pos_];
  }
  if (fixed_dt_ > 0.0) return fixed_dt_;
  return dt_next_;
}

SolverReport Simulation::solve_bdf(double dt, std::vector<double>& u) {
  VecOp F = [this, dt](const std::vector<double>& x, std::vector<double>& Fx) {
    re_.eval_f(x, fu_);
    stepper_.compose_residual(dt, x, fu_, Fx);
  };
  VecOp P = [this](const std::vector<double>& w, std::vector<double>& y) {
    pc_.apply(w, y);
  };
  auto freeze = [this, dt]() { pc_.freeze(re_, stepper_.beta(dt)); };
  return newton_solve(F, P, freeze, u, cfg_.solver);
}

void Simulation::advance_to(double t_stop) {
  if (!initialized_) fail("advance before initialize");
  const bool prescribed = fixed_dt_ > 0.0 || !schedule_.empty();
  const double land = 1e-13 * std::max(1.0, std::abs(t_stop));

  while (t_ < t_stop - land) {
    double dt = std::min(next_dt(), t_stop - t_);
    if (dt <= 0.0) break;

    const bool have_pred = stepper_.can_predict();
    std::vector<double> u_pred;
    std::vector<double> u;
    if (have_pred) {
      stepper_.predict(dt, u_pred);
      u = u_pred;
      // the leapfrog extrapolation is not positivity preserving; floor the
      // initial guess at the Newton feasibility margin
      const std::vector<double>& un = stepper_.u_n();
      const double th = cfg_.solver.theta;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] < th * un[i]) u[i] = th * un[i];
    } else {
      u = stepper_.u_n();
    }

    SolverReport rep = solve_bdf(dt, u);

    StepRecord row;
    row.step = step_ + 1;
    row.t = t_ + dt;
    row.dt = dt;
    row.newton_iters = rep.newton_iters;
    row.gmres_iters = rep.total_gmres_iters;
    row.valid_dofs = 2 * hier_->total_valid_cells();
    row.levels = hier_->num_levels();

    if (!rep.converged) {
      if (prescribed)
        fail("nonlinear solve failed on prescribed step: " + rep.failure);
      ++solver_retries_;
      row.accepted = 0;
      history_.push_back(row);
      const double halved = 0.5 * dt;
      if (halved < ctrl_.config().dt_min)
        fail("nonlinear solve failed at the minimum step size: " + rep.failure);
      dt_next_ = halved;
      continue;
    }

    double err = -1.0;
    if (have_pred) err = stepper_.error_norm(dt, u, u_pred, ctrl_.config().scaling);
    row.err_norm = err;

    bool accept = true;
    if (!schedule_.empty()) {
      ++sched_pos_;
    } else if (fixed_dt_ > 0.0) {
      // prescribed-step runs bypass the controller
    } else if (err >= 0.0) {
      const StepController::Decision dec = ctrl_.update(err, dt);
      accept = dec.accepted;
      dt_next_ = dec.dt_next;
    } else {
      dt_next_ = ctrl_.hold(dt);
    }

    if (!accept) {
      ++rejected_;
      row.accepted = 0;
      history_.push_back(row);
      continue;
    }

    stepper_.accept(dt, u);
    t_ = row.t;
    ++step_;

    const std::size_t half = u.size() / 2;
    for (std::size_t i = 0; i < half; ++i)
      min_E_seen_ = std::min(min_E_seen_, u[i]);
    for (std::size_t i = half; i < u.size(); ++i)
      min_T_seen_ = std::min(min_T_seen_, u[i]);
    if (min_E_seen_ <= 0.0 || min_T_seen_ <= 0.0)
      fail("accepted state lost positivity");

    maybe_regrid();
    row.regrid_flag = pending_regrid_flag_;
    pending_regrid_flag_ = 0;
    row.accepted = 1;
    history_.push_back(row);
  }
}

void Simulation::maybe_regrid() {
  if (cfg_.grid.max_levels < 2 || cfg_.grid.static_hierarchy) return;
  if (step_ % cfg_.regrid.interval != 0) return;

  CompositeState s(*hier_);
  re_.dofs().scatter(stepper_.u_n(), s);
  sync_covered(*hier_, s);
  const RegridPlan plan = plan_regrid(*hier_, s.E, cfg_.regrid);
  if (!plan.changed) return;

  Hierarchy nh = build_hierarchy(hier_->domain, plan.refine_boxes, hier_->ratio);

  const bool have_prev = stepper_.can_predict();
  CompositeState cu(*hier_), cup(*hier_), cud(*hier_);
  re_.dofs().scatter(stepper_.u_n(), cu);
  sync_covered(*hier_, cu);
  if (have_prev) {
    re_.dofs().scatter(stepper_.u_nm1(), cup);
    sync_covered(*hier_, cup);
  }
  re_.dofs().scatter(stepper_.udot_n(), cud);
  sync_covered(*hier_, cud);

  CompositeState nu(nh), nup(nh), nud(nh);
  transfer_scalar(*hier_, cu.E, nh, nu.E, true);
  transfer_scalar(*hier_, cu.T, nh, nu.T, true);
  if (have_prev) {
    transfer_scalar(*hier_, cup.E, nh, nup.E, true);
    transfer_scalar(*hier_, cup.T, nh, nup.T, true);
  }
  transfer_scalar(*hier_, cud.E, nh, nud.E, false);
  transfer_scalar(*hier_, cud.T, nh, nud.T, false);

  rebuild_from(std::move(nh));

  std::vector<double> un, unm1, ud;
  re_.dofs().gather(nu, un);
  if (have_prev) re_.dofs().gather(nup, unm1);
  re_.dofs().gather(nud, ud);
  stepper_.replace_history(std::move(un), std::move(unm1), std::move(ud));
  ctrl_.notify_regrid();
  ++regrids_;

  RegridRecord rec;
  rec.step = step_;
  rec.t = t_;
  rec.levels = hier_->num_levels();
  rec.valid_dofs = 2 * hier_->total_valid_cells();
  const double eq = double(cfg_.effective_resolution());
  rec.dof_fraction = double(hier_->total_valid_cells()) / (eq * eq * eq);
  regrid_log_.push_back(rec);

  do_warm_restart();
  pending_regrid_flag_ = 1;
}

void Simulation::do_warm_restart() {
  std::vector<double> u = stepper_.u_n();
  {
    std::vector<double> F0;
    re_.eval_f(u, fu_);
    stepper_.compose_resolve_residual(u, fu_, F0);
    last_warm_jump_ = norm2(F0);
  }
  VecOp F = [this](const std::vector<double>& x, std::vector<double>& Fx) {
    re_.eval_f(x, fu_);
    stepper_.compose_resolve_residual(x, fu_, Fx);
  };
  VecOp P = [this](const std::vector<double>& w, std::vector<double>& y) {
    pc_.apply(w, y);
  };
  auto freeze = [this]() { pc_.freeze(re_, stepper_.resolve_beta()); };
  const SolverReport rep = newton_solve(F, P, freeze, u, cfg_.solver);
  last_warm_iters_ = rep.newton_iters;
  if (rep.converged) {
    stepper_.apply_resolved(u);
    ++warm_restarts_;
  } else {
    stepper_.cold_restart();
    ++cold_restarts_;
  }
}

CompositeState Simulation::state_composite() const {
  CompositeState s(*hier_);
  re_.dofs().scatter(stepper_.u_n(), s);
  sync_covered(*hier_, s);
  return s;
}

RunSummary Simulation::summarize() const {
  RunSummary s;
  s.steps_accepted = step_;
  s.steps_rejected = rejected_;
  s.solver_retries = solver_retries_;
  s.regrids = regrids_;
  s.warm_restarts = warm_restarts_;
  s.cold_restarts = cold_restarts_;
  long long nsum = 0, gsum = 0;
  for (const StepRecord& r : history_)
    if (r.accepted) {
      nsum += r.newton_iters;
      gsum += r.gmres_iters;
    }
  if (step_ > 0) {
    s.avg_newton = double(nsum) / double(step_);
    s.avg_gmres = double(gsum) / double(step_);
  }
  s.final_time = t_;
  s.levels = hier_->num_levels();
  s.valid_dofs = 2 * hier_->total_valid_cells();
  const double eq = double(cfg_.effective_resolution());
  s.dof_fraction = double(hier_->total_valid_cells()) / (eq * eq * eq);
  s.min_E = min_E_seen_;
  s.min_T = min_T_seen_;
  return s;
}

void write_steps_csv(const std::string& path,
                     const std::vector<StepRecord>& rows) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path);
  out << "step,t,dt,err_norm,newton_iters,gmres_iters,valid_dofs,levels,"
         "regrid_flag,accepted\n";
  char buf[256];
  for (const StepRecord& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%lld,%.17g,%.17g,%.17g,%d,%d,%lld,%d,%d,%d\n",
                  (long long)r.step, r.t, r.dt, r.err_norm, r.newton_iters,
                  r.gmres_iters, (long long)r.valid_dofs, r.levels,
                  r.regrid_flag, r.accepted);
    out << buf;
  }
}

void write_regrid_csv(const std::string& path,
                      const std::vector<RegridRecord>& rows) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path);
  out << "step,t,levels,valid_dofs,dof_fraction\n";
  char buf[160];
  for (const RegridRecord& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%d,%lld,%.17g\n",
                  (long long)r.step, r.t, r.levels, (long long)r.valid_dofs,
                  r.dof_fraction);
    out << buf;
  }
}

int run_simulation(const RunConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "snapshots");
  set_num_threads(cfg.threads);

  Simulation sim(cfg);
  int status = 0;
  std::string error;
  std::int64_t last_snap = -1;

  auto snap_path = [&](std::int64_t step) {
    char name[48];
    std::snprintf(name, sizeof name, "step_%06lld.amr", (long long)step);
    return (fs::path(out_dir) / "snapshots" / name).string();
  };
  auto dump = [&]() {
    if (sim.accepted_steps() == last_snap) return;
    write_snapshot(snap_path(sim.accepted_steps()), sim.hierarchy(),
                   sim.state_composite(), sim.accepted_steps(), sim.time());
    last_snap = sim.accepted_steps();
  };

  try {
    sim.initialize();
    dump();
    const double land = 1e-13 * std::max(1.0, cfg.t_final);
    double next_dump = cfg.output.snapshot_dt;
    while (sim.time() < cfg.t_final - land) {
      double target = cfg.t_final;
      if (cfg.output.snapshot_dt > 0.0)
        target = std::min(target, next_dump);
      sim.advance_to(target);
      if (cfg.output.snapshot_dt > 0.0 && sim.time() >= next_dump - land) {
        dump();
        next_dump += cfg.output.snapshot_dt;
      }
    }
    dump();
  } catch (const std::exception& ex) {
    status = 1;
    error = ex.what();
    try {
      dump();
    } catch (...) {
    }
  }

  write_steps_csv((fs::path(out_dir) / "steps.csv").string(), sim.history());
  write_regrid_csv((fs::path(out_dir) / "regrid.csv").string(),
                   sim.regrid_log());
  std::ofstream sum(fs::path(out_dir) / "summary.txt");
  sum << "status = " << (status == 0 ? "ok" : "error") << "\n";
  if (!error.empty()) sum << "error = " << error << "\n";
  sum << sim.summarize().format();
  return status;
}

}  // namespace samrad
