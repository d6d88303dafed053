#ifndef SAMRAD_SIMULATION_HPP
#define SAMRAD_SIMULATION_HPP

#include <memory>
#include <string>
#include <vector>

#include "samrad/config.hpp"
#include "samrad/controller.hpp"
#include "samrad/fac.hpp"
#include "samrad/newton.hpp"
#include "samrad/regrid.hpp"
#include "samrad/residual.hpp"
#include "samrad/time_integrator.hpp"

namespace samrad {

struct GridConfig {
  int base_resolution = 16;
  int max_levels = 2;
  // initial refined slab 0 <= x < initial_refine_x, halved per extra level;
  // the first scheduled regrid takes over from there
  double initial_refine_x = 0.125;
  bool static_hierarchy = false;  // keep the initial grids, never regrid
};

struct OutputConfig {
  double snapshot_dt = 0.02;  // simulated-time cadence
};

struct RunConfig {
  GridConfig grid;
  PhysicsParams physics;
  std::string material_preset = "marshak2m";  // marshak2m | marshak1m
  ControllerConfig controller;
  bool eps_t_auto = true;  // eps_t = 5e-4 * 32 / effective resolution
  NewtonConfig solver;
  FacOptions fac;
  RegridPolicy regrid;
  double t_final = 0.1;
  int threads = 1;
  OutputConfig output;

  MaterialMap material_map() const;
  double effective_eps_t() const;
  int effective_resolution() const;

  ConfigMap to_config() const;
  static RunConfig from_config(const ConfigMap& c);
  void validate() const;
};

RunConfig preset_marshak_two_material();
RunConfig preset_marshak_single_material();

// one row per attempted step; t is the attempted end-of-step time and
// err_norm is -1 when no estimate exists (BDF1 steps, solver retries)
struct StepRecord {
  std::int64_t step = 0;
  double t = 0.0;
  double dt = 0.0;
  double err_norm = -1.0;
  int newton_iters = 0;
  int gmres_iters = 0;
  std::int64_t valid_dofs = 0;
  int levels = 0;
  int regrid_flag = 0;
  int accepted = 0;
};

struct RegridRecord {
  std::int64_t step = 0;
  double t = 0.0;
  int levels = 0;
  std::int64_t valid_dofs = 0;
  double dof_fraction = 0.0;  // vs the max_levels-equivalent uniform grid
};

struct RunSummary {
  std::int64_t steps_accepted = 0;
  std::int64_t steps_rejected = 0;
  std::int64_t solver_retries = 0;
  std::int64_t regrids = 0;
  std::int64_t warm_restarts = 0;
  std::int64_t cold_restarts = 0;
  double avg_newton = 0.0;  // per accepted step
  double avg_gmres = 0.0;
  double final_time = 0.0;
  int levels = 0;
  std::int64_t valid_dofs = 0;
  double dof_fraction = 0.0;
  double min_E = 0.0, min_T = 0.0;  // over the whole run, accepted states
  std::string format() const;
};

class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg);

  void initialize();
  // advances until the simulated time reaches t_stop (steps clamp to land
  // exactly); throws on unrecoverable solver or step-size failure
  void advance_to(double t_stop);

  // overrides the controller: constant dt, every step accepted
  void set_fixed_dt(double dt);
  // replays a recorded dt sequence, every step accepted
  void set_dt_schedule(std::vector<double> dts);

  double time() const { return t_; }
  std::int64_t accepted_steps() const { return step_; }
  const RunConfig& config() const { return cfg_; }
  const Hierarchy& hierarchy() const { return *hier_; }
  const MaterialField& material() const { return mat_; }
  const DofMap& dofs() const { return re_.dofs(); }
  const BdfStepper& stepper() const { return stepper_; }
  const StepController& controller() const { return ctrl_; }
  const std::vector<StepRecord>& history() const { return history_; }
  const std::vector<RegridRecord>& regrid_log() const { return regrid_log_; }
  std::int64_t regrids() const { return regrids_; }
  std::int64_t warm_restarts() const { return warm_restarts_; }
  std::int64_t cold_restarts() const { return cold_restarts_; }
  int last_warm_restart_iters() const { return last_warm_iters_; }
  double last_warm_restart_residual_jump() const { return last_warm_jump_; }

  // current state scattered onto the hierarchy, covered cells synced
  CompositeState state_composite() const;
  RunSummary summarize() const;

 private:
  void build_initial_hierarchy();
  void rebuild_from(Hierarchy&& nh);
  SolverReport solve_bdf(double dt, std::vector<double>& u);
  void maybe_regrid();
  void do_warm_restart();
  double next_dt() const;

  RunConfig cfg_;
  std::unique_ptr<Hierarchy> hier_;
  MaterialField mat_;
  ResidualEvaluator re_;
  Preconditioner pc_;
  BdfStepper stepper_;
  StepController ctrl_;

  double t_ = 0.0;
  double dt_next_ = 0.0;
  std::int64_t step_ = 0;      // accepted
  std::int64_t attempts_ = 0;  // history rows
  double fixed_dt_ = 0.0;
  std::vector<double> schedule_;
  std::size_t sched_pos_ = 0;

  std::vector<StepRecord> history_;
  std::vector<RegridRecord> regrid_log_;
  std::vector<double> fu_;
  std::int64_t regrids_ = 0, warm_restarts_ = 0, cold_restarts_ = 0,
               solver_retries_ = 0, rejected_ = 0;
  int last_warm_iters_ = 0;
  double last_warm_jump_ = 0.0;
  double min_E_seen_ = 0.0, min_T_seen_ = 0.0;
  int pending_regrid_flag_ = 0;
  bool initialized_ = false;
};

void write_steps_csv(const std::string& path,
                     const std::vector<StepRecord>& rows);
void write_regrid_csv(const std::string& path,
                      const std::vector<RegridRecord>& rows);

// full artifact-writing entry point used by the CLI: steps.csv, regrid.csv,
// snapshots at the configured cadence, summary.txt. Returns the process exit
// status; fatal errors flush the last accepted state first.
int run_simulation(const RunConfig& cfg, const std::string& out_dir);

}  // namespace samrad

#endif
