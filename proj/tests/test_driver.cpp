#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "samrad/simulation.hpp"
#include "samrad/snapshot.hpp"
#include "samrad/study.hpp"
#include "support.hpp"

using namespace samrad;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir(const char* name) {
  fs::path d = fs::temp_directory_path() / "samrad_driver_tests" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: ", p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "key = value" lines into a map; the status line parses like any other
std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> out;
  for (const std::string& ln : lines_of(text)) {
    auto eq = ln.find(" = ");
    if (eq == std::string::npos) continue;
    out[ln.substr(0, eq)] = ln.substr(eq + 3);
  }
  return out;
}

struct StepRow {
  long long step;
  double t, dt, err;
  int newton, gmres;
  long long dofs;
  int levels, flag, accepted;
};

std::vector<StepRow> parse_steps(const std::string& csv) {
  auto lines = lines_of(csv);
  REQUIRE(!lines.empty());
  CHECK(lines[0] ==
        "step,t,dt,err_norm,newton_iters,gmres_iters,valid_dofs,levels,"
        "regrid_flag,accepted");
  std::vector<StepRow> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto f = fields_of(lines[r]);
    REQUIRE(f.size() == 10);
    rows.push_back({std::stoll(f[0]), std::stod(f[1]), std::stod(f[2]),
                    std::stod(f[3]), std::stoi(f[4]), std::stoi(f[5]),
                    std::stoll(f[6]), std::stoi(f[7]), std::stoi(f[8]),
                    std::stoi(f[9])});
  }
  return rows;
}

const char* kStepsHeader =
    "step,t,dt,err_norm,newton_iters,gmres_iters,valid_dofs,levels,"
    "regrid_flag,accepted";
const char* kRegridHeader = "step,t,levels,valid_dofs,dof_fraction";

}  // namespace

TEST_CASE("configs survive a dump/parse round trip") {
  RunConfig a;
  a.grid.base_resolution = 24;
  a.grid.max_levels = 3;
  a.grid.initial_refine_x = 0.3;
  a.grid.static_hierarchy = true;
  a.physics.conduction_k = 0.02;
  a.physics.E0 = 3e-6;
  a.physics.robin_R_xlo = 0.75;
  a.physics.robin_R_xhi = 0.25;
  a.material_preset = "marshak1m";
  a.controller.kind = ControllerConfig::Kind::EPS;
  a.eps_t_auto = false;
  a.controller.eps_t = 2.5e-4;
  a.controller.dt_initial = 3e-7;
  a.controller.dt_min = 1e-11;
  a.controller.dt_max = 0.05;
  a.controller.ratio_min = 0.25;
  a.controller.ratio_max = 2.0;
  a.controller.reject_factor = 1.5;
  a.controller.scaling.eta_E = 2e-5;
  a.controller.scaling.eta_T = 3e-5;
  a.solver.max_newton_iters = 17;
  a.solver.max_krylov_dim = 33;
  a.solver.rel_tol = 1e-11;
  a.solver.abs_tol = 1e-9;
  a.solver.eisenstat_walker = false;
  a.solver.fixed_eta = 5e-4;
  a.solver.ew_gamma = 0.8;
  a.solver.eta_max = 0.5;
  a.solver.u_min = 1e-5;
  a.solver.theta = 0.02;
  a.solver.lambda_min = 2e-4;
  a.fac.pre_sweeps = 2;
  a.fac.post_sweeps = 1;
  a.fac.coarse_sweeps = 6;
  a.regrid.interval = 5;
  a.regrid.tau_c = 0.3;
  a.regrid.tau_g = 0.2;
  a.regrid.min_patch = 6;
  a.regrid.efficiency = 0.7;
  a.regrid.buffer_cells = 2;
  a.t_final = 0.25;
  a.threads = 3;
  a.output.snapshot_dt = 0.01;

  RunConfig b = RunConfig::from_config(ConfigMap::parse(a.to_config().dump()));

  CHECK(b.grid.base_resolution == a.grid.base_resolution);
  CHECK(b.grid.max_levels == a.grid.max_levels);
  CHECK(b.grid.initial_refine_x == a.grid.initial_refine_x);
  CHECK(b.grid.static_hierarchy == a.grid.static_hierarchy);
  CHECK(b.physics.conduction_k == a.physics.conduction_k);
  CHECK(b.physics.E0 == a.physics.E0);
  CHECK(b.physics.robin_R_xlo == a.physics.robin_R_xlo);
  CHECK(b.physics.robin_R_xhi == a.physics.robin_R_xhi);
  CHECK(b.material_preset == a.material_preset);
  CHECK(b.controller.kind == a.controller.kind);
  CHECK(b.eps_t_auto == a.eps_t_auto);
  CHECK(b.controller.eps_t == a.controller.eps_t);
  CHECK(b.controller.dt_initial == a.controller.dt_initial);
  CHECK(b.controller.dt_min == a.controller.dt_min);
  CHECK(b.controller.dt_max == a.controller.dt_max);
  CHECK(b.controller.ratio_min == a.controller.ratio_min);
  CHECK(b.controller.ratio_max == a.controller.ratio_max);
  CHECK(b.controller.reject_factor == a.controller.reject_factor);
  CHECK(b.controller.scaling.eta_E == a.controller.scaling.eta_E);
  CHECK(b.controller.scaling.eta_T == a.controller.scaling.eta_T);
  CHECK(b.solver.max_newton_iters == a.solver.max_newton_iters);
  CHECK(b.solver.max_krylov_dim == a.solver.max_krylov_dim);
  CHECK(b.solver.rel_tol == a.solver.rel_tol);
  CHECK(b.solver.abs_tol == a.solver.abs_tol);
  CHECK(b.solver.eisenstat_walker == a.solver.eisenstat_walker);
  CHECK(b.solver.fixed_eta == a.solver.fixed_eta);
  CHECK(b.solver.ew_gamma == a.solver.ew_gamma);
  CHECK(b.solver.eta_max == a.solver.eta_max);
  CHECK(b.solver.u_min == a.solver.u_min);
  CHECK(b.solver.theta == a.solver.theta);
  CHECK(b.solver.lambda_min == a.solver.lambda_min);
  CHECK(b.fac.pre_sweeps == a.fac.pre_sweeps);
  CHECK(b.fac.post_sweeps == a.fac.post_sweeps);
  CHECK(b.fac.coarse_sweeps == a.fac.coarse_sweeps);
  CHECK(b.regrid.interval == a.regrid.interval);
  CHECK(b.regrid.tau_c == a.regrid.tau_c);
  CHECK(b.regrid.tau_g == a.regrid.tau_g);
  CHECK(b.regrid.min_patch == a.regrid.min_patch);
  CHECK(b.regrid.efficiency == a.regrid.efficiency);
  CHECK(b.regrid.buffer_cells == a.regrid.buffer_cells);
  CHECK(b.t_final == a.t_final);
  CHECK(b.threads == a.threads);
  CHECK(b.output.snapshot_dt == a.output.snapshot_dt);
}

TEST_CASE("config text keeps unknown keys, comments drop out") {
  ConfigMap m = ConfigMap::parse(
      "# run setup\n"
      "alpha.beta = 7\n"
      "\n"
      "custom.flag = true\n"
      "custom.name = hello\n");
  CHECK(m.kv.size() == 3);
  CHECK(m.get_int("alpha.beta", 0) == 7);
  CHECK(m.get_bool("custom.flag", false) == true);
  CHECK(m.get_str("custom.name", "") == "hello");
  CHECK(m.get_real("not.there", 1.5) == 1.5);

  ConfigMap again = ConfigMap::parse(m.dump());
  CHECK(again.kv == m.kv);

  fs::path dir = tmp_dir("config");
  fs::path file = dir / "run.cfg";
  m.save(file.string());
  ConfigMap loaded = ConfigMap::load(file.string());
  CHECK(loaded.kv == m.kv);
}

TEST_CASE("material presets match the documented geometry") {
  MaterialMap two = preset_marshak_two_material().material_map();
  CHECK(two.background_z == 1.0);
  REQUIRE(two.regions.size() == 3);

  auto z = [&](double x, double y, double zz) { return two.z_at(x, y, zz); };
  // center obstacle [0.0625,0.2] x [0.375,0.625]^2
  CHECK(z(0.1, 0.5, 0.5) == 10.0);
  CHECK(z(0.19, 0.4, 0.6) == 10.0);
  CHECK(z(0.0625, 0.375, 0.625) == 10.0);  // region faces are inclusive
  CHECK(z(0.2, 0.5, 0.5) == 10.0);
  // walls [0.125,0.375] x [0,1] x [0,0.125] and z-mirrored
  CHECK(z(0.25, 0.5, 0.0625) == 10.0);
  CHECK(z(0.3, 0.9, 0.05) == 10.0);
  CHECK(z(0.25, 0.5, 0.9375) == 10.0);
  CHECK(z(0.3, 0.1, 0.95) == 10.0);
  // background elsewhere, including between the walls
  CHECK(z(0.5, 0.5, 0.5) == 1.0);
  CHECK(z(0.05, 0.5, 0.5) == 1.0);
  CHECK(z(0.25, 0.5, 0.5) == 1.0);
  CHECK(z(0.021, 0.98, 0.43) == 1.0);

  MaterialMap one = preset_marshak_single_material().material_map();
  CHECK(one.regions.empty());
  CHECK(one.z_at(0.1, 0.2, 0.3) == 1.0);

  CHECK_THROWS([] {
    RunConfig c;
    c.material_preset = "granite";
    c.material_map();
  }());

  // sampled field agrees with the map at every center, ghosts included
  std::mt19937 rng(7);
  Hierarchy h = ts::random_two_level(rng, 16);
  MaterialField f;
  f.build(h, two);
  long long bad = 0;
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    for (std::size_t p = 0; p < lev.patches.size(); ++p) {
      const IndexBox g = lev.patches[p].box.grown(1);
      for (int k = g.lo[2]; k <= g.hi[2]; ++k)
        for (int j = g.lo[1]; j <= g.hi[1]; ++j)
          for (int i = g.lo[0]; i <= g.hi[0]; ++i) {
            double want = two.z_at(lev.cell_center(0, i, h.domain.bounds),
                                   lev.cell_center(1, j, h.domain.bounds),
                                   lev.cell_center(2, k, h.domain.bounds));
            if (f.patch(l, int(p))(i, j, k) != want) ++bad;
          }
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("snapshots round trip bitwise") {
  std::mt19937 rng(11);
  Hierarchy h = ts::random_two_level(rng, 16);
  CompositeState u(h);
  std::uniform_real_distribution<double> U(0.2, 3.0);
  for (int l = 1; l <= h.num_levels(); ++l)
    for (std::size_t p = 0; p < h.level(l).patches.size(); ++p) {
      const IndexBox& b = h.level(l).patches[p].box;
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            u.E.patch(l, int(p))(i, j, k) = U(rng);
            u.T.patch(l, int(p))(i, j, k) = U(rng);
          }
    }

  fs::path dir = tmp_dir("snapshot");
  std::string path = (dir / "state.amr").string();
  write_snapshot(path, h, u, 42, 0.0375);
  Snapshot s = read_snapshot(path);

  CHECK(s.step == 42);
  CHECK(s.time == 0.0375);
  CHECK(s.hier.domain.base_resolution == h.domain.base_resolution);
  REQUIRE(s.hier.num_levels() == h.num_levels());
  for (int l = 1; l <= h.num_levels(); ++l) {
    REQUIRE(s.hier.level(l).patches.size() == h.level(l).patches.size());
    for (std::size_t p = 0; p < h.level(l).patches.size(); ++p) {
      CHECK(s.hier.level(l).patches[p].box.lo == h.level(l).patches[p].box.lo);
      CHECK(s.hier.level(l).patches[p].box.hi == h.level(l).patches[p].box.hi);
    }
  }

  long long diff = 0;
  for (int l = 1; l <= h.num_levels(); ++l)
    for (std::size_t p = 0; p < h.level(l).patches.size(); ++p) {
      const IndexBox& b = h.level(l).patches[p].box;
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            if (s.u.E.patch(l, int(p))(i, j, k) !=
                u.E.patch(l, int(p))(i, j, k))
              ++diff;
            if (s.u.T.patch(l, int(p))(i, j, k) !=
                u.T.patch(l, int(p))(i, j, k))
              ++diff;
          }
    }
  CHECK(diff == 0);
}

TEST_CASE("study tables format and look up values") {
  StudyTable t;
  t.title = "demo";
  t.columns = {"a", "bb"};
  t.rows = {{"r1", {1.5, 0.002}}, {"long_label", {3.0, 4.0}}};

  CHECK(t.to_csv() == "case,a,bb\nr1,1.5,0.002\nlong_label,3,4\n");
  CHECK(t.value("r1", "bb") == 0.002);
  CHECK(t.value("long_label", "a") == 3.0);
  CHECK_THROWS(t.value("r1", "missing"));
  CHECK_THROWS(t.value("nope", "a"));

  std::string s = t.format();
  CHECK(s.substr(0, 4) == "demo");
  CHECK(s.find("long_label") != std::string::npos);
  CHECK(s.find("0.002") != std::string::npos);
}

TEST_CASE("valid-cell flattening and uniform-grid distance identities") {
  std::mt19937 rng(3);
  Hierarchy h = ts::random_two_level(rng, 16);
  CompositeScalar f(h);
  f.fill(1.0);

  std::vector<double> flat;
  flatten_valid(h, f, 32, flat);
  REQUIRE(flat.size() == std::size_t(32) * 32 * 32);
  long long off = 0;
  for (double v : flat)
    if (v != 1.0) ++off;
  CHECK(off == 0);
  CHECK_THROWS(flatten_valid(h, f, 48, flat));

  CHECK(uniform_l2_diff(flat, 32, flat, 32) == 0.0);

  std::vector<double> a(8, 2.0), b(8, 2.75);
  CHECK(uniform_l2_diff(a, 2, b, 2) == doctest::Approx(0.75).epsilon(1e-14));

  // the finer side is averaged down before comparing
  std::vector<double> coarse(1, 5.0);
  std::vector<double> fine{1, 2, 3, 4, 5, 6, 7, 8};  // mean 4.5
  CHECK(uniform_l2_diff(coarse, 1, fine, 2) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(uniform_l2_diff(fine, 2, coarse, 1) ==
        uniform_l2_diff(coarse, 1, fine, 2));
}

TEST_CASE("a short adaptive run writes consistent artifacts") {
  RunConfig cfg = preset_marshak_single_material();
  cfg.grid.base_resolution = 8;
  cfg.grid.max_levels = 2;
  cfg.regrid.interval = 2;
  cfg.t_final = 1e-3;
  cfg.output.snapshot_dt = 5e-4;

  fs::path dir = tmp_dir("run_ok");
  REQUIRE(run_simulation(cfg, dir.string()) == 0);

  auto rows = parse_steps(slurp(dir / "steps.csv"));
  REQUIRE(!rows.empty());

  long long accepted = 0;
  double last_t = 0.0;
  std::vector<long long> flagged_steps;
  for (const StepRow& r : rows) {
    CHECK(r.dt > 0.0);
    CHECK(r.newton >= 1);
    CHECK(r.gmres >= 0);
    CHECK(r.dofs > 0);
    CHECK(r.dofs % 2 == 0);
    CHECK(r.levels >= 1);
    CHECK(r.levels <= 2);
    CHECK((r.flag == 0 || r.flag == 1));
    CHECK((r.accepted == 0 || r.accepted == 1));
    if (r.accepted) {
      ++accepted;
      CHECK(r.step == accepted);
      CHECK(r.t > last_t);
      last_t = r.t;
      if (r.flag) flagged_steps.push_back(r.step);
    }
  }
  CHECK(last_t == doctest::Approx(cfg.t_final).epsilon(1e-12));

  auto rlines = lines_of(slurp(dir / "regrid.csv"));
  REQUIRE(!rlines.empty());
  CHECK(rlines[0] == kRegridHeader);
  REQUIRE(rlines.size() == 1 + flagged_steps.size());
  for (std::size_t r = 1; r < rlines.size(); ++r) {
    auto f = fields_of(rlines[r]);
    REQUIRE(f.size() == 5);
    CHECK(std::stoll(f[0]) == flagged_steps[r - 1]);
    int lv = std::stoi(f[2]);
    CHECK(lv >= 1);
    CHECK(lv <= 2);
    CHECK(std::stoll(f[3]) > 0);
    double frac = std::stod(f[4]);
    CHECK(frac > 0.0);
    CHECK(frac <= 1.0 + 1e-12);
  }

  auto sum = parse_kv(slurp(dir / "summary.txt"));
  CHECK(sum.at("status") == "ok");
  CHECK(std::stoll(sum.at("steps_accepted")) == accepted);
  CHECK(std::stoll(sum.at("regrids")) == (long long)flagged_steps.size());
  CHECK(std::stod(sum.at("final_time")) ==
        doctest::Approx(cfg.t_final).epsilon(1e-6));
  CHECK(std::stod(sum.at("min_E")) > 0.0);
  CHECK(std::stod(sum.at("min_T")) > 0.0);
  CHECK(std::stod(sum.at("avg_newton")) >= 1.0);

  fs::path snaps = dir / "snapshots";
  CHECK(fs::exists(snaps / "step_000000.amr"));
  char last_name[48];
  std::snprintf(last_name, sizeof last_name, "step_%06lld.amr",
                (long long)accepted);
  REQUIRE(fs::exists(snaps / last_name));
  long long n_snaps = 0;
  for (const auto& e : fs::directory_iterator(snaps)) {
    (void)e;
    ++n_snaps;
  }
  CHECK(n_snaps >= 2);
  CHECK(n_snaps <= accepted + 1);

  Snapshot fin = read_snapshot((snaps / last_name).string());
  CHECK(fin.step == accepted);
  CHECK(fin.time == doctest::Approx(cfg.t_final).epsilon(1e-12));
}

TEST_CASE("a zero-length run emits only the initial state") {
  RunConfig cfg = preset_marshak_single_material();
  cfg.grid.base_resolution = 8;
  cfg.grid.max_levels = 1;
  cfg.t_final = 0.0;

  fs::path dir = tmp_dir("run_zero");
  REQUIRE(run_simulation(cfg, dir.string()) == 0);

  auto slines = lines_of(slurp(dir / "steps.csv"));
  REQUIRE(slines.size() == 1);
  CHECK(slines[0] == kStepsHeader);
  auto rlines = lines_of(slurp(dir / "regrid.csv"));
  REQUIRE(rlines.size() == 1);
  CHECK(rlines[0] == kRegridHeader);

  auto sum = parse_kv(slurp(dir / "summary.txt"));
  CHECK(sum.at("status") == "ok");
  CHECK(sum.at("steps_accepted") == "0");
  CHECK(std::stod(sum.at("final_time")) == 0.0);

  fs::path snaps = dir / "snapshots";
  long long n_snaps = 0;
  for (const auto& e : fs::directory_iterator(snaps)) {
    (void)e;
    ++n_snaps;
  }
  CHECK(n_snaps == 1);
  Snapshot s = read_snapshot((snaps / "step_000000.amr").string());
  CHECK(s.step == 0);
  CHECK(s.time == 0.0);
  const double T0 = std::pow(cfg.physics.E0, 0.25);
  long long off = 0;
  for (int l = 1; l <= s.hier.num_levels(); ++l)
    for (std::size_t p = 0; p < s.hier.level(l).patches.size(); ++p) {
      const IndexBox& b = s.hier.level(l).patches[p].box;
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            if (s.u.E.patch(l, int(p))(i, j, k) != cfg.physics.E0) ++off;
            if (s.u.T.patch(l, int(p))(i, j, k) != T0) ++off;
          }
    }
  CHECK(off == 0);
}

TEST_CASE("thread count changes no artifact byte") {
  RunConfig cfg = preset_marshak_two_material();
  cfg.grid.base_resolution = 8;
  cfg.grid.max_levels = 2;
  cfg.regrid.interval = 2;
  cfg.t_final = 1e-3;
  cfg.output.snapshot_dt = 0.0;  // initial and final snapshots only

  fs::path da = tmp_dir("threads1");
  fs::path db = tmp_dir("threads4");
  cfg.threads = 1;
  REQUIRE(run_simulation(cfg, da.string()) == 0);
  cfg.threads = 4;
  REQUIRE(run_simulation(cfg, db.string()) == 0);
  set_num_threads(1);

  CHECK(slurp(da / "steps.csv") == slurp(db / "steps.csv"));
  CHECK(slurp(da / "regrid.csv") == slurp(db / "regrid.csv"));
  CHECK(slurp(da / "summary.txt") == slurp(db / "summary.txt"));

  std::vector<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(da / "snapshots"))
    names_a.push_back(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(db / "snapshots"))
    names_b.push_back(e.path().filename().string());
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  REQUIRE(names_a == names_b);
  for (const std::string& n : names_a)
    CHECK(slurp(da / "snapshots" / n) == slurp(db / "snapshots" / n));
}

TEST_CASE("the radiation front is bounded, monotone, and advancing") {
  RunConfig cfg = preset_marshak_single_material();
  cfg.grid.base_resolution = 16;
  cfg.grid.max_levels = 1;

  // the wave has a long induction phase: the wall layer heats slowly until
  // the opacity collapses and the front ignites around t = 0.3
  Simulation sim(cfg);
  sim.initialize();
  sim.advance_to(0.15);
  CompositeState u1 = sim.state_composite();
  sim.advance_to(0.3);
  CompositeState u2 = sim.state_composite();

  const Array3& E1 = u1.E.patch(1, 0);
  const Array3& E2 = u2.E.patch(1, 0);
  const Array3& T2 = u2.T.patch(1, 0);
  const int n = 16, jc = 8, kc = 8;

  for (int i = 0; i < n; ++i) {
    CHECK(E2(i, jc, kc) > 0.0);
    CHECK(E2(i, jc, kc) < 1.5);
    CHECK(T2(i, jc, kc) > 0.0);
    CHECK(T2(i, jc, kc) < 1.2);
  }
  // the driven half only gains energy; the vacuum face at x = 1 leaks
  for (int i = 0; i < n / 2; ++i)
    CHECK(E2(i, jc, kc) >= E1(i, jc, kc) * (1.0 - 1e-9));
  // profile decays away from the driven x = 0 face
  for (int i = 0; i + 1 < n; ++i) {
    CHECK(E2(i + 1, jc, kc) <= E2(i, jc, kc) * (1.0 + 1e-9));
    CHECK(T2(i + 1, jc, kc) <= T2(i, jc, kc) * (1.0 + 1e-9));
  }
  CHECK(E2(0, jc, kc) > 0.05);      // wall layer well developed
  CHECK(E2(n - 1, jc, kc) < 1e-3);  // far field still cold
  // slow drain through the vacuum boundary
  CHECK(E2(n - 1, jc, kc) < cfg.physics.E0);
  CHECK(E2(n - 1, jc, kc) > 0.9 * cfg.physics.E0);
}

TEST_CASE("the two-material solution keeps its mirror symmetries") {
  RunConfig cfg = preset_marshak_two_material();
  cfg.grid.base_resolution = 16;
  cfg.grid.max_levels = 2;
  cfg.grid.static_hierarchy = true;

  Simulation sim(cfg);
  sim.initialize();
  sim.advance_to(0.005);
  CompositeState u = sim.state_composite();
  const Hierarchy& h = sim.hierarchy();

  double emax = 0.0, tmax = 0.0;
  for (int l = 1; l <= h.num_levels(); ++l)
    for (std::size_t p = 0; p < h.level(l).patches.size(); ++p) {
      const IndexBox& b = h.level(l).patches[p].box;
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            emax = std::max(emax, u.E.patch(l, int(p))(i, j, k));
            tmax = std::max(tmax, u.T.patch(l, int(p))(i, j, k));
          }
    }
  REQUIRE(emax > 0.0);

  long long bad = 0;
  for (int l = 1; l <= h.num_levels(); ++l) {
    const int nl = cfg.grid.base_resolution << (l - 1);
    for (std::size_t p = 0; p < h.level(l).patches.size(); ++p) {
      const IndexBox& b = h.level(l).patches[p].box;
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            const int jm = nl - 1 - j, km = nl - 1 - k;
            const int qy = h.owner_patch(l, i, jm, k);
            const int qz = h.owner_patch(l, i, j, km);
            REQUIRE(qy >= 0);
            REQUIRE(qz >= 0);
            const double e = u.E.patch(l, int(p))(i, j, k);
            const double t = u.T.patch(l, int(p))(i, j, k);
            if (std::abs(e - u.E.patch(l, qy)(i, jm, k)) > 1e-7 * emax) ++bad;
            if (std::abs(e - u.E.patch(l, qz)(i, j, km)) > 1e-7 * emax) ++bad;
            if (std::abs(t - u.T.patch(l, qy)(i, jm, k)) > 1e-7 * tmax) ++bad;
            if (std::abs(t - u.T.patch(l, qz)(i, j, km)) > 1e-7 * tmax) ++bad;
          }
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("invalid configurations are rejected up front") {
  auto broken = [](auto&& tweak) {
    RunConfig c;
    tweak(c);
    return c;
  };
  CHECK_THROWS(
      broken([](RunConfig& c) { c.grid.base_resolution = 2; }).validate());
  CHECK_THROWS(broken([](RunConfig& c) { c.grid.max_levels = 0; }).validate());
  CHECK_THROWS(broken([](RunConfig& c) { c.grid.max_levels = 9; }).validate());
  CHECK_THROWS(broken([](RunConfig& c) { c.t_final = -1.0; }).validate());
  CHECK_THROWS(broken([](RunConfig& c) { c.threads = 0; }).validate());
  CHECK_THROWS(
      broken([](RunConfig& c) { c.regrid.interval = 0; }).validate());
  CHECK_THROWS(
      broken([](RunConfig& c) { c.regrid.efficiency = 1.5; }).validate());
  CHECK_THROWS(
      broken([](RunConfig& c) { c.controller.dt_initial = 0.0; }).validate());
  CHECK_THROWS(broken([](RunConfig& c) {
                 c.controller.dt_min = 1e-3;
                 c.controller.dt_max = 1e-6;
               }).validate());
  CHECK_THROWS(
      broken([](RunConfig& c) { c.material_preset = "granite"; }).validate());

  ConfigMap m;
  m.set_str("controller.kind", "rk4");
  CHECK_THROWS(RunConfig::from_config(m));

  // the artifact entry point validates before producing any report
  RunConfig bad;
  bad.grid.base_resolution = 2;
  fs::path dir = tmp_dir("run_invalid");
  CHECK_THROWS(run_simulation(bad, dir.string()));
  CHECK(!fs::exists(dir / "summary.txt"));
}

TEST_CASE("an unsolvable step fails over to an error report") {
  RunConfig cfg = preset_marshak_single_material();
  cfg.grid.base_resolution = 8;
  cfg.grid.max_levels = 1;
  cfg.t_final = 1e-3;
  // one Newton iteration can never reach this tolerance, and with the floor
  // at the initial step size the very first retry is already fatal
  cfg.solver.rel_tol = 1e-16;
  cfg.solver.abs_tol = 1e-16;
  cfg.solver.max_newton_iters = 1;
  cfg.controller.dt_min = cfg.controller.dt_initial;

  fs::path dir = tmp_dir("run_fail");
  CHECK(run_simulation(cfg, dir.string()) == 1);

  auto slines = lines_of(slurp(dir / "summary.txt"));
  REQUIRE(!slines.empty());
  CHECK(slines[0] == "status = error");
  bool has_error_line = false;
  for (const std::string& ln : slines)
    if (ln.rfind("error = ", 0) == 0 && ln.size() > 8) has_error_line = true;
  CHECK(has_error_line);
  auto sum = parse_kv(slurp(dir / "summary.txt"));
  CHECK(sum.at("steps_accepted") == "0");
  CHECK(sum.at("solver_retries") == "1");

  auto rows = parse_steps(slurp(dir / "steps.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].accepted == 0);
  CHECK(rows[0].step == 1);
  CHECK(rows[0].dt == doctest::Approx(cfg.controller.dt_initial));
  CHECK(rows[0].newton >= 1);

  auto rlines = lines_of(slurp(dir / "regrid.csv"));
  CHECK(rlines.size() == 1);

  // the pre-failure state was still flushed
  CHECK(fs::exists(dir / "snapshots" / "step_000000.amr"));
  long long n_snaps = 0;
  for (const auto& e : fs::directory_iterator(dir / "snapshots")) {
    (void)e;
    ++n_snaps;
  }
  CHECK(n_snaps == 1);
}
