#include "samrad/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace samrad {

std::string StudyTable::format() const {
  std::vector<std::size_t> w(columns.size() + 1, 0);
  w[0] = 4;
  for (const StudyRow& r : rows) w[0] = std::max(w[0], r.label.size());
  std::vector<std::vector<std::string>> cells;
  char buf[48];
  for (const StudyRow& r : rows) {
    std::vector<std::string> line;
    for (double v : r.values) {
      std::snprintf(buf, sizeof buf, "%.6g", v);
      line.push_back(buf);
    }
    cells.push_back(std::move(line));
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    w[c + 1] = columns[c].size();
    for (const auto& line : cells)
      if (c < line.size()) w[c + 1] = std::max(w[c + 1], line[c].size());
  }
  std::ostringstream os;
  os << title << "\n";
  os << std::string(w[0], ' ');
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << "  " << std::string(w[c + 1] - columns[c].size(), ' ') << columns[c];
  os << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << rows[r].label << std::string(w[0] - rows[r].label.size(), ' ');
    for (std::size_t c = 0; c < cells[r].size(); ++c)
      os << "  " << std::string(w[c + 1] - cells[r][c].size(), ' ')
         << cells[r][c];
    os << "\n";
  }
  return os.str();
}

std::string StudyTable::to_csv() const {
  std::ostringstream os;
  os << "case";
  for (const std::string& c : columns) os << "," << c;
  os << "\n";
  char buf[48];
  for (const StudyRow& r : rows) {
    os << r.label;
    for (double v : r.values) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      os << "," << buf;
    }
    os << "\n";
  }
  return os.str();
}

double StudyTable::value(const std::string& row, const std::string& col) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != col) continue;
    for (const StudyRow& r : rows)
      if (r.label == row && c < r.values.size()) return r.values[c];
  }
  fail("study table has no entry (" + row + ", " + col + ")");
}

void flatten_valid(const Hierarchy& h, const CompositeScalar& f,
                   int target_res, std::vector<double>& out) {
  out.assign(std::size_t(target_res) * target_res * target_res, 0.0);
  auto at = [&](int i, int j, int k) -> double& {
    return out[std::size_t(i) +
               std::size_t(target_res) *
                   (std::size_t(j) + std::size_t(target_res) * std::size_t(k))];
  };
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    const int res = lev.domain_box.extent(0);
    if (target_res % res != 0) fail("flatten: incompatible resolutions");
    const int s = target_res / res;
    for (std::size_t p = 0; p < lev.patches.size(); ++p) {
      const IndexBox& b = lev.patches[p].box;
      const Mask3& cov = h.covered_mask(l, int(p));
      const Array3& a = f.patch(l, int(p));
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            if (cov(i, j, k)) continue;
            const double v = a(i, j, k);
            for (int kk = 0; kk < s; ++kk)
              for (int jj = 0; jj < s; ++jj)
                for (int ii = 0; ii < s; ++ii)
                  at(i * s + ii, j * s + jj, k * s + kk) = v;
          }
    }
  }
}

namespace {

void average_down(const std::vector<double>& fine, int nf, int r,
                  std::vector<double>& out) {
  const int nc = nf / r;
  out.assign(std::size_t(nc) * nc * nc, 0.0);
  const double w = 1.0 / (double(r) * r * r);
  auto fa = [&](int i, int j, int k) {
    return fine[std::size_t(i) +
                std::size_t(nf) * (std::size_t(j) + std::size_t(nf) * k)];
  };
  for (int k = 0; k < nc; ++k)
    for (int j = 0; j < nc; ++j)
      for (int i = 0; i < nc; ++i) {
        double s = 0.0;
        for (int kk = 0; kk < r; ++kk)
          for (int jj = 0; jj < r; ++jj)
            for (int ii = 0; ii < r; ++ii)
              s += fa(i * r + ii, j * r + jj, k * r + kk);
        out[std::size_t(i) +
            std::size_t(nc) * (std::size_t(j) + std::size_t(nc) * k)] = s * w;
      }
}

}  // namespace

double uniform_l2_diff(const std::vector<double>& a, int na,
                       const std::vector<double>& b, int nb) {
  const std::vector<double>* pa = &a;
  const std::vector<double>* pb = &b;
  std::vector<double> tmp;
  int n = na;
  if (na != nb) {
    if (na > nb) {
      if (na % nb != 0) fail("l2 diff: incompatible resolutions");
      average_down(a, na, na / nb, tmp);
      pa = &tmp;
      n = nb;
    } else {
      if (nb % na != 0) fail("l2 diff: incompatible resolutions");
      average_down(b, nb, nb / na, tmp);
      pb = &tmp;
      n = na;
    }
  }
  const std::vector<double>& x = *pa;
  const std::vector<double>& y = *pb;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s / (double(n) * n * n));
}

namespace {

struct CaseRun {
  RunSummary summary;
  std::vector<double> E, T;  // flattened at the case's finest resolution
  int res = 0;
  std::vector<double> accepted_dts;
};

RunConfig case_config(const RunConfig& base, const GridCase& gc) {
  RunConfig c = base;
  c.grid.base_resolution = gc.base;
  c.grid.max_levels = gc.levels;
  return c;
}

CaseRun run_case(const RunConfig& cfg, double t_final, double fixed_dt,
                 const std::vector<double>* schedule,
                 const std::vector<double>& sample_times,
                 std::vector<std::vector<double>>* samples_E,
                 std::vector<std::vector<double>>* samples_T) {
  Simulation sim(cfg);
  if (fixed_dt > 0.0) sim.set_fixed_dt(fixed_dt);
  if (schedule) sim.set_dt_schedule(*schedule);
  sim.initialize();
  CaseRun out;
  out.res = cfg.effective_resolution();
  for (double st : sample_times) {
    sim.advance_to(st);
    const CompositeState s = sim.state_composite();
    std::vector<double> fe, ft;
    flatten_valid(sim.hierarchy(), s.E, out.res, fe);
    flatten_valid(sim.hierarchy(), s.T, out.res, ft);
    if (samples_E) samples_E->push_back(std::move(fe));
    if (samples_T) samples_T->push_back(std::move(ft));
  }
  sim.advance_to(t_final);
  const CompositeState s = sim.state_composite();
  flatten_valid(sim.hierarchy(), s.E, out.res, out.E);
  flatten_valid(sim.hierarchy(), s.T, out.res, out.T);
  for (const StepRecord& r : sim.history())
    if (r.accepted) out.accepted_dts.push_back(r.dt);
  out.summary = sim.summarize();
  return out;
}

std::string dt_label(double dt) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "dt=%.3g", dt);
  return buf;
}

}  // namespace

StudyTable study_temporal(const RunConfig& base, const TemporalStudyConfig& sc) {
  StudyTable t;
  t.title = "temporal L2 errors vs dt=" + std::to_string(sc.dt_ref) +
            " reference";
  for (double st : sc.sample_times) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "E@t=%g", st);
    t.columns.push_back(buf);
    std::snprintf(buf, sizeof buf, "T@t=%g", st);
    t.columns.push_back(buf);
  }

  const double horizon = sc.sample_times.back();
  std::vector<std::vector<double>> refE, refT;
  run_case(base, horizon, sc.dt_ref, nullptr, sc.sample_times, &refE, &refT);
  const int res = base.effective_resolution();

  for (double dt : sc.dts) {
    std::vector<std::vector<double>> cE, cT;
    run_case(base, horizon, dt, nullptr, sc.sample_times, &cE, &cT);
    StudyRow row;
    row.label = dt_label(dt);
    for (std::size_t s = 0; s < sc.sample_times.size(); ++s) {
      row.values.push_back(uniform_l2_diff(cE[s], res, refE[s], res));
      row.values.push_back(uniform_l2_diff(cT[s], res, refT[s], res));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

StudyTable study_spatial(const RunConfig& base, const SpatialStudyConfig& sc) {
  StudyTable t;
  t.title = "spatial L2 errors at t=" + std::to_string(sc.t_final) + " vs " +
            sc.reference.label() + " reference";
  t.columns = {"err_E", "err_T", "steps"};

  const std::vector<double> no_samples;
  std::vector<CaseRun> amr;
  for (const GridCase& gc : sc.amr_cases)
    amr.push_back(run_case(case_config(base, gc), sc.t_final, 0.0, nullptr,
                           no_samples, nullptr, nullptr));

  const std::vector<double>& replay = amr.back().accepted_dts;
  CaseRun uni = run_case(case_config(base, sc.uniform_match), sc.t_final, 0.0,
                         &replay, no_samples, nullptr, nullptr);
  CaseRun ref = run_case(case_config(base, sc.reference), sc.t_final, 0.0,
                         &replay, no_samples, nullptr, nullptr);

  auto add_row = [&](const std::string& label, const CaseRun& c) {
    StudyRow row;
    row.label = label;
    row.values.push_back(uniform_l2_diff(c.E, c.res, ref.E, ref.res));
    row.values.push_back(uniform_l2_diff(c.T, c.res, ref.T, ref.res));
    row.values.push_back(double(c.summary.steps_accepted));
    t.rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < sc.amr_cases.size(); ++i)
    add_row(sc.amr_cases[i].label(), amr[i]);
  add_row(sc.uniform_match.label(), uni);
  return t;
}

StudyTable study_efficiency(const RunConfig& base,
                            const EfficiencyStudyConfig& sc) {
  StudyTable t;
  t.title = "solver statistics to t=" + std::to_string(sc.t_final);
  t.columns = {"eff_res", "steps",    "rejected",    "avg_newton",
               "avg_gmres", "regrids", "dof_fraction"};
  const std::vector<double> no_samples;
  for (const GridCase& gc : sc.cases) {
    const RunConfig cfg = case_config(base, gc);
    const CaseRun c = run_case(cfg, sc.t_final, 0.0, nullptr, no_samples,
                               nullptr, nullptr);
    StudyRow row;
    row.label = gc.label();
    row.values = {double(cfg.effective_resolution()),
                  double(c.summary.steps_accepted),
                  double(c.summary.steps_rejected),
                  c.summary.avg_newton,
                  c.summary.avg_gmres,
                  double(c.summary.regrids),
                  c.summary.dof_fraction};
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace samrad
