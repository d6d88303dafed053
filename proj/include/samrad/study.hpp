#ifndef SAMRAD_STUDY_HPP
#define SAMRAD_STUDY_HPP

#include <string>
#include <vector>

#include "samrad/simulation.hpp"

namespace samrad {

struct StudyRow {
  std::string label;
  std::vector<double> values;
};

struct StudyTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<StudyRow> rows;

  std::string format() const;        // aligned text
  std::string to_csv() const;
  double value(const std::string& row, const std::string& col) const;
};

// Piecewise-constant injection of the valid composite cells onto the uniform
// target_res^3 grid (target_res a power-of-two multiple of every level
// resolution), x fastest.
void flatten_valid(const Hierarchy& h, const CompositeScalar& f,
                   int target_res, std::vector<double>& out);

// Volume-weighted L2 distance over the unit cube between two uniform
// samplings; the finer one is conservatively averaged down first.
double uniform_l2_diff(const std::vector<double>& a, int na,
                       const std::vector<double>& b, int nb);

// Fixed-dt runs on one frozen grid against a small-dt reference; L2 errors of
// E and T at each sample time.
struct TemporalStudyConfig {
  std::vector<double> dts{2e-4, 1e-4, 5e-5};
  double dt_ref = 2.5e-5;
  std::vector<double> sample_times{0.02, 0.05};
};
StudyTable study_temporal(const RunConfig& base, const TemporalStudyConfig& sc);

struct GridCase {
  int base = 16;
  int levels = 1;
  std::string label() const {
    return std::to_string(base) + "b" + std::to_string(levels) + "l";
  }
};

// Adaptive runs across a resolution ladder; the finest case's accepted dt
// sequence is replayed by the equal-resolution uniform run and the reference,
// so reported errors differ only through the spatial discretization.
struct SpatialStudyConfig {
  std::vector<GridCase> amr_cases{{8, 1}, {8, 2}, {8, 3}};
  GridCase uniform_match{32, 1};  // same effective resolution as the finest
  GridCase reference{64, 1};
  double t_final = 0.05;
};
StudyTable study_spatial(const RunConfig& base, const SpatialStudyConfig& sc);

// Iteration and step-count statistics across a ladder of equal and mixed
// effective resolutions.
struct EfficiencyStudyConfig {
  std::vector<GridCase> cases{{16, 2}, {32, 1}, {16, 3}, {32, 2}, {64, 1}};
  double t_final = 0.05;
};
StudyTable study_efficiency(const RunConfig& base,
                            const EfficiencyStudyConfig& sc);

}  // namespace samrad

#endif
