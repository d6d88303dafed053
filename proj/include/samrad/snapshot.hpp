#ifndef SAMRAD_SNAPSHOT_HPP
#define SAMRAD_SNAPSHOT_HPP

#include <cstdint>
#include <string>

#include "samrad/field.hpp"
#include "samrad/hierarchy.hpp"

namespace samrad {

// .amr snapshot: a text header (magic, step, time, domain, per-level patch
// boxes, field names) followed by a "data" line and raw native-endian doubles,
// patch interiors x-fastest, E block then T block in level/patch order.
void write_snapshot(const std::string& path, const Hierarchy& h,
                    const CompositeState& u, std::int64_t step, double time);

struct Snapshot {
  Hierarchy hier;
  CompositeState u;
  std::int64_t step = 0;
  double time = 0.0;
};

Snapshot read_snapshot(const std::string& path);

}  // namespace samrad

#endif
