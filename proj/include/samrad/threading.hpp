#ifndef SAMRAD_THREADING_HPP
#define SAMRAD_THREADING_HPP

#include <cstdint>
#include <functional>

namespace samrad {

// Worker count for parallel_for_items; 1 runs everything inline. Reductions
// elsewhere combine fixed-size block partials in index order, so results are
// bitwise identical for every thread count.
void set_num_threads(int n);
int num_threads();

// Runs body(i) for i in [0,n); items must be independent.
void parallel_for_items(std::int64_t n,
                        const std::function<void(std::int64_t)>& body);

}  // namespace samrad

#endif
