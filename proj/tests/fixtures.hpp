#pragma once

#include <vector>

#include "stackcut/model.hpp"

namespace stackcut::testing {

// Four intervals whose overlap graph is a 4-cycle 1-2-3-4 plus the chord {1, 3}:
// [0,8], [2,10], [4,12] pairwise overlap; [1,11] contains [2,10] and overlaps
// the other two. Coloring {1,3} vs {2,4} cuts four of the five edges.
inline std::vector<Interval> figure1_instance() {
  return {Interval::from_endpoints(0, 8), Interval::from_endpoints(2, 10),
          Interval::from_endpoints(4, 12), Interval::from_endpoints(1, 11)};
}

inline std::vector<int> figure1_coloring() { return {1, 2, 1, 2}; }

}  // namespace stackcut::testing
