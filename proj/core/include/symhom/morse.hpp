#pragma once

#include <string>
#include <vector>

#include "symhom/complexes.hpp"
#include "symhom/homology.hpp"

namespace symhom::chainalg {

// A nondegenerate critical point of a Morse function: its name, Morse index,
// and critical value.
struct CriticalPoint {
  std::string id;
  int index = 0;
  double value = 0.0;
};

// Signed count of gradient trajectories flowing from one critical point down
// to another (index difference must be 1 and the value must strictly drop).
struct TrajectoryCount {
  std::string from;
  std::string to;
  long long count = 0;
};

// Encodes the Morse data as a filtered cochain complex (degree = -index,
// action = -value) so all chain-level machinery applies unchanged.
// Throws std::invalid_argument when the data is inconsistent: unknown point
// names, index difference != 1, value not strictly decreasing along a
// trajectory, or a squared differential that fails to vanish (the error
// names an offending pair of critical points).
FilteredComplex morse_complex(const std::vector<CriticalPoint>& points,
                              const std::vector<TrajectoryCount>& counts);

// Morse homology keyed by Morse index (re-keys the cochain result back
// through index = -degree).
HomologyTable morse_homology(const std::vector<CriticalPoint>& points,
                             const std::vector<TrajectoryCount>& counts);

}  // namespace symhom::chainalg
