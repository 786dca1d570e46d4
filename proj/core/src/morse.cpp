#include "symhom/morse.hpp"

#include <map>
#include <stdexcept>

namespace symhom::chainalg {

FilteredComplex morse_complex(const std::vector<CriticalPoint>& points,
                              const std::vector<TrajectoryCount>& counts) {
  std::map<std::string, int> pos;
  std::vector<Generator> gens;
  gens.reserve(points.size());
  for (const auto& p : points) {
    if (pos.count(p.id))
      throw std::invalid_argument("morse data: duplicate critical point '" +
                                  p.id + "'");
    pos[p.id] = static_cast<int>(gens.size());
    gens.push_back({p.id, -p.index, ActionValue::real(-p.value)});
  }

  std::map<std::pair<int, int>, long long> merged;
  for (const auto& t : counts) {
    auto itf = pos.find(t.from);
    auto itt = pos.find(t.to);
    if (itf == pos.end())
      throw std::invalid_argument("morse data: unknown critical point '" +
                                  t.from + "'");
    if (itt == pos.end())
      throw std::invalid_argument("morse data: unknown critical point '" +
                                  t.to + "'");
    const CriticalPoint& pf = points[itf->second];
    const CriticalPoint& pt = points[itt->second];
    if (pf.index - pt.index != 1)
      throw std::invalid_argument(
          "morse data: trajectories '" + t.from + "' -> '" + t.to +
          "' must drop the index by exactly 1 (got " +
          std::to_string(pf.index) + " -> " + std::to_string(pt.index) + ")");
    if (!(pf.value > pt.value))
      throw std::invalid_argument("morse data: trajectory '" + t.from +
                                  "' -> '" + t.to +
                                  "' does not strictly decrease the value");
    merged[{itf->second, itt->second}] += t.count;
  }

  std::vector<DiffEntry> diff;
  for (const auto& [key, c] : merged)
    if (c != 0) diff.push_back({key.first, key.second, c});

  FilteredComplex c(gens, diff);
  ValidationReport rep = validate(c);
  if (!rep.ok) {
    std::string msg = "morse data inconsistent:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  return c;
}

HomologyTable morse_homology(const std::vector<CriticalPoint>& points,
                             const std::vector<TrajectoryCount>& counts) {
  HomologyTable cochain = homology(morse_complex(points, counts));
  HomologyTable by_index;
  for (const auto& [deg, g] : cochain) by_index[-deg] = g;
  return by_index;
}

}  // namespace symhom::chainalg
