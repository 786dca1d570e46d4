#include "symhom/complexes.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace symhom::chainalg {

FilteredComplex::FilteredComplex(std::vector<Generator> gens, std::vector<DiffEntry> diff)
    : gens_(std::move(gens)) {
  const int n = static_cast<int>(gens_.size());
  for (const auto& e : diff) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw std::invalid_argument("FilteredComplex: differential entry out of range");
    if (e.coeff == 0)
      throw std::invalid_argument("FilteredComplex: explicit zero coefficient");
    auto key = std::make_pair(e.src, e.dst);
    if (diff_.count(key))
      throw std::invalid_argument("FilteredComplex: duplicate differential entry");
    diff_[key] = e.coeff;
  }
}

long long FilteredComplex::coeff(int src, int dst) const {
  auto it = diff_.find({src, dst});
  return it == diff_.end() ? 0 : it->second;
}

int FilteredComplex::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[i].id == id) return i;
  return -1;
}

int FilteredComplex::min_degree() const {
  int d = 0;
  bool first = true;
  for (const auto& g : gens_) {
    if (first || g.degree < d) d = g.degree;
    first = false;
  }
  return d;
}

int FilteredComplex::max_degree() const {
  int d = 0;
  bool first = true;
  for (const auto& g : gens_) {
    if (first || g.degree > d) d = g.degree;
    first = false;
  }
  return d;
}

std::vector<int> FilteredComplex::degree_indices(int k) const {
  std::vector<int> v;
  for (int i = 0; i < size(); ++i)
    if (gens_[i].degree == k) v.push_back(i);
  return v;
}

IntMat FilteredComplex::delta_matrix(int k) const {
  auto src = degree_indices(k);
  auto dst = degree_indices(k + 1);
  IntMat m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (int j = 0; j < static_cast<int>(src.size()); ++j)
    for (int i = 0; i < static_cast<int>(dst.size()); ++i) {
      long long c = coeff(src[j], dst[i]);
      if (c != 0) m(i, j) = c;
    }
  return m;
}

ValidationReport validate(const FilteredComplex& c) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };

  std::set<std::string> seen;
  for (const auto& g : c.generators())
    if (!seen.insert(g.id).second) fail("duplicate generator id '" + g.id + "'");

  for (const auto& [key, coeff] : c.differential()) {
    const Generator& x = c.gen(key.first);
    const Generator& y = c.gen(key.second);
    (void)coeff;
    if (y.degree != x.degree + 1)
      fail("differential entry '" + x.id + "' -> '" + y.id +
           "' does not raise degree by one");
    if (y.action < x.action)
      fail("differential entry '" + x.id + "' -> '" + y.id +
           "' decreases action");
  }

  // delta^2 = 0, checked per generator pair two degrees apart
  for (int x = 0; x < c.size(); ++x) {
    std::map<int, long long> sq;  // target gen -> coefficient of delta(delta(x))
    for (const auto& [key, c1] : c.differential()) {
      if (key.first != x) continue;
      for (const auto& [key2, c2] : c.differential()) {
        if (key2.first != key.second) continue;
        sq[key2.second] += c1 * c2;
      }
    }
    for (const auto& [z, v] : sq)
      if (v != 0)
        fail("delta^2 != 0: coefficient " + std::to_string(v) + " from '" +
             c.gen(x).id + "' to '" + c.gen(z).id + "'");
  }
  return rep;
}

FilteredComplex truncate(const FilteredComplex& c, const ActionValue& a,
                         const ActionValue& b) {
  if (!(a < b)) throw std::invalid_argument("truncate: window requires a < b");
  std::vector<Generator> gens;
  std::vector<int> remap(c.size(), -1);
  for (int i = 0; i < c.size(); ++i) {
    const auto& g = c.gen(i);
    if (a < g.action && g.action <= b) {
      remap[i] = static_cast<int>(gens.size());
      gens.push_back(g);
    }
  }
  std::vector<DiffEntry> diff;
  for (const auto& [key, coeff] : c.differential())
    if (remap[key.first] >= 0 && remap[key.second] >= 0)
      diff.push_back({remap[key.first], remap[key.second], coeff});
  return FilteredComplex(std::move(gens), std::move(diff));
}

FilteredComplex tensor(const FilteredComplex& a, const FilteredComplex& b) {
  std::vector<Generator> gens;
  gens.reserve(static_cast<size_t>(a.size()) * b.size());
  auto idx = [&b](int i, int j) { return i * b.size() + j; };
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      const auto& x = a.gen(i);
      const auto& y = b.gen(j);
      gens.push_back({x.id + "*" + y.id, x.degree + y.degree, x.action + y.action});
    }
  std::vector<DiffEntry> diff;
  for (const auto& [key, coeff] : a.differential())
    for (int j = 0; j < b.size(); ++j)
      diff.push_back({idx(key.first, j), idx(key.second, j), coeff});
  for (const auto& [key, coeff] : b.differential())
    for (int i = 0; i < a.size(); ++i) {
      long long sign = (a.gen(i).degree % 2 == 0) ? 1 : -1;
      diff.push_back({idx(i, key.first), idx(i, key.second), sign * coeff});
    }
  return FilteredComplex(std::move(gens), std::move(diff));
}

}  // namespace symhom::chainalg
