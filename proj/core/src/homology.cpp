#include "symhom/homology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace symhom::chainalg {

std::string HomologyGroup::str() const {
  if (is_zero()) return "0";
  std::string s;
  if (free_rank > 0) {
    s = "Z";
    if (free_rank > 1) s += "^" + std::to_string(free_rank);
  }
  for (const auto& d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + d.str();
  }
  return s;
}

HomologyGroup group_at(const HomologyTable& t, int degree) {
  auto it = t.find(degree);
  return it == t.end() ? HomologyGroup{} : it->second;
}

HomologyTable homology(const FilteredComplex& c) {
  ValidationReport rep = validate(c);
  if (!rep.ok) {
    std::string msg = "homology: complex fails validation:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  HomologyTable table;
  if (c.size() == 0) return table;
  std::set<int> degrees;
  for (const auto& g : c.generators()) degrees.insert(g.degree);
  for (int k : degrees) {
    const long long nk = static_cast<long long>(c.degree_indices(k).size());
    SNFResult out = snf(c.delta_matrix(k));      // delta_k
    SNFResult in = snf(c.delta_matrix(k - 1));   // delta_{k-1}
    HomologyGroup g;
    g.free_rank = nk - out.rank - in.rank;
    if (g.free_rank < 0)
      throw std::logic_error("homology: negative free rank (not a complex?)");
    for (const auto& d : in.invariant_factors)
      if (d >= 2) g.torsion.push_back(d);
    if (!g.is_zero()) table[k] = g;
  }
  return table;
}

std::map<int, long long> field_dims(const FilteredComplex& c, long long p) {
  std::map<int, long long> dims;
  std::set<int> degrees;
  for (const auto& g : c.generators()) degrees.insert(g.degree);
  auto rk = [p](const IntMat& m) {
    return p == 0 ? rank_rational(m) : rank_mod_p(m, p);
  };
  for (int k : degrees) {
    long long nk = static_cast<long long>(c.degree_indices(k).size());
    long long d = nk - rk(c.delta_matrix(k)) - rk(c.delta_matrix(k - 1));
    if (d != 0) dims[k] = d;
  }
  return dims;
}

long long ComplexMap::coeff(int src, int dst) const {
  auto it = entries.find({src, dst});
  return it == entries.end() ? 0 : it->second;
}

IntMat ComplexMap::degree_matrix(int k) const {
  auto src = source.degree_indices(k);
  auto dst = target.degree_indices(k);
  IntMat m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (int j = 0; j < static_cast<int>(src.size()); ++j)
    for (int i = 0; i < static_cast<int>(dst.size()); ++i) {
      long long c = coeff(src[j], dst[i]);
      if (c != 0) m(i, j) = c;
    }
  return m;
}

std::optional<std::string> check_chain_map(const ComplexMap& f) {
  // coefficient of target gen z in f(delta x) and in delta'(f x)
  for (int x = 0; x < f.source.size(); ++x) {
    std::map<int, long long> lhs, rhs;
    for (const auto& [key, c1] : f.source.differential()) {
      if (key.first != x) continue;
      for (const auto& [key2, c2] : f.entries)
        if (key2.first == key.second) lhs[key2.second] += c1 * c2;
    }
    for (const auto& [key, c1] : f.entries) {
      if (key.first != x) continue;
      for (const auto& [key2, c2] : f.target.differential())
        if (key2.first == key.second) rhs[key2.second] += c1 * c2;
    }
    std::set<int> targets;
    for (const auto& [z, v] : lhs) targets.insert(z);
    for (const auto& [z, v] : rhs) targets.insert(z);
    for (int z : targets) {
      long long a = lhs.count(z) ? lhs[z] : 0;
      long long b = rhs.count(z) ? rhs[z] : 0;
      if (a != b)
        return "chain map fails at '" + f.source.gen(x).id + "' -> '" +
               f.target.gen(z).id + "' (f delta = " + std::to_string(a) +
               ", delta f = " + std::to_string(b) + ")";
    }
  }
  return std::nullopt;
}

ComplexMap truncation_map(const FilteredComplex& c, const ActionValue& a,
                          const ActionValue& b, const ActionValue& a2,
                          const ActionValue& b2) {
  if (a < a2 || b < b2)
    throw std::invalid_argument(
        "truncation_map: windows must nest (a >= a2 and b >= b2)");
  ComplexMap f;
  f.source = truncate(c, a, b);
  f.target = truncate(c, a2, b2);
  for (int i = 0; i < f.source.size(); ++i) {
    int j = f.target.index_of(f.source.gen(i).id);
    if (j >= 0) f.entries[{i, j}] = 1;
  }
  if (auto err = check_chain_map(f))
    throw std::logic_error("truncation_map: " + *err);
  return f;
}

namespace {

// Per-degree cocycle/coboundary presentation used to induce maps.
struct DegreePresentation {
  IntMat Zk;      // n_k x z, lattice basis of ker(delta_k)
  IntMat Ux;      // z x z, from SNF of the coboundary coordinates
  IntMat Ux_inv;
  int r = 0;      // rank of the coboundary lattice inside the kernel
  int z = 0;
  bool has_torsion = false;
};

DegreePresentation present_degree(const FilteredComplex& c, int k) {
  DegreePresentation p;
  IntMat dk = c.delta_matrix(k);
  SNFResult s = snf(dk);
  const int nk = dk.cols();
  p.z = nk - s.rank;
  p.Zk = IntMat(nk, p.z);
  for (int j = 0; j < p.z; ++j)
    for (int i = 0; i < nk; ++i) p.Zk(i, j) = s.V(i, s.rank + j);

  IntMat dprev = c.delta_matrix(k - 1);
  if (p.z == 0) {
    p.Ux = IntMat::identity(0);
    p.Ux_inv = IntMat::identity(0);
    p.r = 0;
    return p;
  }
  // coboundaries written in the kernel basis; integral because the kernel
  // lattice is saturated
  IntMat X = solve_integral(p.Zk, dprev);
  SNFResult sx = snf(X);
  p.Ux = sx.U;
  p.Ux_inv = inverse_unimodular(sx.U);
  p.r = sx.rank;
  for (const auto& d : sx.invariant_factors)
    if (d >= 2) p.has_torsion = true;
  return p;
}

}  // namespace

InducedMap induced_on_homology(const ComplexMap& f) {
  if (auto err = check_chain_map(f))
    throw std::invalid_argument("induced_on_homology: " + *err);
  InducedMap out;
  out.source_h = homology(f.source);
  out.target_h = homology(f.target);

  std::set<int> degrees;
  for (const auto& [k, g] : out.source_h) degrees.insert(k);
  for (const auto& [k, g] : out.target_h) degrees.insert(k);

  for (int k : degrees) {
    DegreePresentation ps = present_degree(f.source, k);
    DegreePresentation pt = present_degree(f.target, k);
    const int src_free = ps.z - ps.r;
    const int dst_free = pt.z - pt.r;
    IntMat block(dst_free, src_free);
    if (src_free > 0 && dst_free > 0) {
      // free-part basis cocycles of the source
      IntMat basis(ps.Zk.rows(), src_free);
      {
        IntMat cols(ps.z, src_free);
        for (int j = 0; j < src_free; ++j)
          for (int i = 0; i < ps.z; ++i) cols(i, j) = ps.Ux_inv(i, ps.r + j);
        basis = ps.Zk * cols;
      }
      IntMat mapped = f.degree_matrix(k) * basis;       // cocycles downstairs
      IntMat gamma = solve_integral(pt.Zk, mapped);     // kernel coords
      IntMat eta = pt.Ux * gamma;
      for (int j = 0; j < src_free; ++j)
        for (int i = 0; i < dst_free; ++i) block(i, j) = eta(pt.r + i, j);
    }
    out.free_blocks[k] = block;
  }
  return out;
}

namespace {

bool free_block_is_iso(const IntMat& b) {
  if (b.rows() != b.cols()) return false;
  if (b.rows() == 0) return true;
  BigInt d = det_bareiss(b);
  return d == 1 || d == -1;
}

}  // namespace

TowerReport tower_limit(const std::vector<HomologyTable>& stages,
                        const std::vector<InducedMap>& maps,
                        TowerDirection direction) {
  TowerReport report;
  report.direction = direction;
  const int S = static_cast<int>(stages.size());
  if (S >= 2 && static_cast<int>(maps.size()) != S - 1)
    throw std::invalid_argument("tower_limit: need exactly one map per adjacent stage pair");

  std::set<int> degrees;
  for (const auto& t : stages)
    for (const auto& [k, g] : t) degrees.insert(k);

  for (int k : degrees) {
    TowerDegreeStatus st;
    if (S < 2) {
      st.note = "tower too short to witness stabilization";
      report.degrees[k] = st;
      report.all_stabilized = false;
      continue;
    }
    auto grp = [&](int i) { return group_at(stages[i], k); };
    // maps[i] joins stages i and i+1 (orientation depends on direction)
    auto map_iso = [&](int i) {
      HomologyGroup a = grp(i), b = grp(i + 1);
      if (!(a == b)) return false;
      if (!a.torsion.empty()) return false;  // conservatively unverified
      auto it = maps[i].free_blocks.find(k);
      if (it == maps[i].free_blocks.end())
        return a.free_rank == 0;  // both zero at this degree
      return free_block_is_iso(it->second);
    };

    int s0 = -1;
    for (int cand = S - 2; cand >= 0; --cand) {
      if (map_iso(cand))
        s0 = cand;
      else
        break;
    }
    if (s0 >= 0) {
      st.stabilized = true;
      st.value = grp(S - 1);
      st.witness_stage = s0;
      if (!st.value.torsion.empty()) {
        st.stabilized = false;
        st.note = "stable tail carries torsion; isomorphisms not verified";
      }
    } else if (grp(S - 1).is_zero()) {
      st.stabilized = true;
      st.value = HomologyGroup{};
      st.witness_stage = S - 1;
      st.note = "trailing zero taken as terminal";
    } else {
      st.note = "no stable tail within the given stages";
    }
    if (!st.stabilized) report.all_stabilized = false;
    report.degrees[k] = st;
  }
  return report;
}

KunnethReport kunneth_check(const FilteredComplex& a, const FilteredComplex& b,
                            long long field_p) {
  KunnethReport rep;
  rep.field = field_p;
  auto da = field_dims(a, field_p);
  auto db = field_dims(b, field_p);
  auto dt = field_dims(tensor(a, b), field_p);

  std::map<int, long long> expected;
  for (const auto& [r, x] : da)
    for (const auto& [s, y] : db) expected[r + s] += x * y;

  std::set<int> degrees;
  for (const auto& [k, v] : dt) degrees.insert(k);
  for (const auto& [k, v] : expected) degrees.insert(k);
  for (int k : degrees) {
    long long lhs = dt.count(k) ? dt[k] : 0;
    long long rhs = expected.count(k) ? expected[k] : 0;
    rep.dims[k] = {lhs, rhs};
    if (lhs != rhs) rep.equal = false;
  }
  return rep;
}

}  // namespace symhom::chainalg
