#pragma once
// Cohomology of filtered complexes (integral and field coefficients),
// chain maps with induced maps on cohomology, truncation morphisms,
// desk-scale tower limits, and the Kunneth rank check.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symhom/complexes.hpp"

namespace symhom::chainalg {

struct HomologyGroup {
  long long free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors >= 2, divisibility chain

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string str() const;  // "Z^2 + Z/6", "0", ...
};

// degree -> group; degrees with zero group are omitted
using HomologyTable = std::map<int, HomologyGroup>;

HomologyGroup group_at(const HomologyTable& t, int degree);

// Integral cohomology. Throws std::invalid_argument (listing the violations)
// if validate() fails.
HomologyTable homology(const FilteredComplex& c);

// Field-coefficient dimensions per degree; p = 0 means Q, p >= 2 a prime.
std::map<int, long long> field_dims(const FilteredComplex& c, long long p);

// A chain map between two complexes, stored generator-to-generator.
struct ComplexMap {
  FilteredComplex source, target;
  // matrix[target_index][source_index], sparse
  std::map<std::pair<int, int>, long long> entries;  // (src,dst) -> coeff

  long long coeff(int src, int dst) const;
  IntMat degree_matrix(int k) const;  // rows = target deg-k gens, cols = source
};

// Verifies delta' f = f delta; returns the offending pair description or
// nothing when the square commutes.
std::optional<std::string> check_chain_map(const ComplexMap& f);

// The truncation morphism FC_{]a,b]} -> FC_{]a2,b2]} for nested windows
// (a >= a2, b >= b2): a generator survives iff its action lies in both
// windows. Throws if the windows do not nest. The returned map is verified
// to be a chain map.
ComplexMap truncation_map(const FilteredComplex& c, const ActionValue& a,
                          const ActionValue& b, const ActionValue& a2,
                          const ActionValue& b2);

// Map induced on cohomology, reduced to free parts. For each degree the
// matrix acts between the free quotients H^k(source)/torsion and
// H^k(target)/torsion in fixed bases, so induced maps compose degreewise.
struct InducedMap {
  HomologyTable source_h, target_h;
  std::map<int, IntMat> free_blocks;  // degree -> matrix (target_rank x source_rank)
};

InducedMap induced_on_homology(const ComplexMap& f);

enum class TowerDirection { Inverse, Direct };

struct TowerDegreeStatus {
  bool stabilized = false;
  HomologyGroup value;     // meaningful when stabilized
  int witness_stage = -1;  // first stage of the stable tail
  std::string note;
};

struct TowerReport {
  TowerDirection direction = TowerDirection::Inverse;
  std::map<int, TowerDegreeStatus> degrees;
  bool all_stabilized = true;
};

// Desk-scale limit of a finite tower of cohomology tables. stages[i] is the
// i-th stage; for Inverse towers maps[i] is induced by stage i+1 -> stage i,
// for Direct towers by stage i -> stage i+1. Per degree the tower counts as
// stabilized when the trailing stages carry isomorphic groups joined by
// verified isomorphisms (at least one map in the tail), or when the final
// group is zero (a trailing zero is taken as terminal; these towers are
// monotone by construction). Groups with torsion are conservatively reported
// as not verified. Nothing is extrapolated past the last stage; in
// particular no exactness property of inverse limits is assumed.
TowerReport tower_limit(const std::vector<HomologyTable>& stages,
                        const std::vector<InducedMap>& maps,
                        TowerDirection direction);

struct KunnethReport {
  bool equal = true;
  long long field = 0;  // 0 = Q
  // degree -> (dim H(tensor), sum of products of factor dims)
  std::map<int, std::pair<long long, long long>> dims;
};

// Rank form of the Kunneth theorem over a field: checks
// dim H^k(A (x) B; F) == sum_{r+s=k} dim H^r(A;F) dim H^s(B;F).
KunnethReport kunneth_check(const FilteredComplex& a, const FilteredComplex& b,
                            long long field_p);

}  // namespace symhom::chainalg
