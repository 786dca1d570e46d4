#pragma once
// Action-filtered cochain complexes over Z: finitely many generators, each
// with an integer degree and an action value; the differential raises degree
// by one and never decreases action (equal action is allowed).

#include <map>
#include <string>
#include <vector>

#include "symhom/action.hpp"
#include "symhom/snf.hpp"

namespace symhom::chainalg {

struct Generator {
  std::string id;
  int degree = 0;
  ActionValue action;
  std::string label;  // optional free-form annotation (e.g. "(k,j) pair")
};

struct DiffEntry {
  int src = 0;  // generator index the differential is applied to
  int dst = 0;  // generator index receiving the coefficient
  long long coeff = 0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

class FilteredComplex {
 public:
  FilteredComplex() = default;
  // throws std::invalid_argument on structural nonsense (duplicate ids,
  // out-of-range indices, zero coefficients); mathematical invariants are
  // checked by validate() which reports rather than throws
  FilteredComplex(std::vector<Generator> gens, std::vector<DiffEntry> diff);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::map<std::pair<int, int>, long long>& differential() const { return diff_; }

  long long coeff(int src, int dst) const;
  int index_of(const std::string& id) const;  // -1 if absent

  int min_degree() const;
  int max_degree() const;
  std::vector<int> degree_indices(int k) const;

  // matrix of delta_k : C^k -> C^{k+1}; rows = degree k+1 gens, cols = degree k
  IntMat delta_matrix(int k) const;

 private:
  std::vector<Generator> gens_;
  std::map<std::pair<int, int>, long long> diff_;  // (src,dst) -> nonzero coeff
};

// Checks, in order: unique ids, degree raised by exactly one, delta^2 = 0,
// action monotone along the differential. All violations are reported with
// the offending generator ids.
ValidationReport validate(const FilteredComplex& c);

// Window restriction ]a, b]: keeps generators with a < action <= b.
// a may be -inf, b may be +inf. Models the quotient C_{>a} / C_{>b}.
FilteredComplex truncate(const FilteredComplex& c, const ActionValue& a,
                         const ActionValue& b);

// Tensor product with the Koszul sign:
// delta(x@y) = delta(x)@y + (-1)^{deg x} x@delta(y).
// Generator ids are "xid*yid"; actions add (exact when both are exact).
FilteredComplex tensor(const FilteredComplex& a, const FilteredComplex& b);

}  // namespace symhom::chainalg
