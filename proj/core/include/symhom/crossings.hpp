#pragma once

#include <string>
#include <vector>

#include "symhom/symplectic.hpp"

namespace symhom::symplin {

// A time where ker(Id - Psi(t)) is nontrivial, together with the crossing
// form Gamma(v) = w0(v, Psi'(t) v) = <v, S(t) v> restricted to that kernel.
struct Crossing {
  double t = 0.0;          // global time in [0,1]
  int segment = 0;         // segment the data was computed on
  bool endpoint = false;   // segment boundary: contributes half weight
  int kernel_dim = 0;
  Eigen::MatrixXd kernel;  // orthonormal kernel basis (2n x kernel_dim)
  Eigen::MatrixXd form;    // kernel_dim x kernel_dim crossing form
  int signature = 0;       // #positive - #negative form eigenvalues
  int zero_count = 0;      // form eigenvalues with |mu| <= tol.eig (ignored)
};

// All crossings of the path, sorted by time.  Segment-boundary crossings are
// reported once per adjoining segment (each side carries its own one-sided
// form).  Closed-form segments are handled analytically: candidate times come
// from the spectrum of J0*S, plus a singular-value scan when the base point
// differs from the identity; the constant-kernel family shared by the whole
// segment always carries zero form and is excluded from interior reports.
// Sampled segments are scanned on their grid (determinant sign changes and
// local singular-value minima, refined to width tol.cross); a persistent
// kernel across consecutive grid points is a "non-isolated crossing" error --
// such paths (e.g. shears) need a closed-form representation.
std::vector<Crossing> find_crossings(const SymplecticPath& path,
                                     const Tolerances& tol = {});

struct IndexResult {
  long long twice_value = 0;  // stored doubled: indices are half-integers
  std::vector<Crossing> crossings;
  std::vector<std::string> notes;
  bool is_integer() const { return twice_value % 2 == 0; }
  std::string str() const;  // "3", "-2", "5/2", ...
};

// Robbin-Salamon index: 1/2 sign G(0) + sum over interior crossings of
// sign G(t) + 1/2 sign G(1), accumulated per segment so that concatenation
// and direct-sum additivity hold structurally.  Signatures ignore zero
// eigenvalues of the form (threshold tol.eig).
IndexResult rs_index(const SymplecticPath& path, const Tolerances& tol = {});

// Conley-Zehnder index for paths starting at the identity with nondegenerate
// endpoint (no eigenvalue 1 at t=1).  Returns the integer Robbin-Salamon
// value; throws when the endpoint is degenerate or the start is not the
// identity.
long long cz_index(const SymplecticPath& path, const Tolerances& tol = {});

}  // namespace symhom::symplin
