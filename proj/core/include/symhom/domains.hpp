#pragma once

#include <string>
#include <vector>

#include "symhom/action.hpp"
#include "symhom/complexes.hpp"
#include "symhom/crossings.hpp"
#include "symhom/homology.hpp"

namespace symhom::domains {

// Open ellipsoid E(r) = { z in C^n : sum |z_j|^2 / r_j^2 < 1 } described by
// its radii, positive exact rationals stored sorted ascending.  The closed
// characteristics on the boundary have actions k*pi*r_j^2 (k >= 1).
struct EllipsoidSpec {
  explicit EllipsoidSpec(std::vector<Rational> radii);
  int n() const { return static_cast<int>(radii_.size()); }
  const std::vector<Rational>& radii() const { return radii_; }
  bool operator==(const EllipsoidSpec& other) const {
    return radii_ == other.radii_;
  }
  bool operator!=(const EllipsoidSpec& other) const {
    return !(*this == other);
  }
  std::string str() const;

 private:
  std::vector<Rational> radii_;
};

// #{(k,j) : k >= 1, k*pi*r_j^2 <= b}, computed exactly.
long long m_count(const EllipsoidSpec& r, const ActionValue& b);

// The action-filtered cochain complex of E(r) with orbits up to action b:
// one generator (degree n, action 0), and for the i-th smallest value a_i of
// the multiset {k*pi*r_j^2 <= b} (ties broken by value, then j, then k) a
// pair of generators (degree n+2i-1, action a_i), (degree n+2i, action a_i).
// The differential sends the even-degree generator of rank i to the
// odd-degree generator of rank i+1 with coefficient 1 (the degree-n generator
// acting as rank 0).
chainalg::FilteredComplex ellipsoid_complex(const EllipsoidSpec& r,
                                            const ActionValue& b);

// homology(truncate(ellipsoid_complex(r, b), a, b)).
chainalg::HomologyTable ellipsoid_window_homology(const EllipsoidSpec& r,
                                                  const ActionValue& a,
                                                  const ActionValue& b);

// Round ball of the given dimension, modeled by a Hamiltonian of slope
// lambda (a positive action, not an integer multiple of pi).
struct BallModel {
  BallModel(int n, ActionValue lambda);
  int n = 0;
  ActionValue lambda;
  int k() const;  // k with k*pi < lambda < (k+1)*pi
};

// Homology of the ball complex at slope lambda over the window ]-inf, b]
// with b > lambda: Z exactly in degree n(2k+1).
chainalg::HomologyTable ball_truncated_homology(const BallModel& model,
                                                const ActionValue& b);

struct BallTowerResult {
  std::vector<ActionValue> stages;  // slopes (m + 1/10)*pi, m = 0..floor(h/pi)
  chainalg::TowerReport report;
  chainalg::HomologyTable limit;  // stabilized nonzero values (expected none)
};

// Inverse tower of truncated ball homologies over slopes crossing each
// multiple of pi up to the horizon, with connecting maps induced by the
// action-window quotients; the limit is zero in every degree once the tower
// is long enough to witness it.
BallTowerResult ball_full_homology(int n, const ActionValue& horizon);

// The epsilon-perturbed ball complex: generator (degree n, action eps); for
// each l = 1..k a pair (degree 2ln-n+1, action l*pi-eps) and
// (degree 2ln+n, action l*pi+eps); identity arrows between consecutive
// generators whose degrees differ by 1 (degree n -> n+1, and
// 2ln+n -> 2ln+n+1 across sphere levels).
chainalg::FilteredComplex perturbed_ball_complex(int n,
                                                 const ActionValue& lambda,
                                                 const ActionValue& eps);

struct SpectrumEntry {
  ActionValue action;
  int index = 0;              // lower degree of the window-homology pair
  long long multiplicity = 1;
  bool operator==(const SpectrumEntry& o) const {
    return action == o.action && index == o.index &&
           multiplicity == o.multiplicity;
  }
};

struct ActionSpectrum {
  std::vector<SpectrumEntry> entries;  // sorted by action, strictly increasing
  bool operator==(const ActionSpectrum& o) const {
    return entries == o.entries;
  }
  std::string str() const;
};

// Geometric enumeration: entries (k*pi*r_j^2, n+2i-1, multiplicity) with i
// the rank of the value in the sorted multiset.
ActionSpectrum ellipsoid_spectrum(const EllipsoidSpec& r,
                                  const ActionValue& horizon);

// Homological reconstruction: probes a window ]a - probe*pi, a + probe*pi]
// around every candidate action (and midpoints as negative controls) and
// reads the spectrum off the window homologies.  probe is a rational
// coefficient of pi and must be smaller than half the minimal gap between
// distinct candidate values (including 0), checked exactly.
ActionSpectrum spectrum_from_homology(const EllipsoidSpec& r,
                                      const ActionValue& horizon,
                                      const Rational& probe);

// Greedy inversion of ellipsoid_spectrum: the smallest remaining action is
// pi*r_j^2 for the next radius; its multiples are removed up to the horizon;
// repeated n times.  The round trip ellipsoid_spectrum(result, horizon) ==
// spec is verified and any failure raises an error (never a silent guess).
EllipsoidSpec recover_radii(const ActionSpectrum& spec, int n,
                            const ActionValue& horizon);

struct ClassifyResult {
  bool equal = false;
  ActionValue witness_action;  // set when distinct
  int witness_degree = 0;
  chainalg::HomologyGroup left, right;  // window homologies at the witness
  std::string str() const;
};

// Ellipsoids are symplectically equal iff their radii agree; when they
// differ, returns a probe window and degree where the window homologies
// disagree.  Requires horizon >= pi * max(r_n^2, r'_n^2) to separate.
ClassifyResult classify(const EllipsoidSpec& r, const EllipsoidSpec& rp,
                        const ActionValue& horizon);

// Orbit on the level {S}: action of the Hamiltonian h there is
// S h'(S) - h(S).
struct LevelOrbitData {
  double S = 0.0;
  double slope = 0.0;  // h'(S)
  double value = 0.0;  // h(S)
};
double level_action(const LevelOrbitData& d);

// Builds the sphere and perturbed-orbit matrix paths, computes their
// Robbin-Salamon indices by the crossing algorithm, and checks them against
// the closed forms 2ln + 1/2, 2ln + n, 2ln - n + 1 and the gap 2n - 1.
struct PerturbationReport {
  int l = 0, n = 0;
  symplin::IndexResult sphere, minimum, maximum;
  long long expected_sphere_twice = 0;
  long long expected_minimum_twice = 0;
  long long expected_maximum_twice = 0;
  bool ok = false;
  std::string str() const;
};
PerturbationReport verify_perturbation_indices(int l, int n, double curvature,
                                               double delta);

// Not implemented: the polydisc complex is of a similar nature but relies on
// a computation we do not reproduce; see Floer-Hofer-Wysocki, "Applications
// of symplectic homology I", Math. Z. 217 (1994), p. 583.  Always throws.
chainalg::FilteredComplex polydisc_complex(const std::vector<Rational>& radii,
                                           const ActionValue& b);

}  // namespace symhom::domains
