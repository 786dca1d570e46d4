#pragma once
// Text interchange: the action-value grammar, JSON readers for complexes,
// Morse data and matrix paths, and deterministic JSON/TSV serializers for
// every result type the command line prints.  All readers throw
// std::invalid_argument with a descriptive message on malformed input.

#include <string>
#include <vector>

#include "symhom/action.hpp"
#include "symhom/complexes.hpp"
#include "symhom/crossings.hpp"
#include "symhom/domains.hpp"
#include "symhom/homology.hpp"
#include "symhom/morse.hpp"
#include "symhom/symplectic.hpp"
#include "symhom/tolerances.hpp"

namespace symhom::interchange {

// Grammar:
//   "inf" | "+inf" | "-inf"                       infinity bounds
//   "pi" | "-pi" | "<q>pi" | "<q>*pi"             exact rational multiple
//   <q>                                           plain real (inexact)
// where <q> is an integer ("3", "-2"), a fraction ("3/2"), or a finite
// decimal ("1.25", parsed exactly when in front of pi).
ActionValue parse_action(const std::string& text);

// Inverse of parse_action: exact values print as "<q>*pi" (zero as "0*pi"),
// reals with 17 significant digits, infinities as "inf"/"-inf".  The output
// always parses back to an equal ActionValue of the same kind.
std::string print_action(const ActionValue& a);

// <q> as above, without pi.
Rational parse_rational(const std::string& text);
std::string print_rational(const Rational& q);

// ---- JSON readers ---------------------------------------------------------

// {"generators":[{"id":.., "degree":.., "action":"<action>", "label":..?}, ...],
//  "differential":[["src_id","dst_id",coeff], ...]}
chainalg::FilteredComplex complex_from_json(const std::string& text);
std::string complex_to_json(const chainalg::FilteredComplex& c);

// {"critical_points":[{"id":.., "index":.., "value":..}, ...],
//  "trajectories":[{"from":.., "to":.., "count":..}, ...]}
struct MorseData {
  std::vector<chainalg::CriticalPoint> points;
  std::vector<chainalg::TrajectoryCount> trajectories;
};
MorseData morse_from_json(const std::string& text);

// {"dim_half":n, "segments":[{"kind":..., ...}, ...], "tolerances":{...}?}
// kinds and their fields:
//   rotation        n?, lambda (action or number)
//   shear           n?, rate, plane?
//   exp_const       S (2n x 2n row-major array of arrays)
//   exp_const_from  S, base
//   sampled         grid (ascending, 0..1), matrices (one per grid point)
//   sphere_orbit    l, n?, curvature
//   perturbed_orbit l, n?, delta, hessian_eigs (2n-1 numbers)
// Segments are concatenated in order; each must match dim_half.  tolerances
// may override any of sym, cross, ker, eig, gen.
struct PathFile {
  symplin::SymplecticPath path;
  Tolerances tol;
};
PathFile path_from_json(const std::string& text, const Tolerances& defaults = {});

// ---- serializers (deterministic field and row order) -----------------------

std::string homology_to_json(const chainalg::HomologyTable& t);
std::string homology_to_tsv(const chainalg::HomologyTable& t);

std::string index_to_json(const symplin::IndexResult& r);
std::string index_to_tsv(const symplin::IndexResult& r);

std::string spectrum_to_json(const domains::ActionSpectrum& s);
std::string spectrum_to_tsv(const domains::ActionSpectrum& s);

std::string tower_to_json(const domains::BallTowerResult& t);
std::string tower_to_tsv(const domains::BallTowerResult& t);

std::string classify_to_json(const domains::ClassifyResult& c);
std::string classify_to_tsv(const domains::ClassifyResult& c);

std::string kunneth_to_json(const chainalg::KunnethReport& r);
std::string kunneth_to_tsv(const chainalg::KunnethReport& r);

}  // namespace symhom::interchange
