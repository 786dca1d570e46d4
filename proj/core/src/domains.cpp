#include "symhom/domains.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symhom/symplectic.hpp"

namespace symhom::domains {

using chainalg::DiffEntry;
using chainalg::FilteredComplex;
using chainalg::Generator;
using chainalg::HomologyGroup;
using chainalg::HomologyTable;

namespace {

std::string half_str(long long twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

// One closed characteristic: the k-fold cover of the j-th basic orbit, with
// action value * pi.
struct OrbitTag {
  Rational value;  // k * r_j^2
  int j = 0;       // 1-based radius index
  long long k = 0;
};

// All (k, j) with k*pi*r_j^2 <= b, sorted by (value, j, k).
std::vector<OrbitTag> enumerate_orbits(const EllipsoidSpec& r,
                                       const ActionValue& b) {
  std::vector<OrbitTag> out;
  if (b.kind() == ActionValue::Kind::PosInf)
    throw std::invalid_argument(
        "orbit enumeration needs a finite action bound");
  if (b.kind() == ActionValue::Kind::NegInf) return out;
  for (int j = 1; j <= r.n(); ++j) {
    const Rational& rj = r.radii()[static_cast<std::size_t>(j - 1)];
    Rational q = rj * rj;
    for (long long k = 1;; ++k) {
      Rational v = q * k;
      if (ActionValue::pi_rational(v) > b) break;
      out.push_back({v, j, k});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const OrbitTag& a, const OrbitTag& b2) {
              if (a.value != b2.value) return a.value < b2.value;
              if (a.j != b2.j) return a.j < b2.j;
              return a.k < b2.k;
            });
  return out;
}

// The complex itself, without the positivity guard of the public entry point
// (a nonpositive bound simply yields the complex with only the degree-n
// generator, or nothing after truncation).
FilteredComplex build_complex(const EllipsoidSpec& r, const ActionValue& b) {
  auto orbits = enumerate_orbits(r, b);
  const int n = r.n();
  std::vector<Generator> gens;
  std::vector<DiffEntry> diff;
  gens.reserve(1 + 2 * orbits.size());
  gens.push_back({"g0", n, ActionValue::zero(), "constant"});
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const OrbitTag& o = orbits[i];
    ActionValue a = ActionValue::pi_rational(o.value);
    std::string tag =
        "(k=" + std::to_string(o.k) + ", j=" + std::to_string(o.j) + ")";
    int rank = static_cast<int>(i) + 1;
    gens.push_back({"u" + std::to_string(rank), n + 2 * rank - 1, a, tag});
    gens.push_back({"w" + std::to_string(rank), n + 2 * rank, a, tag});
  }
  // generator layout: g0 = index 0, u_i = 2i-1, w_i = 2i
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    int w_idx = static_cast<int>(2 * i);      // g0 when i == 0
    int u_idx = static_cast<int>(2 * i + 1);  // u_{i+1}
    diff.push_back({w_idx, u_idx, 1});
  }
  return FilteredComplex(std::move(gens), std::move(diff));
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt sn = boost::multiprecision::sqrt(num);
  BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

// floor(v / pi) for a positive finite action
long long floor_over_pi(const ActionValue& v) {
  if (v.is_exact()) {
    const Rational& q = v.coeff();
    BigInt fl =
        boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
    return fl.convert_to<long long>();
  }
  return static_cast<long long>(std::floor(v.to_double() / kPi));
}

}  // namespace

EllipsoidSpec::EllipsoidSpec(std::vector<Rational> radii)
    : radii_(std::move(radii)) {
  if (radii_.empty())
    throw std::invalid_argument("ellipsoid needs at least one radius");
  for (const Rational& q : radii_)
    if (q <= 0)
      throw std::invalid_argument("ellipsoid radii must be positive");
  std::sort(radii_.begin(), radii_.end());
}

std::string EllipsoidSpec::str() const {
  std::string s = "E(";
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (i) s += ", ";
    s += radii_[i].str();
  }
  return s + ")";
}

long long m_count(const EllipsoidSpec& r, const ActionValue& b) {
  if (b.kind() == ActionValue::Kind::NegInf) return 0;
  return static_cast<long long>(enumerate_orbits(r, b).size());
}

FilteredComplex ellipsoid_complex(const EllipsoidSpec& r,
                                  const ActionValue& b) {
  if (b.kind() == ActionValue::Kind::PosInf)
    throw std::invalid_argument("ellipsoid complex needs a finite action bound");
  if (!(b > ActionValue::zero()))
    throw std::invalid_argument(
        "ellipsoid complex needs a positive action bound, got " + b.str());
  return build_complex(r, b);
}

HomologyTable ellipsoid_window_homology(const EllipsoidSpec& r,
                                        const ActionValue& a,
                                        const ActionValue& b) {
  if (b.kind() == ActionValue::Kind::PosInf)
    throw std::invalid_argument(
        "window homology needs a finite upper endpoint");
  if (!(a < b))
    throw std::invalid_argument("window homology needs a < b, got ]" +
                                a.str() + ", " + b.str() + "]");
  return chainalg::homology(chainalg::truncate(build_complex(r, b), a, b));
}

BallModel::BallModel(int n_, ActionValue lambda_)
    : n(n_), lambda(std::move(lambda_)) {
  if (n < 1) throw std::invalid_argument("ball dimension n must be >= 1");
  if (!lambda.is_finite() || !(lambda > ActionValue::zero()))
    throw std::invalid_argument("ball slope must be a positive finite action");
  if (lambda.is_exact()) {
    if (boost::multiprecision::denominator(lambda.coeff()) == 1)
      throw std::invalid_argument(
          "ball slope must not be an integer multiple of pi, got " +
          lambda.str());
  } else {
    double q = lambda.to_double() / kPi;
    if (std::abs(q - std::round(q)) < 1e-9)
      throw std::invalid_argument(
          "ball slope is numerically indistinguishable from an integer "
          "multiple of pi; give the slope as an exact multiple of pi");
  }
}

int BallModel::k() const {
  return static_cast<int>(floor_over_pi(lambda));
}

HomologyTable ball_truncated_homology(const BallModel& model,
                                      const ActionValue& b) {
  if (!(b > model.lambda))
    throw std::invalid_argument("window top must exceed the slope " +
                                model.lambda.str() + ", got " + b.str());
  EllipsoidSpec ball(std::vector<Rational>(static_cast<std::size_t>(model.n),
                                           Rational(1)));
  FilteredComplex c = build_complex(ball, model.lambda);
  return chainalg::homology(
      chainalg::truncate(c, ActionValue::neg_inf(), b));
}

BallTowerResult ball_full_homology(int n, const ActionValue& horizon) {
  if (n < 1) throw std::invalid_argument("ball dimension n must be >= 1");
  if (!horizon.is_finite() || !(horizon > ActionValue::zero()))
    throw std::invalid_argument("horizon must be a positive finite action");
  const long long M = floor_over_pi(horizon);
  if (M < 1)
    throw std::invalid_argument(
        "horizon " + horizon.str() +
        " too small: the tower needs at least one slope past pi");

  std::vector<ActionValue> stages;
  for (long long m = 0; m <= M; ++m)
    stages.push_back(ActionValue::pi_rational(Rational(10 * m + 1, 10)));

  EllipsoidSpec ball(
      std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
  // every stage complex is the action truncation of the top-stage complex,
  // so all connecting maps live inside one ambient complex
  FilteredComplex top = build_complex(ball, stages.back());
  std::vector<HomologyTable> tables;
  for (const ActionValue& s : stages)
    tables.push_back(chainalg::homology(
        chainalg::truncate(top, ActionValue::neg_inf(), s)));
  std::vector<chainalg::InducedMap> maps;
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    chainalg::ComplexMap f = chainalg::truncation_map(
        top, ActionValue::neg_inf(), stages[i + 1], ActionValue::neg_inf(),
        stages[i]);
    maps.push_back(chainalg::induced_on_homology(f));
  }
  BallTowerResult out;
  out.stages = std::move(stages);
  out.report =
      chainalg::tower_limit(tables, maps, chainalg::TowerDirection::Inverse);
  for (const auto& [deg, st] : out.report.degrees)
    if (st.stabilized && !st.value.is_zero()) out.limit[deg] = st.value;
  return out;
}

FilteredComplex perturbed_ball_complex(int n, const ActionValue& lambda,
                                       const ActionValue& eps) {
  BallModel model(n, lambda);  // validates the slope
  if (!eps.is_finite() || !(eps > ActionValue::zero()))
    throw std::invalid_argument("perturbation size must be positive and finite");
  if (!(eps < ActionValue::pi_rational(Rational(1, 4))))
    throw std::invalid_argument(
        "perturbation size " + eps.str() +
        " too large (action windows would overlap): need eps < pi/4");
  const int k = model.k();
  std::vector<Generator> gens;
  std::vector<DiffEntry> diff;
  gens.push_back({"c0", n, eps, "bottom critical point"});
  for (int l = 1; l <= k; ++l) {
    ActionValue base = ActionValue::pi_rational(Rational(l));
    std::string lv = "sphere level " + std::to_string(l);
    gens.push_back({"p" + std::to_string(l) + "-", 2 * l * n - n + 1,
                    base - eps, lv + ", min"});
    gens.push_back({"p" + std::to_string(l) + "+", 2 * l * n + n,
                    base + eps, lv + ", max"});
  }
  // layout: c0 = 0, p_l- = 2l-1, p_l+ = 2l.  Arrows exist exactly where
  // degrees are consecutive: c0 -> p1- and p_l+ -> p_{l+1}-.
  if (k >= 1) diff.push_back({0, 1, 1});
  for (int l = 1; l < k; ++l) diff.push_back({2 * l, 2 * l + 1, 1});
  FilteredComplex c(std::move(gens), std::move(diff));
  auto rep = chainalg::validate(c);
  if (!rep.ok)
    throw std::logic_error("perturbed ball complex failed validation: " +
                           rep.violations.front());
  return c;
}

std::string ActionSpectrum::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ", ";
    s += "(" + entries[i].action.str() + ", index " +
         std::to_string(entries[i].index) + ", mult " +
         std::to_string(entries[i].multiplicity) + ")";
  }
  return s + "]";
}

ActionSpectrum ellipsoid_spectrum(const EllipsoidSpec& r,
                                  const ActionValue& horizon) {
  if (horizon.kind() == ActionValue::Kind::PosInf)
    throw std::invalid_argument("spectrum needs a finite horizon");
  ActionSpectrum s;
  auto orbits = enumerate_orbits(r, horizon);
  std::size_t i = 0;
  while (i < orbits.size()) {
    std::size_t j = i;
    while (j < orbits.size() && orbits[j].value == orbits[i].value) ++j;
    s.entries.push_back({ActionValue::pi_rational(orbits[i].value),
                         r.n() + 2 * static_cast<int>(i + 1) - 1,
                         static_cast<long long>(j - i)});
    i = j;
  }
  return s;
}

ActionSpectrum spectrum_from_homology(const EllipsoidSpec& r,
                                      const ActionValue& horizon,
                                      const Rational& probe) {
  if (horizon.kind() == ActionValue::Kind::PosInf)
    throw std::invalid_argument("spectrum needs a finite horizon");
  if (probe <= 0) throw std::invalid_argument("probe width must be positive");

  auto orbits = enumerate_orbits(r, horizon);
  std::vector<Rational> values;  // distinct candidate actions / pi
  for (const OrbitTag& o : orbits)
    if (values.empty() || values.back() != o.value) values.push_back(o.value);

  // exact admissibility: probe under half the minimal gap of {0} u values
  Rational prev = 0;
  Rational min_gap = -1;
  for (const Rational& v : values) {
    Rational gap = v - prev;
    if (min_gap < 0 || gap < min_gap) min_gap = gap;
    prev = v;
  }
  if (min_gap >= 0 && !(probe < min_gap / 2))
    throw std::invalid_argument(
        "probe width " + probe.str() + "*pi is too wide: it must be under "
        "half the minimal action gap, which is " + Rational(min_gap / 2).str() +
        "*pi here");

  const int n = r.n();
  ActionSpectrum out;
  long long consumed = 0;  // generator pairs accounted for so far
  for (const Rational& v : values) {
    ActionValue center = ActionValue::pi_rational(v);
    ActionValue lo = ActionValue::pi_rational(v - probe);
    ActionValue hi = ActionValue::pi_rational(v + probe);
    if (horizon < hi) hi = horizon;  // never look past the horizon
    HomologyTable t = ellipsoid_window_homology(r, lo, hi);
    if (t.empty())
      throw std::logic_error("window homology around " + center.str() +
                             " unexpectedly vanishes");
    const int bottom = t.begin()->first;
    const int top = t.rbegin()->first;
    const HomologyGroup z_group{1, {}};
    bool shape_ok = t.size() == 2 && (bottom - n + 1) > 0 &&
                    (bottom - n + 1) % 2 == 0 && (top - bottom) % 2 == 1 &&
                    t.begin()->second == z_group &&
                    t.rbegin()->second == z_group;
    if (!shape_ok)
      throw std::logic_error("window homology around " + center.str() +
                             " has an unexpected shape");
    const long long i = (bottom - n + 1) / 2;  // first rank at this action
    const long long mu = (top - bottom + 1) / 2;
    if (i != consumed + 1)
      throw std::logic_error(
          "window homologies are inconsistent: the window around " +
          center.str() + " starts at rank " + std::to_string(i) +
          " but ranks up to " + std::to_string(consumed) +
          " were already seen");
    consumed += mu;
    out.entries.push_back(
        {center, static_cast<int>(n + 2 * i - 1), mu});
  }

  // negative controls: midpoints between consecutive candidates (and between
  // 0 and the first) must have empty window homology
  prev = 0;
  for (const Rational& v : values) {
    Rational mid = (prev + v) / 2;
    ActionValue lo = ActionValue::pi_rational(mid - probe);
    ActionValue hi = ActionValue::pi_rational(mid + probe);
    HomologyTable t = ellipsoid_window_homology(r, lo, hi);
    if (!t.empty())
      throw std::logic_error("negative control window around " +
                             ActionValue::pi_rational(mid).str() +
                             " has nonzero homology");
    prev = v;
  }
  return out;
}

EllipsoidSpec recover_radii(const ActionSpectrum& spec, int n,
                            const ActionValue& horizon) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (horizon.kind() == ActionValue::Kind::PosInf ||
      !(horizon > ActionValue::zero()))
    throw std::invalid_argument(
        "radius recovery needs a positive finite horizon");
  std::map<Rational, long long> remaining;
  for (const SpectrumEntry& e : spec.entries) {
    if (!e.action.is_exact() || !(e.action > ActionValue::zero()))
      throw std::invalid_argument(
          "spectrum entry " + e.action.str() +
          " is not a positive exact multiple of pi");
    if (e.multiplicity < 1)
      throw std::invalid_argument("spectrum multiplicities must be >= 1");
    remaining[e.action.coeff()] += e.multiplicity;
  }
  std::vector<Rational> radii;
  for (int j = 0; j < n; ++j) {
    if (remaining.empty())
      throw std::invalid_argument(
          "spectrum exhausted after " + std::to_string(j) +
          " radii, expected " + std::to_string(n));
    Rational q = remaining.begin()->first;  // smallest action left = pi r^2
    auto root = rational_sqrt(q);
    if (!root)
      throw std::invalid_argument(
          "smallest remaining action " + ActionValue::pi_rational(q).str() +
          " is not pi times the square of a rational, so it cannot be the "
          "primitive action of a rational radius");
    radii.push_back(*root);
    for (long long k = 1;
         ActionValue::pi_rational(q * k) <= horizon; ++k) {
      auto it = remaining.find(q * k);
      if (it == remaining.end())
        throw std::invalid_argument(
            "inconsistent spectrum: multiple " + std::to_string(k) + " of " +
            ActionValue::pi_rational(q).str() + " is missing");
      if (--it->second == 0) remaining.erase(it);
    }
  }
  if (!remaining.empty())
    throw std::invalid_argument(
        "spectrum has leftover action " +
        ActionValue::pi_rational(remaining.begin()->first).str() +
        " not produced by " + std::to_string(n) + " radii");
  EllipsoidSpec result(std::move(radii));
  // the round trip also re-checks indices and multiplicities
  if (!(ellipsoid_spectrum(result, horizon) == spec))
    throw std::invalid_argument(
        "spectrum is not the action spectrum of an ellipsoid with " +
        std::to_string(n) + " radii under horizon " + horizon.str());
  return result;
}

std::string ClassifyResult::str() const {
  if (equal) return "equal";
  return "distinct: window around " + witness_action.str() + ", degree " +
         std::to_string(witness_degree) + ": " + left.str() + " vs " +
         right.str();
}

ClassifyResult classify(const EllipsoidSpec& r, const EllipsoidSpec& rp,
                        const ActionValue& horizon) {
  if (r.n() != rp.n())
    throw std::invalid_argument(
        "classification compares ellipsoids of equal dimension, got n = " +
        std::to_string(r.n()) + " and n = " + std::to_string(rp.n()));
  ClassifyResult out;
  if (r == rp) {
    out.equal = true;
    return out;
  }
  ActionSpectrum sa = ellipsoid_spectrum(r, horizon);
  ActionSpectrum sb = ellipsoid_spectrum(rp, horizon);
  if (sa == sb)
    throw std::invalid_argument("horizon " + horizon.str() +
                                " is too small to separate " + r.str() +
                                " from " + rp.str());
  std::size_t i = 0;
  while (i < sa.entries.size() && i < sb.entries.size() &&
         sa.entries[i] == sb.entries[i])
    ++i;
  ActionValue witness;
  if (i >= sa.entries.size())
    witness = sb.entries[i].action;
  else if (i >= sb.entries.size())
    witness = sa.entries[i].action;
  else
    witness = std::min(sa.entries[i].action, sb.entries[i].action);

  // probe width: a quarter of the minimal gap across both value sets with 0
  std::vector<Rational> vals{Rational(0)};
  for (const SpectrumEntry& e : sa.entries) vals.push_back(e.action.coeff());
  for (const SpectrumEntry& e : sb.entries) vals.push_back(e.action.coeff());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  Rational min_gap = -1;
  for (std::size_t t = 1; t < vals.size(); ++t) {
    Rational gap = vals[t] - vals[t - 1];
    if (min_gap < 0 || gap < min_gap) min_gap = gap;
  }
  Rational probe = min_gap / 4;
  ActionValue lo = ActionValue::pi_rational(witness.coeff() - probe);
  ActionValue hi = ActionValue::pi_rational(witness.coeff() + probe);
  if (horizon < hi) hi = horizon;

  HomologyTable ta = ellipsoid_window_homology(r, lo, hi);
  HomologyTable tb = ellipsoid_window_homology(rp, lo, hi);
  std::set<int> degs;
  for (const auto& [d, g] : ta) degs.insert(d);
  for (const auto& [d, g] : tb) degs.insert(d);
  bool found = false;
  for (int d : degs) {
    if (!(chainalg::group_at(ta, d) == chainalg::group_at(tb, d))) {
      out.witness_degree = d;
      out.left = chainalg::group_at(ta, d);
      out.right = chainalg::group_at(tb, d);
      found = true;
      break;
    }
  }
  if (!found)
    throw std::logic_error(
        "window homologies agree at the witness action even though the "
        "spectra differ");
  out.equal = false;
  out.witness_action = witness;
  return out;
}

double level_action(const LevelOrbitData& d) {
  return d.S * d.slope - d.value;
}

std::string PerturbationReport::str() const {
  std::string s = "perturbation check (l=" + std::to_string(l) +
                  ", n=" + std::to_string(n) + "): ";
  s += "sphere " + sphere.str() + " (expected " +
       half_str(expected_sphere_twice) + "); ";
  s += "minimum " + minimum.str() + " (expected " +
       half_str(expected_minimum_twice) + "); ";
  s += "maximum " + maximum.str() + " (expected " +
       half_str(expected_maximum_twice) + "); ";
  s += "gap " + half_str(minimum.twice_value - maximum.twice_value) +
       " (expected " + std::to_string(2 * n - 1) + ")";
  s += ok ? " => ok" : " => MISMATCH";
  return s;
}

PerturbationReport verify_perturbation_indices(int l, int n, double curvature,
                                               double delta) {
  if (l < 1 || n < 1) throw std::invalid_argument("need l >= 1 and n >= 1");
  if (!(curvature > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("curvature and delta must be positive");
  PerturbationReport rep;
  rep.l = l;
  rep.n = n;
  auto sphere = symplin::SymplecticPath::sphere_orbit_path(l, n, curvature);
  std::vector<double> plus(static_cast<std::size_t>(2 * n - 1), 1.0);
  std::vector<double> minus(static_cast<std::size_t>(2 * n - 1), -1.0);
  auto at_min = symplin::SymplecticPath::perturbed_orbit_path(l, n, delta, plus);
  auto at_max = symplin::SymplecticPath::perturbed_orbit_path(l, n, delta, minus);
  rep.sphere = symplin::rs_index(sphere);
  rep.minimum = symplin::rs_index(at_min);
  rep.maximum = symplin::rs_index(at_max);
  rep.expected_sphere_twice = 4LL * l * n + 1;
  rep.expected_minimum_twice = 2LL * (2LL * l * n + n);
  rep.expected_maximum_twice = 2LL * (2LL * l * n - n + 1);
  rep.ok = rep.sphere.twice_value == rep.expected_sphere_twice &&
           rep.minimum.twice_value == rep.expected_minimum_twice &&
           rep.maximum.twice_value == rep.expected_maximum_twice &&
           rep.minimum.twice_value - rep.maximum.twice_value ==
               2LL * (2 * n - 1);
  return rep;
}

FilteredComplex polydisc_complex(const std::vector<Rational>& /*radii*/,
                                 const ActionValue& /*b*/) {
  throw std::logic_error(
      "polydisc complexes are not implemented: the computation is of a "
      "different combinatorial type; see Floer-Hofer-Wysocki, \"Applications "
      "of symplectic homology I\", Math. Z. 217 (1994), p. 583");
}

}  // namespace symhom::domains
