// Tests for action-filtered cochain complexes: construction, validation,
// truncation, integral homology, chain maps, towers, tensor products,
// Kunneth comparisons, and finite Morse data.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>
#include <vector>

#include "symhom/complexes.hpp"
#include "symhom/homology.hpp"
#include "symhom/morse.hpp"

using symhom::ActionValue;
using symhom::Rational;
using namespace symhom::chainalg;

namespace {

ActionValue api(long long num, long long den = 1) {
  return ActionValue::pi_rational(Rational(num, den));
}

Generator mk(const std::string& id, int degree, const ActionValue& a) {
  Generator g;
  g.id = id;
  g.degree = degree;
  g.action = a;
  return g;
}

// The two-generator complex 0 -> Z --coeff--> Z -> 0 in degrees 0, 1.
FilteredComplex interval(long long coeff) {
  return FilteredComplex({mk("x", 0, api(0)), mk("y", 1, api(1))},
                         {{0, 1, coeff}});
}

}  // namespace

TEST_CASE("construction and accessors") {
  // d(a) = 2 b1 + 3 b2, d(b1) = 3 c, d(b2) = -2 c; the square cancels.
  const FilteredComplex c({mk("a", 0, api(0)), mk("b1", 1, api(1, 2)),
                           mk("b2", 1, api(1, 2)), mk("c", 2, api(1))},
                          {{0, 1, 2}, {0, 2, 3}, {1, 3, 3}, {2, 3, -2}});
  CHECK(c.size() == 4);
  CHECK(c.min_degree() == 0);
  CHECK(c.max_degree() == 2);
  CHECK(c.degree_indices(1).size() == 2);
  CHECK(c.index_of("b2") == 2);
  CHECK(c.index_of("nope") == -1);
  CHECK(c.coeff(0, 1) == 2);
  CHECK(c.coeff(0, 3) == 0);
  CHECK(c.gen(3).degree == 2);

  const IntMat d0 = c.delta_matrix(0);  // rows: degree 1, cols: degree 0
  REQUIRE(d0.rows() == 2);
  REQUIRE(d0.cols() == 1);
  CHECK(d0(0, 0) == 2);
  CHECK(d0(1, 0) == 3);
  const IntMat d1 = c.delta_matrix(1);
  REQUIRE(d1.rows() == 1);
  REQUIRE(d1.cols() == 2);
  CHECK(d1(0, 0) == 3);
  CHECK(d1(0, 1) == -2);

  CHECK(validate(c).ok);
  CHECK(homology(c).empty());  // acyclic: gcd structure kills everything
}

TEST_CASE("construction rejects malformed differentials") {
  const std::vector<Generator> gens = {mk("x", 0, api(0)), mk("y", 1, api(1))};
  CHECK_THROWS_AS(FilteredComplex(gens, {{0, 7, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FilteredComplex(gens, {{-1, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FilteredComplex(gens, {{0, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(FilteredComplex(gens, {{0, 1, 1}, {0, 1, 2}}),
                  std::invalid_argument);
}

TEST_CASE("validation reports degree, action, duplication, and d^2 problems") {
  // Degree step of 2.
  const FilteredComplex bad_degree(
      {mk("a", 0, api(0)), mk("c", 2, api(1))}, {{0, 1, 1}});
  ValidationReport r1 = validate(bad_degree);
  CHECK_FALSE(r1.ok);
  REQUIRE_FALSE(r1.violations.empty());

  // The differential must not decrease the action.
  const FilteredComplex bad_action(
      {mk("x", 0, api(1)), mk("y", 1, api(0))}, {{0, 1, 1}});
  CHECK_FALSE(validate(bad_action).ok);

  // Duplicate generator ids.
  const FilteredComplex dup(
      {mk("x", 0, api(0)), mk("x", 1, api(1))}, {});
  CHECK_FALSE(validate(dup).ok);

  // d^2 != 0.
  const FilteredComplex bad_square(
      {mk("a", 0, api(0)), mk("b", 1, api(1)), mk("c", 2, api(2))},
      {{0, 1, 1}, {1, 2, 1}});
  ValidationReport r4 = validate(bad_square);
  CHECK_FALSE(r4.ok);

  // homology() refuses invalid complexes outright.
  CHECK_THROWS_AS((void)homology(bad_square), std::invalid_argument);
}

TEST_CASE("truncation keeps the half-open action window (a, b]") {
  const FilteredComplex c({mk("x", 0, api(0)), mk("y", 1, api(1, 2)),
                           mk("w", 1, api(1, 2)), mk("z", 2, api(1))},
                          {{0, 1, 1}, {2, 3, 1}});

  const FilteredComplex low =
      truncate(c, ActionValue::neg_inf(), api(1, 2));
  CHECK(low.size() == 3);
  CHECK(low.index_of("z") == -1);
  CHECK(low.coeff(low.index_of("x"), low.index_of("y")) == 1);

  // Lower bound is exclusive: action 0 falls out of (0, pi].
  const FilteredComplex high = truncate(c, api(0), api(1));
  CHECK(high.size() == 3);
  CHECK(high.index_of("x") == -1);
  CHECK(high.coeff(high.index_of("w"), high.index_of("z")) == 1);

  CHECK_THROWS_AS((void)truncate(c, api(1), api(1)), std::invalid_argument);
  CHECK_THROWS_AS((void)truncate(c, api(2), api(1)), std::invalid_argument);

  // Homology of the low window: x,y cancel, w survives.
  HomologyTable h = homology(low);
  CHECK(group_at(h, 1) == HomologyGroup{1, {}});
  CHECK(group_at(h, 0).is_zero());
}

TEST_CASE("integral homology detects torsion") {
  // Two disjoint arrows with coefficients 2 and 3: H^1 = Z/2 + Z/3 = Z/6.
  const FilteredComplex c({mk("a0", 0, api(0)), mk("a1", 0, api(0)),
                           mk("b0", 1, api(1)), mk("b1", 1, api(1))},
                          {{0, 2, 2}, {1, 3, 3}});
  HomologyTable h = homology(c);
  CHECK(group_at(h, 0).is_zero());
  const HomologyGroup h1 = group_at(h, 1);
  CHECK(h1.free_rank == 0);
  REQUIRE(h1.torsion.size() == 1);
  CHECK(h1.torsion[0] == 6);
  CHECK(h1.str() == "Z/6");

  // Free parts render with exponents.
  const FilteredComplex free2({mk("p", 0, api(0)), mk("q", 0, api(0))}, {});
  CHECK(group_at(homology(free2), 0).str() == "Z^2");
  CHECK(HomologyGroup{}.str() == "0");
  CHECK(HomologyGroup{1, {2}}.str() == "Z + Z/2");
}

TEST_CASE("field dimensions follow universal coefficients") {
  const FilteredComplex c({mk("a0", 0, api(0)), mk("a1", 0, api(0)),
                           mk("b0", 1, api(1)), mk("b1", 1, api(1))},
                          {{0, 2, 2}, {1, 3, 3}});
  // Over Q everything cancels.
  CHECK(field_dims(c, 0).empty());
  // Over F2 the first arrow dies; over F3 the second one does.
  std::map<int, long long> f2 = field_dims(c, 2);
  CHECK(f2[0] == 1);
  CHECK(f2[1] == 1);
  std::map<int, long long> f3 = field_dims(c, 3);
  CHECK(f3[0] == 1);
  CHECK(f3[1] == 1);
  CHECK(field_dims(c, 5).empty());
}

TEST_CASE("tensor products use the Koszul sign rule and add actions") {
  const FilteredComplex i1 = interval(1);
  const FilteredComplex sq = tensor(i1, i1);
  REQUIRE(sq.size() == 4);
  const int xx = sq.index_of("x*x");
  const int xy = sq.index_of("x*y");
  const int yx = sq.index_of("y*x");
  const int yy = sq.index_of("y*y");
  REQUIRE(xx >= 0);
  REQUIRE(xy >= 0);
  REQUIRE(yx >= 0);
  REQUIRE(yy >= 0);
  CHECK(sq.gen(yy).degree == 2);
  CHECK(sq.gen(yy).action == api(2));
  CHECK(sq.coeff(xx, xy) == 1);
  CHECK(sq.coeff(xx, yx) == 1);
  CHECK(sq.coeff(xy, yy) == 1);
  CHECK(sq.coeff(yx, yy) == -1);  // (-1)^{|y|} y (x) dx
  CHECK(validate(sq).ok);
  CHECK(homology(sq).empty());
}

TEST_CASE("Kunneth comparison over Q and finite fields") {
  const FilteredComplex a = interval(2);
  const FilteredComplex b({mk("p", 0, api(0)), mk("q", 3, api(1))}, {});

  for (long long p : {0LL, 2LL, 3LL, 5LL}) {
    const KunnethReport rep = kunneth_check(a, b, p);
    CHECK(rep.equal);
    CHECK(rep.field == p);
  }

  // Self-product of the torsion interval over F2: dims 1,2,1.
  const KunnethReport rep2 = kunneth_check(a, a, 2);
  CHECK(rep2.equal);
  REQUIRE(rep2.dims.count(1) == 1);
  CHECK(rep2.dims.at(1).first == 2);
  CHECK(rep2.dims.at(1).second == 2);
}

TEST_CASE("Euler characteristic matches over every field") {
  const FilteredComplex c({mk("a0", 0, api(0)), mk("a1", 0, api(0)),
                           mk("b0", 1, api(1)), mk("b1", 1, api(1))},
                          {{0, 2, 2}, {1, 3, 3}});
  long long chi_gens = 0;
  for (const auto& g : c.generators())
    chi_gens += (g.degree % 2 == 0) ? 1 : -1;
  for (long long p : {0LL, 2LL, 3LL, 7LL}) {
    long long chi = 0;
    for (const auto& [k, d] : field_dims(c, p))
      chi += (k % 2 == 0) ? d : -d;
    CHECK(chi == chi_gens);
  }
}

TEST_CASE("truncation maps are chain maps and induce maps on homology") {
  const FilteredComplex c = interval(1);
  const ActionValue ninf = ActionValue::neg_inf();

  // Window shrinks pi -> pi/2: the acyclic pair projects onto the class of x.
  const ComplexMap tm = truncation_map(c, ninf, api(1), ninf, api(1, 2));
  CHECK(!check_chain_map(tm).has_value());
  const InducedMap ind = induced_on_homology(tm);
  CHECK(ind.source_h.empty());
  CHECK(group_at(ind.target_h, 0) == HomologyGroup{1, {}});
  REQUIRE(ind.free_blocks.count(0) == 1);
  CHECK(ind.free_blocks.at(0).rows() == 1);
  CHECK(ind.free_blocks.at(0).cols() == 0);

  // Both windows below the arrow: the induced map is an isomorphism.
  const ComplexMap tm2 = truncation_map(c, ninf, api(1, 2), ninf, api(1, 4));
  const InducedMap ind2 = induced_on_homology(tm2);
  const IntMat blk = ind2.free_blocks.at(0);
  REQUIRE(blk.rows() == 1);
  REQUIRE(blk.cols() == 1);
  CHECK((blk(0, 0) == 1 || blk(0, 0) == -1));

  // The target window must be contained in the source window.
  CHECK_THROWS_AS(
      (void)truncation_map(c, ninf, api(1, 2), ninf, api(1)),
      std::invalid_argument);
}

TEST_CASE("inverse tower limits stabilize on eventually-constant towers") {
  const HomologyGroup z{1, {}}, z2{2, {}};
  auto table = [](const HomologyGroup& g) {
    HomologyTable t;
    if (!g.is_zero()) t[0] = g;
    return t;
  };
  auto one_by_one = [](long long v) {
    IntMat m(1, 1);
    m(0, 0) = v;
    return m;
  };
  auto link = [](HomologyTable s, HomologyTable t, IntMat block) {
    InducedMap m;
    m.source_h = std::move(s);
    m.target_h = std::move(t);
    m.free_blocks[0] = std::move(block);
    return m;
  };

  SUBCASE("constant tower of Z") {
    std::vector<HomologyTable> stages = {table(z), table(z), table(z)};
    std::vector<InducedMap> maps = {
        link(table(z), table(z), one_by_one(1)),
        link(table(z), table(z), one_by_one(1))};
    const TowerReport rep =
        tower_limit(stages, maps, TowerDirection::Inverse);
    CHECK(rep.all_stabilized);
    CHECK(rep.direction == TowerDirection::Inverse);
    REQUIRE(rep.degrees.count(0) == 1);
    const TowerDegreeStatus st = rep.degrees.at(0);
    CHECK(st.stabilized);
    CHECK(st.value == z);
    CHECK(st.witness_stage == 0);
  }

  SUBCASE("rank drop followed by a stable tail") {
    IntMat drop(2, 1);
    drop(0, 0) = 1;
    std::vector<HomologyTable> stages = {table(z2), table(z), table(z)};
    std::vector<InducedMap> maps = {
        link(table(z), table(z2), drop),
        link(table(z), table(z), one_by_one(1))};
    const TowerReport rep =
        tower_limit(stages, maps, TowerDirection::Inverse);
    const TowerDegreeStatus st = rep.degrees.at(0);
    CHECK(st.stabilized);
    CHECK(st.value == z);
    CHECK(st.witness_stage == 1);
  }

  SUBCASE("trailing zero is terminal") {
    std::vector<HomologyTable> stages = {table(z), table(z), HomologyTable{}};
    std::vector<InducedMap> maps = {
        link(table(z), table(z), one_by_one(1)),
        link(HomologyTable{}, table(z), IntMat(1, 0))};
    const TowerReport rep =
        tower_limit(stages, maps, TowerDirection::Inverse);
    const TowerDegreeStatus st = rep.degrees.at(0);
    CHECK(st.stabilized);
    CHECK(st.value.is_zero());
    CHECK(st.witness_stage == 2);
  }

  SUBCASE("a growing final stage does not stabilize") {
    IntMat wide(1, 2);
    wide(0, 0) = 1;
    std::vector<HomologyTable> stages = {table(z), table(z2)};
    std::vector<InducedMap> maps = {link(table(z2), table(z), wide)};
    const TowerReport rep =
        tower_limit(stages, maps, TowerDirection::Inverse);
    CHECK_FALSE(rep.all_stabilized);
    CHECK_FALSE(rep.degrees.at(0).stabilized);
    CHECK_FALSE(rep.degrees.at(0).note.empty());
  }

  SUBCASE("stage/map count mismatch") {
    std::vector<HomologyTable> stages = {table(z), table(z), table(z)};
    std::vector<InducedMap> maps = {
        link(table(z), table(z), one_by_one(1))};
    CHECK_THROWS_AS(
        (void)tower_limit(stages, maps, TowerDirection::Inverse),
        std::invalid_argument);
  }
}

TEST_CASE("Morse data: sphere, torus, and inconsistency rejection") {
  SUBCASE("height function on the 2-sphere") {
    const std::vector<CriticalPoint> pts = {{"min", 0, 0.0}, {"max", 2, 1.0}};
    HomologyTable h = morse_homology(pts, {});
    CHECK(group_at(h, 0) == HomologyGroup{1, {}});
    CHECK(group_at(h, 1).is_zero());
    CHECK(group_at(h, 2) == HomologyGroup{1, {}});
  }

  SUBCASE("flat torus with cancelling signed counts") {
    const std::vector<CriticalPoint> pts = {
        {"m", 0, 0.0}, {"s1", 1, 1.0}, {"s2", 1, 2.0}, {"M", 2, 3.0}};
    const std::vector<TrajectoryCount> tr = {
        {"s1", "m", 1}, {"s1", "m", -1}, {"s2", "m", 1}, {"s2", "m", -1},
        {"M", "s1", 1}, {"M", "s1", -1}, {"M", "s2", 1}, {"M", "s2", -1}};
    HomologyTable h = morse_homology(pts, tr);
    CHECK(group_at(h, 0) == HomologyGroup{1, {}});
    CHECK(group_at(h, 1) == HomologyGroup{2, {}});
    CHECK(group_at(h, 2) == HomologyGroup{1, {}});
  }

  SUBCASE("d^2 != 0 is rejected") {
    const std::vector<CriticalPoint> pts = {
        {"a", 2, 3.0}, {"b1", 1, 2.0}, {"b2", 1, 1.0}, {"c", 0, 0.0}};
    const std::vector<TrajectoryCount> tr = {
        {"a", "b1", 1}, {"a", "b2", 1}, {"b1", "c", 1}, {"b2", "c", 1}};
    CHECK_THROWS_AS((void)morse_complex(pts, tr), std::invalid_argument);
  }

  SUBCASE("structural rejects") {
    const std::vector<CriticalPoint> pts = {{"p", 0, 0.0}, {"q", 1, 1.0}};
    // Unknown endpoint.
    CHECK_THROWS_AS((void)morse_complex(pts, {{"q", "zz", 1}}),
                    std::invalid_argument);
    // Index difference must be exactly one.
    const std::vector<CriticalPoint> far = {{"p", 0, 0.0}, {"r", 2, 1.0}};
    CHECK_THROWS_AS((void)morse_complex(far, {{"r", "p", 1}}),
                    std::invalid_argument);
    // Value must strictly decrease along trajectories.
    const std::vector<CriticalPoint> upv = {{"p", 0, 2.0}, {"q", 1, 1.0}};
    CHECK_THROWS_AS((void)morse_complex(upv, {{"q", "p", 1}}),
                    std::invalid_argument);
    // Duplicate names.
    const std::vector<CriticalPoint> dup = {{"p", 0, 0.0}, {"p", 1, 1.0}};
    CHECK_THROWS_AS((void)morse_complex(dup, {}), std::invalid_argument);
  }
}
