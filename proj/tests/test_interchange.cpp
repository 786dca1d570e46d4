// Tests for the text interchange layer: the action grammar, JSON readers,
// and the deterministic JSON/TSV serializers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "symhom/interchange.hpp"

using json = nlohmann::json;
using symhom::ActionValue;
using symhom::Rational;
using namespace symhom::interchange;

namespace {

ActionValue api(long long num, long long den = 1) {
  return ActionValue::pi_rational(Rational(num, den));
}

}  // namespace

TEST_CASE("action grammar: exact multiples of pi") {
  CHECK(parse_action("3/2*pi") == api(3, 2));
  CHECK(parse_action("3/2pi") == api(3, 2));
  CHECK(parse_action("pi") == api(1));
  CHECK(parse_action("+pi") == api(1));
  CHECK(parse_action("-pi") == api(-1));
  CHECK(parse_action("2pi") == api(2));
  CHECK(parse_action("-5/4*pi") == api(-5, 4));
  CHECK(parse_action("0.5pi") == api(1, 2));    // decimals are exact here
  CHECK(parse_action("0.1*pi") == api(1, 10));
  CHECK(parse_action("0*pi") == ActionValue::zero());
  CHECK(parse_action("  2pi  ") == api(2));     // outer whitespace ignored
  CHECK(parse_action("3/2pi").is_exact());
}

TEST_CASE("action grammar: infinities and plain reals") {
  CHECK(parse_action("inf") == ActionValue::pos_inf());
  CHECK(parse_action("+inf") == ActionValue::pos_inf());
  CHECK(parse_action("-inf") == ActionValue::neg_inf());

  const ActionValue r = parse_action("1.25");
  CHECK_FALSE(r.is_exact());
  CHECK(r.to_double() == doctest::Approx(1.25));
  CHECK_FALSE(parse_action("3").is_exact());  // bare numbers stay inexact
  CHECK(parse_action("-2.5e1").to_double() == doctest::Approx(-25.0));
}

TEST_CASE("action grammar: malformed inputs") {
  for (const char* bad :
       {"", "abc", "1/0*pi", "1.2.3", "pi2", "--pi", "1e5pi", "nan", "inf3",
        "3/", "/2pi", "1 2pi"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS((void)parse_action(bad), std::invalid_argument);
  }
}

TEST_CASE("print_action round-trips every kind") {
  const std::vector<ActionValue> vals = {
      api(3, 2), api(-7, 3), api(0),   api(5),
      ActionValue::real(0.1), ActionValue::real(-1234.56789012345678),
      ActionValue::pos_inf(), ActionValue::neg_inf()};
  for (const ActionValue& v : vals) {
    const std::string s = print_action(v);
    const ActionValue back = parse_action(s);
    CHECK(back == v);
    CHECK(back.kind() == v.kind());  // exactness survives the round trip
  }
  CHECK(print_action(api(3, 2)) == "3/2*pi");
  CHECK(print_action(ActionValue::zero()) == "0*pi");
  CHECK(print_action(ActionValue::pos_inf()) == "inf");
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("2") == Rational(2));
  CHECK(parse_rational("-0.1") == Rational(-1, 10));
  CHECK(print_rational(Rational(1, 3)) == "1/3");
  CHECK(print_rational(Rational(-5)) == "-5");
  for (const char* bad : {"", "1/0", "a", "1.2.3", "1/2/3", "2.5e1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS((void)parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("complexes survive a JSON round trip byte for byte") {
  const std::string text = R"({
    "generators": [
      {"id": "x", "degree": 0, "action": "0*pi", "label": "bottom"},
      {"id": "y", "degree": 1, "action": "1*pi"},
      {"id": "z", "degree": 0, "action": "1/2*pi"}
    ],
    "differential": [["x", "y", 2]]
  })";
  const symhom::chainalg::FilteredComplex c = complex_from_json(text);
  CHECK(c.size() == 3);
  CHECK(c.gen(c.index_of("x")).label == "bottom");
  CHECK(c.gen(c.index_of("z")).action == api(1, 2));
  CHECK(c.coeff(c.index_of("x"), c.index_of("y")) == 2);

  const std::string once = complex_to_json(c);
  const std::string twice = complex_to_json(complex_from_json(once));
  CHECK(once == twice);
  CHECK(once.back() == '\n');
}

TEST_CASE("complex reader rejects malformed documents") {
  CHECK_THROWS_AS((void)complex_from_json("{ not json"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)complex_from_json("{}"), std::invalid_argument);
  // Duplicate generator id.
  CHECK_THROWS_AS((void)complex_from_json(R"({
    "generators": [{"id":"x","degree":0,"action":"0*pi"},
                    {"id":"x","degree":1,"action":"1*pi"}],
    "differential": []})"),
                  std::invalid_argument);
  // Unknown ids in the differential.
  CHECK_THROWS_AS((void)complex_from_json(R"({
    "generators": [{"id":"x","degree":0,"action":"0*pi"}],
    "differential": [["x","nope",1]]})"),
                  std::invalid_argument);
  // Bad action text.
  CHECK_THROWS_AS((void)complex_from_json(R"({
    "generators": [{"id":"x","degree":0,"action":"wat"}],
    "differential": []})"),
                  std::invalid_argument);
}

TEST_CASE("Morse data reader") {
  const MorseData md = morse_from_json(R"({
    "critical_points": [
      {"id": "min", "index": 0, "value": 0.0},
      {"id": "max", "index": 2, "value": 1.0}
    ],
    "trajectories": []
  })");
  REQUIRE(md.points.size() == 2);
  CHECK(md.points[1].id == "max");
  CHECK(md.points[1].index == 2);
  CHECK(md.trajectories.empty());

  CHECK_THROWS_AS((void)morse_from_json(R"({"critical_points":[{"id":"a"}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)morse_from_json("[1,2,3]"), std::invalid_argument);
}

TEST_CASE("path files: closed-form kinds, tolerances, and concatenation") {
  const PathFile pf = path_from_json(R"({
    "dim_half": 1,
    "segments": [{"kind": "rotation", "lambda": "3/2*pi"}]
  })");
  CHECK(pf.path.n() == 1);
  CHECK(symhom::symplin::rs_index(pf.path, pf.tol).twice_value == 6);
  CHECK(pf.tol.cross == 1e-10);  // defaults untouched

  const PathFile sph = path_from_json(R"({
    "dim_half": 1,
    "segments": [{"kind": "sphere_orbit", "l": 1, "curvature": 1.0}],
    "tolerances": {"cross": 1e-9, "ker": 1e-7}
  })");
  CHECK(sph.tol.cross == 1e-9);
  CHECK(sph.tol.ker == 1e-7);
  CHECK(sph.tol.sym == 1e-9);
  CHECK(symhom::symplin::rs_index(sph.path, sph.tol).twice_value == 5);

  // Two segments: a quarter turn continued by a constant-generator piece
  // starting at the quarter turn's endpoint -Id.
  const PathFile two = path_from_json(R"({
    "dim_half": 1,
    "segments": [
      {"kind": "rotation", "lambda": "1/2*pi"},
      {"kind": "exp_const_from", "S": [[0.3, 0.0], [0.0, 0.2]],
       "base": [[-1.0, 0.0], [0.0, -1.0]]}
    ]
  })");
  CHECK(two.path.segments().size() == 2);

  const PathFile pert = path_from_json(R"({
    "dim_half": 1,
    "segments": [{"kind": "perturbed_orbit", "l": 1, "delta": 0.01,
                  "hessian_eigs": [1.0]}]
  })");
  CHECK(symhom::symplin::cz_index(pert.path, pert.tol) == 3);
}

TEST_CASE("path files: sampled segments evaluate like their closed source") {
  using symhom::symplin::SymplecticPath;
  const SymplecticPath closed = SymplecticPath::rotation(1, 1.5707963267948966);
  json doc;
  doc["dim_half"] = 1;
  json seg;
  seg["kind"] = "sampled";
  const int m = 65;
  for (int i = 0; i < m; ++i) {
    const double t = static_cast<double>(i) / (m - 1);
    seg["grid"].push_back(t);
    const Eigen::MatrixXd psi = closed.eval(t);
    seg["matrices"].push_back(
        json::array({json::array({psi(0, 0), psi(0, 1)}),
                     json::array({psi(1, 0), psi(1, 1)})}));
  }
  doc["segments"].push_back(seg);
  const PathFile pf = path_from_json(doc.dump());
  CHECK(symhom::symplin::rs_index(pf.path, pf.tol).twice_value == 2);
}

TEST_CASE("path files: malformed documents are rejected") {
  // Unknown tolerance key.
  CHECK_THROWS_AS((void)path_from_json(R"({
    "dim_half": 1,
    "segments": [{"kind": "rotation", "lambda": "1/2*pi"}],
    "tolerances": {"wat": 1.0}})"),
                  std::invalid_argument);
  // Missing lambda.
  CHECK_THROWS_AS((void)path_from_json(R"({
    "dim_half": 1, "segments": [{"kind": "rotation"}]})"),
                  std::invalid_argument);
  // Unknown kind.
  CHECK_THROWS_AS((void)path_from_json(R"({
    "dim_half": 1, "segments": [{"kind": "spiral"}]})"),
                  std::invalid_argument);
  // Segment dimension clash.
  CHECK_THROWS_AS((void)path_from_json(R"({
    "dim_half": 1,
    "segments": [{"kind": "rotation", "n": 2, "lambda": "1/2*pi"}]})"),
                  std::invalid_argument);
  // No segments at all / bad dim_half.
  CHECK_THROWS_AS((void)path_from_json(R"({"dim_half":1,"segments":[]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)path_from_json(R"({
    "dim_half": 0,
    "segments": [{"kind": "rotation", "lambda": "1/2*pi"}]})"),
                  std::invalid_argument);
  // Non-symmetric generator matrix.
  CHECK_THROWS_AS((void)path_from_json(R"({
    "dim_half": 1,
    "segments": [{"kind": "exp_const", "S": [[0.0, 1.0], [-1.0, 0.0]]}]})"),
                  std::invalid_argument);
  // Wrong matrix shape.
  CHECK_THROWS_AS((void)path_from_json(R"({
    "dim_half": 1,
    "segments": [{"kind": "exp_const", "S": [[0.0, 1.0, 2.0]]}]})"),
                  std::invalid_argument);
}

TEST_CASE("homology serializers") {
  symhom::chainalg::HomologyTable t;
  t[3] = symhom::chainalg::HomologyGroup{1, {}};
  t[6] = symhom::chainalg::HomologyGroup{1, {symhom::BigInt(2)}};

  const std::string js = homology_to_json(t);
  const json j = json::parse(js);
  REQUIRE(j.at("groups").size() == 2);
  CHECK(j["groups"][0]["degree"] == 3);
  CHECK(j["groups"][0]["free_rank"] == 1);
  CHECK(j["groups"][0]["torsion"].empty());
  CHECK(j["groups"][1]["degree"] == 6);
  CHECK(j["groups"][1]["torsion"][0] == "2");
  CHECK(j["groups"][1]["text"] == "Z + Z/2");
  CHECK(js.back() == '\n');

  CHECK(homology_to_tsv(t) == "degree\tgroup\n3\tZ\n6\tZ + Z/2\n");
}

TEST_CASE("index serializers") {
  using symhom::symplin::SymplecticPath;
  const auto r =
      symhom::symplin::rs_index(SymplecticPath::rotation(1, 3 * symhom::kPi / 2));
  const json j = json::parse(index_to_json(r));
  CHECK(j["value"] == "3");
  CHECK(j["twice_value"] == 6);
  REQUIRE(j["crossings"].size() == 2);
  CHECK(j["crossings"][0]["endpoint"] == true);
  CHECK(j["crossings"][1]["endpoint"] == false);
  CHECK(j["crossings"][1]["kernel_dim"] == 2);
  CHECK(j["crossings"][1]["signature"] == 2);

  const std::string tsv = index_to_tsv(r);
  CHECK(tsv.rfind("index\t3\n", 0) == 0);
  CHECK(tsv.find("crossing\t") != std::string::npos);
}

TEST_CASE("spectrum serializers") {
  using namespace symhom::domains;
  const ActionSpectrum s = ellipsoid_spectrum(
      EllipsoidSpec({Rational(1), Rational(3, 2)}), api(5, 2));
  const json j = json::parse(spectrum_to_json(s));
  REQUIRE(j["entries"].size() == 3);
  CHECK(j["entries"][0]["action"] == "1*pi");
  CHECK(j["entries"][2]["action"] == "9/4*pi");
  CHECK(j["entries"][2]["index"] == 7);

  const std::string tsv = spectrum_to_tsv(s);
  CHECK(tsv.rfind("action\tindex\tmultiplicity\n", 0) == 0);
  CHECK(tsv.find("9/4*pi\t7\t1\n") != std::string::npos);
}

TEST_CASE("tower serializers") {
  using namespace symhom::domains;
  const BallTowerResult t = ball_full_homology(1, api(2));
  const json j = json::parse(tower_to_json(t));
  CHECK(j["direction"] == "inverse");
  CHECK(j["all_stabilized"] == false);
  REQUIRE(j["stages"].size() == 3);
  CHECK(j["stages"][0] == "1/10*pi");
  CHECK(j["degrees"].is_array());
  CHECK(j["limit"].is_array());
  CHECK(j["limit"].empty());

  const std::string tsv = tower_to_tsv(t);
  CHECK(tsv.find("stage\t0\t1/10*pi\n") != std::string::npos);
  CHECK(tsv.find("all_stabilized\tfalse") != std::string::npos);
}

TEST_CASE("classify serializers include the witness only when distinct") {
  using namespace symhom::domains;
  const ClassifyResult res =
      classify(EllipsoidSpec({Rational(1), Rational(3, 2)}),
               EllipsoidSpec({Rational(1), Rational(2)}), api(5));
  const json j = json::parse(classify_to_json(res));
  CHECK(j["equal"] == false);
  CHECK(j["witness_action"] == "9/4*pi");
  CHECK(j["witness_degree"] == 7);

  const ClassifyResult eq =
      classify(EllipsoidSpec({Rational(1)}), EllipsoidSpec({Rational(1)}),
               api(3));
  const json je = json::parse(classify_to_json(eq));
  CHECK(je["equal"] == true);
  CHECK_FALSE(je.contains("witness_action"));

  const std::string tsv = classify_to_tsv(res);
  CHECK(tsv.rfind("equal\tfalse\n", 0) == 0);
  CHECK(tsv.find("witness_action\t9/4*pi\n") != std::string::npos);
}

TEST_CASE("Kunneth serializers") {
  using symhom::chainalg::FilteredComplex;
  using symhom::chainalg::Generator;
  Generator x, y;
  x.id = "x";
  x.degree = 0;
  x.action = api(0);
  y.id = "y";
  y.degree = 1;
  y.action = api(1);
  const FilteredComplex a({x, y}, {{0, 1, 2}});
  const auto rep = symhom::chainalg::kunneth_check(a, a, 2);
  const json j = json::parse(kunneth_to_json(rep));
  CHECK(j["equal"] == true);
  CHECK(j["field"] == "F2");
  CHECK(kunneth_to_tsv(rep).rfind("equal\ttrue\nfield\tF2\n", 0) == 0);

  const auto repq = symhom::chainalg::kunneth_check(a, a, 0);
  const json jq = json::parse(kunneth_to_json(repq));
  CHECK(jq["field"] == "Q");
}
