// Command-line front end: indices of symplectic matrix paths, filtered
// homology of balls and ellipsoids, action spectra, classification, Morse
// homology, the Kunneth check, and a self-verification suite.
//
// Exit codes: 0 success, 1 verification or computation failure, 2 usage or
// parse error.

#include <unsupported/Eigen/MatrixFunctions>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symhom/domains.hpp"
#include "symhom/interchange.hpp"
#include "symhom/morse.hpp"

namespace {

using namespace symhom;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<Rational> parse_radii(const std::vector<std::string>& words) {
  std::vector<Rational> out;
  for (const std::string& w : words) {
    for (std::size_t start = 0; start <= w.size();) {
      std::size_t comma = w.find(',', start);
      std::string piece = w.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(interchange::parse_rational(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (out.empty()) throw std::invalid_argument("no radii given");
  return out;
}

struct TolOverrides {
  std::optional<double> sym, cross, ker, eig, gen;
  Tolerances apply(Tolerances t) const {
    if (sym) t.sym = *sym;
    if (cross) t.cross = *cross;
    if (ker) t.ker = *ker;
    if (eig) t.eig = *eig;
    if (gen) t.gen = *gen;
    return t;
  }
  void add_options(CLI::App* app) {
    app->add_option("--tol-sym", sym, "symplecticity / continuity tolerance");
    app->add_option("--tol-cross", cross, "crossing-time refinement width");
    app->add_option("--tol-ker", ker, "kernel singular-value threshold");
    app->add_option("--tol-eig", eig, "crossing-form zero-eigenvalue threshold");
    app->add_option("--tol-gen", gen, "generator asymmetry tolerance");
  }
};

// ---- verification suite -----------------------------------------------------

struct Check {
  std::string group;
  std::string anchor;
  // runs the check; throws with a detail message on failure, returns a short
  // summary ("15 cases") on success
  std::function<std::string()> fn;
};

void expect(bool ok, const std::string& detail) {
  if (!ok) throw std::runtime_error(detail);
}

chainalg::HomologyTable single_z(int degree) {
  chainalg::HomologyTable t;
  t[degree] = chainalg::HomologyGroup{1, {}};
  return t;
}

std::string table_str(const chainalg::HomologyTable& t) {
  if (t.empty()) return "0";
  std::string s;
  for (const auto& [d, g] : t) {
    if (!s.empty()) s += ", ";
    s += "deg " + std::to_string(d) + ": " + g.str();
  }
  return s;
}

std::vector<Check> build_checks(const Tolerances& tol) {
  using symplin::SymplecticPath;
  std::vector<Check> checks;

  checks.push_back({"index", "i_CZ(rotation((k+1/2)*pi, n)) = n(2k+1)", [tol] {
    int cases = 0;
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= 4; ++k) {
        auto p = SymplecticPath::rotation(n, (k + 0.5) * kPi);
        long long got = symplin::cz_index(p, tol);
        long long want = 1LL * n * (2 * k + 1);
        expect(got == want, "n=" + std::to_string(n) + ", k=" +
                                std::to_string(k) + ": got " +
                                std::to_string(got) + ", want " +
                                std::to_string(want));
        ++cases;
      }
    return std::to_string(cases) + " cases";
  }});

  checks.push_back({"index", "i_RS(rotation(l*pi, n)) = 2*l*n (full loops)",
                    [tol] {
    int cases = 0;
    for (int l = 1; l <= 3; ++l)
      for (int n = 1; n <= 2; ++n) {
        auto r = symplin::rs_index(SymplecticPath::rotation(n, l * kPi), tol);
        expect(r.twice_value == 4LL * l * n,
               "l=" + std::to_string(l) + ", n=" + std::to_string(n) +
                   ": got " + r.str() + ", want " + std::to_string(2 * l * n));
        ++cases;
      }
    return std::to_string(cases) + " cases";
  }});

  checks.push_back({"index", "i_RS(sphere_orbit_path(l, n)) = 2*l*n + 1/2",
                    [tol] {
    int cases = 0;
    for (int l = 1; l <= 3; ++l)
      for (int n = 1; n <= 3; ++n) {
        auto r = symplin::rs_index(SymplecticPath::sphere_orbit_path(l, n, 1.0),
                                   tol);
        expect(r.twice_value == 4LL * l * n + 1,
               "l=" + std::to_string(l) + ", n=" + std::to_string(n) +
                   ": got " + r.str());
        ++cases;
      }
    return std::to_string(cases) + " cases";
  }});

  checks.push_back({"index",
                    "perturbed orbit: i_RS = 2*l*n + n (minimum), "
                    "2*l*n - n + 1 (maximum), gap 2n-1",
                    [] {
    const int cases[5][2] = {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {1, 3}};
    for (const auto& c : cases) {
      auto rep = domains::verify_perturbation_indices(c[0], c[1], 1.0, 0.01);
      expect(rep.ok, rep.str());
    }
    return std::string("5 cases");
  }});

  checks.push_back({"index",
                    "sampled rotation path reproduces i_RS = 3 "
                    "(lambda = 3/2*pi, n = 1)",
                    [tol] {
    const int N = 129;
    const double lam = 1.5 * kPi;
    Eigen::MatrixXd J(2, 2);
    J << 0, -1, 1, 0;
    std::vector<double> grid;
    std::vector<Eigen::MatrixXd> mats;
    for (int i = 0; i < N; ++i) {
      double t = static_cast<double>(i) / (N - 1);
      grid.push_back(t);
      mats.push_back((2.0 * lam * t * J).exp());
    }
    auto r = symplin::rs_index(SymplecticPath::sampled(grid, mats), tol);
    expect(r.twice_value == 6, "got " + r.str() + ", want 3");
    return std::string("129-point grid");
  }});

  checks.push_back({"index", "i_RS additivity under concatenation and direct sum",
                    [tol] {
    Eigen::MatrixXd S1(2, 2), S2(2, 2);
    S1 << 1.3, 0.2, 0.2, 0.7;
    S2 << -0.4, 0.1, 0.1, 0.9;
    auto p = SymplecticPath::exp_const(S1);
    auto q = SymplecticPath::exp_const_from(S2, p.end());
    long long ip = symplin::rs_index(p, tol).twice_value;
    long long iq = symplin::rs_index(q, tol).twice_value;
    long long icat =
        symplin::rs_index(SymplecticPath::concat(p, q), tol).twice_value;
    expect(icat == ip + iq, "concat: " + std::to_string(icat) + " != " +
                                std::to_string(ip) + " + " +
                                std::to_string(iq) + " (doubled)");
    auto s = SymplecticPath::exp_const(S2);
    long long is = symplin::rs_index(s, tol).twice_value;
    long long isum =
        symplin::rs_index(SymplecticPath::direct_sum(p, s), tol).twice_value;
    expect(isum == ip + is, "direct sum: " + std::to_string(isum) + " != " +
                                std::to_string(ip) + " + " +
                                std::to_string(is) + " (doubled)");
    return std::string("2 properties");
  }});

  checks.push_back({"ball",
                    "window homology of the ball at slope (k+1/2)*pi is Z in "
                    "degree n(2k+1)",
                    [] {
    int cases = 0;
    for (int n = 1; n <= 3; ++n)
      for (int k = 0; k <= 4; ++k) {
        domains::BallModel model(
            n, ActionValue::pi_rational(Rational(2 * k + 1, 2)));
        auto t = domains::ball_truncated_homology(
            model, ActionValue::pi_rational(Rational(k + 1)));
        auto want = single_z(n * (2 * k + 1));
        expect(t == want, "n=" + std::to_string(n) + ", k=" +
                              std::to_string(k) + ": got " + table_str(t));
        ++cases;
      }
    return std::to_string(cases) + " cases";
  }});

  checks.push_back({"ball", "tower limit of the full ball homology vanishes",
                    [] {
    const int n = 1, M = 4;
    auto res = domains::ball_full_homology(n, ActionValue::pi_rational(M));
    expect(res.limit.empty(), "nonzero limit: " + table_str(res.limit));
    // the last stage contributes a fresh class in degree n(2M+1) whose decay
    // can only be witnessed by a further stage; everything below must be
    // stabilized at zero
    const int top = n * (2 * M + 1);
    for (const auto& [deg, st] : res.report.degrees) {
      if (deg == top) {
        expect(!st.stabilized,
               "degree " + std::to_string(deg) +
                   " claims stabilization without a witness stage");
      } else {
        expect(st.stabilized && st.value.is_zero(),
               "degree " + std::to_string(deg) + ": " +
                   (st.stabilized ? st.value.str() : "not stabilized (" +
                                                         st.note + ")"));
      }
    }
    return std::to_string(res.stages.size()) + " stages, zero below degree " +
           std::to_string(top);
  }});

  checks.push_back({"ball",
                    "perturbed ball complex has the window homology of the "
                    "idealized complex",
                    [] {
    const int n = 2;
    auto eps = ActionValue::pi_rational(Rational(1, 50));
    auto two_eps = ActionValue::pi_rational(Rational(1, 25));
    auto pc = domains::perturbed_ball_complex(
        n, ActionValue::pi_rational(Rational(5, 2)), eps);
    domains::EllipsoidSpec ball({Rational(1), Rational(1)});
    auto ic =
        domains::ellipsoid_complex(ball, ActionValue::pi_rational(Rational(5, 2)));
    for (int l = 1; l <= 2; ++l) {
      ActionValue a = ActionValue::pi_rational(Rational(l - 1)) + two_eps;
      ActionValue b = ActionValue::pi_rational(Rational(l)) + two_eps;
      auto hp = chainalg::homology(chainalg::truncate(pc, a, b));
      auto hi = chainalg::homology(chainalg::truncate(ic, a, b));
      chainalg::HomologyTable want;
      want[2 * l * n - n + 1] = chainalg::HomologyGroup{1, {}};
      want[2 * l * n + n] = chainalg::HomologyGroup{1, {}};
      expect(hp == want, "perturbed, level " + std::to_string(l) + ": got " +
                             table_str(hp) + ", want " + table_str(want));
      expect(hi == want, "idealized, level " + std::to_string(l) + ": got " +
                             table_str(hi));
    }
    return std::string("2 levels, n = 2");
  }});

  checks.push_back({"ellipsoid",
                    "window homology around pi*r_j^2 is Z in degrees n+2j-1 "
                    "and n+2j (near-ball radii, r_j^2 < 2 r_1^2)",
                    [] {
    domains::EllipsoidSpec r({Rational(1), Rational(4, 3)});
    const Rational probe(1, 10);
    const Rational squares[2] = {Rational(1), Rational(16, 9)};
    for (int j = 1; j <= 2; ++j) {
      auto t = domains::ellipsoid_window_homology(
          r, ActionValue::pi_rational(squares[j - 1] - probe),
          ActionValue::pi_rational(squares[j - 1] + probe));
      chainalg::HomologyTable want;
      want[2 + 2 * j - 1] = chainalg::HomologyGroup{1, {}};
      want[2 + 2 * j] = chainalg::HomologyGroup{1, {}};
      expect(t == want, "j=" + std::to_string(j) + ": got " + table_str(t));
    }
    return std::string("E(1, 4/3), both primitive orbits");
  }});

  checks.push_back({"ellipsoid",
                    "homology below a full bound is Z in the top degree n+2m",
                    [] {
    domains::EllipsoidSpec r({Rational(1), Rational(2)});
    ActionValue b = ActionValue::pi_rational(5);
    long long m = domains::m_count(r, b);
    expect(m == 6, "m_count: got " + std::to_string(m) + ", want 6");
    auto t = chainalg::homology(domains::ellipsoid_complex(r, b));
    auto want = single_z(static_cast<int>(2 + 2 * m));
    expect(t == want, "got " + table_str(t) + ", want " + table_str(want));
    return std::string("E(1, 2), bound 5*pi");
  }});

  checks.push_back({"ellipsoid", "midpoint windows carry zero homology", [] {
    domains::EllipsoidSpec r({Rational(1), Rational(3, 2)});
    const Rational probe(1, 10);
    const Rational mids[2] = {Rational(1, 2), Rational(3, 2)};
    for (const Rational& mid : mids) {
      auto t = domains::ellipsoid_window_homology(
          r, ActionValue::pi_rational(mid - probe),
          ActionValue::pi_rational(mid + probe));
      expect(t.empty(), "window around " + mid.str() + "*pi: got " +
                            table_str(t));
    }
    return std::string("2 negative controls");
  }});

  checks.push_back({"spectrum",
                    "homological spectrum reconstruction equals geometric "
                    "enumeration",
                    [] {
    domains::EllipsoidSpec r({Rational(1), Rational(3, 2)});
    ActionValue h = ActionValue::pi_rational(4);
    auto geo = domains::ellipsoid_spectrum(r, h);
    auto hom = domains::spectrum_from_homology(r, h, Rational(1, 10));
    expect(geo == hom, "geometric " + geo.str() + " vs homological " +
                           hom.str());
    return std::to_string(geo.entries.size()) + " entries";
  }});

  checks.push_back({"spectrum", "recover_radii inverts ellipsoid_spectrum", [] {
    domains::EllipsoidSpec r({Rational(1), Rational(3, 2), Rational(3, 2)});
    ActionValue h = ActionValue::pi_rational(5);
    auto rec = domains::recover_radii(domains::ellipsoid_spectrum(r, h), 3, h);
    expect(rec == r, "got " + rec.str() + ", want " + r.str());
    return r.str() + " (repeated radius)";
  }});

  checks.push_back({"spectrum",
                    "ellipsoids are symplectically equal iff the radii agree",
                    [] {
    domains::EllipsoidSpec a({Rational(1), Rational(2)});
    domains::EllipsoidSpec b({Rational(1), Rational(3, 2)});
    ActionValue h = ActionValue::pi_rational(5);
    auto res = domains::classify(a, b, h);
    expect(!res.equal, "E(1,2) vs E(1,3/2) reported equal");
    expect(res.witness_action == ActionValue::pi_rational(Rational(9, 4)),
           "witness action " + res.witness_action.str() + ", want 9/4*pi");
    auto same = domains::classify(a, domains::EllipsoidSpec({Rational(2), Rational(1)}),
                                  h);
    expect(same.equal, "E(1,2) vs E(2,1) reported distinct");
    return std::string("witness at 9/4*pi, degree " +
                       std::to_string(res.witness_degree));
  }});

  checks.push_back({"morse", "height function on the 2-sphere: H = (Z, 0, Z)",
                    [] {
    std::vector<chainalg::CriticalPoint> pts = {{"min", 0, 0.0},
                                                {"max", 2, 1.0}};
    auto h = chainalg::morse_homology(pts, {});
    chainalg::HomologyTable want;
    want[0] = chainalg::HomologyGroup{1, {}};
    want[2] = chainalg::HomologyGroup{1, {}};
    expect(h == want, "got " + table_str(h));
    return std::string("2 critical points");
  }});

  checks.push_back({"morse", "flat torus: H = (Z, Z^2, Z)", [] {
    std::vector<chainalg::CriticalPoint> pts = {{"m", 0, 0.0},
                                                {"s1", 1, 1.0},
                                                {"s2", 1, 2.0},
                                                {"M", 2, 3.0}};
    std::vector<chainalg::TrajectoryCount> tr = {
        {"s1", "m", 1}, {"s1", "m", -1}, {"s2", "m", 1}, {"s2", "m", -1},
        {"M", "s1", 1}, {"M", "s1", -1}, {"M", "s2", 1}, {"M", "s2", -1}};
    auto h = chainalg::morse_homology(pts, tr);
    chainalg::HomologyTable want;
    want[0] = chainalg::HomologyGroup{1, {}};
    want[1] = chainalg::HomologyGroup{2, {}};
    want[2] = chainalg::HomologyGroup{1, {}};
    expect(h == want, "got " + table_str(h));
    return std::string("4 points, signed counts cancel");
  }});

  checks.push_back({"morse",
                    "inconsistent trajectory counts are rejected (the square "
                    "of the differential must vanish)",
                    [] {
    std::vector<chainalg::CriticalPoint> pts = {
        {"a", 2, 3.0}, {"b1", 1, 2.0}, {"b2", 1, 1.0}, {"c", 0, 0.0}};
    std::vector<chainalg::TrajectoryCount> tr = {
        {"a", "b1", 1}, {"a", "b2", 1}, {"b1", "c", 1}, {"b2", "c", 1}};
    try {
      chainalg::morse_complex(pts, tr);
    } catch (const std::exception& e) {
      return std::string("rejected: ") + e.what();
    }
    throw std::runtime_error("inconsistent data was accepted");
  }});

  checks.push_back({"algebra",
                    "Smith normal form of diag(2,3) has invariant factors "
                    "(1, 6)",
                    [] {
    chainalg::IntMat a(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 3;
    auto s = chainalg::snf(a);
    expect(s.invariant_factors.size() == 2 && s.invariant_factors[0] == 1 &&
               s.invariant_factors[1] == 6,
           "unexpected invariant factors");
    return std::string("diag(2,3) ~ diag(1,6)");
  }});

  checks.push_back({"algebra", "Kunneth rank equality over Q and over F_2", [] {
    using chainalg::DiffEntry;
    using chainalg::Generator;
    chainalg::FilteredComplex a(
        {Generator{"x", 0, ActionValue::zero(), ""},
         Generator{"y", 1, ActionValue::pi_rational(1), ""}},
        {DiffEntry{0, 1, 2}});
    chainalg::FilteredComplex b(
        {Generator{"p", 0, ActionValue::zero(), ""},
         Generator{"q", 3, ActionValue::pi_rational(1), ""}},
        {});
    auto over_q = chainalg::kunneth_check(a, b, 0);
    auto over_f2 = chainalg::kunneth_check(a, b, 2);
    expect(over_q.equal, "rank equality fails over Q");
    expect(over_f2.equal, "rank equality fails over F_2");
    return std::string("torsion pair (coefficient 2), both fields");
  }});

  return checks;
}

int run_verify(const Tolerances& tol, const std::string& only, bool verbose) {
  auto checks = build_checks(tol);
  int ran = 0, failed = 0;
  for (const Check& c : checks) {
    if (!only.empty() && c.group != only &&
        c.anchor.find(only) == std::string::npos)
      continue;
    ++ran;
    try {
      std::string detail = c.fn();
      std::cout << "[PASS] " << c.anchor << "\n";
      if (verbose && !detail.empty()) std::cout << "       " << detail << "\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "[FAIL] " << c.anchor << "\n       " << e.what() << "\n";
    }
  }
  if (ran == 0) {
    std::cerr << "error: no checks match --only '" << only << "'\n";
    return 2;
  }
  std::cout << (failed == 0 ? "all " + std::to_string(ran) + " checks passed"
                            : std::to_string(failed) + " of " +
                                  std::to_string(ran) + " checks FAILED")
            << "\n";
  return failed == 0 ? 0 : 1;
}

// ---- main -------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{
      "indices of symplectic matrix paths and action-filtered homology of "
      "balls and ellipsoids"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "tsv"}));
  TolOverrides tols;
  tols.add_options(&app);
  bool verbose = false;
  app.add_flag("--verbose", verbose, "print extra detail");

  // index
  auto* cmd_index = app.add_subcommand(
      "index", "Robbin-Salamon index of a matrix path file");
  cmd_index->fallthrough();
  std::string index_file;
  bool want_cz = false;
  cmd_index->add_option("file", index_file, "path description (JSON)")
      ->required();
  cmd_index->add_flag("--cz", want_cz,
                      "require an identity start and a nondegenerate endpoint "
                      "(Conley-Zehnder index)");

  // ellipsoid
  auto* cmd_ellipsoid = app.add_subcommand(
      "ellipsoid", "action-window homology of an ellipsoid");
  cmd_ellipsoid->fallthrough();
  std::vector<std::string> ell_radii;
  std::vector<std::string> ell_window;
  bool ell_full = false;
  std::string ell_horizon;
  cmd_ellipsoid->add_option("radii", ell_radii, "radii (exact rationals)")
      ->required();
  cmd_ellipsoid->add_option("--window", ell_window, "window ]A, B]")
      ->expected(2);
  cmd_ellipsoid->add_flag("--full", ell_full,
                          "use the window ]-inf, horizon]");
  cmd_ellipsoid->add_option("--horizon", ell_horizon, "action bound");

  // ball
  auto* cmd_ball = app.add_subcommand(
      "ball", "truncated or full homology of the round ball");
  cmd_ball->fallthrough();
  int ball_n = 0;
  std::string ball_slope, ball_top, ball_eps, ball_horizon;
  std::vector<std::string> ball_window;
  bool ball_full = false;
  cmd_ball->add_option("--n", ball_n, "conjugate coordinate pairs")->required();
  cmd_ball->add_option("--slope", ball_slope,
                       "slope (positive action, not a multiple of pi)");
  cmd_ball->add_option("--top", ball_top,
                       "upper window endpoint (default inf)");
  cmd_ball->add_flag("--full", ball_full, "tower over slopes up to --horizon");
  cmd_ball->add_option("--horizon", ball_horizon, "tower horizon");
  cmd_ball->add_option("--perturbed", ball_eps,
                       "build the perturbed complex with this epsilon");
  cmd_ball->add_option("--window", ball_window,
                       "window ]A, B] for the perturbed complex")
      ->expected(2);

  // classify
  auto* cmd_classify =
      app.add_subcommand("classify", "symplectic comparison of two ellipsoids");
  cmd_classify->fallthrough();
  std::string cl_left, cl_right, cl_horizon;
  cmd_classify->add_option("--left", cl_left, "radii, comma separated")
      ->required();
  cmd_classify->add_option("--right", cl_right, "radii, comma separated")
      ->required();
  cmd_classify->add_option("--horizon", cl_horizon, "action horizon")
      ->required();

  // spectrum
  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "action spectrum of an ellipsoid");
  cmd_spectrum->fallthrough();
  std::vector<std::string> sp_radii;
  std::string sp_horizon, sp_probe;
  bool sp_recover = false;
  cmd_spectrum->add_option("radii", sp_radii, "radii (exact rationals)")
      ->required();
  cmd_spectrum->add_option("--horizon", sp_horizon, "action horizon")
      ->required();
  cmd_spectrum->add_option(
      "--probe", sp_probe,
      "reconstruct homologically with this probe half-width (rational, in "
      "units of pi)");
  cmd_spectrum->add_flag("--recover", sp_recover,
                         "recover the radii from the spectrum and print them");

  // morse
  auto* cmd_morse =
      app.add_subcommand("morse", "homology of a finite Morse data file");
  cmd_morse->fallthrough();
  std::string morse_file;
  cmd_morse->add_option("file", morse_file, "Morse data (JSON)")->required();

  // kunneth
  auto* cmd_kunneth = app.add_subcommand(
      "kunneth", "Kunneth rank check for two complex files");
  cmd_kunneth->fallthrough();
  std::string ka_file, kb_file;
  long long k_field = 0;
  cmd_kunneth->add_option("a", ka_file, "first complex (JSON)")->required();
  cmd_kunneth->add_option("b", kb_file, "second complex (JSON)")->required();
  cmd_kunneth->add_option("--field", k_field, "0 for Q, or a prime p");

  // verify
  auto* cmd_verify = app.add_subcommand(
      "verify", "run the built-in verification suite");
  cmd_verify->fallthrough();
  std::string only;
  cmd_verify->add_option("--only", only,
                         "run only checks from this group or whose name "
                         "contains this text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool json = format == "json";

  if (*cmd_index) {
    auto pf = interchange::path_from_json(read_file(index_file));
    Tolerances tol = tols.apply(pf.tol);
    if (want_cz) symplin::cz_index(pf.path, tol);  // throws when inapplicable
    auto r = symplin::rs_index(pf.path, tol);
    std::cout << (json ? interchange::index_to_json(r)
                       : interchange::index_to_tsv(r));
    return 0;
  }

  if (*cmd_ellipsoid) {
    domains::EllipsoidSpec r(parse_radii(ell_radii));
    if (ell_full != ell_window.empty())
      throw std::invalid_argument(
          "give exactly one of --window A B or --full --horizon H");
    chainalg::HomologyTable t;
    if (ell_full) {
      if (ell_horizon.empty())
        throw std::invalid_argument("--full needs --horizon");
      t = chainalg::homology(domains::ellipsoid_complex(
          r, interchange::parse_action(ell_horizon)));
    } else {
      t = domains::ellipsoid_window_homology(
          r, interchange::parse_action(ell_window[0]),
          interchange::parse_action(ell_window[1]));
    }
    std::cout << (json ? interchange::homology_to_json(t)
                       : interchange::homology_to_tsv(t));
    return 0;
  }

  if (*cmd_ball) {
    if (ball_full) {
      if (ball_horizon.empty())
        throw std::invalid_argument("--full needs --horizon");
      auto res = domains::ball_full_homology(
          ball_n, interchange::parse_action(ball_horizon));
      std::cout << (json ? interchange::tower_to_json(res)
                         : interchange::tower_to_tsv(res));
      // The top degree lives only at the final stage, so no connecting map
      // can witness it; success means everything else stabilized at zero.
      const int top_degree =
          ball_n * (2 * (static_cast<int>(res.stages.size()) - 1) + 1);
      bool vanished = res.limit.empty();
      for (const auto& [deg, st] : res.report.degrees)
        if (deg != top_degree && !st.stabilized) vanished = false;
      return vanished ? 0 : 1;
    }
    if (ball_slope.empty())
      throw std::invalid_argument("give --slope L (or --full --horizon H)");
    ActionValue slope = interchange::parse_action(ball_slope);
    chainalg::HomologyTable t;
    if (!ball_eps.empty()) {
      auto c = domains::perturbed_ball_complex(
          ball_n, slope, interchange::parse_action(ball_eps));
      ActionValue a = ball_window.empty()
                          ? ActionValue::neg_inf()
                          : interchange::parse_action(ball_window[0]);
      ActionValue b = ball_window.empty()
                          ? ActionValue::pos_inf()
                          : interchange::parse_action(ball_window[1]);
      t = chainalg::homology(chainalg::truncate(c, a, b));
    } else {
      domains::BallModel model(ball_n, slope);
      ActionValue top = ball_top.empty() ? ActionValue::pos_inf()
                                         : interchange::parse_action(ball_top);
      t = domains::ball_truncated_homology(model, top);
    }
    std::cout << (json ? interchange::homology_to_json(t)
                       : interchange::homology_to_tsv(t));
    return 0;
  }

  if (*cmd_classify) {
    domains::EllipsoidSpec left(parse_radii({cl_left}));
    domains::EllipsoidSpec right(parse_radii({cl_right}));
    auto res = domains::classify(left, right,
                                 interchange::parse_action(cl_horizon));
    std::cout << (json ? interchange::classify_to_json(res)
                       : interchange::classify_to_tsv(res));
    return 0;
  }

  if (*cmd_spectrum) {
    domains::EllipsoidSpec r(parse_radii(sp_radii));
    ActionValue h = interchange::parse_action(sp_horizon);
    domains::ActionSpectrum s =
        sp_probe.empty()
            ? domains::ellipsoid_spectrum(r, h)
            : domains::spectrum_from_homology(
                  r, h, interchange::parse_rational(sp_probe));
    if (sp_recover) {
      auto rec = domains::recover_radii(s, r.n(), h);
      if (json) {
        std::string out = "{\n  \"radii\": [";
        for (int i = 0; i < rec.n(); ++i) {
          if (i) out += ", ";
          out += "\"" + rec.radii()[static_cast<std::size_t>(i)].str() + "\"";
        }
        std::cout << out << "]\n}\n";
      } else {
        for (const Rational& q : rec.radii())
          std::cout << "radius\t" << q.str() << "\n";
      }
      return 0;
    }
    std::cout << (json ? interchange::spectrum_to_json(s)
                       : interchange::spectrum_to_tsv(s));
    return 0;
  }

  if (*cmd_morse) {
    auto md = interchange::morse_from_json(read_file(morse_file));
    auto t = chainalg::morse_homology(md.points, md.trajectories);
    std::cout << (json ? interchange::homology_to_json(t)
                       : interchange::homology_to_tsv(t));
    return 0;
  }

  if (*cmd_kunneth) {
    auto a = interchange::complex_from_json(read_file(ka_file));
    auto b = interchange::complex_from_json(read_file(kb_file));
    auto rep = chainalg::kunneth_check(a, b, k_field);
    std::cout << (json ? interchange::kunneth_to_json(rep)
                       : interchange::kunneth_to_tsv(rep));
    return rep.equal ? 0 : 1;
  }

  if (*cmd_verify) {
    return run_verify(tols.apply(Tolerances{}), only, verbose);
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
