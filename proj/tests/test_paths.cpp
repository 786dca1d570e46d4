// Tests for symplectic path construction, generators, crossings, and the
// Robbin-Salamon / Conley-Zehnder index computations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "symhom/crossings.hpp"
#include "symhom/symplectic.hpp"

using symhom::Tolerances;
using symhom::symplin::Crossing;
using symhom::symplin::cz_index;
using symhom::symplin::find_crossings;
using symhom::symplin::generator_at;
using symhom::symplin::IndexResult;
using symhom::symplin::rs_index;
using symhom::symplin::SymplecticPath;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd J0(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return j;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

bool approx_eq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
               double tol = 1e-9) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs(a - b) <= tol;
}

}  // namespace

TEST_CASE("rotation paths: values, symplecticity, generator") {
  const SymplecticPath p = SymplecticPath::rotation(1, 0.7);
  CHECK(p.n() == 1);
  CHECK(p.dim() == 2);
  CHECK(approx_eq(p.start(), Eigen::MatrixXd::Identity(2, 2)));

  // Psi(t) = exp(2*lambda*t*J0), so the generator is the constant 2*lambda*I.
  const Eigen::MatrixXd expected_s = 1.4 * Eigen::MatrixXd::Identity(2, 2);
  CHECK(approx_eq(generator_at(p, 0.0), expected_s));
  CHECK(approx_eq(generator_at(p, 0.37), expected_s));
  CHECK(approx_eq(generator_at(p, 1.0), expected_s));

  const Eigen::MatrixXd j = J0(1);
  for (double t : {0.0, 0.25, 0.5, 0.8, 1.0}) {
    const Eigen::MatrixXd psi = p.eval(t);
    CHECK(approx_eq(psi.transpose() * j * psi, j));
    // Explicit closed form of a planar rotation by angle 2*lambda*t.
    Eigen::MatrixXd rot(2, 2);
    const double a = 2 * 0.7 * t;
    rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    CHECK(approx_eq(psi, rot));
  }
  CHECK_THROWS_AS((void)p.eval(1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)p.eval(-0.1), std::invalid_argument);
}

TEST_CASE("rotation by pi/2 ends at -Id") {
  const SymplecticPath p = SymplecticPath::rotation(1, kPi / 2);
  CHECK(approx_eq(p.end(), -Eigen::MatrixXd::Identity(2, 2)));
}

TEST_CASE("shear generator and half-integer index") {
  const SymplecticPath p = SymplecticPath::shear(1, 0.8);
  Eigen::MatrixXd s(2, 2);
  s << 0.8, 0.0, 0.0, 0.0;
  CHECK(approx_eq(generator_at(p, 0.5), s));

  // Psi(t) = [[1,0],[0.8 t,1]]: eigenvalue 1 persists, but only the start
  // contributes beyond the constant-kernel family, with a rank-one positive
  // form; the index is sign(rate)/2.
  const IndexResult r = rs_index(p);
  CHECK(r.twice_value == 1);
  CHECK_FALSE(r.is_integer());
  CHECK(r.str() == "1/2");

  CHECK(rs_index(SymplecticPath::shear(1, -0.8)).twice_value == -1);
  CHECK(rs_index(SymplecticPath::shear(2, 0.3, 1)).twice_value == 1);
  CHECK_THROWS_AS(SymplecticPath::shear(2, 1.0, 5), std::invalid_argument);
}

TEST_CASE("exp_const reproduces its generator and validates input") {
  Eigen::MatrixXd s(2, 2);
  s << 1.3, 0.2, 0.2, 0.7;
  const SymplecticPath p = SymplecticPath::exp_const(s);
  CHECK(approx_eq(generator_at(p, 0.0), s));
  CHECK(approx_eq(generator_at(p, 0.61), s));

  const Eigen::MatrixXd j = J0(1);
  const Eigen::MatrixXd psi = p.eval(1.0);
  CHECK(approx_eq(psi.transpose() * j * psi, j));

  Eigen::MatrixXd asym(2, 2);
  asym << 0.0, 1.0, -1.0, 0.0;  // not symmetric
  CHECK_THROWS_AS(SymplecticPath::exp_const(asym), std::invalid_argument);
}

TEST_CASE("exp_const_from continues from a given base point") {
  Eigen::MatrixXd s1(2, 2), s2(2, 2);
  s1 << 1.3, 0.2, 0.2, 0.7;
  s2 << -0.4, 0.1, 0.1, 0.9;
  const SymplecticPath p = SymplecticPath::exp_const(s1);
  const SymplecticPath q = SymplecticPath::exp_const_from(s2, p.end());
  CHECK(approx_eq(q.start(), p.end()));
  CHECK(approx_eq(generator_at(q, 0.5), s2));

  // Base points must be symplectic.
  Eigen::MatrixXd bad = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(SymplecticPath::exp_const_from(s2, bad),
                  std::invalid_argument);
}

TEST_CASE("constant identity paths have non-isolated crossings") {
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  const SymplecticPath p = SymplecticPath::exp_const(zero);
  CHECK_THROWS_AS((void)find_crossings(p), std::runtime_error);
  CHECK_THROWS_AS((void)rs_index(p), std::runtime_error);
}

TEST_CASE("crossings of a quarter rotation") {
  const SymplecticPath p = SymplecticPath::rotation(1, kPi / 2);
  const std::vector<Crossing> cs = find_crossings(p);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].t == doctest::Approx(0.0));
  CHECK(cs[0].endpoint);
  CHECK(cs[0].kernel_dim == 2);
  CHECK(cs[0].signature == 2);
  CHECK(cs[0].zero_count == 0);

  const IndexResult r = rs_index(p);
  CHECK(r.twice_value == 2);  // half weight at t=0 times signature 2
  CHECK(r.str() == "1");
  CHECK(cz_index(p) == 1);
}

TEST_CASE("crossings of rotation with lambda = 5*pi/2") {
  // Eigenvalue 1 occurs when 5*pi*t is a multiple of 2*pi: t = 0, 2/5, 4/5.
  const SymplecticPath p = SymplecticPath::rotation(1, 5 * kPi / 2);
  const std::vector<Crossing> cs = find_crossings(p);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0].t == doctest::Approx(0.0));
  CHECK(cs[1].t == doctest::Approx(0.4));
  CHECK(cs[2].t == doctest::Approx(0.8));
  CHECK(cs[0].endpoint);
  CHECK_FALSE(cs[1].endpoint);
  CHECK_FALSE(cs[2].endpoint);
  for (const Crossing& c : cs) {
    CHECK(c.kernel_dim == 2);
    CHECK(c.signature == 2);
  }
  CHECK(rs_index(p).twice_value == 10);
  CHECK(cz_index(p) == 5);
}

TEST_CASE("Conley-Zehnder indices of odd half-turn rotations") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k <= 4; ++k) {
      const SymplecticPath p =
          SymplecticPath::rotation(n, (k + 0.5) * kPi);
      CHECK(cz_index(p) == static_cast<long long>(n) * (2 * k + 1));
    }
  }
}

TEST_CASE("full loops double-count: index 2*l*n") {
  for (int l = 1; l <= 3; ++l) {
    for (int n = 1; n <= 2; ++n) {
      const SymplecticPath p = SymplecticPath::rotation(n, l * kPi);
      const IndexResult r = rs_index(p);
      CHECK(r.twice_value == 4LL * l * n);
      // The loop endpoint is degenerate, so cz_index must refuse.
      CHECK_THROWS_AS((void)cz_index(p), std::runtime_error);
    }
  }
}

TEST_CASE("cz_index requires a path starting at the identity") {
  Eigen::MatrixXd s(2, 2);
  s << 0.9, 0.1, 0.1, 0.4;
  const Eigen::MatrixXd base = SymplecticPath::rotation(1, kPi / 2).end();
  const SymplecticPath p = SymplecticPath::exp_const_from(s, base);
  CHECK_THROWS_AS((void)cz_index(p), std::invalid_argument);
}

TEST_CASE("hemisphere-with-cap paths carry a half-integer index") {
  const SymplecticPath p1 = SymplecticPath::sphere_orbit_path(1, 1, 1.0);
  const IndexResult r1 = rs_index(p1);
  CHECK(r1.twice_value == 5);
  CHECK(r1.str() == "5/2");
  CHECK_FALSE(r1.is_integer());

  const SymplecticPath p2 = SymplecticPath::sphere_orbit_path(3, 2, 2.0);
  CHECK(rs_index(p2).twice_value == 25);  // 4*l*n + 1 doubled halves

  for (int l = 1; l <= 3; ++l)
    for (int n = 1; n <= 2; ++n)
      CHECK(rs_index(SymplecticPath::sphere_orbit_path(l, n, 1.0))
                .twice_value == 4LL * l * n + 1);

  CHECK_THROWS_AS(SymplecticPath::sphere_orbit_path(0, 1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SymplecticPath::sphere_orbit_path(1, 1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("perturbed orbit paths split by the sign of the Hessian eigenvalues") {
  // 2n-1 positive directions push the index to 2*l*n + n; negative ones pull
  // it to 2*l*n - n + 1.  The gap 2n-1 is the dimension count.
  const std::vector<double> pos3(3, 1.0), neg3(3, -1.0);
  CHECK(cz_index(SymplecticPath::perturbed_orbit_path(1, 2, 0.01, pos3)) == 6);
  CHECK(cz_index(SymplecticPath::perturbed_orbit_path(1, 2, 0.01, neg3)) == 3);

  const std::vector<double> pos1(1, 0.5), neg1(1, -0.5);
  CHECK(cz_index(SymplecticPath::perturbed_orbit_path(3, 1, 0.01, pos1)) == 7);
  CHECK(cz_index(SymplecticPath::perturbed_orbit_path(3, 1, 0.01, neg1)) == 6);

  const std::vector<double> mixed = {1.0, -1.0, 1.0};
  CHECK_THROWS_AS(SymplecticPath::perturbed_orbit_path(1, 2, 0.01, mixed),
                  std::invalid_argument);
  const std::vector<double> wrong_count = {1.0, 1.0};
  CHECK_THROWS_AS(
      SymplecticPath::perturbed_orbit_path(1, 2, 0.01, wrong_count),
      std::invalid_argument);
  CHECK_THROWS_AS(SymplecticPath::perturbed_orbit_path(1, 2, 0.0, pos3),
                  std::invalid_argument);
}

TEST_CASE("index is additive under concatenation") {
  Eigen::MatrixXd s1(2, 2), s2(2, 2);
  s1 << 1.3, 0.2, 0.2, 0.7;
  s2 << -0.4, 0.1, 0.1, 0.9;
  const SymplecticPath p = SymplecticPath::exp_const(s1);
  const SymplecticPath q = SymplecticPath::exp_const_from(s2, p.end());
  const SymplecticPath pq = SymplecticPath::concat(p, q);
  CHECK(pq.segments().size() == 2);
  CHECK(rs_index(pq).twice_value ==
        rs_index(p).twice_value + rs_index(q).twice_value);

  // Mismatched endpoints and dimensions are rejected.
  CHECK_THROWS_AS(SymplecticPath::concat(p, SymplecticPath::rotation(2, 0.3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      SymplecticPath::concat(SymplecticPath::rotation(1, kPi / 2),
                             SymplecticPath::rotation(1, kPi / 2)),
      std::invalid_argument);
}

TEST_CASE("index is additive under direct sums") {
  const SymplecticPath a = SymplecticPath::rotation(1, kPi / 2);
  const SymplecticPath b = SymplecticPath::sphere_orbit_path(1, 1, 1.0);
  const SymplecticPath ab = SymplecticPath::direct_sum(a, b);
  CHECK(ab.n() == 2);
  CHECK(rs_index(ab).twice_value ==
        rs_index(a).twice_value + rs_index(b).twice_value);

  // The direct sum evaluates blockwise in the (x..., y...) coordinate order.
  const Eigen::MatrixXd m = ab.eval(0.37);
  const Eigen::MatrixXd ma = a.eval(0.37);
  CHECK(m(0, 0) == doctest::Approx(ma(0, 0)));
  CHECK(m(0, 2) == doctest::Approx(ma(0, 1)));  // x1,y1 block offsets
  CHECK(m(2, 0) == doctest::Approx(ma(1, 0)));
  CHECK(m(2, 2) == doctest::Approx(ma(1, 1)));
}

TEST_CASE("sampled paths: validation and index equality with closed forms") {
  const SymplecticPath closed = SymplecticPath::rotation(1, 3 * kPi / 2);

  // A reparametrized sampling (t -> t^2) of the same rotation: crossings move
  // but the index is invariant under orientation-preserving reparametrization.
  const int m = 129;
  std::vector<double> grid(m);
  std::vector<Eigen::MatrixXd> mats(m);
  for (int i = 0; i < m; ++i) {
    const double u = static_cast<double>(i) / (m - 1);
    grid[i] = u;
    mats[i] = closed.eval(u * u);
  }
  const SymplecticPath sam = SymplecticPath::sampled(grid, mats);
  CHECK(rs_index(sam).twice_value == rs_index(closed).twice_value);
  CHECK(rs_index(sam).twice_value == 6);
  CHECK(cz_index(sam) == 3);

  // The nontrivial crossing of the closed path sits at t=2/3; after the
  // reparametrization it must appear near sqrt(2/3).  The location is only
  // as accurate as the piecewise interpolation between the 129 samples.
  const std::vector<Crossing> cs = find_crossings(sam);
  REQUIRE(cs.size() == 2);
  CHECK(cs[1].t == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-3));

  // Too few samples.
  std::vector<double> short_grid(10);
  std::vector<Eigen::MatrixXd> short_mats(10);
  for (int i = 0; i < 10; ++i) {
    short_grid[i] = static_cast<double>(i) / 9;
    short_mats[i] = closed.eval(short_grid[i]);
  }
  CHECK_THROWS_AS(SymplecticPath::sampled(short_grid, short_mats),
                  std::invalid_argument);

  // Non-symplectic sample.
  std::vector<Eigen::MatrixXd> broken = mats;
  broken[40](0, 0) += 0.5;
  CHECK_THROWS_AS(SymplecticPath::sampled(grid, broken),
                  std::invalid_argument);
}

TEST_CASE("segment lookup follows global time") {
  const SymplecticPath p = SymplecticPath::sphere_orbit_path(1, 1, 1.0);
  REQUIRE(p.segments().size() == 2);
  CHECK(p.segment_index(0.1) == 0);
  CHECK(p.segment_index(0.9) == 1);
}
