#include "symhom/symplectic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace symhom::symplin {

Eigen::MatrixXd J0(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = -1.0;
    j(n + i, i) = 1.0;
  }
  return j;
}

double omega0(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size() || u.size() % 2 != 0)
    throw std::invalid_argument("omega0: vectors must share an even dimension");
  const int n = static_cast<int>(u.size()) / 2;
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += u(j) * v(n + j) - u(n + j) * v(j);
  return s;
}

SymplecticCheck check_symplectic(const Eigen::MatrixXd& M, double tol_sym) {
  SymplecticCheck out;
  if (M.rows() != M.cols() || M.rows() % 2 != 0) {
    out.ok = false;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const int n = static_cast<int>(M.rows()) / 2;
  Eigen::MatrixXd r = M.transpose() * J0(n) * M - J0(n);
  out.residual = r.cwiseAbs().maxCoeff();
  out.ok = out.residual <= tol_sym;
  return out;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& M) {
  return 0.5 * (M + M.transpose());
}

Eigen::MatrixXd embed(const Eigen::MatrixXd& M, int n, int offset,
                      bool fill_identity) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0)
    throw std::invalid_argument("embed: matrix must be square of even size");
  const int m = static_cast<int>(M.rows()) / 2;
  if (offset < 0 || offset + m > n)
    throw std::invalid_argument("embed: block does not fit");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  if (fill_identity) out.setIdentity();
  auto slot = [&](int i) { return i < m ? offset + i : n + offset + (i - m); };
  for (int i = 0; i < 2 * m; ++i) {
    if (fill_identity) out(slot(i), slot(i)) = 0.0;
    for (int j = 0; j < 2 * m; ++j) out(slot(i), slot(j)) = M(i, j);
  }
  return out;
}

namespace {

Eigen::MatrixXd eval_closed(const ClosedSegment& c, double u) {
  const int n = static_cast<int>(c.S.rows()) / 2;
  Eigen::MatrixXd A = J0(n) * c.S;
  return (u * A).exp() * c.base;
}

Eigen::MatrixXd eval_sampled(const SampledSegment& s, double u) {
  const auto& g = s.grid;
  if (u <= g.front()) return s.mats.front();
  if (u >= g.back()) return s.mats.back();
  int i = static_cast<int>(std::upper_bound(g.begin(), g.end(), u) -
                           g.begin()) -
          1;
  i = std::min(i, static_cast<int>(g.size()) - 2);
  const double h = g[i + 1] - g[i];
  const double frac = (u - g[i]) / h;
  return s.mats[i] * (frac * s.logs[i]).exp();
}

void require_symmetric(const Eigen::MatrixXd& S, const char* who,
                       double tol = 1e-9) {
  if (S.rows() != S.cols() || S.rows() % 2 != 0)
    throw std::invalid_argument(std::string(who) +
                                ": generator must be square of even size");
  double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol)
    throw std::invalid_argument(std::string(who) +
                                ": generator is not symmetric (asymmetry " +
                                std::to_string(asym) + ")");
}

}  // namespace

Eigen::MatrixXd SymplecticPath::eval(double t) const {
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw std::invalid_argument("eval: time outside [0,1]");
  t = std::clamp(t, 0.0, 1.0);
  const Segment& seg = segments_[segment_index(t)];
  const double u = (t - seg.t0) / (seg.t1 - seg.t0);
  if (const auto* c = std::get_if<ClosedSegment>(&seg.data))
    return eval_closed(*c, u);
  return eval_sampled(std::get<SampledSegment>(seg.data), u);
}

int SymplecticPath::segment_index(const double t) const {
  for (int i = 0; i < static_cast<int>(segments_.size()); ++i)
    if (t <= segments_[i].t1 + 1e-15 || i + 1 == static_cast<int>(segments_.size()))
      return i;
  return static_cast<int>(segments_.size()) - 1;
}

SymplecticPath SymplecticPath::rotation(int n, double lambda) {
  if (n < 1) throw std::invalid_argument("rotation: n must be >= 1");
  Eigen::MatrixXd S = 2.0 * lambda * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  return exp_const(S);
}

SymplecticPath SymplecticPath::shear(int n, double rate, int plane) {
  if (n < 1) throw std::invalid_argument("shear: n must be >= 1");
  if (plane < 0 || plane >= n)
    throw std::invalid_argument("shear: plane index out of range");
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  S(plane, plane) = rate;
  return exp_const(S);
}

SymplecticPath SymplecticPath::exp_const(const Eigen::MatrixXd& S) {
  require_symmetric(S, "exp_const");
  const int n = static_cast<int>(S.rows()) / 2;
  Segment seg;
  seg.data = ClosedSegment{symmetrize(S),
                           Eigen::MatrixXd::Identity(2 * n, 2 * n)};
  return SymplecticPath(n, {seg});
}

SymplecticPath SymplecticPath::exp_const_from(const Eigen::MatrixXd& S,
                                              const Eigen::MatrixXd& base,
                                              double tol_sym) {
  require_symmetric(S, "exp_const_from");
  if (base.rows() != S.rows() || base.cols() != S.cols())
    throw std::invalid_argument("exp_const_from: base/generator size mismatch");
  SymplecticCheck chk = check_symplectic(base, tol_sym);
  if (!chk.ok)
    throw std::invalid_argument(
        "exp_const_from: base is not symplectic (residual " +
        std::to_string(chk.residual) + ")");
  const int n = static_cast<int>(S.rows()) / 2;
  Segment seg;
  seg.data = ClosedSegment{symmetrize(S), base};
  return SymplecticPath(n, {seg});
}

SymplecticPath SymplecticPath::sampled(const std::vector<double>& grid,
                                       const std::vector<Eigen::MatrixXd>& mats,
                                       double tol_sym) {
  if (grid.size() < 64)
    throw std::invalid_argument("sampled: need at least 64 grid points");
  if (grid.size() != mats.size())
    throw std::invalid_argument("sampled: grid/matrix count mismatch");
  if (std::abs(grid.front()) > 1e-12 || std::abs(grid.back() - 1.0) > 1e-12)
    throw std::invalid_argument("sampled: grid must cover [0,1]");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("sampled: grid must be strictly increasing");
  const int d = static_cast<int>(mats.front().rows());
  if (d % 2 != 0) throw std::invalid_argument("sampled: odd dimension");
  SampledSegment s;
  s.grid = grid;
  s.grid.front() = 0.0;
  s.grid.back() = 1.0;
  s.mats = mats;
  for (size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != d || mats[i].cols() != d)
      throw std::invalid_argument("sampled: inconsistent matrix sizes");
    SymplecticCheck chk = check_symplectic(mats[i], tol_sym);
    if (!chk.ok)
      throw std::invalid_argument(
          "sampled: matrix at grid index " + std::to_string(i) +
          " is not symplectic (residual " + std::to_string(chk.residual) +
          ")");
  }
  s.logs.reserve(mats.size() - 1);
  for (size_t i = 0; i + 1 < mats.size(); ++i) {
    Eigen::MatrixXd step = mats[i].partialPivLu().solve(mats[i + 1]);
    s.logs.push_back(step.log());
  }
  Segment seg;
  seg.data = std::move(s);
  return SymplecticPath(d / 2, {seg});
}

SymplecticPath SymplecticPath::concat(const SymplecticPath& p,
                                      const SymplecticPath& q,
                                      double tol_sym) {
  if (p.n() != q.n())
    throw std::invalid_argument("concat: dimension mismatch");
  double gap = (p.end() - q.start()).cwiseAbs().maxCoeff();
  if (gap > tol_sym)
    throw std::invalid_argument(
        "concat: endpoint mismatch p(1) != q(0) (max difference " +
        std::to_string(gap) + ")");
  std::vector<Segment> segs;
  segs.reserve(p.segments().size() + q.segments().size());
  for (Segment s : p.segments()) {
    s.t0 *= 0.5;
    s.t1 *= 0.5;
    segs.push_back(std::move(s));
  }
  for (Segment s : q.segments()) {
    s.t0 = 0.5 + 0.5 * s.t0;
    s.t1 = 0.5 + 0.5 * s.t1;
    segs.push_back(std::move(s));
  }
  return SymplecticPath(p.n(), std::move(segs));
}

namespace {

bool has_sampled(const SymplecticPath& p) {
  for (const auto& s : p.segments())
    if (std::holds_alternative<SampledSegment>(s.data)) return true;
  return false;
}

// Closed data of the segment of `p` covering [a,b], restricted to that span.
ClosedSegment restrict_closed(const SymplecticPath& p, double a, double b) {
  const Segment& seg = p.segments()[p.segment_index(0.5 * (a + b))];
  const auto& c = std::get<ClosedSegment>(seg.data);
  ClosedSegment out;
  out.S = c.S * ((b - a) / (seg.t1 - seg.t0));
  out.base = p.eval(a);
  return out;
}

}  // namespace

SymplecticPath SymplecticPath::direct_sum(const SymplecticPath& p,
                                          const SymplecticPath& q) {
  const int n = p.n() + q.n();
  auto block_pair = [&](const Eigen::MatrixXd& mp,
                        const Eigen::MatrixXd& mq) -> Eigen::MatrixXd {
    return embed(mp, n, 0, true) * embed(mq, n, p.n(), true);
  };

  if (!has_sampled(p) && !has_sampled(q)) {
    std::set<double> cuts{0.0, 1.0};
    for (const auto& s : p.segments()) {
      cuts.insert(s.t0);
      cuts.insert(s.t1);
    }
    for (const auto& s : q.segments()) {
      cuts.insert(s.t0);
      cuts.insert(s.t1);
    }
    std::vector<double> bounds(cuts.begin(), cuts.end());
    std::vector<Segment> segs;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
      const double a = bounds[i], b = bounds[i + 1];
      if (b - a < 1e-13) continue;
      ClosedSegment cp = restrict_closed(p, a, b);
      ClosedSegment cq = restrict_closed(q, a, b);
      ClosedSegment sum;
      sum.S = embed(cp.S, n, 0, false) + embed(cq.S, n, p.n(), false);
      sum.base = block_pair(cp.base, cq.base);
      Segment seg;
      seg.t0 = a;
      seg.t1 = b;
      seg.data = std::move(sum);
      segs.push_back(std::move(seg));
    }
    return SymplecticPath(n, std::move(segs));
  }

  // Resample on a merged grid.
  std::set<double> pts;
  const int kUniform = 257;
  for (int i = 0; i < kUniform; ++i)
    pts.insert(static_cast<double>(i) / (kUniform - 1));
  auto add_path_points = [&pts](const SymplecticPath& path) {
    for (const auto& s : path.segments()) {
      pts.insert(s.t0);
      pts.insert(s.t1);
      if (const auto* smp = std::get_if<SampledSegment>(&s.data))
        for (double u : smp->grid) pts.insert(s.t0 + u * (s.t1 - s.t0));
    }
  };
  add_path_points(p);
  add_path_points(q);
  std::vector<double> grid;
  for (double t : pts)
    if (grid.empty() || t - grid.back() > 1e-12) grid.push_back(t);
  grid.front() = 0.0;
  grid.back() = 1.0;
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(grid.size());
  for (double t : grid) mats.push_back(block_pair(p.eval(t), q.eval(t)));
  return sampled(grid, mats, 1e-7);
}

SymplecticPath SymplecticPath::sphere_orbit_path(int l, int n,
                                                 double curvature) {
  if (l < 1 || n < 1)
    throw std::invalid_argument("sphere_orbit_path: l and n must be >= 1");
  if (!(curvature > 0.0))
    throw std::invalid_argument(
        "sphere_orbit_path: curvature must be positive");
  const double pi = 3.14159265358979323846264338327950288;
  SymplecticPath loop = rotation(n, l * pi);  // angle 2*l*pi: a full loop
  SymplecticPath tail = shear(n, curvature / (l * l * pi * pi), 0);
  return concat(loop, tail, 1e-9);
}

SymplecticPath SymplecticPath::perturbed_orbit_path(
    int l, int n, double delta, const std::vector<double>& hessian_eigs) {
  if (l < 1 || n < 1)
    throw std::invalid_argument("perturbed_orbit_path: l and n must be >= 1");
  if (delta == 0.0)
    throw std::invalid_argument("perturbed_orbit_path: delta must be nonzero");
  if (static_cast<int>(hessian_eigs.size()) != 2 * n - 1)
    throw std::invalid_argument(
        "perturbed_orbit_path: expected 2n-1 = " + std::to_string(2 * n - 1) +
        " transverse Hessian eigenvalues, got " +
        std::to_string(hessian_eigs.size()));
  bool all_pos = true, all_neg = true;
  for (double e : hessian_eigs) {
    if (!(e > 0.0)) all_pos = false;
    if (!(e < 0.0)) all_neg = false;
  }
  if (!all_pos && !all_neg)
    throw std::invalid_argument(
        "perturbed_orbit_path: eigenvalues must be all positive (minimum) or "
        "all negative (maximum); mixed signs are unsupported");

  SymplecticPath sphere = sphere_orbit_path(l, n, 1.0);
  Eigen::MatrixXd B = sphere.end();  // the unit-rate shear value

  // Transverse Hessian, with the radial slot (the shear plane x_1) zeroed.
  Eigen::VectorXd d(2 * n);
  d(0) = 0.0;
  for (int i = 1; i < n; ++i) d(i) = hessian_eigs[i - 1];
  for (int i = 0; i < n; ++i) d(n + i) = hessian_eigs[n - 1 + i];
  Eigen::MatrixXd H = d.asDiagonal();

  // B * exp(u delta J0 H) = exp(u J0 S') * B with S' = delta B^{-T} H B^{-1}.
  Eigen::MatrixXd Binv = B.inverse();
  Eigen::MatrixXd Sp = delta * Binv.transpose() * H * Binv;
  Sp = symmetrize(Sp);
  SymplecticPath tail = exp_const_from(Sp, B, 1e-9);
  return concat(sphere, tail, 1e-9);
}

GeneratorInfo generator_info(const SymplecticPath& path, double t,
                             const Tolerances& tol) {
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw std::invalid_argument("generator_info: time outside [0,1]");
  t = std::clamp(t, 0.0, 1.0);
  const int idx = path.segment_index(t);
  const Segment& seg = path.segments()[idx];
  const double span = seg.t1 - seg.t0;
  GeneratorInfo out;

  if (const auto* c = std::get_if<ClosedSegment>(&seg.data)) {
    out.S = c->S / span;
    out.asymmetry = 0.0;
    return out;
  }

  const auto& s = std::get<SampledSegment>(seg.data);
  const double u = (t - seg.t0) / span;
  const auto& g = s.grid;
  const int m = static_cast<int>(g.size());
  const int jn = static_cast<int>(std::upper_bound(g.begin(), g.end(), u) -
                                  g.begin()) -
                 1;
  const int j = std::clamp(jn, 0, m - 2);
  const int nn = path.n();
  const Eigen::MatrixXd Jn = J0(nn);

  // Velocity of the interpolation on subinterval i: Psi' = Psi * L_i / h_i
  // (local time), hence the ambient generator A(t) = Psi (L_i/h_i) Psi^{-1}
  // rescaled to global time.
  auto raw_generator = [&](int i) {
    Eigen::MatrixXd conj =
        s.mats[i] * (s.logs[i] / (g[i + 1] - g[i])) *
        s.mats[i].partialPivLu().inverse();
    return Eigen::MatrixXd(-Jn * conj / span);
  };

  const bool at_node = std::abs(u - g[j]) < 1e-12 && j > 0;
  Eigen::MatrixXd raw;
  if (at_node)
    raw = 0.5 * (raw_generator(j - 1) + raw_generator(j));
  else if (std::abs(u - g[j + 1]) < 1e-12 && j + 2 < m)
    raw = 0.5 * (raw_generator(j) + raw_generator(j + 1));
  else
    raw = raw_generator(j);

  out.asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (out.asymmetry > tol.gen)
    throw std::runtime_error(
        "generator_info: asymmetry " + std::to_string(out.asymmetry) +
        " exceeds tolerance " + std::to_string(tol.gen) +
        " (corrupted or non-symplectic samples)");
  out.S = symmetrize(raw);
  return out;
}

Eigen::MatrixXd generator_at(const SymplecticPath& path, double t,
                             const Tolerances& tol) {
  return generator_info(path, t, tol).S;
}

}  // namespace symhom::symplin
