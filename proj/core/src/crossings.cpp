#include "symhom/crossings.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace symhom::symplin {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

struct NonIsolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Eigen::VectorXd singular_values(const Eigen::MatrixXd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues();  // descending
}

double sigma_kth_smallest(const Eigen::MatrixXd& M, int k) {
  Eigen::VectorXd s = singular_values(M);
  const int m = static_cast<int>(s.size());
  const int idx = m - 1 - k;
  if (idx < 0) return 0.0;
  return s(idx);
}

double sigma_min(const Eigen::MatrixXd& M) { return sigma_kth_smallest(M, 0); }

// Orthonormal basis of the numerical kernel (singular values <= tol).
Eigen::MatrixXd kernel_of(const Eigen::MatrixXd& M, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const int cols = static_cast<int>(M.cols());
  const int rank_like = static_cast<int>(s.size());
  int k = 0;
  for (int i = 0; i < rank_like; ++i)
    if (s(i) <= tol) ++k;
  k += cols - rank_like;  // columns beyond min(rows, cols)
  return svd.matrixV().rightCols(k);
}

std::pair<int, int> signature_of(const Eigen::MatrixXd& form, double tol_eig) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form);
  int pos = 0, neg = 0, zero = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > tol_eig)
      ++pos;
    else if (v < -tol_eig)
      ++neg;
    else
      ++zero;
  }
  return {pos - neg, zero};
}

// Golden-section minimization of a unimodal bracket to the given width.
std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                     double lo, double hi, double width) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 300 && (b - a) > width; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Sign-change bisection of a scalar function to the given width.
double bisect_zero(const std::function<double(double)>& f, double lo,
                   double hi, double width) {
  double flo = f(lo);
  for (int it = 0; it < 200 && (hi - lo) > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Crossing make_crossing(const SymplecticPath& path, int segidx, double t_global,
                       bool endpoint, const Eigen::MatrixXd& idm,
                       const Eigen::MatrixXd& S_global,
                       const Tolerances& tol) {
  Crossing c;
  c.t = t_global;
  c.segment = segidx;
  c.endpoint = endpoint;
  c.kernel = kernel_of(idm, tol.ker);
  c.kernel_dim = static_cast<int>(c.kernel.cols());
  c.form = c.kernel.transpose() * S_global * c.kernel;
  auto [sig, zero] = signature_of(c.form, tol.eig);
  c.signature = sig;
  c.zero_count = zero;
  (void)path;
  return c;
}

void process_closed(const SymplecticPath& path, int segidx, const Segment& seg,
                    const ClosedSegment& closed, const Tolerances& tol,
                    std::vector<Crossing>& out,
                    std::vector<std::string>& notes) {
  const int dim = static_cast<int>(closed.S.rows());
  const int n = dim / 2;
  const double span = seg.t1 - seg.t0;
  const Eigen::MatrixXd A = J0(n) * closed.S;
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd id_minus_base = Id - closed.base;
  const double normA = A.norm();
  const Eigen::MatrixXd S_global = closed.S / span;

  if (normA <= 1e-13 && sigma_min(id_minus_base) <= tol.ker)
    throw NonIsolated(
        "non-isolated crossing: segment " + std::to_string(segidx) +
        " is constant with eigenvalue 1, so every time is a crossing");

  // Constant-kernel family F = ker(A) /\ ker(Id - base): present in every
  // kernel along the segment, and carries zero crossing form since
  // ker(A) = ker(S).  Interior times count as crossings only beyond F.
  Eigen::MatrixXd stacked(2 * dim, dim);
  stacked.topRows(dim) = A;
  stacked.bottomRows(dim) = id_minus_base;
  const int family_dim = static_cast<int>(kernel_of(stacked, tol.ker).cols());
  if (family_dim > 0)
    notes.push_back("segment " + std::to_string(segidx) +
                    ": constant degenerate family of dimension " +
                    std::to_string(family_dim) + " (zero form; excluded)");

  auto value_at = [&](double u) {
    return Eigen::MatrixXd(Id - (u * A).exp() * closed.base);
  };

  std::vector<double> cand{0.0, 1.0};
  {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const std::complex<double> mu = es.eigenvalues()(i);
      if (std::abs(mu.real()) > 1e-9 * (1.0 + normA)) continue;
      const double theta = std::abs(mu.imag());
      if (theta < 1e-9) continue;
      for (int m = 1; 2.0 * kPi * m / theta < 1.0 - 1e-12; ++m)
        cand.push_back(2.0 * kPi * m / theta);
    }
  }

  const bool base_is_id = id_minus_base.cwiseAbs().maxCoeff() <= 1e-12;
  if (!base_is_id) {
    // Degeneracies beyond the constant family can sit at non-analytic times:
    // scan the (family_dim+1)-th smallest singular value and refine minima.
    const int N =
        std::max(512, 64 * static_cast<int>(std::ceil(std::max(1.0, normA))));
    auto score = [&](double u) {
      return sigma_kth_smallest(value_at(u), family_dim);
    };
    std::vector<double> s(N + 1);
    for (int k = 0; k <= N; ++k) s[k] = score(static_cast<double>(k) / N);
    for (int k = 1; k < N; ++k) {
      if (!(s[k] <= s[k - 1] && s[k] <= s[k + 1])) continue;
      if (s[k] > 0.5) continue;  // kernels open at unit-scale speed at most
      auto [u_star, v_star] =
          golden_min(score, static_cast<double>(k - 1) / N,
                     static_cast<double>(k + 1) / N, tol.cross);
      if (v_star <= tol.ker) cand.push_back(u_star);
    }
  }

  std::sort(cand.begin(), cand.end());
  std::vector<double> merged;
  for (double u : cand) {
    if (!merged.empty() && u - merged.back() < std::max(1e-9, 4 * tol.cross))
      continue;
    merged.push_back(u);
  }

  for (double u : merged) {
    const bool at_lo = u < std::max(1e-9, 4 * tol.cross);
    const bool at_hi = u > 1.0 - std::max(1e-9, 4 * tol.cross);
    const double uu = at_lo ? 0.0 : (at_hi ? 1.0 : u);
    Eigen::MatrixXd idm = value_at(uu);
    if (sigma_min(idm) > tol.ker) continue;
    Crossing c = make_crossing(path, segidx, seg.t0 + uu * span, at_lo || at_hi,
                               idm, S_global, tol);
    const bool beyond_family = c.kernel_dim > family_dim;
    if (!(at_lo || at_hi) && !beyond_family) continue;
    if (c.kernel_dim == 0) continue;
    out.push_back(std::move(c));
  }
}

void process_sampled(const SymplecticPath& path, int segidx,
                     const Segment& seg, const SampledSegment& smp,
                     const Tolerances& tol, std::vector<Crossing>& out,
                     std::vector<std::string>& notes) {
  const int m = static_cast<int>(smp.grid.size());
  const int dim = static_cast<int>(smp.mats.front().rows());
  const double span = seg.t1 - seg.t0;
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(dim, dim);

  std::vector<double> sig(m), det(m);
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXd idm = Id - smp.mats[k];
    sig[k] = sigma_min(idm);
    det[k] = idm.determinant();
  }
  for (int k = 0; k + 1 < m; ++k)
    if (sig[k] <= tol.ker && sig[k + 1] <= tol.ker)
      throw NonIsolated(
          "non-isolated crossing: sampled segment " + std::to_string(segidx) +
          " keeps eigenvalue 1 across consecutive grid points (times " +
          std::to_string(seg.t0 + smp.grid[k] * span) + ", " +
          std::to_string(seg.t0 + smp.grid[k + 1] * span) +
          "); use a closed-form representation for such paths");

  auto t_of = [&](double u) { return seg.t0 + u * span; };
  auto score = [&](double t) {
    return sigma_min(Id - path.eval(t));
  };
  auto det_at = [&](double t) {
    return (Id - path.eval(t)).determinant();
  };

  std::vector<double> candidates;
  for (int k = 0; k + 1 < m; ++k) {
    const bool ends_degenerate =
        (k == 0 && sig[0] <= tol.ker) || (k + 2 == m && sig[m - 1] <= tol.ker);
    if (ends_degenerate) continue;
    if ((det[k] < 0) != (det[k + 1] < 0))
      candidates.push_back(bisect_zero(det_at, t_of(smp.grid[k]),
                                       t_of(smp.grid[k + 1]), tol.cross));
  }
  for (int k = 1; k + 1 < m; ++k) {
    if (!(sig[k] <= sig[k - 1] && sig[k] <= sig[k + 1])) continue;
    if (sig[k] > 0.5) continue;
    auto [t_star, v_star] = golden_min(score, t_of(smp.grid[k - 1]),
                                       t_of(smp.grid[k + 1]), tol.cross);
    if (v_star <= tol.ker) candidates.push_back(t_star);
  }

  const double t_lo = seg.t0, t_hi = seg.t1;
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> interior;
  for (double t : candidates) {
    if (t - t_lo < 1e-9 || t_hi - t < 1e-9) continue;  // endpoint handled below
    if (!interior.empty() &&
        t - interior.back() < std::max(1e-9, 4 * tol.cross))
      continue;
    interior.push_back(t);
  }

  // One-sided generator computed from this segment's own data, so junction
  // crossings use the correct side (generator_at resolves boundaries to the
  // earlier segment).
  auto local_generator = [&](double t) {
    double u = std::clamp((t - seg.t0) / span, 0.0, 1.0);
    int i = static_cast<int>(std::upper_bound(smp.grid.begin(), smp.grid.end(),
                                              u) -
                             smp.grid.begin()) -
            1;
    i = std::clamp(i, 0, m - 2);
    const double h = smp.grid[i + 1] - smp.grid[i];
    const double frac = (u - smp.grid[i]) / h;
    Eigen::MatrixXd psi = smp.mats[i] * (frac * smp.logs[i]).exp();
    Eigen::MatrixXd conj =
        psi * (smp.logs[i] / (h * span)) * psi.partialPivLu().inverse();
    Eigen::MatrixXd raw = -J0(dim / 2) * conj;
    const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol.gen)
      throw std::runtime_error(
          "find_crossings: sampled generator asymmetry " +
          std::to_string(asym) + " exceeds tolerance " +
          std::to_string(tol.gen) + " (corrupted samples)");
    return Eigen::MatrixXd(symmetrize(raw));
  };

  auto add = [&](double t, bool endpoint, const Eigen::MatrixXd& idm) {
    if (sigma_min(idm) > tol.ker) return;
    Eigen::MatrixXd S_global = local_generator(t);
    out.push_back(
        make_crossing(path, segidx, t, endpoint, idm, S_global, tol));
  };

  add(t_lo, true, Id - smp.mats.front());
  for (double t : interior) add(t, false, Id - path.eval(t));
  add(t_hi, true, Id - smp.mats.back());
  (void)notes;
}

}  // namespace

std::vector<Crossing> find_crossings(const SymplecticPath& path,
                                     const Tolerances& tol) {
  std::vector<Crossing> out;
  std::vector<std::string> notes;
  const auto& segs = path.segments();
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    if (const auto* c = std::get_if<ClosedSegment>(&segs[i].data))
      process_closed(path, i, segs[i], *c, tol, out, notes);
    else
      process_sampled(path, i, segs[i], std::get<SampledSegment>(segs[i].data),
                      tol, out, notes);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Crossing& a, const Crossing& b) {
                     if (a.t != b.t) return a.t < b.t;
                     return a.segment < b.segment;
                   });
  return out;
}

std::string IndexResult::str() const {
  if (twice_value % 2 == 0) return std::to_string(twice_value / 2);
  return std::to_string(twice_value) + "/2";
}

IndexResult rs_index(const SymplecticPath& path, const Tolerances& tol) {
  IndexResult res;
  res.crossings = find_crossings(path, tol);
  for (const Crossing& c : res.crossings)
    res.twice_value += (c.endpoint ? 1 : 2) * c.signature;
  for (const Crossing& c : res.crossings)
    if (c.zero_count > 0)
      res.notes.push_back(
          "crossing at t=" + std::to_string(c.t) + ": " +
          std::to_string(c.zero_count) +
          " zero form eigenvalue(s) ignored by the signature convention");
  return res;
}

long long cz_index(const SymplecticPath& path, const Tolerances& tol) {
  const int dim = 2 * path.n();
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(dim, dim);
  if ((path.start() - Id).cwiseAbs().maxCoeff() > tol.sym)
    throw std::invalid_argument(
        "cz_index: path must start at the identity");
  if (sigma_min(Id - path.end()) <= tol.ker)
    throw std::runtime_error(
        "cz_index: endpoint degenerate (eigenvalue 1 at t=1); use rs_index");
  IndexResult res = rs_index(path, tol);
  if (!res.is_integer())
    throw std::logic_error(
        "cz_index: computed value " + res.str() +
        " is not an integer despite a nondegenerate endpoint");
  return res.twice_value / 2;
}

}  // namespace symhom::symplin
