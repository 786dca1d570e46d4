#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "symhom/tolerances.hpp"

namespace symhom::symplin {

// Coordinates are ordered (x_1..x_n, y_1..y_n).  J0 is the standard complex
// structure [[0, -I], [I, 0]]; the symplectic form is w0(u,v) = <J0 u, v> =
// sum_j (x_u_j y_v_j - y_u_j x_v_j).  A matrix M is symplectic when
// M^T J0 M = J0.
Eigen::MatrixXd J0(int n);

// w0(u, v) for vectors of equal even dimension.
double omega0(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

struct SymplecticCheck {
  bool ok = false;
  double residual = 0.0;  // max-norm of M^T J0 M - J0
};
SymplecticCheck check_symplectic(const Eigen::MatrixXd& M, double tol_sym);

// 0.5 * (M + M^T)
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& M);

// Places a 2m x 2m matrix into a 2n-dimensional space (m <= n) as the block
// acting on coordinate pairs offset..offset+m-1, identity elsewhere when
// `fill_identity`, zero elsewhere otherwise.
Eigen::MatrixXd embed(const Eigen::MatrixXd& M, int n, int offset,
                      bool fill_identity);

// One segment of a path, covering global times [t0, t1] with local parameter
// u = (t - t0)/(t1 - t0) in [0, 1].
//
// Closed form: Psi(u) = exp(u * J0 * S) * base, with S symmetric and base
// symplectic.  The global generator on the segment is the constant matrix
// S / (t1 - t0).
struct ClosedSegment {
  Eigen::MatrixXd S;
  Eigen::MatrixXd base;
};

// Sampled form: matrices given on a strictly increasing local grid
// 0 = u_0 < ... < u_{m-1} = 1 (m >= 64) and interpolated inside the group:
// Psi(u) = mats[i] * exp(s * logs[i]) with s = (u - u_i)/(u_{i+1} - u_i) and
// logs[i] = log(mats[i]^{-1} mats[i+1]).  The interpolation is exact whenever
// the sampled path is a one-parameter subgroup times a constant.
struct SampledSegment {
  std::vector<double> grid;
  std::vector<Eigen::MatrixXd> mats;
  std::vector<Eigen::MatrixXd> logs;
};

struct Segment {
  double t0 = 0.0;
  double t1 = 1.0;
  std::variant<ClosedSegment, SampledSegment> data;
};

// A continuous piecewise path [0,1] -> Sp(2n).  Immutable after construction;
// all factory methods validate symplecticity of the data they are given.
class SymplecticPath {
 public:
  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const std::vector<Segment>& segments() const { return segments_; }

  Eigen::MatrixXd eval(double t) const;  // t in [0,1]
  Eigen::MatrixXd start() const { return eval(0.0); }
  Eigen::MatrixXd end() const { return eval(1.0); }

  // Index of the segment containing t (boundaries resolve to the earlier
  // segment except at t=0).
  int segment_index(const double t) const;

  // --- constructors -------------------------------------------------------

  // Flow of the quadratic Hamiltonian lambda * |z|^2: Psi(t) = exp(2 lambda t J0),
  // i.e. simultaneous rotation by angle 2*lambda*t in every coordinate plane.
  static SymplecticPath rotation(int n, double lambda);

  // Unipotent path Psi(t) = exp(t * J0 * S) with S = rate * E_{x_plane,x_plane}:
  // adds rate * t * x_plane to y_plane, fixing everything else.
  static SymplecticPath shear(int n, double rate, int plane = 0);

  // Psi(t) = exp(t * J0 * S) for a constant symmetric S.
  static SymplecticPath exp_const(const Eigen::MatrixXd& S);

  // Psi(t) = exp(t * J0 * S) * base for symplectic base.
  static SymplecticPath exp_const_from(const Eigen::MatrixXd& S,
                                       const Eigen::MatrixXd& base,
                                       double tol_sym = 1e-9);

  // Sampled path on a strictly increasing grid covering [0,1], >= 64 points,
  // all matrices symplectic within tol_sym.
  static SymplecticPath sampled(const std::vector<double>& grid,
                                const std::vector<Eigen::MatrixXd>& mats,
                                double tol_sym = 1e-9);

  // Concatenation: p on [0,1/2], q on [1/2,1]; requires p(1) = q(0) within
  // tol_sym (no implicit translation is applied).
  static SymplecticPath concat(const SymplecticPath& p,
                               const SymplecticPath& q,
                               double tol_sym = 1e-9);

  // Block-diagonal sum acting on 2(n_p + n_q) coordinates.  Closed-form
  // factors are combined exactly; if either factor contains sampled data the
  // result is resampled on a merged grid.
  static SymplecticPath direct_sum(const SymplecticPath& p,
                                   const SymplecticPath& q);

  // Linearized return path of the sphere of l-fold closed characteristics:
  // the full rotation loop exp(2 l pi t J0) followed, with fixed endpoints,
  // by the shear of rate curvature / (l^2 pi^2).  Robbin-Salamon index
  // 2ln + 1/2.
  static SymplecticPath sphere_orbit_path(int l, int n, double curvature);

  // The sphere path extended by the linearized perturbation flow
  // exp(delta t J0 * H) where H is diagonal with the 2n-1 transverse Hessian
  // eigenvalues (all of one sign) and 0 in the radial slot.  Index
  // 2ln + n when the eigenvalues are positive (minimum), 2ln - n + 1 when
  // negative (maximum), for small positive delta.
  static SymplecticPath perturbed_orbit_path(
      int l, int n, double delta, const std::vector<double>& hessian_eigs);

 private:
  SymplecticPath(int n, std::vector<Segment> segs)
      : n_(n), segments_(std::move(segs)) {}
  int n_ = 0;
  std::vector<Segment> segments_;
};

struct GeneratorInfo {
  Eigen::MatrixXd S;       // symmetric generator S(t) with Psi' = J0 S Psi
  double asymmetry = 0.0;  // max-norm asymmetry before symmetrization
};

// S(t) = symmetrize(-J0 * Psi'(t) * Psi(t)^{-1}); closed segments give their
// stored generator exactly, sampled segments differentiate the interpolation
// (averaging the one-sided derivatives at grid nodes).  Throws when the
// asymmetry before symmetrization exceeds tol.gen (corrupted samples).
GeneratorInfo generator_info(const SymplecticPath& path, double t,
                             const Tolerances& tol = {});
Eigen::MatrixXd generator_at(const SymplecticPath& path, double t,
                             const Tolerances& tol = {});

}  // namespace symhom::symplin
