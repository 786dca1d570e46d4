#pragma once
// Numeric tolerances for the path engine. Every routine that thresholds a
// residual takes these explicitly so the CLI can override them.

namespace symhom {

struct Tolerances {
  double sym = 1e-9;    // max-norm residual of M^T J0 M - J0
  double cross = 1e-10; // width to which crossing times are localized
  double ker = 1e-8;    // singular values below this count as kernel
  double eig = 1e-8;    // crossing-form eigenvalues below this count as zero
  double gen = 1e-6;    // allowed asymmetry of the recovered generator S(t)
};

}  // namespace symhom
