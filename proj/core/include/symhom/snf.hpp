#pragma once
// Exact integer matrices and the Smith normal form. Arbitrary-precision
// entries: the elementary operations of the reduction can grow intermediate
// values well past 64 bits even for small inputs.

#include <vector>

#include "symhom/action.hpp"

namespace symhom::chainalg {

class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  BigInt& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const BigInt& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  IntMat operator*(const IntMat& o) const;
  IntMat transpose() const;
  bool is_zero() const;

 private:
  int rows_, cols_;
  std::vector<BigInt> a_;
};

struct SNFResult {
  IntMat U, D, V;  // U * M * V == D, U and V unimodular
  int rank = 0;
  std::vector<BigInt> invariant_factors;  // positive, d1 | d2 | ... | d_rank
};

// Smith normal form with transform tracking. Postconditions (U M V = D,
// |det U| = |det V| = 1, divisibility chain) are re-verified on every call;
// violation is a logic error, not an input error.
SNFResult snf(const IntMat& M);

// Exact determinant (Bareiss fraction-free elimination).
BigInt det_bareiss(const IntMat& M);

// Rank over Q by exact rational Gaussian elimination. Deliberately
// independent of snf() so the two can cross-check each other.
int rank_rational(const IntMat& M);

// Rank over the prime field F_p.
int rank_mod_p(const IntMat& M, long long p);

// Inverse of a unimodular matrix (exact; throws if U is not unimodular).
IntMat inverse_unimodular(const IntMat& U);

// Solve A X = B exactly over Q; returns true and fills X (rational entries
// given as num/den pairs is avoided: here we require an integral solution
// and throw if the unique rational solution is non-integral or none exists).
// Pre: A has full column rank.
IntMat solve_integral(const IntMat& A, const IntMat& B);

}  // namespace symhom::chainalg
