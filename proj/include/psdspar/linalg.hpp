#pragma once

// Dense symmetric linear algebra kernel: cyclic Jacobi eigensolver, PSD
// checks, range restriction / whitening, and the two-sided spectral sandwich
// test. Everything is deterministic; no randomized algorithms here.

#include <utility>
#include <vector>

#include "psdspar/errors.hpp"

namespace psdspar::linalg {

// Tolerances shared with modules that re-verify through exact eigenvalues
// instead of dense decompositions; both paths must agree on these.
inline constexpr double kKernelTolPerDim = 1e-10;  // kernel split, scaled by n
inline constexpr double kRangeLeakTol = 1e-8;      // off-range mass in the sandwich check
inline constexpr double kSandwichSlack = 1e-7;     // absolute widening of [1-eps, 1+eps]

// General dense matrix, row-major. Used for eigenvector/basis blocks.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Symmetric matrix with full row-major storage. Symmetry is enforced on
// construction (off-diagonal pairs averaged); mutators write both triangles.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);

  // Builds from n*n row-major data, averaging (M + M^T)/2. Throws NonFinite.
  static SymMatrix from_rows(int n, const std::vector<double>& rows);
  static SymMatrix identity(int n);

  int dim() const { return n_; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, double v);
  void add(int i, int j, double v);

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  double max_abs() const;
  bool finite() const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

struct EigDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column j pairs with eigenvalues[j]
};

struct RangeRestriction {
  Matrix basis;        // n x m, orthonormal columns spanning range(A)
  int restricted_dim;  // m
  double kernel_tol;   // relative threshold used for the split
};

struct PsdCheck {
  bool psd;
  double min_eigenvalue;
};

struct EpsApproxResult {
  bool ok;
  double margin;  // distance of the worst whitened eigenvalue from the interval boundary
};

// Arithmetic helpers.
SymMatrix add(const SymMatrix& x, const SymMatrix& y);
SymMatrix subtract(const SymMatrix& x, const SymMatrix& y);
SymMatrix scale(const SymMatrix& x, double c);
void add_scaled_into(SymMatrix& acc, const SymMatrix& x, double c);
Matrix matmul(const Matrix& x, const Matrix& y);
Matrix transpose_matmul(const Matrix& x, const Matrix& y);  // x^T y
// q^T s q for symmetric s; result symmetrized.
SymMatrix congruence(const Matrix& q, const SymMatrix& s);
// b s b for symmetric b, s; result symmetrized.
SymMatrix sandwich(const SymMatrix& b, const SymMatrix& s);
double quadratic_form(const SymMatrix& s, const std::vector<double>& x);

// Cyclic Jacobi. Convergence: max off-diagonal magnitude <= 1e-12 * max |M_ij|
// of the input, within 100 sweeps (NoConvergence otherwise, NonFinite on bad
// input). Eigenvalues ascend; eigenvector column j matches eigenvalue j.
EigDecomposition sym_eig(const SymMatrix& m);
std::vector<double> sym_eigenvalues(const SymMatrix& m);  // values only, ascending

// lambda_min >= -rel_tol * max(1, lambda_max).
PsdCheck is_psd(const SymMatrix& m, double rel_tol = 1e-9);

// max(|lambda_min|, |lambda_max|).
double spectral_norm(const SymMatrix& m);

// Splits range/kernel of the PSD sum A at kernel_tol = 1e-10 * n (relative to
// lambda_max), checks A equals the collection sum entrywise to 1e-8 relative,
// and conjugates every member into the retained basis.
// Throws ZeroSum, SumMismatch, Precondition (A not PSD).
std::pair<RangeRestriction, std::vector<SymMatrix>> restrict_to_range(
    const SymMatrix& a, const std::vector<SymMatrix>& collection);

// B (m x m) with || B (Q^T A Q) B - Id || <= 1e-8 * m. Throws Singular if the
// restricted matrix has a nonpositive eigenvalue.
SymMatrix inv_sqrt_on_range(const SymMatrix& a, const RangeRestriction& restriction);

// Whether (1-eps) A <= A' <= (1+eps) A on range(A), via the whitened spectrum
// with absolute interval slack 1e-7. A' must live in range(A): the part of A'
// on the discarded subspace may not exceed 1e-8 * ||A|| (RangeViolation).
// eps in [0, 1] (BadEps).
EpsApproxResult check_eps_approx(const SymMatrix& a_prime, const SymMatrix& a, double eps);

}  // namespace psdspar::linalg
