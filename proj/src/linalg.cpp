#include "psdspar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "psdspar/util.hpp"

namespace psdspar::linalg {

namespace {

constexpr double kJacobiTol = 1e-12;         // off-diagonal target, scaled by max |M_ij|
constexpr int kJacobiMaxSweeps = 100;
constexpr double kSumMatchTol = 1e-8;        // restrict_to_range sum check

void require(bool cond, ErrorCode code, const char* msg) {
  if (!cond) throw Error(code, msg);
}

// Shared Jacobi core. Rotates a copy of m to diagonal; accumulates the
// transposed eigenvector matrix when vt != nullptr (rows of vt are the
// eigenvectors, so both updates touch contiguous memory).
std::vector<double> jacobi(const SymMatrix& m, std::vector<double>* vt_out) {
  const int n = m.dim();
  require(m.finite(), ErrorCode::NonFinite, "matrix has non-finite entries");

  std::vector<double> a = m.data();
  std::vector<double> vt;
  if (vt_out) {
    vt.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) vt[static_cast<std::size_t>(i) * n + i] = 1.0;
  }

  const double scale = m.max_abs();
  const double tol = kJacobiTol * scale;
  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  if (scale > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
      double off = 0.0;
      for (int p = 0; p < n - 1; ++p)
        for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[idx(p, q)]));
      if (off <= tol) {
        converged = true;
        break;
      }
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const double apq = a[idx(p, q)];
          if (std::abs(apq) <= tol * 1e-3) continue;
          const double app = a[idx(p, p)];
          const double aqq = a[idx(q, q)];
          const double tau = (aqq - app) / (2.0 * apq);
          const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          double* rowp = a.data() + idx(p, 0);
          double* rowq = a.data() + idx(q, 0);
          for (int j = 0; j < n; ++j) {
            const double x = rowp[j];
            const double y = rowq[j];
            rowp[j] = c * x - s * y;
            rowq[j] = s * x + c * y;
          }
          for (int i = 0; i < n; ++i) {
            const double x = a[idx(i, p)];
            const double y = a[idx(i, q)];
            a[idx(i, p)] = c * x - s * y;
            a[idx(i, q)] = s * x + c * y;
          }
          a[idx(p, q)] = 0.0;
          a[idx(q, p)] = 0.0;

          if (vt_out) {
            double* vp = vt.data() + idx(p, 0);
            double* vq = vt.data() + idx(q, 0);
            for (int j = 0; j < n; ++j) {
              const double x = vp[j];
              const double y = vq[j];
              vp[j] = c * x - s * y;
              vq[j] = s * x + c * y;
            }
          }
        }
      }
    }
    if (!converged) {
      double off = 0.0;
      for (int p = 0; p < n - 1; ++p)
        for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[idx(p, q)]));
      require(off <= tol, ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");
    }
  }

  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a[idx(i, i)];

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&diag](int x, int y) { return diag[x] < diag[y]; });

  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = diag[order[i]];
  if (vt_out) {
    vt_out->assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
      const double* src = vt.data() + idx(order[k], 0);
      for (int i = 0; i < n; ++i) (*vt_out)[idx(i, k)] = src[i];
    }
  }
  return sorted;
}

}  // namespace

SymMatrix::SymMatrix(int n) {
  if (n <= 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be positive");
  n_ = n;
  a_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SymMatrix SymMatrix::from_rows(int n, const std::vector<double>& rows) {
  SymMatrix m(n);
  if (rows.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorCode::DimensionMismatch, "row data does not match dimension");
  for (double v : rows)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "matrix entry not finite");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.a_[static_cast<std::size_t>(i) * n + j] =
          0.5 * (rows[static_cast<std::size_t>(i) * n + j] +
                 rows[static_cast<std::size_t>(j) * n + i]);
  return m;
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

void SymMatrix::set(int i, int j, double v) {
  a_[static_cast<std::size_t>(i) * n_ + j] = v;
  a_[static_cast<std::size_t>(j) * n_ + i] = v;
}

void SymMatrix::add(int i, int j, double v) {
  a_[static_cast<std::size_t>(i) * n_ + j] += v;
  if (i != j) a_[static_cast<std::size_t>(j) * n_ + i] += v;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool SymMatrix::finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

SymMatrix add(const SymMatrix& x, const SymMatrix& y) {
  require(x.dim() == y.dim(), ErrorCode::DimensionMismatch, "add: dimension mismatch");
  SymMatrix r = x;
  for (std::size_t k = 0; k < r.data().size(); ++k) r.data()[k] += y.data()[k];
  return r;
}

SymMatrix subtract(const SymMatrix& x, const SymMatrix& y) {
  require(x.dim() == y.dim(), ErrorCode::DimensionMismatch, "subtract: dimension mismatch");
  SymMatrix r = x;
  for (std::size_t k = 0; k < r.data().size(); ++k) r.data()[k] -= y.data()[k];
  return r;
}

SymMatrix scale(const SymMatrix& x, double c) {
  SymMatrix r = x;
  for (double& v : r.data()) v *= c;
  return r;
}

void add_scaled_into(SymMatrix& acc, const SymMatrix& x, double c) {
  require(acc.dim() == x.dim(), ErrorCode::DimensionMismatch, "accumulate: dimension mismatch");
  for (std::size_t k = 0; k < acc.data().size(); ++k) acc.data()[k] += c * x.data()[k];
}

Matrix matmul(const Matrix& x, const Matrix& y) {
  require(x.cols == y.rows, ErrorCode::DimensionMismatch, "matmul: inner dimension mismatch");
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    double* ri = r.a.data() + static_cast<std::size_t>(i) * r.cols;
    for (int k = 0; k < x.cols; ++k) {
      const double xi = x.at(i, k);
      if (xi == 0.0) continue;
      const double* yk = y.a.data() + static_cast<std::size_t>(k) * y.cols;
      for (int j = 0; j < y.cols; ++j) ri[j] += xi * yk[j];
    }
  }
  return r;
}

Matrix transpose_matmul(const Matrix& x, const Matrix& y) {
  require(x.rows == y.rows, ErrorCode::DimensionMismatch, "transpose_matmul: dimension mismatch");
  Matrix r(x.cols, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    const double* xi = x.a.data() + static_cast<std::size_t>(i) * x.cols;
    const double* yi = y.a.data() + static_cast<std::size_t>(i) * y.cols;
    for (int a = 0; a < x.cols; ++a) {
      const double v = xi[a];
      if (v == 0.0) continue;
      double* ra = r.a.data() + static_cast<std::size_t>(a) * r.cols;
      for (int b = 0; b < y.cols; ++b) ra[b] += v * yi[b];
    }
  }
  return r;
}

SymMatrix congruence(const Matrix& q, const SymMatrix& s) {
  require(q.rows == s.dim(), ErrorCode::DimensionMismatch, "congruence: dimension mismatch");
  const int n = q.rows, m = q.cols;
  Matrix t(n, m);  // t = s * q
  for (int i = 0; i < n; ++i) {
    double* ti = t.a.data() + static_cast<std::size_t>(i) * m;
    for (int k = 0; k < n; ++k) {
      const double sik = s.at(i, k);
      if (sik == 0.0) continue;
      const double* qk = q.a.data() + static_cast<std::size_t>(k) * m;
      for (int j = 0; j < m; ++j) ti[j] += sik * qk[j];
    }
  }
  Matrix r = transpose_matmul(q, t);
  SymMatrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) out.set(i, j, 0.5 * (r.at(i, j) + r.at(j, i)));
  return out;
}

SymMatrix sandwich(const SymMatrix& b, const SymMatrix& s) {
  require(b.dim() == s.dim(), ErrorCode::DimensionMismatch, "sandwich: dimension mismatch");
  const int m = b.dim();
  Matrix bm(m, m), sm(m, m);
  bm.a = b.data();
  sm.a = s.data();
  Matrix bs = matmul(bm, sm);
  Matrix bsb = matmul(bs, bm);
  SymMatrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) out.set(i, j, 0.5 * (bsb.at(i, j) + bsb.at(j, i)));
  return out;
}

double quadratic_form(const SymMatrix& s, const std::vector<double>& x) {
  require(static_cast<int>(x.size()) == s.dim(), ErrorCode::DimensionMismatch,
          "quadratic_form: dimension mismatch");
  const int n = s.dim();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += s.at(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

EigDecomposition sym_eig(const SymMatrix& m) {
  EigDecomposition d;
  std::vector<double> vt;
  d.eigenvalues = jacobi(m, &vt);
  d.eigenvectors.rows = m.dim();
  d.eigenvectors.cols = m.dim();
  d.eigenvectors.a = std::move(vt);
  return d;
}

std::vector<double> sym_eigenvalues(const SymMatrix& m) { return jacobi(m, nullptr); }

PsdCheck is_psd(const SymMatrix& m, double rel_tol) {
  std::vector<double> ev = sym_eigenvalues(m);
  const double lo = ev.front();
  const double hi = ev.back();
  return PsdCheck{lo >= -rel_tol * std::max(1.0, hi), lo};
}

double spectral_norm(const SymMatrix& m) {
  std::vector<double> ev = sym_eigenvalues(m);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

std::pair<RangeRestriction, std::vector<SymMatrix>> restrict_to_range(
    const SymMatrix& a, const std::vector<SymMatrix>& collection) {
  const int n = a.dim();
  require(!collection.empty(), ErrorCode::Precondition, "empty collection");
  SymMatrix sum(n);
  for (const SymMatrix& m : collection) {
    require(m.dim() == n, ErrorCode::DimensionMismatch, "collection member dimension mismatch");
    add_scaled_into(sum, m, 1.0);
  }
  const double scale_ref = std::max(1.0, a.max_abs());
  for (std::size_t k = 0; k < sum.data().size(); ++k)
    require(std::abs(sum.data()[k] - a.data()[k]) <= kSumMatchTol * scale_ref,
            ErrorCode::SumMismatch, "A does not match the collection sum");

  EigDecomposition eig = sym_eig(a);
  const double lmax = eig.eigenvalues.back();
  require(lmax > 0.0, ErrorCode::ZeroSum, "sum is numerically zero");
  require(eig.eigenvalues.front() >= -1e-9 * std::max(1.0, lmax), ErrorCode::Precondition,
          "sum is not PSD");

  const double ktol = kKernelTolPerDim * n;
  int first_kept = 0;
  while (first_kept < n && eig.eigenvalues[first_kept] <= ktol * lmax) ++first_kept;
  const int m = n - first_kept;
  require(m > 0, ErrorCode::ZeroSum, "all eigenvalues below kernel threshold");

  RangeRestriction rr;
  rr.restricted_dim = m;
  rr.kernel_tol = ktol;
  rr.basis = Matrix(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) rr.basis.at(i, j) = eig.eigenvectors.at(i, first_kept + j);

  std::vector<SymMatrix> restricted(collection.size(), SymMatrix(m));
  parallel_for(static_cast<int>(collection.size()), [&](int i) {
    restricted[static_cast<std::size_t>(i)] = congruence(rr.basis, collection[static_cast<std::size_t>(i)]);
  });
  return {std::move(rr), std::move(restricted)};
}

SymMatrix inv_sqrt_on_range(const SymMatrix& a, const RangeRestriction& restriction) {
  require(restriction.basis.rows == a.dim(), ErrorCode::DimensionMismatch,
          "restriction does not match matrix");
  const int m = restriction.restricted_dim;
  SymMatrix ar = congruence(restriction.basis, a);
  EigDecomposition eig = sym_eig(ar);
  for (double l : eig.eigenvalues)
    require(l > 0.0, ErrorCode::Singular, "restricted matrix is not positive definite");
  SymMatrix b(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double v = 0.0;
      for (int k = 0; k < m; ++k)
        v += eig.eigenvectors.at(i, k) * eig.eigenvectors.at(j, k) /
             std::sqrt(eig.eigenvalues[k]);
      b.set(i, j, v);
    }
  }
  return b;
}

EpsApproxResult check_eps_approx(const SymMatrix& a_prime, const SymMatrix& a, double eps) {
  require(eps >= 0.0 && eps <= 1.0, ErrorCode::BadEps, "eps must lie in [0, 1]");
  require(a_prime.dim() == a.dim(), ErrorCode::DimensionMismatch, "dimension mismatch");
  require(a_prime.finite(), ErrorCode::NonFinite, "candidate has non-finite entries");
  const int n = a.dim();

  EigDecomposition eig = sym_eig(a);
  const double lmax = eig.eigenvalues.back();
  require(lmax > 0.0, ErrorCode::ZeroSum, "reference sum is numerically zero");
  require(eig.eigenvalues.front() >= -1e-9 * std::max(1.0, lmax), ErrorCode::Precondition,
          "reference is not PSD");

  const double ktol = kKernelTolPerDim * n;
  int first_kept = 0;
  while (first_kept < n && eig.eigenvalues[first_kept] <= ktol * lmax) ++first_kept;
  const int m = n - first_kept;

  if (first_kept > 0) {
    Matrix u(n, first_kept);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < first_kept; ++j) u.at(i, j) = eig.eigenvectors.at(i, j);
    const double leak = spectral_norm(congruence(u, a_prime));
    require(leak <= kRangeLeakTol * lmax, ErrorCode::RangeViolation,
            "candidate has mass outside range(A)");
  }

  Matrix w(n, m);  // columns q_k / sqrt(lambda_k)
  for (int j = 0; j < m; ++j) {
    const double inv = 1.0 / std::sqrt(eig.eigenvalues[first_kept + j]);
    for (int i = 0; i < n; ++i) w.at(i, j) = eig.eigenvectors.at(i, first_kept + j) * inv;
  }
  std::vector<double> spectrum = sym_eigenvalues(congruence(w, a_prime));

  const double lo = 1.0 - eps - kSandwichSlack;
  const double hi = 1.0 + eps + kSandwichSlack;
  double margin = std::numeric_limits<double>::infinity();
  for (double l : spectrum) margin = std::min(margin, std::min(l - lo, hi - l));
  return EpsApproxResult{margin > 0.0, margin};
}

}  // namespace psdspar::linalg
