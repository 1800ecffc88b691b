#pragma once

// Spectral sparsification of a sum of PSD matrices by leverage-score
// sampling: whiten against the sum, keep matrix i with probability
// min(1, ||A_i~|| / R) at weight 1/p_i, verify the two-sided sandwich, retry
// with fresh sub-seeds until a draw verifies.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psdspar/linalg.hpp"

namespace psdspar::core {

// A finite family of same-dimension PSD matrices. Validation (dimensions
// agree, every member PSD at relative tolerance 1e-9) runs on construction.
struct PsdCollection {
  int dim = 0;
  std::vector<linalg::SymMatrix> matrices;
  std::vector<std::string> labels;  // optional, parallel to matrices when present

  static PsdCollection create(std::vector<linalg::SymMatrix> matrices,
                              std::vector<std::string> labels = {});
  int size() const { return static_cast<int>(matrices.size()); }
  linalg::SymMatrix sum() const;
};

// Collection conjugated by A^{-1/2} on range(A), with spectral norms.
struct NormalizedCollection {
  linalg::RangeRestriction restriction;
  linalg::SymMatrix inv_sqrt;               // m x m
  std::vector<linalg::SymMatrix> tilde;     // whitened members, m x m
  std::vector<double> norms;                // ||A_i~||, each in [0, 1 + 1e-7]
};

// Sparse nonnegative weights over collection indices; absent index means 0.
struct WeightVector {
  int size = 0;  // collection size r
  std::map<int, double> weights;

  int support_size() const { return static_cast<int>(weights.size()); }
  double at(int i) const {
    auto it = weights.find(i);
    return it == weights.end() ? 0.0 : it->second;
  }
};

struct SparsifyConfig {
  double eps = 0.5;          // in (0, 1]
  std::uint64_t seed = 0;
  int max_attempts = 100;
  double r_constant = 16.0;  // constant in R = eps^2 / (c * ln(4m))
};

struct SparsifyReport {
  WeightVector weights;
  double eps = 0.0;
  int attempts = 0;
  int support_size = 0;
  int restricted_dim = 0;        // m, the rank of the collection sum
  double verified_margin = 0.0;  // sandwich margin, strictly positive
  double leverage_sum = 0.0;     // sum of ||A_i~||
  std::vector<double> leverage;  // per-index ||A_i~||, all r entries
  std::uint64_t seed = 0;
};

struct SumNormsCheck {
  double lhs = 0.0;               // sum of whitened norms
  std::vector<double> alphas;
  std::vector<double> rhs;        // 4 (1 + ln r) N(alpha) / alpha per grid point
  bool pass = false;              // lhs <= min rhs + 1e-6
};

NormalizedCollection normalize(const PsdCollection& collection);

// p_i = min(1, ||A_i~|| / R) with R = eps^2 / (r_constant * ln(4m)).
// eps in (0, 1] (BadEps), m >= 1.
std::vector<double> leverage_probabilities(const std::vector<double>& norms, double eps,
                                           int m, double r_constant = 16.0);

// One deterministic draw: index i kept when counter_uniform(seed, i) < p_i,
// at weight 1/p_i; p_i >= 1 keeps i at weight 1.
WeightVector draw_weights(const std::vector<double>& probabilities, std::uint64_t seed);

// Chernoff-style cap checked on every accepted draw:
// support <= 2 * max(sum min(1, p_i), 16 ln(4m)).
double support_bound(const std::vector<double>& probabilities, int m);

// Full pipeline; throws ExhaustedAttempts when max_attempts draws fail.
SparsifyReport sparsify(const PsdCollection& collection, const SparsifyConfig& config);

// Checks sum ||A_i~|| <= min over the grid of 4 (1 + ln r) N(alpha) / alpha,
// with N(alpha) computed by exhaustive search (CapExceeded propagates).
SumNormsCheck sum_norms_bound_check(const PsdCollection& collection,
                                    const std::vector<double>& alpha_grid,
                                    std::uint64_t subset_cap = (1ull << 20));

}  // namespace psdspar::core
