#pragma once

// Cayley-graph sparsification. Generator Laplacians L_s = Id - (R(s)+R(s'))/2
// are sparsified with the core leverage-score sampler, then the weights are
// symmetrized (which leaves the weighted Laplacian unchanged since
// L_s = L_{s^-1}) and the sandwich is re-verified against the full Laplacian.
// Groups carrying an abelian decomposition use exact character eigenvalues
// throughout instead of dense eigendecompositions.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "psdspar/groups.hpp"
#include "psdspar/psd_core.hpp"

namespace psdspar::cayley {

// s expressed as a product of factors drawn from (T \ {s}) and inverses.
struct Relation {
  int target = 0;            // the element s
  std::vector<int> factors;  // product in order equals target; size <= 2|T|
};

struct CayleyConfig {
  double eps = 0.5;          // in (0, 1]
  std::uint64_t seed = 0;
  int max_attempts = 100;
  double r_constant = 16.0;  // constant in R = eps^2 / (c * ln(4m))
};

struct CayleyReport {
  std::vector<int> generator_elements;  // sorted elements of the input set
  core::WeightVector weights;           // symmetric; keyed by position in the set
  double eps = 0.0;
  int attempts = 0;                     // total draws across buckets
  int support_size = 0;
  double verified_margin = 0.0;         // combined sandwich margin, positive
  std::vector<double> leverage;         // per-position norms from the sampler
  int buckets = 1;                      // dyadic weight buckets (1 when unweighted)
  std::uint64_t seed = 0;
};

struct DominationCheck {
  bool ok = false;
  double margin = 0.0;  // most negative eigenvalue of the difference
};

// mu_new(s) = (mu_old(s) + mu_old(s^-1)) / 2, keyed by position in gens.
std::map<int, double> symmetrize_weights(const groups::GeneratorSet& gens,
                                         const std::map<int, double>& weights);

// Sparsify the unweighted Cayley Laplacian of a generating symmetric set.
// Throws Disconnected when the set does not generate the group.
CayleyReport cayley_sparsify(const groups::GeneratorSet& gens, const CayleyConfig& config);

// Weighted variant: dyadic buckets of supp(nu) with max/min ratio <= 2 per
// bucket are sparsified independently and the combined sum is re-verified.
CayleyReport weighted_cayley_sparsify(const groups::GeneratorSet& gens,
                                      const CayleyConfig& config);

// Enumerates products of all 2^|T| subsets of T in input order, finds the
// first pair of distinct subsets with equal product, and rearranges it into
// target = product(factors). Requires |T| >= ceil(log2 N) + 1.
Relation find_relation(const groups::FiniteGroup& group, const std::vector<int>& t);

// Verifies alpha * L_s <= sum over T \ {s} of w_t L_t; margin is the most
// negative eigenvalue of the difference. Optional weights parallel T.
DominationCheck certify_domination(const groups::FiniteGroup& group, const std::vector<int>& t,
                                   int s, const Relation& relation, double alpha,
                                   const std::optional<std::vector<double>>& weights = std::nullopt);

// Sandwich check of an arbitrary weighting (keyed by position in gens)
// against the full unweighted Cayley Laplacian of the set.
linalg::EpsApproxResult verify_weights(const groups::GeneratorSet& gens,
                                       const core::WeightVector& weights, double eps);

}  // namespace psdspar::cayley
