#pragma once

// Instance-specific connectivity: the smallest k such that every subfamily of
// size >= k contains a member dominated (at level alpha) by the rest. Computed
// by exhaustive level search; alpha-minimal subfamilies come with eigenvector
// witnesses that certify no small-support reweighting can approximate the sum.

#include <cstdint>
#include <map>
#include <vector>

#include "psdspar/psd_core.hpp"

namespace psdspar::conn {

struct DominationQuery {
  double alpha = 0.0;
  int index = 0;             // candidate dominated member
  std::vector<int> subset;   // indices into the collection, must contain index
};

// Witnessed alpha-minimal subfamily: for each i in subset a vector w_i with
// alpha * w_i^T A_i w_i > sum_{j in subset, j != i} w_i^T A_j w_i, with strict
// slack 1e-9 * ||sum_{subset} A_j|| * ||w_i||^2.
struct AlphaMinimalCertificate {
  double alpha = 0.0;
  std::vector<int> subset;
  std::map<int, std::vector<double>> witnesses;
};

struct ConnectivityResult {
  double alpha = 0.0;
  int value = 0;  // N(alpha); r + 1 when the full family is alpha-minimal
  AlphaMinimalCertificate largest_minimal_subset;
  bool exhaustive = true;  // false when a size bound truncated the search
};

struct SubsetSearchLimits {
  std::uint64_t query_cap = 1ull << 20;  // evaluated domination queries
  int max_size = 0;                      // 0 = unbounded; else search sizes <= max_size
};

// alpha A_i <= sum_{j in subset \ {i}} A_j, via a PSD check at tolerance 1e-9.
bool dominates(const DominationQuery& query, const core::PsdCollection& collection);

// Level search by increasing subset size, lexicographic within a size; stops
// at the first size with no alpha-minimal subset (domination is monotone
// under supersets, so no larger minimal subset can exist). alpha = 0 returns 1
// immediately. Throws CapExceeded when query_cap is hit; with max_size given,
// a still-live search at the bound returns value = max_size + 1 flagged
// exhaustive = false (a lower bound on N(alpha)).
ConnectivityResult connectivity_parameter(const core::PsdCollection& collection, double alpha,
                                          const SubsetSearchLimits& limits = {});

// Positive root of a^2 + a = (1 - eps)/(1 + eps); eps in [0, 1) (BadEps).
double alpha_eps(double eps);

// connectivity_parameter at alpha_eps(eps).
ConnectivityResult connectivity_threshold(const core::PsdCollection& collection, double eps,
                                          const SubsetSearchLimits& limits = {});

// Witness for each i in subset: the most negative eigenvector of
// sum_{j in subset \ {i}} A_j - alpha A_i. Throws NotMinimal when some member
// fails the strict certificate inequality.
AlphaMinimalCertificate extract_witnesses(const core::PsdCollection& collection, double alpha,
                                          const std::vector<int>& subset);

// Re-validates every witness inequality of the certificate; requires
// certificate.alpha >= alpha_eps(eps) - 1e-12 (Precondition).
bool verify_unsparsifiable(const core::PsdCollection& collection,
                           const AlphaMinimalCertificate& certificate, double eps);

// True when every witness inequality holds with the certificate slack.
bool certificate_holds(const core::PsdCollection& collection,
                       const AlphaMinimalCertificate& certificate);

}  // namespace psdspar::conn
