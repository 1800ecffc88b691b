#pragma once

// Constructors and verifiers for the benchmark instances: graph edge
// collections with spanning-tree minimal certificates, alpha-minimal sets in
// Z_N and in general abelian groups (evaluated through exact character
// eigenvalues, no N x N matrices), transversal partitions of K_{n,n}, and the
// matching-based Schreier instances whose cut certificates are exact integers.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "psdspar/connectivity.hpp"
#include "psdspar/groups.hpp"
#include "psdspar/psd_core.hpp"

namespace psdspar::instances {

struct Graph {
  struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
  };

  int n = 0;
  std::vector<Edge> edges;  // multi-edges allowed, self-loops rejected

  static Graph create(int n, std::vector<Edge> edges);
};

// One weighted edge Laplacian per edge, in edge order.
core::PsdCollection graph_edge_collection(const Graph& graph);

// BFS spanning tree over positive-weight edges with +-1 cut-indicator
// witnesses; valid for every alpha in (0, 1], stored at alpha = 1.
conn::AlphaMinimalCertificate spanning_tree_minimal(const Graph& graph);

// Alpha-minimal power set {k, k^2, ..., k^r} in Z_N with character witnesses,
// all margins evaluated in closed form. Falls back to a singleton when the
// computed r is at most 1.
struct ZnMinimalSet {
  std::uint64_t modulus = 0;
  int base_k = 0;
  double alpha = 0.0;
  std::vector<std::uint64_t> elements;
  std::vector<std::uint64_t> witness_chars;
  std::vector<double> relative_margins;  // (alpha*own - others) / (alpha*own)
};

ZnMinimalSet zn_alpha_minimal(std::uint64_t n, double alpha);

// Closed-form relative margins of the witness inequalities for arbitrary
// elements/characters of Z_N; entry i uses witness_chars[i] against the rest.
std::vector<double> zn_relative_margins(std::uint64_t n, double alpha,
                                        const std::vector<std::uint64_t>& elements,
                                        const std::vector<std::uint64_t>& witness_chars);

// Materializations for moderate N (<= 1024): the generator Laplacians and the
// cosine-character witness certificate, suitable for dense re-verification.
core::PsdCollection zn_collection(const ZnMinimalSet& set);
conn::AlphaMinimalCertificate zn_certificate(const ZnMinimalSet& set);

// Per-factor Z_k sets lifted into the direct sum with zeros elsewhere;
// witnesses are factor characters tensored with the all-ones vector.
struct AbelianMinimalSet {
  std::vector<int> orders;
  double alpha = 0.0;
  std::vector<int> elements;                     // composed group indices
  std::vector<std::vector<int>> witness_tuples;  // character tuples
  std::vector<double> relative_margins;
};

AbelianMinimalSet abelian_alpha_minimal(const std::vector<int>& orders, double alpha);

core::PsdCollection abelian_collection(const AbelianMinimalSet& set);
conn::AlphaMinimalCertificate abelian_certificate(const AbelianMinimalSet& set);

// Edge sets over `vertices` points; each matching has vertex-disjoint edges.
struct MatchingPartition {
  int vertices = 0;
  std::vector<std::vector<std::pair<int, int>>> matchings;
  std::optional<std::vector<std::pair<int, int>>> transversal;
};

// Partition of E(K_{n,n}) into n perfect matchings with a perfect matching
// meeting each part exactly once. Vertices 0..n-1 left, n..2n-1 right.
MatchingPartition knn_transversal_partition(int n);

// Permutation swapping the endpoints of each edge; uncovered points fixed.
std::vector<int> matching_to_involution(int vertices,
                                        const std::vector<std::pair<int, int>>& matching);

// The 4n-point instance: n perfect matchings M'_i whose Laplacians admit
// exact +-1 cut witnesses, packaged with the involution action.
struct SchreierInstance {
  int n = 0;
  MatchingPartition matchings;               // on 4n points, no transversal
  groups::GroupAction action;                // involutions, one per matching
  std::vector<std::vector<int>> witnesses;   // +-1 entries, one per matching
};

SchreierInstance schreier_unsparsifiable(int n);

// x_i L_{M_i} x_i > 0 and x_i L_{M_j} x_i = 0 for j != i, in exact integers.
bool verify_cut_certificate(const std::vector<std::vector<std::pair<int, int>>>& matchings,
                            const std::vector<std::vector<int>>& witnesses);

// The n matching Laplacians of a Schreier instance as a PSD collection.
core::PsdCollection schreier_collection(const SchreierInstance& instance);

}  // namespace psdspar::instances
