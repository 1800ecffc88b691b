#pragma once

// Finite groups as explicit multiplication tables, generator Laplacians of
// the right regular representation (L_s = Id - (R(s) + R(s)^T)/2), cosine
// characters of abelian direct sums, and Schreier-action Laplacians.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psdspar/linalg.hpp"

namespace psdspar::groups {

class FiniteGroup {
 public:
  static FiniteGroup cyclic(int k);
  static FiniteGroup boolean_cube(int n);
  static FiniteGroup direct_sum(const std::vector<FiniteGroup>& parts);
  // Table is row-major: table[g * order + h] = g * h. The identity is deduced.
  // An abelian direct-sum decomposition may be attached; element index i maps
  // to the tuple with i % k_1 in the first factor, (i / k_1) % k_2 next, etc.
  static FiniteGroup from_table(int order, std::vector<int> table,
                                std::optional<std::vector<int>> abelian = std::nullopt);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  const std::vector<int>& table() const { return table_; }
  const std::optional<std::vector<int>>& abelian_decomposition() const { return abelian_; }

 private:
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::optional<std::vector<int>> abelian_;
};

// Symmetric generator multiset with optional symmetric weights.
struct GeneratorSet {
  const FiniteGroup* group = nullptr;
  std::vector<int> elements;                       // sorted, distinct
  std::optional<std::vector<double>> weights;      // parallel to elements

  static GeneratorSet create(const FiniteGroup& group, std::vector<int> elements,
                             std::optional<std::vector<double>> weights = std::nullopt);
  int size() const { return static_cast<int>(elements.size()); }
  double weight(int pos) const { return weights ? (*weights)[pos] : 1.0; }
  int position_of(int element) const;  // -1 when absent
};

// Permutation action of chosen generators on a finite point set. The group
// pointer is optional (actions may come from bare matchings).
struct GroupAction {
  int points = 0;
  std::vector<std::vector<int>> perms;
  const FiniteGroup* group = nullptr;
  std::vector<int> generator_elements;  // parallel to perms when group set

  static GroupAction create(int points, std::vector<std::vector<int>> perms,
                            const FiniteGroup* group = nullptr,
                            std::vector<int> generator_elements = {});
};

// Index <-> tuple helpers for direct-sum element encoding (first factor is the
// least significant digit).
std::vector<int> decompose_index(int index, const std::vector<int>& orders);
int compose_index(const std::vector<int>& tuple, const std::vector<int>& orders);

// Permutation h -> h * g of the right regular representation.
std::vector<int> right_regular(const FiniteGroup& group, int g);

// Dense L_s; the zero matrix when s is the identity.
linalg::SymMatrix gen_laplacian(const FiniteGroup& group, int s);
// x^T L_s x and y = L_s x without materializing L_s.
double gen_laplacian_qform(const FiniteGroup& group, int s, const std::vector<double>& x);
void gen_laplacian_apply(const FiniteGroup& group, int s, const std::vector<double>& x,
                         std::vector<double>& y);

// Sum of weight(s) * L_s over the generator set.
linalg::SymMatrix cayley_laplacian(const GeneratorSet& gens);

// Cosine character of an abelian direct sum: chi_g(h) = cos(2 pi sum g_i h_i / k_i),
// and its sine companion (used for completeness checks). Both are eigenvectors
// of every L_s with eigenvalue 2 sin^2(pi sum g_i s_i / k_i).
std::vector<double> abelian_character(const std::vector<int>& orders,
                                      const std::vector<int>& g_tuple);
std::vector<double> abelian_character_sin(const std::vector<int>& orders,
                                          const std::vector<int>& g_tuple);
double abelian_eigenvalue(const std::vector<int>& orders, const std::vector<int>& g_tuple,
                          const std::vector<int>& s_tuple);

// Laplacian of generator j acting through its permutation: Id - (P + P^T)/2
// restricted to non-fixed points.
linalg::SymMatrix schreier_gen_laplacian(const GroupAction& action, int j);

struct MaxMinimalGenResult {
  int value = 0;              // m(G)
  std::vector<int> witness;   // a minimal generating set of that size
};

// Largest minimal (irredundant) generating set, exhaustive for order <= 64
// (TooLarge beyond). Asserts the log2(N) + 1 ceiling internally.
MaxMinimalGenResult max_minimal_generating_set(const FiniteGroup& group);

// Membership closure of a generating set (used by connectivity prechecks).
std::vector<char> subgroup_closure(const FiniteGroup& group, const std::vector<int>& gens);

}  // namespace psdspar::groups
