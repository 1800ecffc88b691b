#include "psdspar/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psdspar/util.hpp"

namespace psdspar::groups {

namespace {

constexpr int kMaxOrder = 1 << 16;
constexpr int kFullAssocOrder = 64;      // exhaustive associativity below this
constexpr int kFullDecompOrder = 4096;   // exhaustive decomposition check below this
constexpr double kTwoPi = 6.283185307179586476925286766559;

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

void validate_table(int order, const std::vector<int>& table) {
  require(order >= 1, ErrorCode::InvalidTable, "order must be positive");
  require(order <= kMaxOrder, ErrorCode::TooLarge, "order exceeds the materialization cap");
  require(table.size() == static_cast<std::size_t>(order) * order, ErrorCode::InvalidTable,
          "table size does not match order");
  for (int v : table)
    require(v >= 0 && v < order, ErrorCode::InvalidTable, "table entry out of range");

  std::vector<char> seen(order);
  for (int g = 0; g < order; ++g) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int h = 0; h < order; ++h) {
      int v = table[static_cast<std::size_t>(g) * order + h];
      require(!seen[v], ErrorCode::InvalidTable, "table row is not a permutation");
      seen[v] = 1;
    }
  }
  for (int h = 0; h < order; ++h) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int g = 0; g < order; ++g) {
      int v = table[static_cast<std::size_t>(g) * order + h];
      require(!seen[v], ErrorCode::InvalidTable, "table column is not a permutation");
      seen[v] = 1;
    }
  }

  auto mul = [&](int a, int b) { return table[static_cast<std::size_t>(a) * order + b]; };
  if (order <= kFullAssocOrder) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          require(mul(mul(a, b), c) == mul(a, mul(b, c)), ErrorCode::InvalidTable,
                  "table is not associative");
  } else {
    for (int t = 0; t < 1000; ++t) {
      int a = static_cast<int>(mix64(3 * t) % order);
      int b = static_cast<int>(mix64(3 * t + 1) % order);
      int c = static_cast<int>(mix64(3 * t + 2) % order);
      require(mul(mul(a, b), c) == mul(a, mul(b, c)), ErrorCode::InvalidTable,
              "table failed an associativity spot check");
    }
  }
}

int find_identity(int order, const std::vector<int>& table) {
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int h = 0; h < order && ok; ++h)
      ok = table[static_cast<std::size_t>(e) * order + h] == h &&
           table[static_cast<std::size_t>(h) * order + e] == h;
    if (ok) return e;
  }
  throw Error(ErrorCode::InvalidTable, "table has no two-sided identity");
}

}  // namespace

FiniteGroup FiniteGroup::from_table(int order, std::vector<int> table,
                                    std::optional<std::vector<int>> abelian) {
  validate_table(order, table);
  FiniteGroup g;
  g.order_ = order;
  g.identity_ = find_identity(order, table);
  g.table_ = std::move(table);
  g.inverse_.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (g.table_[static_cast<std::size_t>(a) * order + b] == g.identity_) {
        require(g.table_[static_cast<std::size_t>(b) * order + a] == g.identity_,
                ErrorCode::InvalidTable, "one-sided inverse");
        g.inverse_[a] = b;
        break;
      }
    }
    require(g.inverse_[a] >= 0, ErrorCode::InvalidTable, "element without inverse");
  }

  if (abelian) {
    long long prod = 1;
    for (int k : *abelian) {
      require(k >= 1, ErrorCode::DecompositionMismatch, "factor orders must be positive");
      prod *= k;
      require(prod <= order, ErrorCode::DecompositionMismatch,
              "decomposition product exceeds the order");
    }
    require(prod == order, ErrorCode::DecompositionMismatch,
            "decomposition product does not match the order");
    auto check_pair = [&](int a, int b) {
      std::vector<int> ta = decompose_index(a, *abelian);
      std::vector<int> tb = decompose_index(b, *abelian);
      for (std::size_t i = 0; i < ta.size(); ++i) ta[i] = (ta[i] + tb[i]) % (*abelian)[i];
      require(g.table_[static_cast<std::size_t>(a) * order + b] == compose_index(ta, *abelian),
              ErrorCode::DecompositionMismatch,
              "multiplication disagrees with the direct-sum structure");
    };
    if (order <= kFullDecompOrder) {
      for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) check_pair(a, b);
    } else {
      for (int t = 0; t < 1000; ++t)
        check_pair(static_cast<int>(mix64(2 * t) % order),
                   static_cast<int>(mix64(2 * t + 1) % order));
    }
    g.abelian_ = std::move(abelian);
  }
  return g;
}

FiniteGroup FiniteGroup::cyclic(int k) {
  require(k >= 1, ErrorCode::Precondition, "cyclic order must be positive");
  require(k <= kMaxOrder, ErrorCode::TooLarge, "order exceeds the materialization cap");
  std::vector<int> table(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) table[static_cast<std::size_t>(a) * k + b] = (a + b) % k;
  return from_table(k, std::move(table), std::vector<int>{k});
}

FiniteGroup FiniteGroup::boolean_cube(int n) {
  require(n >= 1, ErrorCode::Precondition, "cube dimension must be positive");
  require(n <= 16, ErrorCode::TooLarge, "cube order exceeds the materialization cap");
  const int order = 1 << n;
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) table[static_cast<std::size_t>(a) * order + b] = a ^ b;
  return from_table(order, std::move(table), std::vector<int>(n, 2));
}

FiniteGroup FiniteGroup::direct_sum(const std::vector<FiniteGroup>& parts) {
  require(!parts.empty(), ErrorCode::Precondition, "direct sum needs at least one part");
  long long order = 1;
  bool all_abelian = true;
  std::vector<int> decomposition;
  for (const FiniteGroup& p : parts) {
    order *= p.order();
    require(order <= kMaxOrder, ErrorCode::TooLarge, "order exceeds the materialization cap");
    if (p.abelian_decomposition())
      decomposition.insert(decomposition.end(), p.abelian_decomposition()->begin(),
                           p.abelian_decomposition()->end());
    else
      all_abelian = false;
  }
  const int n = static_cast<int>(order);
  std::vector<int> radices;
  for (const FiniteGroup& p : parts) radices.push_back(p.order());

  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    std::vector<int> ta = decompose_index(a, radices);
    for (int b = 0; b < n; ++b) {
      std::vector<int> tb = decompose_index(b, radices);
      std::vector<int> tc(ta.size());
      for (std::size_t i = 0; i < ta.size(); ++i) tc[i] = parts[i].mul(ta[i], tb[i]);
      table[static_cast<std::size_t>(a) * n + b] = compose_index(tc, radices);
    }
  }
  return from_table(n, std::move(table),
                    all_abelian ? std::optional<std::vector<int>>(std::move(decomposition))
                                : std::nullopt);
}

GeneratorSet GeneratorSet::create(const FiniteGroup& group, std::vector<int> elements,
                                  std::optional<std::vector<double>> weights) {
  if (weights)
    require(weights->size() == elements.size(), ErrorCode::DimensionMismatch,
            "weights must parallel elements");
  // Sort elements, dragging weights along.
  std::vector<std::size_t> order(elements.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return elements[a] < elements[b]; });
  GeneratorSet gs;
  gs.group = &group;
  gs.elements.reserve(elements.size());
  if (weights) gs.weights.emplace();
  for (std::size_t k : order) {
    int e = elements[k];
    require(e >= 0 && e < group.order(), ErrorCode::Precondition, "generator out of range");
    require(gs.elements.empty() || gs.elements.back() != e, ErrorCode::Precondition,
            "duplicate generator");
    gs.elements.push_back(e);
    if (weights) gs.weights->push_back((*weights)[k]);
  }
  for (std::size_t i = 0; i < gs.elements.size(); ++i) {
    int inv = group.inverse(gs.elements[i]);
    int pos = gs.position_of(inv);
    require(pos >= 0, ErrorCode::NotSymmetric, "generator set must be closed under inverses");
    if (gs.weights) {
      require((*gs.weights)[i] > 0.0, ErrorCode::Precondition, "weights must be positive");
      require((*gs.weights)[i] == (*gs.weights)[static_cast<std::size_t>(pos)],
              ErrorCode::NotSymmetric, "weights must agree on inverse pairs");
    }
  }
  return gs;
}

int GeneratorSet::position_of(int element) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), element);
  if (it == elements.end() || *it != element) return -1;
  return static_cast<int>(it - elements.begin());
}

GroupAction GroupAction::create(int points, std::vector<std::vector<int>> perms,
                                const FiniteGroup* group, std::vector<int> generator_elements) {
  require(points >= 1, ErrorCode::Precondition, "action needs at least one point");
  std::vector<char> seen(points);
  for (const auto& p : perms) {
    require(p.size() == static_cast<std::size_t>(points), ErrorCode::InvalidTable,
            "permutation length mismatch");
    std::fill(seen.begin(), seen.end(), 0);
    for (int v : p) {
      require(v >= 0 && v < points && !seen[v], ErrorCode::InvalidTable,
              "generator is not a permutation");
      seen[v] = 1;
    }
  }
  if (group) {
    require(generator_elements.size() == perms.size(), ErrorCode::DimensionMismatch,
            "generator elements must parallel permutations");
    for (std::size_t i = 0; i < perms.size(); ++i) {
      int g = generator_elements[i];
      require(g >= 0 && g < group->order(), ErrorCode::Precondition,
              "generator element out of range");
      if (group->inverse(g) == g) {
        for (int x = 0; x < points; ++x)
          require(perms[i][static_cast<std::size_t>(perms[i][x])] == x, ErrorCode::InvalidTable,
                  "involution generator must square to the identity");
      }
      // Composition consistency on pairs whose product is also a supplied generator.
      for (std::size_t j = 0; j < perms.size(); ++j) {
        int prod = group->mul(g, generator_elements[j]);
        auto it = std::find(generator_elements.begin(), generator_elements.end(), prod);
        if (it == generator_elements.end()) continue;
        const auto& pk = perms[static_cast<std::size_t>(it - generator_elements.begin())];
        for (int x = 0; x < points; ++x)
          require(pk[x] == perms[j][static_cast<std::size_t>(perms[i][x])],
                  ErrorCode::InvalidTable, "action does not respect multiplication");
      }
    }
  }
  GroupAction a;
  a.points = points;
  a.perms = std::move(perms);
  a.group = group;
  a.generator_elements = std::move(generator_elements);
  return a;
}

std::vector<int> decompose_index(int index, const std::vector<int>& orders) {
  std::vector<int> t(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    t[i] = index % orders[i];
    index /= orders[i];
  }
  return t;
}

int compose_index(const std::vector<int>& tuple, const std::vector<int>& orders) {
  int index = 0;
  for (std::size_t i = orders.size(); i-- > 0;) index = index * orders[i] + tuple[i];
  return index;
}

std::vector<int> right_regular(const FiniteGroup& group, int g) {
  require(g >= 0 && g < group.order(), ErrorCode::Precondition, "element out of range");
  std::vector<int> perm(group.order());
  for (int h = 0; h < group.order(); ++h) perm[h] = group.mul(h, g);
  return perm;
}

linalg::SymMatrix gen_laplacian(const FiniteGroup& group, int s) {
  require(s >= 0 && s < group.order(), ErrorCode::Precondition, "element out of range");
  const int n = group.order();
  linalg::SymMatrix l(n);
  if (s == group.identity()) return l;
  const int sinv = group.inverse(s);
  double* a = l.data().data();
  for (int h = 0; h < n; ++h) {
    a[static_cast<std::size_t>(h) * n + h] += 1.0;
    a[static_cast<std::size_t>(h) * n + group.mul(h, s)] -= 0.5;
    a[static_cast<std::size_t>(h) * n + group.mul(h, sinv)] -= 0.5;
  }
  return l;
}

double gen_laplacian_qform(const FiniteGroup& group, int s, const std::vector<double>& x) {
  require(static_cast<int>(x.size()) == group.order(), ErrorCode::DimensionMismatch,
          "vector length must match the order");
  if (s == group.identity()) return 0.0;
  const int sinv = group.inverse(s);
  double total = 0.0;
  for (int h = 0; h < group.order(); ++h)
    total += x[h] * (x[h] - 0.5 * (x[group.mul(h, s)] + x[group.mul(h, sinv)]));
  return total;
}

void gen_laplacian_apply(const FiniteGroup& group, int s, const std::vector<double>& x,
                         std::vector<double>& y) {
  require(static_cast<int>(x.size()) == group.order(), ErrorCode::DimensionMismatch,
          "vector length must match the order");
  y.assign(x.size(), 0.0);
  if (s == group.identity()) return;
  const int sinv = group.inverse(s);
  for (int h = 0; h < group.order(); ++h)
    y[h] = x[h] - 0.5 * (x[group.mul(h, s)] + x[group.mul(h, sinv)]);
}

linalg::SymMatrix cayley_laplacian(const GeneratorSet& gens) {
  const FiniteGroup& g = *gens.group;
  const int n = g.order();
  linalg::SymMatrix l(n);
  double* a = l.data().data();
  for (int pos = 0; pos < gens.size(); ++pos) {
    const int s = gens.elements[static_cast<std::size_t>(pos)];
    if (s == g.identity()) continue;
    const int sinv = g.inverse(s);
    const double w = gens.weight(pos);
    for (int h = 0; h < n; ++h) {
      a[static_cast<std::size_t>(h) * n + h] += w;
      a[static_cast<std::size_t>(h) * n + g.mul(h, s)] -= 0.5 * w;
      a[static_cast<std::size_t>(h) * n + g.mul(h, sinv)] -= 0.5 * w;
    }
  }
  return l;
}

namespace {

// num / lcm representation of sum g_i h_i / k_i mod 1, exact in integers.
struct CharacterPhase {
  std::vector<int> orders;
  std::uint64_t l = 1;
  std::vector<std::uint64_t> coef;

  explicit CharacterPhase(const std::vector<int>& ks) : orders(ks) {
    require(!ks.empty(), ErrorCode::DecompositionMismatch, "empty decomposition");
    for (int k : ks) {
      require(k >= 1, ErrorCode::DecompositionMismatch, "factor orders must be positive");
      l = std::lcm<std::uint64_t>(l, static_cast<std::uint64_t>(k));
    }
    for (int k : ks) coef.push_back(l / static_cast<std::uint64_t>(k));
  }

  std::uint64_t phase(const std::vector<int>& a, const std::vector<int>& b) const {
    std::uint64_t num = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      std::uint64_t t = (static_cast<std::uint64_t>(a[i]) * static_cast<std::uint64_t>(b[i])) %
                        static_cast<std::uint64_t>(orders[i]);
      num = (num + t * coef[i]) % l;
    }
    return num;
  }
};

std::vector<double> character_impl(const std::vector<int>& orders,
                                   const std::vector<int>& g_tuple, bool sine) {
  CharacterPhase ph(orders);
  require(g_tuple.size() == orders.size(), ErrorCode::DecompositionMismatch,
          "tuple length does not match the decomposition");
  long long n = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    require(g_tuple[i] >= 0 && g_tuple[i] < orders[i], ErrorCode::DecompositionMismatch,
            "tuple entry out of range");
    n *= orders[i];
  }
  std::vector<double> chi(static_cast<std::size_t>(n));
  for (long long h = 0; h < n; ++h) {
    std::vector<int> th = decompose_index(static_cast<int>(h), orders);
    double t = static_cast<double>(ph.phase(g_tuple, th)) / static_cast<double>(ph.l);
    chi[static_cast<std::size_t>(h)] = sine ? std::sin(kTwoPi * t) : std::cos(kTwoPi * t);
  }
  return chi;
}

}  // namespace

std::vector<double> abelian_character(const std::vector<int>& orders,
                                      const std::vector<int>& g_tuple) {
  return character_impl(orders, g_tuple, false);
}

std::vector<double> abelian_character_sin(const std::vector<int>& orders,
                                          const std::vector<int>& g_tuple) {
  return character_impl(orders, g_tuple, true);
}

double abelian_eigenvalue(const std::vector<int>& orders, const std::vector<int>& g_tuple,
                          const std::vector<int>& s_tuple) {
  CharacterPhase ph(orders);
  require(g_tuple.size() == orders.size() && s_tuple.size() == orders.size(),
          ErrorCode::DecompositionMismatch, "tuple length does not match the decomposition");
  const double t = static_cast<double>(ph.phase(g_tuple, s_tuple)) / static_cast<double>(ph.l);
  const double s = std::sin(0.5 * kTwoPi * t);
  return 2.0 * s * s;
}

linalg::SymMatrix schreier_gen_laplacian(const GroupAction& action, int j) {
  require(j >= 0 && j < static_cast<int>(action.perms.size()), ErrorCode::Precondition,
          "generator index out of range");
  const std::vector<int>& p = action.perms[static_cast<std::size_t>(j)];
  const int n = action.points;
  std::vector<int> pinv(n);
  for (int x = 0; x < n; ++x) pinv[p[x]] = x;
  linalg::SymMatrix l(n);
  double* a = l.data().data();
  for (int x = 0; x < n; ++x) {
    if (p[x] == x) continue;
    a[static_cast<std::size_t>(x) * n + x] += 1.0;
    a[static_cast<std::size_t>(x) * n + p[x]] -= 0.5;
    a[static_cast<std::size_t>(x) * n + pinv[x]] -= 0.5;
  }
  return l;
}

std::vector<char> subgroup_closure(const FiniteGroup& group, const std::vector<int>& gens) {
  std::vector<char> in(group.order(), 0);
  std::vector<int> stack;
  in[group.identity()] = 1;
  stack.push_back(group.identity());
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int s : gens) {
      int y = group.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return in;
}

namespace {

// DFS over index-increasing generator sequences whose generated subgroup
// strictly grows; each step at least doubles the subgroup, so depth <= log2 N.
struct MaxMinimalSearch {
  const FiniteGroup& g;
  int n;
  int best = -1;
  std::vector<int> best_set;
  std::vector<int> current;

  explicit MaxMinimalSearch(const FiniteGroup& group) : g(group), n(group.order()) {}

  std::uint64_t closure_from(std::uint64_t seed_mask, int extra) {
    std::uint64_t in = seed_mask | (1ull << extra) | (1ull << g.identity());
    std::vector<int> stack;
    for (int x = 0; x < n; ++x)
      if (in & (1ull << x)) stack.push_back(x);
    std::vector<int> gens = current;
    gens.push_back(extra);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int s : gens) {
        int y = g.mul(x, s);
        if (!(in & (1ull << y))) {
          in |= 1ull << y;
          stack.push_back(y);
        }
      }
    }
    return in;
  }

  bool generates_all(const std::vector<int>& gens) {
    std::vector<char> in = subgroup_closure(g, gens);
    for (char c : in)
      if (!c) return false;
    return true;
  }

  void dfs(std::uint64_t mask, int last) {
    const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    if (mask == full && !current.empty()) {
      bool irredundant = true;
      for (std::size_t drop = 0; drop < current.size() && irredundant; ++drop) {
        std::vector<int> rest;
        for (std::size_t i = 0; i < current.size(); ++i)
          if (i != drop) rest.push_back(current[i]);
        if (generates_all(rest)) irredundant = false;
      }
      if (irredundant && static_cast<int>(current.size()) > best) {
        best = static_cast<int>(current.size());
        best_set = current;
      }
    }
    for (int s = last + 1; s < n; ++s) {
      if (mask & (1ull << s)) continue;  // would not grow the subgroup
      current.push_back(s);
      dfs(closure_from(mask, s), s);
      current.pop_back();
    }
  }
};

}  // namespace

MaxMinimalGenResult max_minimal_generating_set(const FiniteGroup& group) {
  require(group.order() <= 64, ErrorCode::TooLarge,
          "exhaustive search is limited to order 64");
  MaxMinimalSearch search(group);
  if (group.order() == 1) return MaxMinimalGenResult{0, {}};
  search.dfs(1ull << group.identity(), -1);
  require(search.best >= 1, ErrorCode::InvalidTable, "no generating set found");
  require(search.best < std::log2(static_cast<double>(group.order())) + 1.0,
          ErrorCode::Precondition, "minimal generating set exceeds the doubling bound");
  return MaxMinimalGenResult{search.best, search.best_set};
}

}  // namespace psdspar::groups
