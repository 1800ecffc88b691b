#include "psdspar/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace psdspar::instances {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinRelativeMargin = 1e-9;  // near-boundary instances are rejected
constexpr std::uint64_t kDenseZnCap = 1024;  // materialization limit
constexpr long long kGroupCap = 1 << 16;

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

// 2 sin^2(pi * (s*g mod n) / n), the generator eigenvalue at character g.
double zn_eigenvalue(std::uint64_t n, std::uint64_t s, std::uint64_t g) {
  const std::uint64_t m = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(s % n) * (g % n)) % n);
  const double t = std::sin(kPi * static_cast<double>(m) / static_cast<double>(n));
  return 2.0 * t * t;
}

}  // namespace

Graph Graph::create(int n, std::vector<Edge> edges) {
  require(n >= 1, ErrorCode::Precondition, "graph needs at least one vertex");
  for (const Edge& e : edges) {
    require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n, ErrorCode::Precondition,
            "edge endpoint out of range");
    require(e.u != e.v, ErrorCode::Precondition, "self-loops are not allowed");
    require(e.w >= 0.0, ErrorCode::Precondition, "edge weights must be nonnegative");
  }
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

core::PsdCollection graph_edge_collection(const Graph& graph) {
  std::vector<linalg::SymMatrix> mats;
  std::vector<std::string> labels;
  mats.reserve(graph.edges.size());
  for (const Graph::Edge& e : graph.edges) {
    linalg::SymMatrix l(graph.n);
    l.set(e.u, e.u, e.w);
    l.set(e.v, e.v, e.w);
    l.set(e.u, e.v, -e.w);
    mats.push_back(std::move(l));
    labels.push_back(std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  return core::PsdCollection::create(std::move(mats), std::move(labels));
}

conn::AlphaMinimalCertificate spanning_tree_minimal(const Graph& graph) {
  // BFS tree over positive-weight edges, scanning edges in index order.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(graph.n));
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (graph.edges[e].w <= 0.0) continue;
    adj[static_cast<std::size_t>(graph.edges[e].u)].emplace_back(static_cast<int>(e),
                                                                 graph.edges[e].v);
    adj[static_cast<std::size_t>(graph.edges[e].v)].emplace_back(static_cast<int>(e),
                                                                 graph.edges[e].u);
  }
  for (auto& lst : adj) std::sort(lst.begin(), lst.end());

  std::vector<char> visited(static_cast<std::size_t>(graph.n), 0);
  std::vector<int> tree;
  std::queue<int> q;
  visited[0] = 1;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const auto& [e, v] : adj[static_cast<std::size_t>(u)]) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      tree.push_back(e);
      q.push(v);
    }
  }
  for (char c : visited)
    if (!c) throw Error(ErrorCode::Disconnected, "graph is not connected");
  std::sort(tree.begin(), tree.end());

  conn::AlphaMinimalCertificate cert;
  cert.alpha = 1.0;
  cert.subset = tree;

  // Witness for tree edge e: +-1 indicator of the two components of tree - e.
  std::set<int> tree_set(tree.begin(), tree.end());
  for (int e : tree) {
    std::vector<char> side(static_cast<std::size_t>(graph.n), 0);
    std::queue<int> bfs;
    side[static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].u)] = 1;
    bfs.push(graph.edges[static_cast<std::size_t>(e)].u);
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop();
      for (const auto& [f, v] : adj[static_cast<std::size_t>(u)]) {
        if (f == e || !tree_set.count(f) || side[static_cast<std::size_t>(v)]) continue;
        side[static_cast<std::size_t>(v)] = 1;
        bfs.push(v);
      }
    }
    std::vector<double> w(static_cast<std::size_t>(graph.n));
    for (int x = 0; x < graph.n; ++x) w[static_cast<std::size_t>(x)] = side[static_cast<std::size_t>(x)] ? 1.0 : -1.0;
    cert.witnesses[e] = std::move(w);
  }

  require(conn::certificate_holds(graph_edge_collection(graph), cert),
          ErrorCode::NotMinimal, "spanning tree certificate failed re-verification");
  return cert;
}

std::vector<double> zn_relative_margins(std::uint64_t n, double alpha,
                                        const std::vector<std::uint64_t>& elements,
                                        const std::vector<std::uint64_t>& witness_chars) {
  require(n >= 1, ErrorCode::Precondition, "modulus must be positive");
  require(elements.size() == witness_chars.size(), ErrorCode::DimensionMismatch,
          "one witness character per element");
  std::vector<double> margins;
  margins.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const double own = alpha * zn_eigenvalue(n, elements[i], witness_chars[i]);
    double others = 0.0;
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (j != i) others += zn_eigenvalue(n, elements[j], witness_chars[i]);
    margins.push_back(own > 0.0 ? (own - others) / own : -1.0);
  }
  return margins;
}

ZnMinimalSet zn_alpha_minimal(std::uint64_t n, double alpha) {
  if (n < 2) throw Error(ErrorCode::DegenerateSize, "modulus must be at least 2");
  require(alpha > 0.0 && alpha <= 1.0, ErrorCode::Precondition, "alpha must lie in (0, 1]");

  // Smallest even k with alpha >= pi^2 / (2 (k^2 - 1)).
  int k = 2;
  while (alpha < kPi * kPi / (2.0 * (static_cast<double>(k) * k - 1.0))) {
    k += 2;
    require(k <= (1 << 20), ErrorCode::Precondition, "alpha too small");
  }

  // Largest r with k^(8r) <= n, in exact integer arithmetic.
  std::uint64_t k8 = 1;
  bool overflow = false;
  for (int i = 0; i < 8; ++i) {
    if (k8 > n / static_cast<std::uint64_t>(k)) {
      overflow = true;
      break;
    }
    k8 *= static_cast<std::uint64_t>(k);
  }
  int r = 0;
  if (!overflow) {
    std::uint64_t pow = 1;
    while (pow <= n / k8) {
      pow *= k8;
      ++r;
    }
  }

  ZnMinimalSet set;
  set.modulus = n;
  set.base_k = k;
  set.alpha = alpha;

  if (r >= 2) {
    std::uint64_t e = 1;
    for (int i = 1; i <= r; ++i) {
      e *= static_cast<std::uint64_t>(k);
      set.elements.push_back(e);
      set.witness_chars.push_back(n / (2 * e));
    }
  } else {
    // Trivial singleton: one nonzero element with its best character.
    std::uint64_t s = static_cast<std::uint64_t>(k) % n;
    if (s == 0) s = 1;
    std::uint64_t g;
    if (n <= (1ull << 20)) {
      g = 1;
      double best = zn_eigenvalue(n, s, 1);
      for (std::uint64_t c = 2; c < n; ++c) {
        const double v = zn_eigenvalue(n, s, c);
        if (v > best) {
          best = v;
          g = c;
        }
      }
    } else {
      g = std::max<std::uint64_t>(1, (n + s) / (2 * s));  // round(n / 2s)
    }
    set.elements.push_back(s);
    set.witness_chars.push_back(g);
  }

  set.relative_margins = zn_relative_margins(n, alpha, set.elements, set.witness_chars);
  for (double m : set.relative_margins)
    require(m >= kMinRelativeMargin, ErrorCode::NotMinimal,
            "witness inequality too close to the boundary");
  return set;
}

core::PsdCollection zn_collection(const ZnMinimalSet& set) {
  require(set.modulus <= kDenseZnCap, ErrorCode::TooLarge,
          "modulus too large to materialize");
  groups::FiniteGroup group = groups::FiniteGroup::cyclic(static_cast<int>(set.modulus));
  std::vector<linalg::SymMatrix> mats;
  std::vector<std::string> labels;
  for (std::uint64_t s : set.elements) {
    mats.push_back(groups::gen_laplacian(group, static_cast<int>(s % set.modulus)));
    labels.push_back(std::to_string(s));
  }
  return core::PsdCollection::create(std::move(mats), std::move(labels));
}

conn::AlphaMinimalCertificate zn_certificate(const ZnMinimalSet& set) {
  require(set.modulus <= kDenseZnCap, ErrorCode::TooLarge,
          "modulus too large to materialize");
  conn::AlphaMinimalCertificate cert;
  cert.alpha = set.alpha;
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    cert.subset.push_back(static_cast<int>(i));
    std::vector<double> chi(static_cast<std::size_t>(set.modulus));
    for (std::uint64_t x = 0; x < set.modulus; ++x)
      chi[static_cast<std::size_t>(x)] =
          std::cos(2.0 * kPi * static_cast<double>((set.witness_chars[i] * x) % set.modulus) /
                   static_cast<double>(set.modulus));
    cert.witnesses[static_cast<int>(i)] = std::move(chi);
  }
  return cert;
}

AbelianMinimalSet abelian_alpha_minimal(const std::vector<int>& orders, double alpha) {
  require(!orders.empty(), ErrorCode::Precondition, "decomposition must be non-empty");
  long long product = 1;
  for (int k : orders) {
    require(k >= 2, ErrorCode::Precondition, "factor orders must be at least 2");
    product *= k;
    require(product <= kGroupCap, ErrorCode::TooLarge, "group exceeds the materialization cap");
  }

  AbelianMinimalSet set;
  set.orders = orders;
  set.alpha = alpha;

  for (std::size_t i = 0; i < orders.size(); ++i) {
    ZnMinimalSet factor = zn_alpha_minimal(static_cast<std::uint64_t>(orders[i]), alpha);
    for (std::size_t a = 0; a < factor.elements.size(); ++a) {
      std::vector<int> elem_tuple(orders.size(), 0);
      std::vector<int> char_tuple(orders.size(), 0);
      elem_tuple[i] = static_cast<int>(factor.elements[a]);
      char_tuple[i] = static_cast<int>(factor.witness_chars[a]);
      set.elements.push_back(groups::compose_index(elem_tuple, orders));
      set.witness_tuples.push_back(std::move(char_tuple));
    }
  }

  // Margins over the full lifted set; cross-factor terms vanish exactly.
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    std::vector<int> s_tuple = groups::decompose_index(set.elements[i], orders);
    const double own = alpha * groups::abelian_eigenvalue(orders, set.witness_tuples[i], s_tuple);
    double others = 0.0;
    for (std::size_t j = 0; j < set.elements.size(); ++j) {
      if (j == i) continue;
      std::vector<int> t_tuple = groups::decompose_index(set.elements[j], orders);
      others += groups::abelian_eigenvalue(orders, set.witness_tuples[i], t_tuple);
    }
    const double margin = own > 0.0 ? (own - others) / own : -1.0;
    require(margin >= kMinRelativeMargin, ErrorCode::NotMinimal,
            "witness inequality too close to the boundary");
    set.relative_margins.push_back(margin);
  }
  return set;
}

core::PsdCollection abelian_collection(const AbelianMinimalSet& set) {
  long long product = 1;
  for (int k : set.orders) product *= k;
  require(product <= static_cast<long long>(kDenseZnCap), ErrorCode::TooLarge,
          "group too large to materialize");
  std::vector<groups::FiniteGroup> parts;
  for (int k : set.orders) parts.push_back(groups::FiniteGroup::cyclic(k));
  groups::FiniteGroup group = groups::FiniteGroup::direct_sum(parts);
  std::vector<linalg::SymMatrix> mats;
  std::vector<std::string> labels;
  for (int e : set.elements) {
    mats.push_back(groups::gen_laplacian(group, e));
    labels.push_back(std::to_string(e));
  }
  return core::PsdCollection::create(std::move(mats), std::move(labels));
}

conn::AlphaMinimalCertificate abelian_certificate(const AbelianMinimalSet& set) {
  long long product = 1;
  for (int k : set.orders) product *= k;
  require(product <= static_cast<long long>(kDenseZnCap), ErrorCode::TooLarge,
          "group too large to materialize");
  conn::AlphaMinimalCertificate cert;
  cert.alpha = set.alpha;
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    cert.subset.push_back(static_cast<int>(i));
    cert.witnesses[static_cast<int>(i)] =
        groups::abelian_character(set.orders, set.witness_tuples[i]);
  }
  return cert;
}

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// Odd-n partition in (left, right) coordinates over Z_n.
struct OddKnn {
  std::vector<EdgeList> matchings;
  EdgeList transversal;         // (x, 2x)
  EdgeList second_transversal;  // (x+1, 2x+1), disjoint from the first
};

OddKnn odd_knn(int n) {
  OddKnn out;
  out.matchings.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < n; ++x)
      out.matchings[static_cast<std::size_t>(i)].emplace_back(x, (x + i) % n);
  for (int x = 0; x < n; ++x) {
    out.transversal.emplace_back(x, 2 * x % n);
    out.second_transversal.emplace_back((x + 1) % n, (2 * x + 1) % n);
  }
  return out;
}

void validate_partition(const MatchingPartition& part, int n) {
  const int total = 2 * n;
  std::set<std::pair<int, int>> seen;
  require(static_cast<int>(part.matchings.size()) == n, ErrorCode::Precondition,
          "matching count mismatch");
  for (const EdgeList& m : part.matchings) {
    require(static_cast<int>(m.size()) == n, ErrorCode::Precondition, "matching size mismatch");
    std::vector<char> hit(static_cast<std::size_t>(total), 0);
    for (const auto& [u, v] : m) {
      require(u >= 0 && u < n && v >= n && v < total, ErrorCode::Precondition,
              "edge endpoints out of side ranges");
      require(!hit[static_cast<std::size_t>(u)] && !hit[static_cast<std::size_t>(v)],
              ErrorCode::Precondition, "matching has overlapping edges");
      hit[static_cast<std::size_t>(u)] = hit[static_cast<std::size_t>(v)] = 1;
      require(seen.insert({u, v}).second, ErrorCode::Precondition,
              "matchings are not edge-disjoint");
    }
  }
  require(static_cast<int>(seen.size()) == n * n, ErrorCode::Precondition,
          "matchings do not cover K_{n,n}");

  require(part.transversal.has_value(), ErrorCode::Precondition, "transversal missing");
  const EdgeList& t = *part.transversal;
  require(static_cast<int>(t.size()) == n, ErrorCode::Precondition, "transversal size mismatch");
  std::vector<char> hit(static_cast<std::size_t>(total), 0);
  for (const auto& [u, v] : t) {
    require(!hit[static_cast<std::size_t>(u)] && !hit[static_cast<std::size_t>(v)],
            ErrorCode::Precondition, "transversal has overlapping edges");
    hit[static_cast<std::size_t>(u)] = hit[static_cast<std::size_t>(v)] = 1;
  }
  for (const EdgeList& m : part.matchings) {
    int common = 0;
    for (const auto& e : m)
      if (std::find(t.begin(), t.end(), e) != t.end()) ++common;
    require(common == 1, ErrorCode::Precondition, "transversal must meet each matching once");
  }
}

}  // namespace

MatchingPartition knn_transversal_partition(int n) {
  require(n >= 3, ErrorCode::TooSmall, "transversal partitions need n >= 3");

  std::vector<EdgeList> pair_matchings;
  EdgeList pair_transversal;

  if (n % 2 == 1) {
    OddKnn odd = odd_knn(n);
    pair_matchings = std::move(odd.matchings);
    pair_transversal = std::move(odd.transversal);
  } else {
    // Extend the odd-(n-1) partition by one new vertex per side.
    const int m = n - 1;
    OddKnn odd = odd_knn(m);
    pair_matchings.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i) {
      const std::pair<int, int> common{i, 2 * i % m};  // M cap M_i solves 2x = x + i
      for (const auto& e : odd.matchings[static_cast<std::size_t>(i)])
        if (e != common) pair_matchings[static_cast<std::size_t>(i)].push_back(e);
      pair_matchings[static_cast<std::size_t>(i)].emplace_back(m, common.second);
      pair_matchings[static_cast<std::size_t>(i)].emplace_back(common.first, m);
    }
    pair_matchings[static_cast<std::size_t>(m)] = odd.transversal;
    pair_matchings[static_cast<std::size_t>(m)].emplace_back(m, m);
    pair_transversal = odd.second_transversal;
    pair_transversal.emplace_back(m, m);
  }

  MatchingPartition part;
  part.vertices = 2 * n;
  part.matchings.resize(pair_matchings.size());
  for (std::size_t i = 0; i < pair_matchings.size(); ++i)
    for (const auto& [x, y] : pair_matchings[i])
      part.matchings[i].emplace_back(x, n + y);
  EdgeList t;
  for (const auto& [x, y] : pair_transversal) t.emplace_back(x, n + y);
  part.transversal = std::move(t);

  validate_partition(part, n);
  return part;
}

std::vector<int> matching_to_involution(int vertices, const EdgeList& matching) {
  std::vector<int> perm(static_cast<std::size_t>(vertices));
  std::iota(perm.begin(), perm.end(), 0);
  for (const auto& [u, v] : matching) {
    require(u >= 0 && u < vertices && v >= 0 && v < vertices && u != v, ErrorCode::Precondition,
            "edge endpoint out of range");
    require(perm[static_cast<std::size_t>(u)] == u && perm[static_cast<std::size_t>(v)] == v,
            ErrorCode::Precondition, "edges are not vertex-disjoint");
    perm[static_cast<std::size_t>(u)] = v;
    perm[static_cast<std::size_t>(v)] = u;
  }
  return perm;
}

SchreierInstance schreier_unsparsifiable(int n) {
  require(n >= 3, ErrorCode::TooSmall, "the construction needs n >= 3");
  MatchingPartition base = knn_transversal_partition(n);
  const EdgeList& t = *base.transversal;
  const int points = 4 * n;

  SchreierInstance inst;
  inst.n = n;
  inst.matchings.vertices = points;

  std::vector<std::pair<int, int>> common(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const EdgeList& m = base.matchings[static_cast<std::size_t>(i)];
    int found = 0;
    for (const auto& e : m)
      if (std::find(t.begin(), t.end(), e) != t.end()) {
        common[static_cast<std::size_t>(i)] = e;
        ++found;
      }
    require(found == 1, ErrorCode::Precondition, "transversal property lost");
  }

  auto aprime = [n](int j) { return 2 * n + 2 * j; };
  auto bprime = [n](int j) { return 2 * n + 2 * j + 1; };

  for (int i = 0; i < n; ++i) {
    EdgeList edges;
    for (const auto& e : base.matchings[static_cast<std::size_t>(i)])
      if (e != common[static_cast<std::size_t>(i)]) edges.push_back(e);
    edges.emplace_back(common[static_cast<std::size_t>(i)].first, aprime(i));
    edges.emplace_back(common[static_cast<std::size_t>(i)].second, bprime(i));
    for (int j = 0; j < n; ++j)
      if (j != i) edges.emplace_back(aprime(j), bprime(j));
    inst.matchings.matchings.push_back(std::move(edges));
  }

  // Witness i: +1 exactly on the pair split off by deleting M'_i.
  for (int i = 0; i < n; ++i) {
    std::vector<int> x(static_cast<std::size_t>(points), -1);
    x[static_cast<std::size_t>(aprime(i))] = 1;
    x[static_cast<std::size_t>(bprime(i))] = 1;
    inst.witnesses.push_back(std::move(x));
  }

  std::vector<std::vector<int>> perms;
  for (const EdgeList& m : inst.matchings.matchings) {
    std::vector<int> p = matching_to_involution(points, m);
    require(static_cast<int>(m.size()) == points / 2, ErrorCode::Precondition,
            "augmented matching is not perfect");
    perms.push_back(std::move(p));
  }
  inst.action = groups::GroupAction::create(points, std::move(perms));

  // Union connectivity of the augmented instance.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(points));
  for (const EdgeList& m : inst.matchings.matchings)
    for (const auto& [u, v] : m) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
  std::vector<char> visited(static_cast<std::size_t>(points), 0);
  std::queue<int> q;
  visited[0] = 1;
  q.push(0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[static_cast<std::size_t>(u)])
      if (!visited[static_cast<std::size_t>(v)]) {
        visited[static_cast<std::size_t>(v)] = 1;
        q.push(v);
      }
  }
  for (char c : visited)
    require(c, ErrorCode::Disconnected, "augmented instance is not connected");

  require(verify_cut_certificate(inst.matchings.matchings, inst.witnesses),
          ErrorCode::NotMinimal, "cut certificate failed");
  return inst;
}

bool verify_cut_certificate(const std::vector<EdgeList>& matchings,
                            const std::vector<std::vector<int>>& witnesses) {
  require(matchings.size() == witnesses.size(), ErrorCode::DimensionMismatch,
          "one witness per matching");
  for (std::size_t i = 0; i < matchings.size(); ++i) {
    const std::vector<int>& x = witnesses[i];
    for (std::size_t j = 0; j < matchings.size(); ++j) {
      long long value = 0;
      for (const auto& [u, v] : matchings[j]) {
        require(u >= 0 && static_cast<std::size_t>(u) < x.size() && v >= 0 &&
                    static_cast<std::size_t>(v) < x.size(),
                ErrorCode::DimensionMismatch, "witness too short for the matchings");
        const long long d = x[static_cast<std::size_t>(u)] - x[static_cast<std::size_t>(v)];
        value += d * d;
      }
      if (i == j && value <= 0) return false;
      if (i != j && value != 0) return false;
    }
  }
  return true;
}

core::PsdCollection schreier_collection(const SchreierInstance& instance) {
  std::vector<linalg::SymMatrix> mats;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < instance.action.perms.size(); ++j) {
    mats.push_back(groups::schreier_gen_laplacian(instance.action, static_cast<int>(j)));
    labels.push_back("M" + std::to_string(j));
  }
  return core::PsdCollection::create(std::move(mats), std::move(labels));
}

}  // namespace psdspar::instances
