#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "psdspar/connectivity.hpp"
#include "psdspar/groups.hpp"
#include "psdspar/util.hpp"

using namespace psdspar;
using core::PsdCollection;
using linalg::SymMatrix;

namespace {

SymMatrix edge_laplacian(int n, int u, int v, double w = 1.0) {
  SymMatrix m(n);
  m.set(u, u, w);
  m.set(v, v, w);
  m.set(u, v, -w);
  return m;
}

PsdCollection path_edges(int n) {
  std::vector<SymMatrix> mats;
  for (int i = 0; i + 1 < n; ++i) mats.push_back(edge_laplacian(n, i, i + 1));
  return PsdCollection::create(std::move(mats));
}

PsdCollection cycle_edges(int n) {
  std::vector<SymMatrix> mats;
  for (int i = 0; i + 1 < n; ++i) mats.push_back(edge_laplacian(n, i, i + 1));
  mats.push_back(edge_laplacian(n, n - 1, 0));
  return PsdCollection::create(std::move(mats));
}

PsdCollection star_edges(int n) {
  std::vector<SymMatrix> mats;
  for (int i = 1; i < n; ++i) mats.push_back(edge_laplacian(n, 0, i));
  return PsdCollection::create(std::move(mats));
}

PsdCollection cube_generators(int n) {
  auto group = groups::FiniteGroup::boolean_cube(n);
  std::vector<SymMatrix> mats;
  for (int g = 1; g < group.order(); ++g) mats.push_back(groups::gen_laplacian(group, g));
  return PsdCollection::create(std::move(mats));
}

// Test-local exhaustive N(alpha): enumerate every subset in its own order and
// take the smallest size at which no alpha-minimal subset survives. Shares
// only `dominates` with the implementation under test; the search structure
// is independent.
int brute_connectivity(const PsdCollection& collection, double alpha) {
  const int r = collection.size();
  std::vector<bool> minimal_at_size(r + 1, false);
  for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    bool any_dominated = false;
    for (int i : subset) {
      conn::DominationQuery q;
      q.alpha = alpha;
      q.index = i;
      q.subset = subset;
      if (conn::dominates(q, collection)) {
        any_dominated = true;
        break;
      }
    }
    if (!any_dominated) minimal_at_size[subset.size()] = true;
  }
  for (int k = 1; k <= r; ++k)
    if (!minimal_at_size[k]) return k;
  return r + 1;
}

PsdCollection random_rank_ones(int n, int r, std::uint64_t seed) {
  std::vector<SymMatrix> mats;
  std::uint64_t c = 0;
  for (int i = 0; i < r; ++i) {
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[j] = 2.0 * counter_uniform(seed, c++) - 1.0;
    SymMatrix m(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m.set(a, b, v[a] * v[b]);
    mats.push_back(std::move(m));
  }
  return PsdCollection::create(std::move(mats));
}

}  // namespace

TEST_SUITE_BEGIN("connectivity");

TEST_CASE("domination on the triangle") {
  auto tri = cycle_edges(3);
  conn::DominationQuery q;
  q.index = 0;
  q.subset = {0, 1, 2};
  SUBCASE("an edge is exactly half-dominated by the complementary path") {
    q.alpha = 0.5;
    CHECK(conn::dominates(q, tri));  // boundary case: difference is rank-1 PSD
    q.alpha = 1.0;
    CHECK_FALSE(conn::dominates(q, tri));
  }
  SUBCASE("a member never dominates within a singleton") {
    q.subset = {0};
    q.alpha = 0.25;
    CHECK_FALSE(conn::dominates(q, tri));
  }
  SUBCASE("the query index must belong to the subset") {
    q.subset = {1, 2};
    q.alpha = 0.5;
    CHECK_THROWS_AS(conn::dominates(q, tri), Error);
  }
}

TEST_CASE("trees are alpha-minimal at every size") {
  for (int n = 3; n <= 6; ++n) {
    auto res = conn::connectivity_parameter(path_edges(n), 1.0 / (n - 1));
    CHECK(res.value == n);  // r + 1 with r = n - 1 edges
    CHECK(res.exhaustive);
    CHECK(static_cast<int>(res.largest_minimal_subset.subset.size()) == n - 1);
  }
  auto star = conn::connectivity_parameter(star_edges(5), 1.0);
  CHECK(star.value == 5);
}

TEST_CASE("identical members dominate each other") {
  std::vector<SymMatrix> mats = {SymMatrix::from_rows(2, {2, 1, 1, 2}),
                                 SymMatrix::from_rows(2, {2, 1, 1, 2})};
  auto res = conn::connectivity_parameter(PsdCollection::create(std::move(mats)), 1.0);
  CHECK(res.value == 2);  // singletons are minimal; the pair is not
}

TEST_CASE("boolean cube generator family has threshold n + 1") {
  auto coll = cube_generators(3);
  for (double alpha : {0.1, 0.5, 1.0}) {
    auto res = conn::connectivity_parameter(coll, alpha);
    CHECK(res.value == 4);
    CHECK(res.exhaustive);
  }
}

TEST_CASE("alpha = 0 short-circuits to 1") {
  auto res = conn::connectivity_parameter(path_edges(3), 0.0);
  CHECK(res.value == 1);
}

TEST_CASE("alpha_eps closed form") {
  CHECK(conn::alpha_eps(0.0) == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
  CHECK(conn::alpha_eps(0.5) ==
        doctest::Approx((std::sqrt(7.0 / 3.0) - 1.0) / 2.0).epsilon(1e-12));
  // defining quadratic holds across the domain
  for (double eps : {0.1, 0.25, 0.75, 0.99}) {
    const double a = conn::alpha_eps(eps);
    CHECK(a * (1.0 + a) == doctest::Approx((1.0 - eps) / (1.0 + eps)).epsilon(1e-12));
    CHECK(a > 0.0);
  }
  CHECK_THROWS_AS(conn::alpha_eps(1.0), Error);
  CHECK_THROWS_AS(conn::alpha_eps(-0.1), Error);
}

TEST_CASE("threshold wrapper matches the parameter at alpha_eps") {
  auto coll = path_edges(4);
  auto via_threshold = conn::connectivity_threshold(coll, 0.5);
  auto direct = conn::connectivity_parameter(coll, conn::alpha_eps(0.5));
  CHECK(via_threshold.value == direct.value);
  CHECK(via_threshold.value == 4);
}

TEST_CASE("level search agrees with independent enumeration") {
  std::vector<PsdCollection> families;
  families.push_back(cycle_edges(4));
  families.push_back(cycle_edges(5));
  families.push_back(star_edges(4));
  families.push_back(random_rank_ones(3, 6, 51));
  families.push_back(random_rank_ones(4, 8, 52));
  for (const auto& coll : families) {
    for (double alpha : {0.25, 0.5, 1.0}) {
      auto res = conn::connectivity_parameter(coll, alpha);
      CHECK(res.value == brute_connectivity(coll, alpha));
    }
  }
}

TEST_CASE("monotonicity in alpha") {
  std::vector<PsdCollection> families;
  families.push_back(cycle_edges(5));
  families.push_back(random_rank_ones(3, 7, 61));
  families.push_back(random_rank_ones(4, 7, 62));
  const std::vector<double> grid = {0.1, 0.3, 0.6, 1.0};
  for (const auto& coll : families) {
    int prev = 0;
    for (double alpha : grid) {
      const int value = conn::connectivity_parameter(coll, alpha).value;
      CHECK(value >= prev);
      prev = value;
    }
  }
}

TEST_CASE("search limits") {
  SUBCASE("tiny query caps abort") {
    conn::SubsetSearchLimits limits;
    limits.query_cap = 3;
    CHECK_THROWS_AS(conn::connectivity_parameter(cycle_edges(5), 1.0, limits), Error);
  }
  SUBCASE("size-bounded searches return a lower bound") {
    conn::SubsetSearchLimits limits;
    limits.max_size = 2;
    auto res = conn::connectivity_parameter(path_edges(5), 1.0, limits);
    CHECK(res.value == 3);
    CHECK_FALSE(res.exhaustive);
  }
  SUBCASE("a binding size bound leaves exhaustive searches intact") {
    conn::SubsetSearchLimits limits;
    limits.max_size = 6;
    auto res = conn::connectivity_parameter(cube_generators(3), 0.5, limits);
    CHECK(res.value == 4);
    CHECK(res.exhaustive);
  }
}

TEST_CASE("witness extraction and certificate checks") {
  auto tri = cycle_edges(3);
  auto cert = conn::extract_witnesses(tri, 1.0, {0, 1, 2});
  CHECK(cert.alpha == 1.0);
  REQUIRE(cert.witnesses.size() == 3);
  CHECK(conn::certificate_holds(tri, cert));

  SUBCASE("witnesses satisfy the strict inequality directly") {
    for (const auto& [i, w] : cert.witnesses) {
      const double own = linalg::quadratic_form(tri.matrices[i], w);
      double others = 0.0;
      for (int j : cert.subset)
        if (j != i) others += linalg::quadratic_form(tri.matrices[j], w);
      CHECK(cert.alpha * own > others);
    }
  }
  SUBCASE("a corrupted witness is rejected") {
    auto broken = cert;
    broken.witnesses[0] = {1.0, 1.0, 1.0};  // kernel direction: own form vanishes
    CHECK_FALSE(conn::certificate_holds(tri, broken));
  }
  SUBCASE("extraction refuses a non-minimal subset") {
    // half domination holds inside the triangle, so alpha = 0.4 is dominated
    CHECK_THROWS_AS(conn::extract_witnesses(tri, 0.4, {0, 1, 2}), Error);
  }
}

TEST_CASE("unsparsifiability verdicts") {
  auto p4 = path_edges(4);
  auto cert = conn::extract_witnesses(p4, 1.0, {0, 1, 2});
  SUBCASE("tree certificates verify for every eps") {
    CHECK(conn::verify_unsparsifiable(p4, cert, 0.5));
    CHECK(conn::verify_unsparsifiable(p4, cert, 0.9));
  }
  SUBCASE("certificates at too-small alpha are rejected up front") {
    auto weak = cert;
    weak.alpha = 0.1;  // below alpha_eps(0.5) = 0.2638
    CHECK_THROWS_AS(conn::verify_unsparsifiable(p4, weak, 0.5), Error);
  }
}

TEST_SUITE_END();
