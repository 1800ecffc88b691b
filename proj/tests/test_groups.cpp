#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "psdspar/connectivity.hpp"
#include "psdspar/groups.hpp"
#include "psdspar/util.hpp"

using namespace psdspar;
using groups::FiniteGroup;
using linalg::SymMatrix;

namespace {

std::vector<double> random_vec(int n, std::uint64_t seed) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 2.0 * counter_uniform(seed, i) - 1.0;
  return x;
}

// Smallest non-associative loop: latin square with two-sided identity 0 in
// which (1*1)*2 = 2 but 1*(1*2) = 4.
std::vector<int> nonassociative_loop5() {
  return {0, 1, 2, 3, 4,  //
          1, 0, 3, 4, 2,  //
          2, 4, 0, 1, 3,  //
          3, 2, 4, 0, 1,  //
          4, 3, 1, 2, 0};
}

}  // namespace

TEST_SUITE_BEGIN("groups");

TEST_CASE("cyclic group structure") {
  auto g = FiniteGroup::cyclic(6);
  CHECK(g.order() == 6);
  CHECK(g.identity() == 0);
  CHECK(g.mul(4, 5) == 3);
  CHECK(g.inverse(2) == 4);
  CHECK(g.inverse(0) == 0);
  REQUIRE(g.abelian_decomposition().has_value());
  CHECK(*g.abelian_decomposition() == std::vector<int>{6});
  CHECK_THROWS_AS(FiniteGroup::cyclic(0), Error);
}

TEST_CASE("boolean cube structure") {
  auto g = FiniteGroup::boolean_cube(3);
  CHECK(g.order() == 8);
  CHECK(g.mul(3, 5) == 6);  // xor
  for (int e = 0; e < 8; ++e) CHECK(g.inverse(e) == e);
  CHECK(*g.abelian_decomposition() == std::vector<int>{2, 2, 2});
}

TEST_CASE("direct sums encode tuples little-endian") {
  auto g = FiniteGroup::direct_sum({FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)});
  CHECK(g.order() == 6);
  CHECK(*g.abelian_decomposition() == std::vector<int>{2, 3});
  const std::vector<int> orders = {2, 3};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      auto ta = groups::decompose_index(a, orders);
      auto tb = groups::decompose_index(b, orders);
      const int expect =
          groups::compose_index({(ta[0] + tb[0]) % 2, (ta[1] + tb[1]) % 3}, orders);
      CHECK(g.mul(a, b) == expect);
    }
  SUBCASE("index helpers round-trip") {
    for (int i = 0; i < 6; ++i)
      CHECK(groups::compose_index(groups::decompose_index(i, orders), orders) == i);
  }
}

TEST_CASE("from_table validation") {
  SUBCASE("a valid table with a matching decomposition is accepted") {
    auto ds = FiniteGroup::direct_sum({FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)});
    auto copy = FiniteGroup::from_table(6, ds.table(), std::vector<int>{2, 3});
    CHECK(copy.order() == 6);
    CHECK(copy.mul(1, 1) == 0);  // (1,0) + (1,0) = (0,0)
    REQUIRE(copy.abelian_decomposition().has_value());
  }
  SUBCASE("a decomposition inconsistent with the table is rejected") {
    // the cyclic(6) table has mul(1,1) = 2, but under {2,3} the tuple sum
    // (1,0) + (1,0) is the identity
    auto z6 = FiniteGroup::cyclic(6);
    CHECK_THROWS_AS(FiniteGroup::from_table(6, z6.table(), std::vector<int>{2, 3}), Error);
  }
  SUBCASE("non-latin tables are rejected") {
    std::vector<int> t = {0, 1, 1, 0};  // row 1 repeats 1? no: make row violate
    t = {0, 1, 0, 1};
    CHECK_THROWS_AS(FiniteGroup::from_table(2, t), Error);
  }
  SUBCASE("a latin loop without associativity is rejected") {
    CHECK_THROWS_AS(FiniteGroup::from_table(5, nonassociative_loop5()), Error);
  }
  SUBCASE("an inconsistent abelian decomposition is rejected") {
    auto z4 = FiniteGroup::cyclic(4);
    CHECK_THROWS_AS(FiniteGroup::from_table(4, z4.table(), std::vector<int>{2, 2}), Error);
  }
  SUBCASE("size mismatches are rejected") {
    CHECK_THROWS_AS(FiniteGroup::from_table(3, {0, 1, 1, 0}), Error);
  }
}

TEST_CASE("right regular representation is a homomorphism") {
  auto g = FiniteGroup::cyclic(12);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const int a = static_cast<int>(mix64(t) % 12);
    const int b = static_cast<int>(mix64(t + 100) % 12);
    auto ra = groups::right_regular(g, a);
    auto rb = groups::right_regular(g, b);
    auto rab = groups::right_regular(g, g.mul(a, b));
    for (int x = 0; x < 12; ++x) CHECK(rab[x] == rb[ra[x]]);
  }
}

TEST_CASE("generator Laplacian invariants") {
  auto g = FiniteGroup::cyclic(7);
  for (int s = 0; s < 7; ++s) {
    SymMatrix l = groups::gen_laplacian(g, s);
    SymMatrix linv = groups::gen_laplacian(g, g.inverse(s));
    CHECK(linalg::is_psd(l).psd);
    CHECK(linalg::spectral_norm(l) <= 2.0 + 1e-12);
    for (int i = 0; i < 7; ++i) {
      double row = 0.0;
      for (int j = 0; j < 7; ++j) {
        row += l.at(i, j);
        CHECK(l.at(i, j) == linv.at(i, j));  // L_s equals L_{s^-1} entrywise
      }
      CHECK(row == doctest::Approx(0.0).epsilon(1e-14));
    }
  }
  SUBCASE("identity generator gives the zero matrix") {
    CHECK(groups::gen_laplacian(g, 0).max_abs() == 0.0);
  }
  SUBCASE("an involution reaches norm 2") {
    auto z2 = FiniteGroup::cyclic(2);
    SymMatrix l = groups::gen_laplacian(z2, 1);
    CHECK(l.at(0, 0) == 1.0);
    CHECK(l.at(0, 1) == -1.0);
    CHECK(linalg::spectral_norm(l) == doctest::Approx(2.0));
  }
}

TEST_CASE("quadratic forms match the materialized Laplacian") {
  auto g = FiniteGroup::direct_sum({FiniteGroup::cyclic(3), FiniteGroup::cyclic(4)});
  for (int s : {1, 5, 7, 11}) {
    SymMatrix l = groups::gen_laplacian(g, s);
    for (std::uint64_t t = 0; t < 20; ++t) {
      auto x = random_vec(12, 900 + 37 * t + s);
      CHECK(groups::gen_laplacian_qform(g, s, x) ==
            doctest::Approx(linalg::quadratic_form(l, x)).epsilon(1e-10));
      std::vector<double> y;
      groups::gen_laplacian_apply(g, s, x, y);
      for (int i = 0; i < 12; ++i) {
        double dense = 0.0;
        for (int j = 0; j < 12; ++j) dense += l.at(i, j) * x[j];
        CHECK(y[i] == doctest::Approx(dense).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("weighted Cayley Laplacian is the weighted sum") {
  auto g = FiniteGroup::cyclic(5);
  auto gens = groups::GeneratorSet::create(g, {1, 2, 3, 4},
                                           std::vector<double>{2.0, 0.5, 0.5, 2.0});
  SymMatrix total = groups::cayley_laplacian(gens);
  SymMatrix manual(5);
  for (int pos = 0; pos < gens.size(); ++pos)
    linalg::add_scaled_into(manual, groups::gen_laplacian(g, gens.elements[pos]),
                            gens.weight(pos));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(total.at(i, j) == doctest::Approx(manual.at(i, j)));
}

TEST_CASE("generator sets validate symmetry and weights") {
  auto g = FiniteGroup::cyclic(5);
  CHECK_THROWS_AS(groups::GeneratorSet::create(g, {1}), Error);        // 4 missing
  CHECK_THROWS_AS(groups::GeneratorSet::create(g, {1, 1, 4}), Error);  // duplicate
  CHECK_THROWS_AS(
      groups::GeneratorSet::create(g, {1, 4}, std::vector<double>{1.0, 2.0}),
      Error);  // weights must agree on inverse pairs
  auto ok = groups::GeneratorSet::create(g, {4, 1}, std::vector<double>{2.0, 2.0});
  CHECK(ok.elements == std::vector<int>{1, 4});  // sorted, weights dragged along
  CHECK(ok.weight(0) == 2.0);
  CHECK(ok.position_of(4) == 1);
  CHECK(ok.position_of(2) == -1);
}

TEST_CASE("abelian characters diagonalize every generator Laplacian") {
  const std::vector<int> orders = {8};
  auto g = FiniteGroup::cyclic(8);
  for (int ci = 0; ci < 8; ++ci) {
    auto chi = groups::abelian_character(orders, {ci});
    for (int s = 1; s < 8; ++s) {
      const double lambda = groups::abelian_eigenvalue(orders, {ci}, {s});
      std::vector<double> y;
      groups::gen_laplacian_apply(g, s, chi, y);
      for (int h = 0; h < 8; ++h)
        CHECK(y[h] == doctest::Approx(lambda * chi[h]).epsilon(1e-10));
    }
  }
  SUBCASE("closed-form eigenvalues") {
    CHECK(groups::abelian_eigenvalue({4}, {1}, {1}) == doctest::Approx(1.0));
    CHECK(groups::abelian_eigenvalue({4}, {2}, {1}) == doctest::Approx(2.0));
    CHECK(groups::abelian_eigenvalue({4}, {1}, {2}) == doctest::Approx(2.0));
    CHECK(groups::abelian_eigenvalue({2, 2}, {1, 1}, {1, 0}) == doctest::Approx(2.0));
    CHECK(groups::abelian_eigenvalue({2, 2}, {0, 1}, {1, 0}) == doctest::Approx(0.0));
  }
}

TEST_CASE("cosine and sine characters together span cyclic(8)") {
  const std::vector<int> orders = {8};
  std::vector<std::vector<double>> basis;
  for (int g = 0; g <= 4; ++g) basis.push_back(groups::abelian_character(orders, {g}));
  for (int g = 1; g <= 3; ++g) basis.push_back(groups::abelian_character_sin(orders, {g}));
  REQUIRE(basis.size() == 8);

  SymMatrix gram(8);
  for (int i = 0; i < 8; ++i)
    for (int j = i; j < 8; ++j)
      gram.set(i, j, std::inner_product(basis[i].begin(), basis[i].end(),
                                        basis[j].begin(), 0.0));
  auto ev = linalg::sym_eigenvalues(gram);
  CHECK(ev.front() > 1e-9);  // nonsingular Gram matrix: the 8 vectors span R^8

  SUBCASE("sine companions share the eigenvalue") {
    auto g8 = FiniteGroup::cyclic(8);
    auto sin3 = groups::abelian_character_sin(orders, {3});
    const double lambda = groups::abelian_eigenvalue(orders, {3}, {2});
    std::vector<double> y;
    groups::gen_laplacian_apply(g8, 2, sin3, y);
    for (int h = 0; h < 8; ++h)
      CHECK(y[h] == doctest::Approx(lambda * sin3[h]).epsilon(1e-10));
  }
}

TEST_CASE("unitary triangle inequality for products of generators") {
  auto g = FiniteGroup::direct_sum({FiniteGroup::cyclic(4), FiniteGroup::cyclic(4)});
  const int n = g.order();
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const int r = 1 + static_cast<int>(mix64(trial) % 4);
    std::vector<int> t(r);
    for (int i = 0; i < r; ++i)
      t[i] = static_cast<int>(mix64(trial * 8 + i) % (n - 1)) + 1;
    auto w = random_vec(n, 5000 + trial);

    int prod = g.identity();
    double sqrt_sum = 0.0;
    for (int ti : t) {
      prod = g.mul(prod, ti);
      sqrt_sum += std::sqrt(std::max(0.0, groups::gen_laplacian_qform(g, ti, w)));
    }
    // w^T L_prod w = ||w||^2 - w^T H_{R(prod)} w
    const double defect = groups::gen_laplacian_qform(g, prod, w);
    double norm2 = 0.0;
    for (double v : w) norm2 += v * v;
    CHECK(defect <= sqrt_sum * sqrt_sum + 1e-8 * std::max(1.0, norm2));
  }
}

TEST_CASE("schreier Laplacians from permutation actions") {
  SUBCASE("a single swap gives the 2x2 edge Laplacian") {
    auto action = groups::GroupAction::create(2, {{1, 0}});
    SymMatrix l = groups::schreier_gen_laplacian(action, 0);
    CHECK(l.at(0, 0) == 1.0);
    CHECK(l.at(0, 1) == -1.0);
    CHECK(l.at(1, 1) == 1.0);
  }
  SUBCASE("fixed points get zero rows") {
    auto action = groups::GroupAction::create(3, {{1, 0, 2}});
    SymMatrix l = groups::schreier_gen_laplacian(action, 0);
    CHECK(l.at(2, 2) == 0.0);
    CHECK(l.at(2, 0) == 0.0);
  }
  SUBCASE("the regular action reproduces the Cayley Laplacian") {
    auto g = FiniteGroup::cyclic(5);
    auto action =
        groups::GroupAction::create(5, {groups::right_regular(g, 2)}, &g, {2});
    SymMatrix via_action = groups::schreier_gen_laplacian(action, 0);
    SymMatrix direct = groups::gen_laplacian(g, 2);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        CHECK(via_action.at(i, j) == doctest::Approx(direct.at(i, j)));
  }
  SUBCASE("invalid permutations are rejected") {
    CHECK_THROWS_AS(groups::GroupAction::create(2, {{0, 0}}), Error);
    CHECK_THROWS_AS(groups::GroupAction::create(3, {{1, 0}}), Error);
  }
}

TEST_CASE("subgroup closure") {
  auto z12 = FiniteGroup::cyclic(12);
  auto evens = groups::subgroup_closure(z12, {2});
  int count = 0;
  for (int e = 0; e < 12; ++e)
    if (evens[e]) ++count;
  CHECK(count == 6);
  CHECK(evens[4]);
  CHECK_FALSE(evens[3]);

  auto all = groups::subgroup_closure(z12, {3, 4});
  CHECK(std::count(all.begin(), all.end(), 1) == 12);

  auto cube = FiniteGroup::boolean_cube(3);
  auto plane = groups::subgroup_closure(cube, {1, 2});
  CHECK(std::count(plane.begin(), plane.end(), 1) == 4);
}

TEST_CASE("largest minimal generating sets") {
  CHECK(groups::max_minimal_generating_set(FiniteGroup::cyclic(2)).value == 1);
  CHECK(groups::max_minimal_generating_set(FiniteGroup::cyclic(6)).value == 2);
  CHECK(groups::max_minimal_generating_set(FiniteGroup::cyclic(12)).value == 2);
  CHECK(groups::max_minimal_generating_set(FiniteGroup::boolean_cube(3)).value == 3);

  SUBCASE("the witness is generating and irredundant") {
    auto g = FiniteGroup::cyclic(6);
    auto res = groups::max_minimal_generating_set(g);
    auto closure = groups::subgroup_closure(g, res.witness);
    CHECK(std::count(closure.begin(), closure.end(), 1) == 6);
    for (std::size_t drop = 0; drop < res.witness.size(); ++drop) {
      std::vector<int> rest;
      for (std::size_t i = 0; i < res.witness.size(); ++i)
        if (i != drop) rest.push_back(res.witness[i]);
      auto sub = groups::subgroup_closure(g, rest);
      CHECK(std::count(sub.begin(), sub.end(), 1) < 6);
    }
  }
  SUBCASE("the log2 ceiling would be enforced") {
    auto res = groups::max_minimal_generating_set(FiniteGroup::boolean_cube(4));
    CHECK(res.value == 4);
    CHECK(res.value < std::log2(16.0) + 1.0);
  }
  SUBCASE("large orders are refused") {
    CHECK_THROWS_AS(groups::max_minimal_generating_set(FiniteGroup::cyclic(100)), Error);
  }
}

TEST_CASE("full generator families are dominated beyond m + 1") {
  // With every nonidentity generator Laplacian present, the connectivity
  // parameter at alpha = 1/(2 N^2) stays at or below m + 1.
  auto g = FiniteGroup::cyclic(6);
  std::vector<SymMatrix> mats;
  for (int s = 1; s < 6; ++s) mats.push_back(groups::gen_laplacian(g, s));
  auto coll = core::PsdCollection::create(std::move(mats));
  const double alpha = 1.0 / (2.0 * 36.0);
  auto res = conn::connectivity_parameter(coll, alpha);
  const int m = groups::max_minimal_generating_set(g).value;
  CHECK(res.value <= m + 1);
}

TEST_SUITE_END();
