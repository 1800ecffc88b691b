#include <cmath>
#include <vector>

#include "doctest.h"
#include "psdspar/linalg.hpp"
#include "psdspar/util.hpp"

using namespace psdspar;
using linalg::Matrix;
using linalg::SymMatrix;

namespace {

SymMatrix from(int n, std::vector<double> rows) { return SymMatrix::from_rows(n, rows); }

// Deterministic pseudo-random symmetric matrix with entries in [-1, 1].
SymMatrix random_sym(int n, std::uint64_t seed) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = 2.0 * counter_uniform(seed, static_cast<std::uint64_t>(i) * n + j) - 1.0;
      m.set(i, j, v);
    }
  return m;
}

std::vector<double> random_vec(int n, std::uint64_t seed) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 2.0 * counter_uniform(seed, i) - 1.0;
  return x;
}

// Path Laplacian on 3 vertices: eigenvalues {0, 1, 3}.
SymMatrix path3() { return from(3, {1, -1, 0, -1, 2, -1, 0, -1, 1}); }

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("symmetric matrix construction") {
  SUBCASE("from_rows averages an asymmetric input") {
    SymMatrix m = from(2, {1, 3, 1, 2});
    CHECK(m.at(0, 1) == doctest::Approx(2.0));
    CHECK(m.at(1, 0) == doctest::Approx(2.0));
  }
  SUBCASE("mutators keep both triangles in sync") {
    SymMatrix m(3);
    m.set(0, 2, 5.0);
    m.add(2, 0, 1.0);
    CHECK(m.at(0, 2) == 6.0);
    CHECK(m.at(2, 0) == 6.0);
  }
  SUBCASE("non-finite entries are rejected") {
    CHECK_THROWS_AS(from(2, {1, 0, 0, std::nan("")}), Error);
  }
  SUBCASE("wrong payload size is rejected") { CHECK_THROWS_AS(from(2, {1, 0, 0}), Error); }
}

TEST_CASE("arithmetic helpers against hand values") {
  SymMatrix a = from(2, {2, 1, 1, 2});
  SymMatrix b = from(2, {1, 0, 0, 1});
  CHECK(linalg::add(a, b).at(0, 0) == 3.0);
  CHECK(linalg::subtract(a, b).at(0, 1) == 1.0);
  CHECK(linalg::scale(a, 0.5).at(1, 1) == 1.0);

  SymMatrix acc(2);
  linalg::add_scaled_into(acc, a, 2.0);
  linalg::add_scaled_into(acc, b, -1.0);
  CHECK(acc.at(0, 0) == 3.0);
  CHECK(acc.at(0, 1) == 2.0);

  std::vector<double> x = {1.0, -1.0};
  // x^T a x = 2 - 1 - 1 + 2 = 2
  CHECK(linalg::quadratic_form(a, x) == doctest::Approx(2.0));

  // sandwich(b, a) with b = diag(1, 1) is a itself
  SymMatrix s = linalg::sandwich(b, a);
  CHECK(s.at(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("jacobi eigensolver on worked examples") {
  SUBCASE("2x2 exchange-coupled pair") {
    auto eig = linalg::sym_eig(from(2, {2, 1, 1, 2}));
    REQUIRE(eig.eigenvalues.size() == 2);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(3.0));
  }
  SUBCASE("rank-1 edge Laplacian has spectrum {0, 2}") {
    auto ev = linalg::sym_eigenvalues(from(2, {1, -1, -1, 1}));
    CHECK(ev[0] == doctest::Approx(0.0));
    CHECK(ev[1] == doctest::Approx(2.0));
  }
  SUBCASE("path Laplacian has spectrum {0, 1, 3}") {
    auto ev = linalg::sym_eigenvalues(path3());
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0));
    CHECK(ev[2] == doctest::Approx(3.0));
  }
  SUBCASE("diagonal input is returned sorted") {
    auto ev = linalg::sym_eigenvalues(from(3, {5, 0, 0, 0, -1, 0, 0, 0, 2}));
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(2.0));
    CHECK(ev[2] == doctest::Approx(5.0));
  }
}

TEST_CASE("jacobi eigenvectors reconstruct the input") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    for (int n : {2, 5, 9}) {
      SymMatrix m = random_sym(n, seed * 100 + n);
      auto eig = linalg::sym_eig(m);

      // ascending order
      for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k)
        CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);

      // columns orthonormal: Q^T Q = I
      Matrix gram = linalg::transpose_matmul(eig.eigenvectors, eig.eigenvectors);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(gram.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));

      // M v_k = lambda_k v_k
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          double mv = 0.0;
          for (int j = 0; j < n; ++j) mv += m.at(i, j) * eig.eigenvectors.at(j, k);
          CHECK(mv == doctest::Approx(eig.eigenvalues[k] * eig.eigenvectors.at(i, k))
                          .epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("psd check agrees with a random quadratic-form oracle") {
  SUBCASE("known classifications") {
    CHECK(linalg::is_psd(path3()).psd);
    CHECK(linalg::is_psd(from(2, {1, -1, -1, 1})).psd);
    CHECK_FALSE(linalg::is_psd(from(2, {1, 0, 0, -1})).psd);
    CHECK_FALSE(linalg::is_psd(from(2, {0, 1, 1, 0})).psd);
  }
  SUBCASE("random vectors never contradict a PSD verdict") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
      SymMatrix g = random_sym(5, seed);
      // Gram-style PSD matrix g^2 (congruence of the identity by g)
      SymMatrix m = linalg::sandwich(g, SymMatrix::identity(5));
      REQUIRE(linalg::is_psd(m).psd);
      const double scale = std::max(1.0, linalg::spectral_norm(m));
      for (int t = 0; t < 1000; ++t) {
        std::vector<double> x = random_vec(5, seed * 10000 + t);
        CHECK(linalg::quadratic_form(m, x) >= -1e-9 * scale);
      }
    }
  }
}

TEST_CASE("spectral norm") {
  CHECK(linalg::spectral_norm(from(2, {0, 1, 1, 0})) == doctest::Approx(1.0));
  CHECK(linalg::spectral_norm(linalg::scale(SymMatrix::identity(4), -2.5)) ==
        doctest::Approx(2.5));
  CHECK(linalg::spectral_norm(path3()) == doctest::Approx(3.0));
}

TEST_CASE("range restriction and whitening on a singular sum") {
  std::vector<SymMatrix> edges = {from(3, {1, -1, 0, -1, 1, 0, 0, 0, 0}),
                                  from(3, {0, 0, 0, 0, 1, -1, 0, -1, 1})};
  SymMatrix sum = linalg::add(edges[0], edges[1]);

  auto [restriction, restricted] = linalg::restrict_to_range(sum, edges);
  CHECK(restriction.restricted_dim == 2);  // all-ones kernel discarded
  REQUIRE(restricted.size() == 2);

  SymMatrix inv_sqrt = linalg::inv_sqrt_on_range(sum, restriction);
  SymMatrix sum_restricted(2);
  linalg::add_scaled_into(sum_restricted, restricted[0], 1.0);
  linalg::add_scaled_into(sum_restricted, restricted[1], 1.0);
  SymMatrix white = linalg::sandwich(inv_sqrt, sum_restricted);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(white.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9));

  SUBCASE("zero sum is rejected") {
    std::vector<SymMatrix> zero = {SymMatrix(2)};
    CHECK_THROWS_AS(linalg::restrict_to_range(SymMatrix(2), zero), Error);
  }
  SUBCASE("sum mismatch is rejected") {
    CHECK_THROWS_AS(linalg::restrict_to_range(linalg::scale(sum, 2.0), edges), Error);
  }
}

TEST_CASE("two-sided sandwich check") {
  SymMatrix a = path3();
  SUBCASE("a collection approximates itself with margin eps") {
    auto res = linalg::check_eps_approx(a, a, 0.5);
    CHECK(res.ok);
    CHECK(res.margin == doctest::Approx(0.5).epsilon(1e-5));
  }
  SUBCASE("doubling fails at eps = 0.5 with margin about -0.5") {
    auto res = linalg::check_eps_approx(linalg::scale(a, 2.0), a, 0.5);
    CHECK_FALSE(res.ok);
    CHECK(res.margin == doctest::Approx(-0.5).epsilon(1e-5));
  }
  SUBCASE("a 1.4x rescaling passes at eps = 0.5 with margin about 0.1") {
    auto res = linalg::check_eps_approx(linalg::scale(a, 1.4), a, 0.5);
    CHECK(res.ok);
    CHECK(res.margin == doctest::Approx(0.1).epsilon(1e-4));
  }
  SUBCASE("mass outside range(A) is a range violation") {
    // a has the all-ones kernel; the identity leaks onto it
    CHECK_THROWS_AS(linalg::check_eps_approx(SymMatrix::identity(3), a, 0.5), Error);
  }
  SUBCASE("eps outside [0, 1] is rejected") {
    CHECK_THROWS_AS(linalg::check_eps_approx(a, a, -0.1), Error);
    CHECK_THROWS_AS(linalg::check_eps_approx(a, a, 1.5), Error);
  }
}

TEST_SUITE_END();
