#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "psdspar/groups.hpp"
#include "psdspar/instances.hpp"
#include "psdspar/io.hpp"
#include "psdspar/psd_core.hpp"

using namespace psdspar;

namespace {

// Fresh path under the system temp dir; removed when the guard dies.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path((std::filesystem::temp_directory_path() /
              ("psdspar_io_" + name)).string()) {
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string fixture(const std::string& name) {
  return std::string(PSDSPAR_FIXTURE_DIR) + "/" + name;
}

bool message_contains(const Error& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("collections survive a write/read cycle exactly") {
  auto g = instances::Graph::create(3, {{0, 1, 1.0 / 3.0}, {1, 2, 0.1}});
  auto coll = instances::graph_edge_collection(g);
  TempFile f("roundtrip.psdc");
  io::write_psdc(coll, f.path);
  auto back = io::read_psdc(f.path);
  REQUIRE(back.size() == coll.size());
  REQUIRE(back.dim == coll.dim);
  for (int i = 0; i < coll.size(); ++i)
    for (int a = 0; a < coll.dim; ++a)
      for (int b = 0; b < coll.dim; ++b)
        CHECK(back.matrices[static_cast<std::size_t>(i)].at(a, b) ==
              coll.matrices[static_cast<std::size_t>(i)].at(a, b));
  CHECK_FALSE(std::filesystem::exists(f.path + ".tmp"));
}

TEST_CASE("collection files are validated on read") {
  TempFile f("bad.psdc");
  SUBCASE("missing file") {
    CHECK_THROWS_AS(io::read_psdc(f.path), Error);
    try {
      io::read_psdc(f.path);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(message_contains(e, "cannot open"));
    }
  }
  SUBCASE("wrong header names the line") {
    io::write_text_atomic(f.path, "PSDX v1\ndim 2\ncount 1\n");
    try {
      io::read_psdc(f.path);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(message_contains(e, ":1:"));
    }
  }
  SUBCASE("malformed numbers name the offending line") {
    io::write_text_atomic(f.path,
                          "PSDC v1\ndim 2\ncount 1\nmatrix 0\n1 0\n0 x\n");
    try {
      io::read_psdc(f.path);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(message_contains(e, ":6:"));
    }
  }
  SUBCASE("short rows are rejected") {
    io::write_text_atomic(f.path, "PSDC v1\ndim 2\ncount 1\nmatrix 0\n1 0\n0\n");
    CHECK_THROWS_AS(io::read_psdc(f.path), Error);
  }
  SUBCASE("trailing content is rejected") {
    io::write_text_atomic(f.path,
                          "PSDC v1\ndim 1\ncount 1\nmatrix 0\n1\nextra\n");
    CHECK_THROWS_AS(io::read_psdc(f.path), Error);
  }
  SUBCASE("indefinite matrices fail the collection check") {
    io::write_text_atomic(f.path, "PSDC v1\ndim 2\ncount 1\nmatrix 0\n0 1\n1 0\n");
    CHECK_THROWS_AS(io::read_psdc(f.path), Error);
  }
  SUBCASE("comments and blank lines are ignored") {
    io::write_text_atomic(f.path,
                          "# banner\nPSDC v1\n\ndim 1 # one\ncount 1\nmatrix 0\n2.5\n");
    auto coll = io::read_psdc(f.path);
    CHECK(coll.matrices[0].at(0, 0) == 2.5);
  }
}

TEST_CASE("weight files") {
  TempFile f("w.weights");
  SUBCASE("round trip drops explicit zeros") {
    core::WeightVector w;
    w.size = 7;
    w.weights = {{0, 1.5}, {3, 1.0 / 3.0}, {6, 2e-308}};
    io::write_weights(w, f.path);
    auto back = io::read_weights(f.path);
    CHECK(back.size == 7);
    REQUIRE(back.weights.size() == 3);
    CHECK(back.weights.at(0) == 1.5);
    CHECK(back.weights.at(3) == 1.0 / 3.0);
    CHECK(back.weights.at(6) == 2e-308);
  }
  SUBCASE("zero entries in the file are dropped on read") {
    io::write_text_atomic(f.path, "WEIGHTS v1\ncount 4\n1 0\n2 3.5\n");
    auto back = io::read_weights(f.path);
    CHECK(back.weights.size() == 1);
    CHECK(back.weights.at(2) == 3.5);
  }
  SUBCASE("indices must ascend strictly and stay in range") {
    io::write_text_atomic(f.path, "WEIGHTS v1\ncount 4\n2 1\n2 1\n");
    CHECK_THROWS_AS(io::read_weights(f.path), Error);
    io::write_text_atomic(f.path, "WEIGHTS v1\ncount 4\n4 1\n");
    CHECK_THROWS_AS(io::read_weights(f.path), Error);
    io::write_text_atomic(f.path, "WEIGHTS v1\ncount 4\n3 1\n2 1\n");
    CHECK_THROWS_AS(io::read_weights(f.path), Error);
  }
  SUBCASE("negative and non-finite weights are rejected") {
    io::write_text_atomic(f.path, "WEIGHTS v1\ncount 4\n1 -2\n");
    CHECK_THROWS_AS(io::read_weights(f.path), Error);
    io::write_text_atomic(f.path, "WEIGHTS v1\ncount 4\n1 nan\n");
    CHECK_THROWS_AS(io::read_weights(f.path), Error);
  }
}

TEST_CASE("group files") {
  TempFile f("g.group");
  SUBCASE("round trip keeps the declared decomposition") {
    auto z6 = groups::FiniteGroup::direct_sum(
        {groups::FiniteGroup::cyclic(2), groups::FiniteGroup::cyclic(3)});
    io::write_group(z6, f.path);
    auto back = io::read_group(f.path);
    CHECK(back.order() == 6);
    REQUIRE(back.abelian_decomposition().has_value());
    CHECK(*back.abelian_decomposition() == std::vector<int>{2, 3});
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) CHECK(back.mul(a, b) == z6.mul(a, b));
  }
  SUBCASE("tables without a decomposition stay plain") {
    auto d16 = io::read_group(fixture("dihedral16.group"));
    CHECK(d16.order() == 16);
    CHECK(d16.identity() == 0);
    CHECK_FALSE(d16.abelian_decomposition().has_value());
    // r * r^-1 = e for the rotation part, s^2 = e for the reflection part
    CHECK(d16.mul(1, 7) == 0);
    CHECK(d16.mul(8, 8) == 0);
    CHECK(d16.inverse(9) == 9);
    TempFile copy("d16copy.group");
    io::write_group(d16, copy.path);
    auto back = io::read_group(copy.path);
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b) CHECK(back.mul(a, b) == d16.mul(a, b));
  }
  SUBCASE("declared identity must match the table") {
    io::write_text_atomic(f.path, "GROUP v1\norder 2\nidentity 1\ntable\n0 1\n1 0\n");
    CHECK_THROWS_AS(io::read_group(f.path), Error);
    try {
      io::read_group(f.path);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidTable);
    }
  }
  SUBCASE("table entries must be in range") {
    io::write_text_atomic(f.path, "GROUP v1\norder 2\nidentity 0\ntable\n0 1\n1 2\n");
    CHECK_THROWS_AS(io::read_group(f.path), Error);
  }
  SUBCASE("a declared decomposition is checked against the table") {
    io::write_text_atomic(f.path,
                          "GROUP v1\norder 2\nidentity 0\nabelian 3\ntable\n0 1\n1 0\n");
    CHECK_THROWS_AS(io::read_group(f.path), Error);
  }
}

TEST_CASE("generator files") {
  auto z8 = groups::FiniteGroup::cyclic(8);
  TempFile f("g.gens");
  SUBCASE("round trip with weights") {
    auto gens = groups::GeneratorSet::create(z8, {1, 2, 6, 7},
                                             std::vector<double>{0.5, 2.0, 2.0, 0.5});
    io::write_gens(gens, f.path);
    auto back = io::read_gens(f.path, z8);
    CHECK(back.elements == gens.elements);
    REQUIRE(back.weights.has_value());
    CHECK(*back.weights == *gens.weights);
  }
  SUBCASE("symmetry is enforced through the group") {
    io::write_text_atomic(f.path, "GENS v1\n1\n");
    CHECK_THROWS_AS(io::read_gens(f.path, groups::FiniteGroup::cyclic(5)), Error);
  }
  SUBCASE("weights must parallel the elements") {
    io::write_text_atomic(f.path, "GENS v1\n1 7\nweights 0.5\n");
    CHECK_THROWS_AS(io::read_gens(f.path, z8), Error);
  }
  SUBCASE("unknown trailing line") {
    io::write_text_atomic(f.path, "GENS v1\n1 7\nextras 1\n");
    CHECK_THROWS_AS(io::read_gens(f.path, z8), Error);
  }
  SUBCASE("out-of-range element") {
    io::write_text_atomic(f.path, "GENS v1\n1 9\n");
    CHECK_THROWS_AS(io::read_gens(f.path, z8), Error);
  }
}

TEST_CASE("graph files") {
  TempFile f("g.graph");
  SUBCASE("edges default to unit weight") {
    io::write_text_atomic(f.path, "GRAPH v1\nvertices 3\nedges 2\n0 1\n1 2 0.25\n");
    auto g = io::read_graph(f.path);
    CHECK(g.edges[0].w == 1.0);
    CHECK(g.edges[1].w == 0.25);
  }
  SUBCASE("round trip") {
    auto g = instances::Graph::create(4, {{0, 1, 1.0}, {2, 3, 0.125}});
    io::write_graph(g, f.path);
    auto back = io::read_graph(f.path);
    REQUIRE(back.edges.size() == 2);
    CHECK(back.n == 4);
    CHECK(back.edges[1].u == 2);
    CHECK(back.edges[1].v == 3);
    CHECK(back.edges[1].w == 0.125);
  }
  SUBCASE("self-loops are rejected at parse time") {
    io::write_text_atomic(f.path, "GRAPH v1\nvertices 3\nedges 1\n1 1\n");
    CHECK_THROWS_AS(io::read_graph(f.path), Error);
  }
  SUBCASE("endpoint range and trailing tokens") {
    io::write_text_atomic(f.path, "GRAPH v1\nvertices 3\nedges 1\n0 3\n");
    CHECK_THROWS_AS(io::read_graph(f.path), Error);
    io::write_text_atomic(f.path, "GRAPH v1\nvertices 3\nedges 1\n0 1 1.0 9\n");
    CHECK_THROWS_AS(io::read_graph(f.path), Error);
  }
}

TEST_CASE("action files") {
  TempFile f("a.action");
  SUBCASE("round trip through a matching instance") {
    auto inst = instances::schreier_unsparsifiable(3);
    io::write_action(inst.action, f.path);
    auto back = io::read_action(f.path);
    CHECK(back.points == inst.action.points);
    CHECK(back.perms == inst.action.perms);
  }
  SUBCASE("images must be in range and form permutations") {
    io::write_text_atomic(f.path, "ACTION v1\npoints 2\ngens 1\n0 2\n");
    CHECK_THROWS_AS(io::read_action(f.path), Error);
    io::write_text_atomic(f.path, "ACTION v1\npoints 2\ngens 1\n0 0\n");
    CHECK_THROWS_AS(io::read_action(f.path), Error);
  }
}

TEST_SUITE_END();
