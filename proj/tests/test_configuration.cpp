#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "rgperc/configuration.hpp"
#include "rgperc/error.hpp"
#include "rgperc/oracle.hpp"
#include "rgperc/rng.hpp"

using namespace rgperc;

TEST_CASE("points are laid out contiguously per vertex") {
  const auto owners = point_owners(DegreeSequence({2, 0, 1, 3}));
  CHECK(owners == std::vector<std::uint32_t>{0, 0, 2, 3, 3, 3});
}

TEST_CASE("half-edge graph validates the matching") {
  CHECK_NOTHROW(HalfEdgeGraph(DegreeSequence({1, 1}), {{0, 1}}));
  CHECK_THROWS_AS(HalfEdgeGraph(DegreeSequence({1, 1}), {}), InvalidArgument);
  CHECK_THROWS_AS(HalfEdgeGraph(DegreeSequence({2, 2}), {{0, 1}, {1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(HalfEdgeGraph(DegreeSequence({1, 1}), {{0, 5}}), InvalidArgument);
}

TEST_CASE("uniform_matching on [1,1] is the single edge") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = uniform_matching(DegreeSequence({1, 1}), seed);
    REQUIRE(g.edge_count() == 1);
    const auto e = g.edges()[0];
    CHECK(std::min(e.u, e.v) == 0);
    CHECK(std::max(e.u, e.v) == 1);
  }
}

TEST_CASE("uniform_matching on [2,2] hits each of the 3 matchings 10000 +- 500 times") {
  const DegreeSequence seq({2, 2});
  std::map<oracle::Matching, int> counts;
  for (std::uint64_t draw = 0; draw < 30000; ++draw) {
    ++counts[oracle::canonical(uniform_matching(seq, derive_seed(11, draw)).matching())];
  }
  REQUIRE(counts.size() == 3);
  for (const auto& [m, c] : counts) CHECK(std::abs(c - 10000) <= 500);
}

TEST_CASE("uniform_matching on [3,3]: shapes match the oracle enumeration") {
  const DegreeSequence seq({3, 3});
  // Oracle: classify all 15 matchings by projected shape.
  int triple = 0;
  int loops = 0;
  for (const auto& m : oracle::enumerate_matchings(seq)) {
    const auto p = project(HalfEdgeGraph(seq, m));
    if (p.loop_count == 0) {
      ++triple;
    } else {
      ++loops;
    }
  }
  CHECK(triple == 6);
  CHECK(loops == 9);
  const double expected_triple = triple / 15.0;

  const int draws = 60000;
  int sampled_triple = 0;
  for (int d = 0; d < draws; ++d) {
    const auto p = project(uniform_matching(seq, derive_seed(5, d)));
    if (p.loop_count == 0) {
      REQUIRE(p.edges.size() == 1);
      CHECK(p.edges[0].multiplicity == 3);
      ++sampled_triple;
    } else {
      CHECK(p.loop_count == 2);
      CHECK(p.edges.size() == 3);
    }
  }
  const double sd = std::sqrt(expected_triple * (1 - expected_triple) / draws);
  CHECK(std::abs(sampled_triple / double(draws) - expected_triple) < 5 * sd);
}

TEST_CASE("uniform_matching is deterministic in the seed") {
  const DegreeSequence seq(std::vector<std::uint32_t>(1000, 3));
  const auto a = uniform_matching(seq, 42);
  const auto b = uniform_matching(seq, 42);
  const auto c = uniform_matching(seq, 43);
  CHECK(std::equal(a.matching().begin(), a.matching().end(), b.matching().begin()));
  CHECK_FALSE(std::equal(a.matching().begin(), a.matching().end(), c.matching().begin()));
}

TEST_CASE("projection") {
  SUBCASE("single vertex of degree 2 is one loop") {
    const auto p = project(HalfEdgeGraph(DegreeSequence({2}), {{0, 1}}));
    CHECK(p.has_loop);
    CHECK(p.loop_count == 1);
    REQUIRE(p.edges.size() == 1);
    CHECK(p.edges[0].u == 0);
    CHECK(p.edges[0].v == 0);
  }
  SUBCASE("two disjoint edges") {
    const auto p = project(HalfEdgeGraph(DegreeSequence({1, 1, 1, 1}), {{0, 1}, {2, 3}}));
    CHECK_FALSE(p.has_loop);
    CHECK_FALSE(p.has_multi_edge);
    CHECK(p.edges.size() == 2);
  }
  SUBCASE("double edge") {
    const HalfEdgeGraph g(DegreeSequence({2, 2}), {{0, 2}, {1, 3}});
    const auto p = project(g);
    CHECK(p.has_multi_edge);
    REQUIRE(p.edges.size() == 1);
    CHECK(p.edges[0].multiplicity == 2);
    CHECK(simplicity(g).has_multi_edge);
    CHECK_FALSE(is_simple(g));
  }
  SUBCASE("projection preserves degrees, loops counted twice") {
    const DegreeSequence seq({4, 3, 2, 1, 2});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto p = project(uniform_matching(seq, seed));
      std::vector<std::uint32_t> degree(seq.n(), 0);
      for (const auto& e : p.edges) {
        degree[e.u] += e.multiplicity;
        degree[e.v] += e.multiplicity;
      }
      CHECK(std::equal(degree.begin(), degree.end(), seq.degrees().begin()));
    }
  }
}

TEST_CASE("simplicity report") {
  SUBCASE("3-regular lambda = 2") {
    const DegreeSequence seq(std::vector<std::uint32_t>(100, 3));
    // (1/M) * n * C(3,2) with M = 3n/2
    CHECK(simplicity_lambda(seq) == doctest::Approx(2.0));
    CHECK(predicted_simple_probability(seq) == doctest::Approx(std::exp(-2.0)));
    CHECK(predicted_simple_probability(seq) == doctest::Approx(0.1353).epsilon(1e-3));
  }
  SUBCASE("[1,1]") {
    const auto report = simplicity(uniform_matching(DegreeSequence({1, 1}), 3));
    CHECK(report.lambda == 0.0);
    CHECK(report.predicted_simple_prob == 1.0);
    CHECK(report.simple());
  }
}

TEST_CASE("uniform_simple_graph") {
  SUBCASE("[1,1] succeeds on the first attempt") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(uniform_simple_graph(DegreeSequence({1, 1}), seed).attempts == 1);
    }
  }
  SUBCASE("a single degree-4 vertex has no simple realization") {
    try {
      (void)uniform_simple_graph(DegreeSequence({4}), 1, 25);
      FAIL("expected GenerationFailed");
    } catch (const GenerationFailed& e) {
      CHECK(e.attempts() == 25);
      CHECK(e.predicted_simple_probability() > 0.0);
    }
  }
  SUBCASE("3-regular n = 1000: attempts are geometric with mean about 1/e^-2") {
    const DegreeSequence seq(std::vector<std::uint32_t>(1000, 3));
    const int draws = 400;
    double total = 0.0;
    for (int d = 0; d < draws; ++d) {
      const auto draw = uniform_simple_graph(seq, derive_seed(99, d), 200);
      CHECK(is_simple(draw.graph));
      total += static_cast<double>(draw.attempts);
    }
    const double mean = total / draws;
    const double expected = std::exp(2.0);
    // sd of a geometric(q) attempt count is sqrt(1-q)/q, ~6.9 here
    CHECK(std::abs(mean - expected) < 4.0 * 6.9 / std::sqrt(draws));
  }
}

TEST_CASE("edge list dump") {
  const HalfEdgeGraph g(DegreeSequence({2, 1, 1, 2}), {{0, 1}, {2, 4}, {3, 5}});
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(out.str() == "# n=4 m=3\n0 0\n1 3\n2 3\n");
}
