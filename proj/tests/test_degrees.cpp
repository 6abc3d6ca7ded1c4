#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <random>

#include "rgperc/degrees.hpp"
#include "rgperc/error.hpp"
#include "rgperc/zeta.hpp"
#include "support/oracles.hpp"

using namespace rgperc;

TEST_CASE("degree sequence caches totals and counts") {
  const DegreeSequence seq({1, 1, 3, 3});
  CHECK(seq.n() == 4);
  CHECK(seq.total_degree() == 8);
  CHECK(seq.edge_count() == 4);
  CHECK(seq.max_degree() == 3);
  CHECK(seq.count(1) == 2);
  CHECK(seq.count(2) == 0);
  CHECK(seq.count(3) == 2);
  CHECK(seq.count(17) == 0);
  CHECK_THROWS_AS(DegreeSequence({1, 1, 1}), InvalidArgument);
}

TEST_CASE("zeta matches the partial-sum oracle and boost") {
  for (const double s : {1.1, 1.3, 1.5, 2.0, 2.3, 3.0, 4.0, 6.5}) {
    CAPTURE(s);
    const double z = riemann_zeta(s);
    CHECK(z == doctest::Approx(testing::partial_sum_zeta(s)).epsilon(1e-10));
    CHECK(std::abs(z - boost::math::zeta(s)) < 1e-12);
  }
  CHECK(riemann_zeta(2.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-14));
  CHECK(zeta_tail(2.5, 3) == doctest::Approx(testing::partial_sum_zeta(2.5, 3)).epsilon(1e-10));
  CHECK_THROWS_AS(riemann_zeta(1.0), DivergentMoment);
  CHECK_THROWS_AS(riemann_zeta(0.5), DivergentMoment);
}

TEST_CASE("generating derivatives") {
  SUBCASE("point mass") {
    for (std::uint32_t d = 1; d <= 10; ++d) {
      const auto l = generating_derivatives(DegreeDistribution::regular(d));
      CHECK(l.first == d);
      CHECK(l.second == d * (d - 1.0));
    }
  }
  SUBCASE("two-point table") {
    const auto l = generating_derivatives(DegreeDistribution::table({{1, 0.5}, {3, 0.5}}));
    CHECK(l.first == 2.0);
    CHECK(l.second == 3.0);
  }
  SUBCASE("power law gamma = 4 against partial sums") {
    const auto l = generating_derivatives(DegreeDistribution::power_law({4.0, 2}));
    const double c = 1.0 / (testing::partial_sum_zeta(4.0) - 1.0);
    const double z3 = testing::partial_sum_zeta(3.0) - 1.0;
    const double z2 = testing::partial_sum_zeta(2.0) - 1.0;
    CHECK(l.first == doctest::Approx(c * z3).epsilon(1e-9));
    CHECK(l.second == doctest::Approx(c * z2 - c * z3).epsilon(1e-9));
  }
  SUBCASE("zeta form keeps the k = 1 term in L'(1) only") {
    const PowerLawSpec spec{4.0, 2};
    const auto exact = generating_derivatives(DegreeDistribution::power_law(spec));
    const auto zeta_form = zeta_form_derivatives(spec);
    CHECK(zeta_form.second == doctest::Approx(exact.second).epsilon(1e-12));
    CHECK(zeta_form.first - exact.first == doctest::Approx(spec.normalization()).epsilon(1e-12));
  }
  SUBCASE("divergence is a typed signal") {
    CHECK_THROWS_AS(generating_derivatives(DegreeDistribution::power_law({2.5, 2})), DivergentMoment);
    CHECK_THROWS_AS(generating_derivatives(DegreeDistribution::power_law({3.0, 2})), DivergentMoment);
    CHECK_THROWS_AS(generating_derivatives(DegreeDistribution::power_law({1.8, 2})), DivergentMoment);
    CHECK_THROWS_AS(DegreeDistribution::power_law({0.9, 2}), InvalidArgument);
  }
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(DegreeDistribution::table({{1, 0.5}, {3, 0.4}}), InvalidArgument);
  CHECK_THROWS_AS(DegreeDistribution::table({{1, -0.5}, {3, 1.5}}), InvalidArgument);
  CHECK_THROWS_AS(DegreeDistribution::table({}), InvalidArgument);
  const auto power = DegreeDistribution::power_law({3.5, 2});
  CHECK_FALSE(power.has_finite_support());
  CHECK_THROWS_AS((void)power.weights(), InvalidArgument);
  CHECK(power.weight(1) == 0.0);
  CHECK(power.weight(2) > power.weight(3));
}

TEST_CASE("q_value") {
  CHECK(q_value(DegreeDistribution::regular(3)) == 3.0);
  CHECK(q_value(DegreeDistribution::regular(2)) == 0.0);
  CHECK(q_value(DegreeSequence({1, 1, 1, 3})) == 0.0);
  CHECK(q_value(DegreeSequence({3, 3, 3, 3})) == 3.0);
  for (std::uint32_t d = 1; d <= 10; ++d) {
    const double q = q_value(DegreeDistribution::regular(d));
    CHECK(q == d * (d - 2.0));
    CHECK((q > 0) == (d >= 3));
  }
}

TEST_CASE("offspring mean") {
  CHECK(offspring_mean(DegreeDistribution::regular(4)) == 3.0);
  CHECK(offspring_mean(DegreeDistribution::regular(1)) == 0.0);
  CHECK(offspring_mean(DegreeDistribution::table({{1, 0.5}, {3, 0.5}})) == 1.5);
  CHECK_THROWS_AS(offspring_mean(DegreeDistribution::regular(0)), InvalidArgument);
}

TEST_CASE("degree cap is floor(n^(1/9)) exactly") {
  CHECK(default_degree_cap(1) == 1);
  CHECK(default_degree_cap(511) == 1);
  CHECK(default_degree_cap(512) == 2);
  CHECK(default_degree_cap(19682) == 2);
  CHECK(default_degree_cap(19683) == 3);
  CHECK(default_degree_cap(10000) == 2);
  CHECK(default_degree_cap(50000) == 3);
  CHECK(default_degree_cap(1000000000) == 10);
}

TEST_CASE("from_distribution") {
  SUBCASE("point mass") {
    const auto r = from_distribution(DegreeDistribution::regular(3), 10);
    CHECK(r.sequence == DegreeSequence(std::vector<std::uint32_t>(10, 3)));
    CHECK(r.sequence.total_degree() == 30);
    CHECK_FALSE(r.parity_repaired);
  }
  SUBCASE("exact proportions") {
    const auto r = from_distribution(DegreeDistribution::table({{1, 0.5}, {3, 0.5}}), 4);
    CHECK(r.sequence == DegreeSequence({1, 1, 3, 3}));
    CHECK(r.sequence.total_degree() == 8);
  }
  SUBCASE("largest remainder breaks ties toward smaller degrees, then parity repair") {
    const auto r = from_distribution(
        DegreeDistribution::table({{1, 1.0 / 3.0}, {2, 1.0 / 3.0}, {3, 1.0 / 3.0}}), 4);
    // quotas 4/3 each -> floors 1,1,1 and the extra vertex goes to degree 1:
    // [1,1,2,3] has odd sum 7; the degree-3 vertex drops to 2.
    CHECK(r.sequence == DegreeSequence({1, 1, 2, 2}));
    CHECK(r.parity_repaired);
    CHECK_FALSE(r.warnings.empty());
  }
  SUBCASE("odd regular degree with odd n") {
    const auto r = from_distribution(DegreeDistribution::regular(3), 5);
    CHECK(r.sequence == DegreeSequence({2, 3, 3, 3, 3}));
    CHECK(r.parity_repaired);
  }
  SUBCASE("power law capped at floor(n^(1/9))") {
    const std::size_t n = 10000;
    // 2^9 = 512 <= 10000 < 3^9 = 19683
    REQUIRE(std::pow(2.0, 9) <= n);
    REQUIRE(std::pow(3.0, 9) > n);
    const auto r = from_distribution(DegreeDistribution::power_law({3.5, 2}), n);
    REQUIRE(r.cap.has_value());
    CHECK(*r.cap == 2);
    CHECK(r.sequence == DegreeSequence(std::vector<std::uint32_t>(n, 2)));
    const double kept = PowerLawSpec{3.5, 2}.weight(2);
    CHECK(r.truncated_mass == doctest::Approx(1.0 - kept).epsilon(1e-12));
    CHECK(r.truncated_mass > 0.1);
    CHECK_FALSE(r.warnings.empty());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(from_distribution(DegreeDistribution::regular(5), 100, 4), InvalidArgument);
    CHECK_THROWS_AS(from_distribution(DegreeDistribution::regular(3), 0), InvalidArgument);
    CHECK_THROWS_AS(from_distribution(DegreeDistribution::power_law({3.5, 4}), 10000), InvalidArgument);
  }
}

TEST_CASE("property: realized sequences track the distribution") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> support_size(1, 8);
  std::uniform_int_distribution<std::uint32_t> degree(0, 12);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  std::uniform_int_distribution<std::size_t> size(1, 5000);
  for (int round = 0; round < 200; ++round) {
    std::map<std::uint32_t, double> w;
    const int k = support_size(gen);
    for (int i = 0; i < k; ++i) w[degree(gen)] = weight(gen);
    double total = 0.0;
    for (const auto& e : w) total += e.second;
    for (auto& e : w) e.second /= total;
    const auto dist = DegreeDistribution::table(w);
    const std::size_t n = size(gen);
    const auto r = from_distribution(dist, n);
    CAPTURE(round);
    CHECK(r.sequence.n() == n);
    CHECK(r.sequence.total_degree() % 2 == 0);
    std::size_t counted = 0;
    std::uint64_t degree_sum = 0;
    const auto counts = r.sequence.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counted += counts[i];
      degree_sum += i * counts[i];
    }
    CHECK(counted == n);
    CHECK(degree_sum == r.sequence.total_degree());
    const double bound = (r.parity_repaired ? 2.0 : 1.0) / static_cast<double>(n) + 1e-12;
    for (std::uint32_t i = 0; i <= 13; ++i) {
      const double empirical = static_cast<double>(r.sequence.count(i)) / static_cast<double>(n);
      CHECK(std::abs(empirical - dist.weight(i)) <= bound);
    }
    const auto l = generating_derivatives(dist);
    CHECK(q_value(dist) == l.second - l.first);
    if (l.first > 0.0) CHECK(offspring_mean(dist) * l.first == doctest::Approx(l.second).epsilon(1e-12));
  }
}
