#include <cmath>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "srcs/rank.hpp"

using srcs::ranks_indicator;
using srcs::spearman_rho;

TEST_CASE("indicator ranks on hand examples") {
  CHECK(ranks_indicator({3.0, 1.0, 2.0}).ranks == std::vector<int>{3, 1, 2});
  CHECK(ranks_indicator({5.0}).ranks == std::vector<int>{1});
  // ties share the maximal count
  CHECK(ranks_indicator({1.0, 1.0, 2.0}).ranks == std::vector<int>{2, 2, 3});
  CHECK(ranks_indicator({2.0, 2.0, 2.0}).ranks == std::vector<int>{3, 3, 3});
  CHECK(ranks_indicator({-1.0, 4.0, 4.0, 0.0}).ranks ==
        std::vector<int>{1, 4, 4, 2});
}

TEST_CASE("indicator ranks match the counting definition") {
  std::mt19937_64 gen(7101);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + gen() % 40;
    const bool ties = (rep % 2) == 0;
    const auto x = oracle::random_vector(gen, n, ties);
    CHECK(ranks_indicator(x).ranks == oracle::ranks_by_count(x));
  }
}

TEST_CASE("ranks are invariant under strictly increasing maps") {
  std::mt19937_64 gen(7102);
  for (int rep = 0; rep < 20; ++rep) {
    const auto x = oracle::random_vector(gen, 30, rep % 2 == 0);
    const auto base = ranks_indicator(x).ranks;
    std::vector<double> ex(x.size()), cu(x.size()), at(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      ex[i] = std::exp(x[i]);
      cu[i] = x[i] * x[i] * x[i];
      at[i] = std::atan(x[i]);
    }
    CHECK(ranks_indicator(ex).ranks == base);
    CHECK(ranks_indicator(cu).ranks == base);
    CHECK(ranks_indicator(at).ranks == base);
  }
}

TEST_CASE("rank input validation") {
  CHECK_THROWS_AS(ranks_indicator({}), std::invalid_argument);
  CHECK_THROWS_AS(ranks_indicator({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(ranks_indicator({1.0, INFINITY}), std::invalid_argument);
}

TEST_CASE("spearman coefficient on hand examples") {
  // the closed form divides three ways, so +-1 only holds to rounding
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK_THAT(spearman_rho(x, x), Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(spearman_rho(x, {4.0, 3.0, 2.0, 1.0}),
             Catch::Matchers::WithinAbs(-1.0, 1e-12));
  // ranks (1,2,3,4) vs (2,1,4,3): sum RQ = 2+2+12+12 = 28
  CHECK_THAT(spearman_rho(x, {2.0, 1.0, 4.0, 3.0}),
             Catch::Matchers::WithinAbs(0.6, 1e-12));
  CHECK_THAT(spearman_rho({1.0, 2.0}, {5.0, 9.0}),
             Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(spearman_rho({1.0, 2.0}, {9.0, 5.0}),
             Catch::Matchers::WithinAbs(-1.0, 1e-12));
}

TEST_CASE("spearman flips sign under order reversal of y") {
  std::mt19937_64 gen(7103);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 5 + gen() % 30;
    const auto x = oracle::random_vector(gen, n);
    const auto y = oracle::random_vector(gen, n);
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -y[i];
    CHECK_THAT(spearman_rho(x, neg),
               Catch::Matchers::WithinAbs(-spearman_rho(x, y), 1e-12));
  }
}

TEST_CASE("spearman input validation") {
  CHECK_THROWS_AS(spearman_rho({1.0, 2.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(spearman_rho({1.0}, {1.0}), std::invalid_argument);
}
