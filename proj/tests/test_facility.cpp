#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mules/facility.hpp"
#include "oracles.hpp"

using mules::Point;
using Points = std::vector<Point>;

TEST_CASE("grid placement examples") {
  CHECK(mules::grid_placement(1, 100, 100) == Points{{50, 50}});
  CHECK(mules::grid_placement(4, 100, 100) == Points{{25, 25}, {75, 25}, {25, 75}, {75, 75}});
  CHECK(mules::grid_placement(2, 100, 100) == Points{{50, 25}, {50, 75}});
  const auto ten = mules::grid_placement(10, 100, 100);
  REQUIRE(ten.size() == 10);
  CHECK(ten[0].x == doctest::Approx(100.0 / 6));
  CHECK(ten[0].y == 12.5);
  CHECK(ten[9].x == doctest::Approx(100.0 / 6));
  CHECK(ten[9].y == 87.5);
}

TEST_CASE("farthest first examples") {
  const Points sq{{0, 0}, {10, 0}, {0, 10}, {10, 10}};
  CHECK(mules::farthest_first({sq, 2}) == Points{{0, 0}, {10, 10}});
  const Points one{{0, 0}};
  CHECK(mules::farthest_first({one, 1}) == Points{{0, 0}});
  // Second pick: (10,0) and (0,10) tie at distance 10 from both chosen; lowest index wins.
  CHECK(mules::farthest_first_indices({sq, 3}) == std::vector<std::size_t>{0, 3, 1});
}

TEST_CASE("reverse greedy examples") {
  const Points line{{0, 0}, {1, 0}, {10, 0}};
  CHECK(mules::reverse_greedy({line, 2}) == Points{{1, 0}, {10, 0}});
  CHECK(oracle::optimal_kmedian(line, 2) == 1.0);
  std::mt19937_64 gen(31);
  const auto sites = oracle::random_points(gen, 9);
  CHECK(mules::reverse_greedy({sites, 9}) == sites);
}

TEST_CASE("centroid adjust examples") {
  const Points tri{{0, 0}, {2, 0}, {1, 3}};
  CHECK(mules::centroid_adjust(Points{{0, 0}}, tri) == Points{{1, 1}});
  CHECK(mules::centroid_adjust(Points{{1, 1}}, Points{}) == Points{{1, 1}});
  CHECK(mules::centroid_adjust(Points{{0, 0}, {10, 0}}, Points{{1, 0}, {2, 0}, {9, 0}}) ==
        Points{{1.5, 0}, {9, 0}});
}

TEST_CASE("local search examples") {
  CHECK(mules::local_search(Points{{1, 0}}, Points{{1, 0}}, 10, 1.0) == Points{{1, 0}});
  CHECK(mules::local_search(Points{{0, 0}}, Points{{5, 0}}, 10, 1.0) == Points{{5, 0}});
  // Iteration cap: three sweeps only get three steps.
  CHECK(mules::local_search(Points{{0, 0}}, Points{{5, 0}}, 3, 1.0) == Points{{3, 0}});
}

TEST_CASE("objective examples") {
  std::mt19937_64 gen(32);
  const auto pts = oracle::random_points(gen, 8);
  CHECK(mules::kmedian_objective(pts, pts) == 0.0);
  CHECK(mules::kcenter_objective(pts, pts) == 0.0);
  CHECK(mules::kmedian_objective(Points{{0, 0}}, Points{{3, 4}, {0, 0}}) == 5.0);
  CHECK(mules::kmedian_objective(Points{{1, 0}, {10, 0}}, Points{{0, 0}, {1, 0}, {10, 0}}) == 1.0);
  CHECK(mules::kcenter_objective(Points{{0, 0}}, Points{{3, 4}, {1, 0}}) == 5.0);
  CHECK(mules::kcenter_objective(Points{{0, 0}, {10, 10}}, Points{{5, 5}}) == std::sqrt(50.0));
  CHECK(mules::kcenter_objective(Points{{0, 0}}, Points{}) == 0.0);
  CHECK_THROWS(mules::kmedian_objective(Points{}, pts));
  CHECK_THROWS(mules::kcenter_objective(Points{}, pts));
}

TEST_CASE("farthest first stays within twice the optimal k-center cost") {
  std::mt19937_64 gen(33);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + gen() % 12, k = 1 + gen() % std::min<std::size_t>(n, 4);
    const auto sites = oracle::random_points(gen, n);
    const auto ff = mules::farthest_first_indices({sites, k});
    CHECK(oracle::kcenter_cost(sites, ff) <= 2.0 * oracle::optimal_kcenter(sites, k));
  }
}

TEST_CASE("reverse greedy matches exhaustive replay and never beats the optimum") {
  std::mt19937_64 gen(34);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + gen() % 12, k = 1 + gen() % std::min<std::size_t>(n, 4);
    const auto sites = oracle::random_points(gen, n);
    const auto rg = mules::reverse_greedy_indices({sites, k});
    CHECK(rg == oracle::reverse_greedy(sites, k));
    CHECK(oracle::optimal_kmedian(sites, k) <= oracle::kmedian_cost(sites, rg));
  }
  // Integer lattices force exact ties that rounding may split either way.
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + gen() % 11, k = 1 + gen() % std::min<std::size_t>(n - 1, 4);
    Points sites(n);
    for (auto& p : sites) p = {static_cast<double>(gen() % 4), static_cast<double>(gen() % 4)};
    const auto outcomes = oracle::reverse_greedy_outcomes(sites, k);
    const auto rg = mules::reverse_greedy_indices({sites, k});
    CHECK(std::find(outcomes.begin(), outcomes.end(), rg) != outcomes.end());
  }
}

TEST_CASE("centroid is a 2-approximation of the 1-median") {
  std::mt19937_64 gen(35);
  for (int i = 0; i < 200; ++i) {
    const auto nodes = oracle::random_points(gen, 1 + gen() % 12);
    const Point c = mules::centroid(nodes);
    CHECK(mules::kmedian_objective(std::vector<Point>{c}, nodes) <=
          2.0 * oracle::one_median_over_nodes(nodes));
  }
}

TEST_CASE("centroid adjust descends the squared-distance objective") {
  auto sse = [](const Points& centers, const Points& nodes) {
    double s = 0.0;
    for (const auto& p : nodes) {
      double best = INFINITY;
      for (const auto& c : centers) best = std::min(best, std::pow(mules::distance(p, c), 2));
      s += best;
    }
    return s;
  };
  std::mt19937_64 gen(36);
  for (int i = 0; i < 50; ++i) {
    const auto nodes = oracle::random_points(gen, 20 + gen() % 60);
    const auto start = oracle::random_points(gen, 1 + gen() % 8);
    double prev = sse(start, nodes);
    for (std::size_t rounds = 1; rounds <= 12; ++rounds) {
      const double cur = sse(mules::centroid_adjust(start, nodes, rounds), nodes);
      CHECK(cur <= prev * (1 + 1e-12));
      prev = cur;
    }
    // A converged deployment is a fixed point.
    const auto fixed = mules::centroid_adjust(start, nodes, 1000);
    CHECK(mules::centroid_adjust(fixed, nodes, 1) == fixed);
  }
}

TEST_CASE("local search never regresses and placements are deterministic") {
  std::mt19937_64 gen(37);
  for (int i = 0; i < 50; ++i) {
    const auto nodes = oracle::random_points(gen, 10 + gen() % 50);
    const auto start = oracle::random_points(gen, 1 + gen() % 6);
    const auto out = mules::local_search(start, nodes, nodes.size(), 1.0);
    CHECK(mules::kmedian_objective(out, nodes) <= mules::kmedian_objective(start, nodes));
    CHECK(out == mules::local_search(start, nodes, nodes.size(), 1.0));

    const std::size_t k = start.size() <= nodes.size() ? start.size() : nodes.size();
    CHECK(mules::farthest_first({nodes, k}) == mules::farthest_first({nodes, k}));
    CHECK(mules::reverse_greedy({nodes, k}) == mules::reverse_greedy({nodes, k}));
    CHECK(mules::centroid_adjust(start, nodes) == mules::centroid_adjust(start, nodes));
    CHECK(mules::grid_placement(k, 100, 100) == mules::grid_placement(k, 100, 100));
  }
}
