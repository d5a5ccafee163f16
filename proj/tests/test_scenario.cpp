#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "mules/scenario.hpp"

using mules::Rng;

TEST_CASE("splitmix64 reference outputs") {
  Rng rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform draws stay in range") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const double o = rng.uniform_open();
    CHECK((o > 0.0 && o < 1.0));
    CHECK(rng.index(7) < 7);
  }
}

namespace {

void check_invariants(const mules::Scenario& s, double gap) {
  for (const auto& p : s.nodes) {
    CHECK((p.x >= 0 && p.x <= s.area_width && p.y >= 0 && p.y <= s.area_height));
  }
  for (std::size_t j = 0; j < s.failures.size(); ++j) {
    const auto& f = s.failures[j];
    CHECK(f.node_index < s.nodes.size());
    CHECK((f.start_time > 0 && f.start_time < s.horizon));
    if (j > 0) CHECK(s.failures[j - 1].start_time <= f.start_time);
    for (std::size_t i = 0; i < j; ++i)
      if (s.failures[i].node_index == f.node_index) CHECK(f.start_time - s.failures[i].start_time >= gap);
  }
  CHECK_NOTHROW(mules::validate(s));
}

}  // namespace

TEST_CASE("uniform generation") {
  mules::UniformParams p;
  p.failure_count = 0;
  CHECK(mules::generate_uniform(p).failures.empty());

  p.failure_count = 100;
  p.fix_duration = 300;
  p.seed = 9;
  const auto s = mules::generate_uniform(p);
  CHECK(s.nodes.size() == 100);
  CHECK(s.failures.size() == 100);
  CHECK(s == mules::generate_uniform(p));
  check_invariants(s, mules::refailure_gap(p));
  p.seed = 10;
  CHECK_FALSE(s == mules::generate_uniform(p));
}

TEST_CASE("nonuniform generation") {
  mules::NonuniformParams p;
  p.failure_count = 100;
  p.fix_duration = 500;
  p.seed = 3;
  const auto s = mules::generate_nonuniform(p);
  CHECK(s.failures.size() == 100);
  CHECK(s == mules::generate_nonuniform(p));
  check_invariants(s, mules::refailure_gap(p));

  // Node positions come first in both generators, so they agree.
  CHECK(s.nodes == mules::generate_uniform(p).nodes);
}

TEST_CASE("generation rejects bad parameters") {
  mules::UniformParams p;
  p.node_count = 0;
  CHECK_THROWS_AS(mules::generate_uniform(p), mules::ScenarioError);
  p = {};
  p.area_width = -1;
  CHECK_THROWS_AS(mules::generate_uniform(p), mules::ScenarioError);
  p = {};
  p.node_count = 1;
  p.failure_count = 200;  // cannot fit 200 gap-separated failures on one node
  CHECK_THROWS_AS(mules::generate_uniform(p), mules::ScenarioError);
  mules::NonuniformParams q;
  q.boost_factor = 0.5;
  CHECK_THROWS_AS(mules::generate_nonuniform(q), mules::ScenarioError);
}

TEST_CASE("node failure frequencies are uniform") {
  mules::UniformParams p;
  p.node_count = 100;
  p.failure_count = 100;
  p.horizon = 10000;
  std::vector<double> counts(p.node_count, 0.0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    p.seed = seed;
    for (const auto& f : mules::generate_uniform(p).failures) counts[f.node_index] += 1;
  }
  const double expected = 1000.0 * 100 / 100;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(p.node_count - 1));
  const double pvalue = boost::math::cdf(boost::math::complement(dist, chi2));
  MESSAGE("chi2=" << chi2 << " p=" << pvalue);
  CHECK(pvalue > 0.01);
}

TEST_CASE("weighted sampling") {
  // Two far-apart nodes, one failure on node 0 with boost 2: P(node 0) = 2/3.
  std::vector<double> w{1.0, 1.0};
  const std::vector<mules::Point> nodes{{0, 0}, {100, 0}};
  mules::boost_vicinity(w, nodes, nodes[0], 20.0, 2.0);
  CHECK(w == std::vector<double>{2.0, 1.0});
  Rng rng(77);
  int zero = 0;
  const int trials = 60000;
  for (int i = 0; i < trials; ++i) zero += mules::sample_weighted(rng, w) == 0;
  // 2/3 within five binomial standard deviations.
  const double sd = std::sqrt(trials * (2.0 / 3) * (1.0 / 3));
  CHECK(std::abs(zero - trials * 2.0 / 3) < 5 * sd);

  const std::vector<char> only_one{0, 1};
  for (int i = 0; i < 100; ++i) CHECK(mules::sample_weighted(rng, w, only_one) == 1);
  const std::vector<char> none{0, 0};
  CHECK_THROWS_AS(mules::sample_weighted(rng, w, none), mules::ScenarioError);
}

TEST_CASE("equal weights reduce to uniform index draws") {
  const std::vector<double> w(7, 3.5);
  Rng a(8), b(8);
  for (int i = 0; i < 1000; ++i) CHECK(mules::sample_weighted(a, w) == b.index(7));
}

TEST_CASE("boost factor 1 gives the uniform node-choice law") {
  mules::NonuniformParams p;
  p.node_count = 20;
  p.failure_count = 20;
  p.boost_factor = 1.0;
  std::vector<double> counts(p.node_count, 0.0);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    p.seed = seed;
    for (const auto& f : mules::generate_nonuniform(p).failures) counts[f.node_index] += 1;
  }
  const double expected = 500.0 * 20 / 20;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(19.0);
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.01);
}

TEST_CASE("scenario files round trip exactly") {
  mules::NonuniformParams p;
  p.failure_count = 40;
  p.fix_duration = 123.456;
  p.seed = 99;
  const auto s = mules::generate_nonuniform(p);
  std::stringstream io;
  mules::write_scenario(io, s);
  CHECK(mules::read_scenario(io) == s);
}

TEST_CASE("malformed scenario files are rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return mules::read_scenario(in);
  };
  CHECK_NOTHROW(parse("10 10 1 1 100 0\n1 1\n0 5 2\n"));
  CHECK_THROWS_AS(parse(""), mules::ScenarioError);
  CHECK_THROWS_AS(parse("10 10 2 0 100 0\n1 1\n"), mules::ScenarioError);         // missing node
  CHECK_THROWS_AS(parse("10 10 1 1 100 0\n1 1\n3 5 2\n"), mules::ScenarioError);  // bad node index
  CHECK_THROWS_AS(parse("10 10 1 1 100 0\n11 1\n0 5 2\n"), mules::ScenarioError); // outside area
  CHECK_THROWS_AS(parse("10 10 1 1 100 0\n1 1\n0 500 2\n"), mules::ScenarioError); // after horizon
  CHECK_THROWS_AS(parse("10 10 1 0 100 0\n1 1\nextra\n"), mules::ScenarioError);
  CHECK_THROWS_AS(parse("10 10 -1 0 100 0\n"), mules::ScenarioError);
}
