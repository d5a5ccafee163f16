#include <doctest.h>

#include <cmath>
#include <random>

#include "mules/metrics.hpp"

using namespace mules;

namespace {

bool same(const ObjectiveSummary& a, const ObjectiveSummary& b) {
  return a.avg_downtime == b.avg_downtime && a.max_downtime == b.max_downtime && a.avg_travel == b.avg_travel &&
         a.max_travel == b.max_travel;
}

}  // namespace

TEST_CASE("summaries") {
  const std::vector<double> d1{5}, t1{5, 0};
  CHECK(same(summarize(d1, t1), {5, 5, 2.5, 5}));
  const std::vector<double> none, zeros{0, 0};
  CHECK(same(summarize(none, zeros), {0, 0, 0, 0}));
  const std::vector<double> d2{2, 4}, t2{1, 3};
  CHECK(same(summarize(d2, t2), {3, 4, 2, 3}));

  RunResult r;
  r.downtimes = {5};
  r.travel_totals = {5, 0};
  CHECK(same(summarize(r), {5, 5, 2.5, 5}));
}

TEST_CASE("batch aggregation") {
  const std::vector<ObjectiveSummary> same3(3, ObjectiveSummary{1, 2, 3, 4});
  const auto a = aggregate(same3);
  CHECK(same(a.mean, {1, 2, 3, 4}));
  CHECK(same(a.sd, {0, 0, 0, 0}));
  CHECK(a.runs == 3);

  const std::vector<ObjectiveSummary> two{{2, 0, 0, 0}, {4, 0, 0, 0}};
  const auto b = aggregate(two);
  CHECK(b.mean.avg_downtime == 3.0);
  CHECK(b.sd.avg_downtime == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const std::vector<ObjectiveSummary> one{{7, 7, 7, 7}};
  CHECK(same(aggregate(one).sd, {0, 0, 0, 0}));
  CHECK_THROWS_AS(aggregate(std::vector<ObjectiveSummary>{}), std::invalid_argument);
}

TEST_CASE("fifty-run batch matches a direct two-pass computation") {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> u(0, 500);
  std::vector<ObjectiveSummary> batch(50);
  std::vector<double> xs;
  for (auto& s : batch) {
    s.avg_downtime = u(gen);
    xs.push_back(s.avg_downtime);
  }
  long double mean = 0;
  for (double x : xs) mean += x;
  mean /= 50;
  long double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const auto st = aggregate(batch);
  CHECK(st.mean.avg_downtime == doctest::Approx(static_cast<double>(mean)).epsilon(1e-12));
  CHECK(st.sd.avg_downtime == doctest::Approx(std::sqrt(static_cast<double>(ss / 49))).epsilon(1e-12));
}

TEST_CASE("Welch t-test against reference values") {
  const std::vector<double> a{2.1, 2.5, 2.3, 2.2}, b{2.2, 2.6, 2.4, 2.5};
  const auto t = welch_t_test(a, b);
  // Reference: scipy.stats.ttest_ind(a, b, equal_var=False)
  CHECK(t.t == doctest::Approx(-1.242118006816241).epsilon(1e-9));
  CHECK(std::abs(t.t - -1.242118006816241) < 1e-6);
  CHECK(t.dof == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(t.p == doctest::Approx(0.26053992328808867).epsilon(1e-9));

  const std::vector<double> c{1, 2, 3}, d{11, 12, 13};
  const auto far = welch_t_test(c, d);
  CHECK(far.p < 0.01);
  CHECK(far.t == doctest::Approx(-12.24744871391589).epsilon(1e-9));
  CHECK(far.p == doctest::Approx(0.00025521674944192687).epsilon(1e-7));

  const auto self = welch_t_test(a, a);
  CHECK(self.t == 0.0);
  CHECK(self.p == 1.0);

  const std::vector<double> e{1.0, 2.5, 3.1, 4.7, 0.2}, f{2.2, 2.9, 3.3, 5.1, 6.0, 7.5};
  const auto uneven = welch_t_test(e, f);
  CHECK(uneven.t == doctest::Approx(-1.9122002236405213).epsilon(1e-9));
  CHECK(uneven.p == doctest::Approx(0.08826331655301606).epsilon(1e-8));
}

TEST_CASE("Welch t-test properties") {
  std::mt19937_64 gen(62);
  std::normal_distribution<double> n(10, 3);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(2 + gen() % 30), b(2 + gen() % 30);
    for (auto& x : a) x = n(gen);
    for (auto& x : b) x = n(gen) + static_cast<double>(gen() % 5);
    const auto ab = welch_t_test(a, b);
    const auto ba = welch_t_test(b, a);
    CHECK(ab.t == -ba.t);
    CHECK(ab.p == ba.p);
    CHECK((ab.p > 0.0 && ab.p <= 1.0));
  }
  const std::vector<double> huge_a(50, 0.0);
  std::vector<double> huge_b(50, 1e6);
  huge_b[0] += 1;
  CHECK(welch_t_test(huge_a, huge_b).p > 0.0);
}

TEST_CASE("Welch t-test preconditions") {
  const std::vector<double> one{1}, two{1, 2}, flat{3, 3};
  CHECK_THROWS_AS(welch_t_test(one, two), std::invalid_argument);
  CHECK_THROWS_AS(welch_t_test(flat, flat), std::invalid_argument);
  CHECK_NOTHROW(welch_t_test(flat, two));
}
