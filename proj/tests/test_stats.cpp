#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "kadcon/stats.hpp"

using namespace kadcon;

namespace {

std::vector<std::pair<SimTime, int>> at_minutes(const std::vector<int>& values,
                                                int64_t start_min = 120) {
  std::vector<std::pair<SimTime, int>> series;
  for (size_t i = 0; i < values.size(); ++i) {
    series.emplace_back(minutes(start_min + static_cast<int64_t>(10 * i)), values[i]);
  }
  return series;
}

}  // namespace

TEST_CASE("two samples: mean 3, variance 1, RV one third") {
  auto stats = churn_phase_stats(at_minutes({2, 4}), minutes(120));
  CHECK(stats.samples == 2);
  CHECK(stats.mean == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(stats.relative_variance == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(stats.rv_defined);
}

TEST_CASE("an all-zero series reports RV zero") {
  auto stats = churn_phase_stats(at_minutes({0, 0, 0, 0}), minutes(120));
  CHECK(stats.mean == 0.0);
  CHECK(stats.relative_variance == 0.0);
  CHECK(stats.rv_defined);
}

TEST_CASE("a constant series reports RV zero") {
  auto stats = churn_phase_stats(at_minutes({7, 7, 7}), minutes(120));
  CHECK(stats.mean == doctest::Approx(7.0));
  CHECK(stats.relative_variance == 0.0);
}

TEST_CASE("zero mean with spread leaves RV undefined") {
  std::vector<std::pair<SimTime, int>> series = {{minutes(120), -1}, {minutes(130), 1}};
  auto stats = churn_phase_stats(series, minutes(120));
  CHECK(stats.mean == 0.0);
  CHECK_FALSE(stats.rv_defined);
}

TEST_CASE("population variance, cross-checked by hand") {
  // Values 1,2,3,4: mean 2.5, population variance 1.25, RV 0.5.
  auto stats = churn_phase_stats(at_minutes({1, 2, 3, 4}), minutes(120));
  CHECK(stats.mean == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(stats.relative_variance == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("samples before the churn start are excluded") {
  std::vector<std::pair<SimTime, int>> series = {
      {minutes(100), 99}, {minutes(110), 99}, {minutes(120), 2}, {minutes(130), 4}};
  auto stats = churn_phase_stats(series, minutes(120));
  CHECK(stats.samples == 2);
  CHECK(stats.mean == doctest::Approx(3.0));
}

TEST_CASE("sample order does not matter") {
  std::mt19937_64 rng(8);
  std::vector<std::pair<SimTime, int>> series;
  for (int i = 0; i < 12; ++i) {
    series.emplace_back(minutes(120 + i), static_cast<int>(rng() % 10));
  }
  auto expected = churn_phase_stats(series, minutes(120));
  for (int round = 0; round < 5; ++round) {
    std::shuffle(series.begin(), series.end(), rng);
    auto got = churn_phase_stats(series, minutes(120));
    CHECK(got.mean == doctest::Approx(expected.mean).epsilon(1e-9));
    CHECK(got.relative_variance ==
          doctest::Approx(expected.relative_variance).epsilon(1e-9));
  }
}

TEST_CASE("fewer than two churn-phase samples is an error") {
  CHECK_THROWS_AS(churn_phase_stats(at_minutes({5}), minutes(120)),
                  std::invalid_argument);
  CHECK_THROWS_AS(churn_phase_stats(at_minutes({5, 6}, 0), minutes(120)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      churn_phase_stats(std::vector<std::pair<SimTime, int>>{}, minutes(120)),
      std::invalid_argument);
}

TEST_CASE("report overload reads time and kappa_min") {
  ConnectivityReport a;
  a.at = minutes(120);
  a.kappa_min = 2;
  ConnectivityReport b;
  b.at = minutes(130);
  b.kappa_min = 4;
  auto stats = churn_phase_stats(std::vector<ConnectivityReport>{a, b}, minutes(120));
  CHECK(stats.mean == doctest::Approx(3.0));
}

TEST_CASE("resilience assertion is a strict inequality") {
  ConnectivityReport report;
  report.at = minutes(180);
  report.kappa_min = 20;
  std::ostringstream out;
  CHECK(assert_resilience(report, 19, out));
  CHECK(out.str() == "t=180min kappa_min=20 r=19 tolerate=19 -> pass\n");
  CHECK_FALSE(assert_resilience(report, 20, out));

  ConnectivityReport disconnected;
  disconnected.kappa_min = 0;
  CHECK_FALSE(assert_resilience(disconnected, 0, out));
}
