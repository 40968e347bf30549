#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pushlab/dynamics.hpp"
#include "pushlab/montecarlo.hpp"

using namespace pushlab;

namespace {
RateVector rates(std::initializer_list<long> xs) {
  std::vector<Rational> b;
  for (long x : xs) b.emplace_back(x);
  return RateVector(std::move(b));
}

std::vector<Mark> marks(const std::string& word) {
  std::vector<Mark> out;
  for (char c : word) out.push_back(c == 'a' ? Mark::A : Mark::B);
  return out;
}

std::string word(const std::vector<Mark>& ms) {
  std::string out;
  for (Mark m : ms) out.push_back(m == Mark::A ? 'a' : 'b');
  return out;
}
}  // namespace

TEST_CASE("CounterRng: reproducible streams") {
  CounterRng a(42, 0), b(42, 0), c(42, 1), d(7, 0);
  bool same = true, diff_stream = false, diff_seed = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    same = same && (x == b.next_u64());
    diff_stream = diff_stream || (x != c.next_u64());
    diff_seed = diff_seed || (x != d.next_u64());
  }
  CHECK(same);
  CHECK(diff_stream);
  CHECK(diff_seed);
}

TEST_CASE("CounterRng: units in range, exponential positive") {
  CounterRng rng(1, 2);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.next_exponential(3.0) >= 0.0);
  }
}

TEST_CASE("simulate: deterministic for a fixed seed") {
  const Content c({1, 1, 1});
  const RateVector beta = rates({1, 2, 3});
  const auto t1 = simulate(c, beta, {0, 1, 2}, 50.0, 99);
  const auto t2 = simulate(c, beta, {0, 1, 2}, 50.0, 99);
  REQUIRE(t1.events.size() == t2.events.size());
  for (std::size_t i = 0; i < t1.events.size(); ++i) {
    CHECK(t1.events[i].time == t2.events[i].time);
    CHECK(t1.events[i].site == t2.events[i].site);
    CHECK(t1.events[i].post == t2.events[i].post);
  }
  const auto t3 = simulate(c, beta, {0, 1, 2}, 50.0, 100);
  CHECK(t1.events.size() != t3.events.size());
}

TEST_CASE("simulate: tiny horizon yields the frozen trajectory") {
  const auto t = simulate(Content({1, 1}), rates({1000000, 1000000}), {0, 1},
                          1e-9, 5);
  CHECK(t.events.empty());
  CHECK(t.initial == Configuration{0, 1});
}

TEST_CASE("simulate + empirical: two-state chain occupation fraction") {
  // pi(10) = beta_1 / (beta_1 + beta_2)
  const RateVector beta = rates({1, 3});
  const auto traj = simulate(Content({1, 1}), beta, {1, 0}, 4000.0, 2024);
  const auto emp = empirical_distribution(traj, 100.0);
  double total = 0;
  for (double p : emp.probabilities) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  const double p10 = emp.probability_of({1, 0});
  // crude 3-sigma envelope for a two-state renewal process at this horizon
  CHECK(std::abs(p10 - 0.25) < 0.05);
}

TEST_CASE("empirical_distribution: constant trajectory is a point mass") {
  Trajectory traj;
  traj.initial = {1, 0};
  traj.horizon = 10.0;
  const auto emp = empirical_distribution(traj, 0.0);
  REQUIRE(emp.states.size() == 1);
  CHECK(emp.states[0] == Configuration{1, 0});
  CHECK(emp.probabilities[0] == doctest::Approx(1.0));
}

TEST_CASE("extract_flux: single hop crosses exactly its own bond") {
  Trajectory traj;
  traj.initial = {1, 0, 0};
  traj.horizon = 1.0;
  traj.events.push_back({0.5, 0, {0, 1, 0}});
  CHECK(extract_flux(traj, 0).times == std::vector<double>{0.5});
  CHECK(extract_flux(traj, 1).times.empty());
  CHECK(extract_flux(traj, 2).times.empty());
}

TEST_CASE("extract_flux: wrapping cascade crosses the seam") {
  // bell at site 1 with (0,1,1): the particle passes site 2 and wraps to 0
  Trajectory traj;
  traj.initial = {0, 1, 1};
  traj.horizon = 1.0;
  traj.events.push_back({0.25, 1, apply_bell({0, 1, 1}, 1)});
  CHECK(extract_flux(traj, 1).times == std::vector<double>{0.25});
  CHECK(extract_flux(traj, 2).times == std::vector<double>{0.25});
  CHECK(extract_flux(traj, 0).times.empty());
}

TEST_CASE("interchange_marks: worked rewrites") {
  CHECK(word(interchange_marks(marks("baaba"))) == "baabb");
  CHECK(word(interchange_marks(marks("aaa"))) == "bbb");
  CHECK(interchange_marks(std::vector<Mark>{}).empty());
  CHECK(word(interchange_marks(marks("ab"))) == "ab");
}

TEST_CASE("interchange_marks: involution") {
  CounterRng rng(3, 0);
  for (int it = 0; it < 200; ++it) {
    std::vector<Mark> ms;
    const int n = static_cast<int>(rng.next_u64() % 12);
    for (int i = 0; i < n; ++i)
      ms.push_back(rng.next_u64() & 1 ? Mark::A : Mark::B);
    CHECK(interchange_marks(interchange_marks(ms)) == ms);
  }
}

TEST_CASE("two_station_output: edge cases") {
  CHECK(two_station_output({}, {}, {}, {0, 0}).empty());
  CHECK(two_station_output({}, {1.0}, {2.0}, {1, 1}) ==
        std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(two_station_output({}, {}, {}, {0, 1}),
                  std::invalid_argument);
}

TEST_CASE("two_station_output: invariant under the mark interchange") {
  CounterRng rng(11, 0);
  for (int it = 0; it < 300; ++it) {
    // random locally finite inputs on [0, 10]
    MarkedPointProcess bells;
    double t = 0;
    while ((t += rng.next_exponential(1.3)) < 10.0) {
      bells.times.push_back(t);
      bells.marks.push_back(rng.next_u64() & 1 ? Mark::A : Mark::B);
    }
    std::vector<double> input;
    t = 0;
    while ((t += rng.next_exponential(0.7)) < 10.0) input.push_back(t);

    const auto swapped = interchange_marks(bells);
    for (std::pair<int, int> eta : {std::pair<int, int>{0, 0}, {1, 0}, {1, 1}}) {
      auto split = [](const MarkedPointProcess& mpp) {
        std::pair<std::vector<double>, std::vector<double>> ab;
        for (std::size_t i = 0; i < mpp.times.size(); ++i)
          (mpp.marks[i] == Mark::A ? ab.first : ab.second)
              .push_back(mpp.times[i]);
        return ab;
      };
      const auto [a, b] = split(bells);
      const auto [a2, b2] = split(swapped);
      CHECK(two_station_output(input, a, b, eta) ==
            two_station_output(input, a2, b2, eta));
    }
  }
}

TEST_CASE("coupled_path_statistics: rate swap leaves watched sites alone") {
  const Content c({3, 1});
  const RateVector beta = rates({1, 2, 3, 4});
  const CoupledPathReport report = coupled_path_statistics(
      c, beta, {1, 0, 0, 0}, 2, {3, 2}, 40.0, 7, 400);
  CHECK(report.within_sigma(3.5));
  CHECK_THROWS_AS(coupled_path_statistics(c, beta, {0, 0, 0, 1}, 2, {3, 2},
                                          10.0, 7, 8),
                  std::invalid_argument);  // tail not weakly decreasing
}
