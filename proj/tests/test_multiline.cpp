#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "pushlab/multiline.hpp"
#include "pushlab/symfun.hpp"

using namespace pushlab;

namespace {
RateVector rates(std::initializer_list<long> xs) {
  std::vector<Rational> b;
  for (long x : xs) b.emplace_back(x);
  return RateVector(std::move(b));
}

MultilineDiagram from_cols(int cols,
                           std::initializer_list<std::set<int>> bottom_up) {
  MultilineDiagram d;
  d.cols = cols;
  for (const auto& row : bottom_up) {
    std::uint64_t m = 0;
    for (int c : row) m |= 1ull << c;
    d.row_masks.push_back(m);
  }
  return d;
}

// Nine-column, four-row worked example used throughout.
MultilineDiagram worked_example() {
  return from_cols(9, {{0, 1, 3, 4, 5, 6, 7}, {0, 1, 3, 5, 8}, {5, 6, 7}, {2, 6}});
}
}  // namespace

TEST_CASE("enumerate_diagrams: counts") {
  CHECK(enumerate_diagrams(Content({1, 1, 1})).size() == 9);
  for (const auto& counts : std::vector<std::vector<std::int64_t>>{
           {1, 1, 1}, {2, 2}, {2, 1, 2}, {1, 1, 1, 1}, {3, 2, 1}, {2, 2, 1, 1}}) {
    const Content c(counts);
    CHECK(enumerate_diagrams(c).size() == c.diagram_count());
  }
}

TEST_CASE("enumerate_diagrams: s = 1 bijects with configurations") {
  const Content c({2, 2});
  const auto diagrams = enumerate_diagrams(c);
  std::set<Configuration> projected;
  for (const auto& d : diagrams) {
    REQUIRE(d.rows() == 1);
    projected.insert(project(d));
  }
  CHECK(projected.size() == c.configuration_count());
}

TEST_CASE("weight: column exponents of the worked example") {
  const auto d = worked_example();
  const RateVector beta = rates({2, 3, 5, 7, 11, 13, 17, 19, 23});
  Rational expect = Rational(2) * 2 * 3 * 3 * 5 * 7 * 7 * 11;
  expect *= Rational(13) * 13 * 13 * 17 * 17 * 17 * 19 * 19 * 23;
  CHECK(weight(d, beta) == expect);
}

TEST_CASE("weight: trivial cases") {
  const auto d = from_cols(2, {{0}});
  CHECK(weight(d, rates({7, 9})) == 7);
  const auto all_one = rates({1, 1, 1});
  for (const auto& dd : enumerate_diagrams(Content({1, 1, 1})))
    CHECK(weight(dd, all_one) == 1);
}

TEST_CASE("project: worked example bully paths") {
  CHECK(project(worked_example()) ==
        Configuration{4, 3, 0, 2, 2, 4, 1, 1, 0});
}

TEST_CASE("project: single row is its own word") {
  const auto d = from_cols(4, {{1, 3}});
  CHECK(project(d) == Configuration{0, 1, 0, 1});
}

TEST_CASE("project: fibers of the three-species example cover everything") {
  const auto diagrams = enumerate_diagrams(Content({1, 1, 1}));
  std::map<Configuration, int> mult;
  for (const auto& d : diagrams) ++mult[project(d)];
  CHECK(mult.size() == 6);
  int total = 0;
  for (const auto& [cfg, m] : mult) total += m;
  CHECK(total == 9);
}

TEST_CASE("multiline_step: two-row worked transition") {
  // top row #.. over bottom row ##.; bell enters at column 0
  const auto d = from_cols(3, {{0, 1}, {0}});
  const auto step = multiline_step_ext(d, 0);
  // bottom particle hops 0 -> 2; the bell rises at the empty top cell 2
  CHECK(step.diagram == from_cols(3, {{1, 2}, {0}}));
  CHECK(step.end_column == 2);
  CHECK(project(step.diagram) == Configuration{0, 2, 1});
}

TEST_CASE("multiline_step: s = 1 equals the PushTASEP bell") {
  for (const auto& d : enumerate_diagrams(Content({2, 2})))
    for (int j = 0; j < 4; ++j)
      CHECK(project(multiline_step(d, j)) == apply_bell(project(d), j));
}

TEST_CASE("reverse_step undoes multiline_step") {
  for (const auto& counts :
       std::vector<std::vector<std::int64_t>>{{1, 1, 1}, {2, 1, 1}, {1, 2, 1}}) {
    for (const auto& d : enumerate_diagrams(Content(counts))) {
      const int L = d.cols;
      for (int j = 0; j < L; ++j) {
        const auto fwd = multiline_step_ext(d, j);
        const auto back = reverse_step_ext(fwd.diagram, fwd.end_column);
        CHECK(back.diagram == d);
        CHECK(back.end_column == j);
      }
    }
  }
}

TEST_CASE("partition_function: explicit value and homogeneous count") {
  const Content c({1, 1, 1});
  CHECK(partition_function(c, rates({1, 2, 3})) == 66);
  CHECK(partition_function(c, rates({1, 1, 1})) ==
        Rational(static_cast<long>(c.diagram_count())));
  // s = 1: a single elementary factor
  CHECK(partition_function(Content({2, 1}), rates({1, 2, 3})) == 6);
}

TEST_CASE("multiline_stationary: weights sum to the partition function") {
  const Content c({1, 1, 1});
  const RateVector beta = rates({1, 2, 3});
  const auto table = multiline_stationary(c, beta);
  Rational total(0);
  for (const Rational& p : table.probabilities) total += p;
  CHECK(total == 1);
  // pi-hat solves pi Q = 0 for the forward multiline generator
  auto gen = build_chain(table.states, beta,
                         [](const MultilineDiagram& d, int j) {
                           return multiline_step(d, j);
                         });
  CHECK(is_stationary_for(gen, table.probabilities));
}

TEST_CASE("asep_value: diagram-weight sums match the generator solve") {
  const Content c({1, 1, 1});
  const RateVector beta = rates({1, 2, 3});
  const Rational z = partition_function(c, beta);
  const auto pi = exact_stationary(build_generator(c, beta));
  Rational total(0);
  for (std::size_t i = 0; i < pi.states.size(); ++i) {
    const Rational v = asep_value(pi.states[i], beta);
    CHECK(v / z == pi.probabilities[i]);
    total += v;
  }
  CHECK(total == z);
}

TEST_CASE("asep_value: single species is a monomial") {
  const RateVector beta = rates({2, 3, 5, 7});
  CHECK(asep_value({0, 1, 0, 1}, beta) == 21);
  CHECK(asep_value({1, 1, 0, 0}, beta) == 6);
}

TEST_CASE("diagram text round trip") {
  const auto d = worked_example();
  CHECK(diagram_from_text(to_text(d)) == d);
  CHECK(to_text(from_cols(3, {{0, 1}, {0}})) == "*..\n**.");
}
