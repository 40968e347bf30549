#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "pushlab/dynamics.hpp"

using namespace pushlab;

namespace {
RateVector rates(std::initializer_list<long> xs) {
  std::vector<Rational> b;
  for (long x : xs) b.emplace_back(x);
  return RateVector(std::move(b));
}

// Time reversal of `gen` with respect to pi: r*(u,v) = pi(v) r(v,u) / pi(u).
GeneratorMatrix<Configuration> reverse_of(
    const GeneratorMatrix<Configuration>& gen,
    const std::vector<Rational>& pi) {
  GeneratorMatrix<Configuration> rev;
  rev.states = gen.states;
  const int n = static_cast<int>(gen.states.size());
  rev.rows.resize(n);
  rev.exit_rate.assign(n, Rational(0));
  for (int v = 0; v < n; ++v)
    for (const auto& [u, r] : gen.rows[v]) {
      const Rational rr = pi[v] * r / pi[u];
      rev.rows[u].emplace_back(v, rr);
      rev.exit_rate[u] += rr;
    }
  return rev;
}
}  // namespace

TEST_CASE("apply_bell: displacement cascades") {
  // sites quoted 1-based in the comments, passed 0-based
  const Configuration eta{2, 0, 1, 4, 2, 0, 3, 1};
  CHECK(apply_bell(eta, 3) == Configuration{2, 0, 1, 0, 4, 2, 3, 1});  // site 4
  CHECK(apply_bell(eta, 6) == Configuration{2, 1, 1, 4, 2, 0, 0, 3});  // site 7
  CHECK(apply_bell(eta, 1) == eta);  // site 2 is vacant: no-op
}

TEST_CASE("apply_bell: preserves content and wraps the ring") {
  const Configuration eta{0, 1, 2};
  const Configuration out = apply_bell(eta, 2);  // species 2 wraps to site 0
  CHECK(out == Configuration{2, 1, 0});
  CHECK(Content::of_configuration(out) == Content::of_configuration(eta));
}

TEST_CASE("build_generator: two-state single-species chain") {
  const auto gen = build_generator(Content({1, 1}), rates({3, 5}));
  REQUIRE(gen.states.size() == 2);
  CHECK(gen.states[0] == Configuration{0, 1});
  CHECK(gen.states[1] == Configuration{1, 0});
  // 01 -> 10 at 1/beta_2, 10 -> 01 at 1/beta_1
  REQUIRE(gen.rows[0].size() == 1);
  CHECK(gen.rows[0][0] == std::pair<int, Rational>{1, Rational(1, 5)});
  REQUIRE(gen.rows[1].size() == 1);
  CHECK(gen.rows[1][0] == std::pair<int, Rational>{0, Rational(1, 3)});
  CHECK(gen.exit_rate[0] == Rational(1, 5));
  CHECK(gen.exit_rate[1] == Rational(1, 3));
}

TEST_CASE("build_generator: three-species ring has out-degree 2 everywhere") {
  const auto gen = build_generator(Content({1, 1, 1}), rates({1, 2, 3}));
  REQUIRE(gen.states.size() == 6);
  for (const auto& row : gen.rows) CHECK(row.size() == 2);
}

TEST_CASE("exact_stationary: single-species closed values") {
  const auto gen = build_generator(Content({2, 1}), rates({1, 2, 3}));
  const auto pi = exact_stationary(gen);
  // pi(eta) = beta_i / e_1 with i the occupied site
  REQUIRE(pi.states.size() == 3);
  CHECK(pi.states[0] == Configuration{0, 0, 1});
  CHECK(pi.probabilities[0] == Rational(3, 6));
  CHECK(pi.states[1] == Configuration{0, 1, 0});
  CHECK(pi.probabilities[1] == Rational(2, 6));
  CHECK(pi.states[2] == Configuration{1, 0, 0});
  CHECK(pi.probabilities[2] == Rational(1, 6));
  CHECK(is_stationary_for(gen, pi.probabilities));
}

TEST_CASE("exact_stationary: homogeneous single-species law is uniform") {
  const auto gen = build_generator(Content({2, 2}), rates({1, 1, 1, 1}));
  const auto pi = exact_stationary(gen);
  for (const Rational& p : pi.probabilities)
    CHECK(p == Rational(1, static_cast<long>(pi.states.size())));
}

TEST_CASE("is_irreducible on the full configuration chain") {
  CHECK(is_irreducible(build_generator(Content({1, 1, 1}), rates({1, 2, 3}))));
}

TEST_CASE("check_reversal_conditions: true reversal passes, perturbed fails") {
  const auto gen = build_generator(Content({1, 1, 1}), rates({2, 3, 5}));
  const auto pi = exact_stationary(gen);
  auto rev = reverse_of(gen, pi.probabilities);
  CHECK(check_reversal_conditions(gen, pi.probabilities, rev));
  rev.exit_rate[0] -= rev.rows[0][0].second;
  rev.rows[0][0].second *= 2;
  rev.exit_rate[0] += rev.rows[0][0].second;
  CHECK_FALSE(check_reversal_conditions(gen, pi.probabilities, rev));
}

TEST_CASE("recolouring commutes with bells at the spot example") {
  const ColorMap phi({0, 1, 1, 1, 2});
  const Configuration eta{2, 0, 1, 4, 2, 0, 3, 1};
  CHECK(apply_bell(recolor(phi, eta), 6) == recolor(phi, apply_bell(eta, 6)));
  CHECK(recolor(phi, apply_bell(eta, 6)) ==
        Configuration{1, 1, 1, 2, 1, 0, 0, 1});
}

TEST_CASE("check_lumping: order-preserving maps on small contents") {
  const RateVector beta = rates({1, 2, 3, 4});
  CHECK(check_lumping(Content({1, 1, 1, 1}), ColorMap({0, 1, 1, 2}), beta));
  CHECK(check_lumping(Content({1, 1, 1, 1}), ColorMap({0, 0, 1, 1}), beta));
  CHECK(check_lumping(Content({2, 1, 1}), ColorMap::threshold(2, 2), beta));
  CHECK(check_lumping(Content({2, 1, 1}), ColorMap({0, 0, 0}), beta));
  CHECK(check_lumping(Content({1, 2, 1}), ColorMap::identity(2), beta));
}
