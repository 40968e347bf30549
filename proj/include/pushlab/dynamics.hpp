#pragma once

// The multispecies PushTASEP transition rule, generator matrices over an
// arbitrary finite state space, exact stationary solve, lumping and
// time-reversal checks.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "pushlab/rational.hpp"
#include "pushlab/state.hpp"

namespace pushlab {

// Bell at `site` (0-based). A vacancy bell is a no-op; otherwise the occupant
// vacates the site and displaces strictly weaker occupants clockwise until a
// vacancy absorbs the cascade. Content is preserved.
Configuration apply_bell(const Configuration& config, int site);

// Sparse generator over an ordered state list. Off-diagonal entries are
// summed when distinct bells map u to the same target; the diagonal is the
// negated row sum and is kept implicitly as exit_rate.
template <typename State>
struct GeneratorMatrix {
  std::vector<State> states;  // sorted ascending
  std::vector<std::vector<std::pair<int, Rational>>> rows;  // off-diagonal
  std::vector<Rational> exit_rate;

  int index_of(const State& s) const {
    auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s)
      throw std::invalid_argument("state not in chain");
    return static_cast<int>(it - states.begin());
  }
};

template <typename State>
struct DistributionTable {
  std::vector<State> states;
  std::vector<Rational> probabilities;
};

// Assembles the generator for a chain where a bell at site j (rate 1/beta_j)
// triggers the deterministic transition step(state, j). Self-loops (no-op
// bells) are dropped.
template <typename State, typename Step>
GeneratorMatrix<State> build_chain(std::vector<State> states,
                                   const RateVector& beta, Step step) {
  std::sort(states.begin(), states.end());
  GeneratorMatrix<State> gen;
  gen.states = std::move(states);
  const int n = static_cast<int>(gen.states.size());
  const int L = static_cast<int>(beta.size());
  gen.rows.resize(n);
  gen.exit_rate.assign(n, Rational(0));
  for (int u = 0; u < n; ++u) {
    for (int j = 0; j < L; ++j) {
      State t = step(gen.states[u], j);
      if (t == gen.states[u]) continue;
      const int v = gen.index_of(t);
      const Rational rate = Rational(1) / beta.beta[j];
      auto& row = gen.rows[u];
      auto it = std::find_if(row.begin(), row.end(),
                             [v](const auto& p) { return p.first == v; });
      if (it == row.end())
        row.emplace_back(v, rate);
      else
        it->second += rate;
      gen.exit_rate[u] += rate;
    }
  }
  return gen;
}

GeneratorMatrix<Configuration> build_generator(
    const Content& content, const RateVector& beta,
    std::uint64_t cap = kDefaultEnumerationCap);

// Whole graph is one strongly connected component (forward and reverse
// reachability from state 0).
template <typename State>
bool is_irreducible(const GeneratorMatrix<State>& gen) {
  const int n = static_cast<int>(gen.states.size());
  if (n == 0) return false;
  std::vector<std::vector<int>> rev(n);
  for (int u = 0; u < n; ++u)
    for (const auto& [v, r] : gen.rows[u]) rev[v].push_back(u);
  auto reach = [n](auto&& next) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : next(u))
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    return count;
  };
  auto fwd_next = [&gen](int u) {
    std::vector<int> out;
    for (const auto& [v, r] : gen.rows[u]) out.push_back(v);
    return out;
  };
  auto rev_next = [&rev](int u) { return rev[u]; };
  return reach(fwd_next) == n && reach(rev_next) == n;
}

namespace detail {
// Null space of Q^T with normalization: rational Gaussian elimination for
// small chains, multi-modular elimination with rational reconstruction and
// an exact pi Q = 0 certificate for larger ones.
std::vector<Rational> stationary_solve(
    const std::vector<std::vector<std::pair<int, Rational>>>& rows,
    const std::vector<Rational>& exit_rate);
std::vector<Rational> stationary_solve_dense(
    const std::vector<std::vector<std::pair<int, Rational>>>& rows,
    const std::vector<Rational>& exit_rate);
}  // namespace detail

// Unique probability vector with pi Q = 0, exact. Throws if the chain is not
// irreducible.
template <typename State>
DistributionTable<State> exact_stationary(const GeneratorMatrix<State>& gen) {
  if (!is_irreducible(gen))
    throw std::runtime_error("exact_stationary: chain not irreducible");
  DistributionTable<State> table;
  table.states = gen.states;
  table.probabilities = detail::stationary_solve(gen.rows, gen.exit_rate);
  return table;
}

// Verifies pi(u) r*(u,v) = pi(v) r(v,u) for all pairs and equal total exit
// rates per state. When true, pi is stationary for the forward chain and
// `reverse` is its time reversal.
template <typename State>
bool check_reversal_conditions(const GeneratorMatrix<State>& gen,
                               const std::vector<Rational>& pi,
                               const GeneratorMatrix<State>& reverse) {
  const int n = static_cast<int>(gen.states.size());
  if (reverse.states != gen.states) return false;
  if (static_cast<int>(pi.size()) != n) return false;
  for (int u = 0; u < n; ++u)
    if (gen.exit_rate[u] != reverse.exit_rate[u]) return false;
  // pairwise balance: collect both rate maps densely per row pair
  for (int u = 0; u < n; ++u) {
    for (const auto& [v, rstar] : reverse.rows[u]) {
      Rational r_back(0);
      for (const auto& [w, r] : gen.rows[v])
        if (w == u) r_back = r;
      if (pi[u] * rstar != pi[v] * r_back) return false;
    }
    // entries of gen from v to u with no reverse counterpart
    for (const auto& [v, r] : gen.rows[u]) {
      Rational rstar(0);
      for (const auto& [w, rr] : reverse.rows[v])
        if (w == u) rstar = rr;
      if (pi[v] * rstar != pi[u] * r) return false;
    }
  }
  return true;
}

// Sparse verification that pi Q = 0 exactly (per-state balance).
template <typename State>
bool is_stationary_for(const GeneratorMatrix<State>& gen,
                       const std::vector<Rational>& pi) {
  const int n = static_cast<int>(gen.states.size());
  if (static_cast<int>(pi.size()) != n) return false;
  std::vector<Rational> inflow(n, Rational(0));
  for (int u = 0; u < n; ++u)
    for (const auto& [v, r] : gen.rows[u]) inflow[v] += pi[u] * r;
  for (int u = 0; u < n; ++u)
    if (inflow[u] != pi[u] * gen.exit_rate[u]) return false;
  return true;
}

// True iff recolouring commutes with every bell and the pushforward of the
// stationary distribution equals the stationary distribution of the
// recoloured chain.
bool check_lumping(const Content& content, const ColorMap& phi,
                   const RateVector& beta,
                   std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace pushlab
