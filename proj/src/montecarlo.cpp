#include "pushlab/montecarlo.hpp"

#include "pushlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pushlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream * kGolden + 1))) {}

std::uint64_t CounterRng::next_u64() {
  return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_exponential(double rate) {
  // inverse CDF; 1-u avoids log(0)
  return -std::log1p(-next_unit()) / rate;
}

Trajectory simulate(const Content& content, const RateVector& beta,
                    const Configuration& initial, double horizon,
                    std::uint64_t seed, const SimulateOptions& opts) {
  if (horizon <= 0) throw std::invalid_argument("simulate: horizon <= 0");
  if (!content.matches(initial))
    throw std::invalid_argument("simulate: initial content mismatch");
  if (beta.size() != content.site_count())
    throw std::invalid_argument("simulate: beta length != L");

  const int L = static_cast<int>(beta.size());
  std::vector<double> cumulative(L);
  double total = 0;
  for (int j = 0; j < L; ++j) {
    total += 1.0 / to_double(beta.beta[j]);
    cumulative[j] = total;
  }

  CounterRng rng(seed, opts.stream);
  Trajectory traj;
  traj.initial = initial;
  traj.horizon = horizon;
  Configuration current = initial;
  double t = 0;
  while (true) {
    t += rng.next_exponential(total);
    if (t >= horizon) break;
    const double u = rng.next_unit() * total;
    const int site = static_cast<int>(
        std::lower_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
    Configuration next = apply_bell(current, site);
    if (next == current && !opts.include_vacancy_bells) continue;
    current = next;
    traj.events.push_back({t, site, current});
  }
  return traj;
}

double EmpiricalDistribution::probability_of(const Configuration& config) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == config) return probabilities[i];
  return 0.0;
}

EmpiricalDistribution empirical_distribution(const Trajectory& traj,
                                             double burn_in) {
  if (burn_in >= traj.horizon)
    throw std::invalid_argument("empirical_distribution: burn_in >= horizon");
  std::map<Configuration, double> occupation;
  Configuration current = traj.initial;
  double prev = 0;
  auto credit = [&](double upto) {
    const double lo = std::max(prev, burn_in);
    const double hi = std::min(upto, traj.horizon);
    if (hi > lo) occupation[current] += hi - lo;
  };
  for (const auto& ev : traj.events) {
    credit(ev.time);
    current = ev.post;
    prev = ev.time;
  }
  credit(traj.horizon);
  const double window = traj.horizon - burn_in;
  EmpiricalDistribution out;
  for (auto& [cfg, w] : occupation) {
    out.states.push_back(cfg);
    out.probabilities.push_back(w / window);
  }
  return out;
}

namespace {

// (origin, destination) pairs of every particle displaced by a bell at
// `site`, in cascade order
std::vector<std::pair<int, int>> cascade_moves(const Configuration& pre,
                                               int site) {
  std::vector<std::pair<int, int>> moves;
  const int L = static_cast<int>(pre.size());
  if (pre[site] == 0) return moves;
  int carried = pre[site];
  int origin = site;
  int pos = site;
  while (true) {
    pos = (pos + 1) % L;
    if (pre[pos] < carried) {
      moves.emplace_back(origin, pos);
      carried = pre[pos];
      origin = pos;
      if (carried == 0) break;
    }
  }
  return moves;
}

bool arc_crosses(int origin, int dest, int bond, int L) {
  // clockwise walk origin -> dest crosses the bond between sites b and b+1
  // iff b is passed before reaching dest
  const int span = (dest - origin + L) % L;
  const int offset = (bond - origin + L) % L;
  return offset < span;
}

}  // namespace

FluxProcess extract_flux(const Trajectory& traj, int bond) {
  const int L = static_cast<int>(traj.initial.size());
  if (bond < 0 || bond >= L) throw std::invalid_argument("extract_flux: bond");
  FluxProcess flux{bond, {}};
  Configuration current = traj.initial;
  for (const auto& ev : traj.events) {
    bool crosses = false;
    for (const auto& [o, d] : cascade_moves(current, ev.site))
      if (arc_crosses(o, d, bond, L)) {
        crosses = true;
        break;
      }
    if (crosses) flux.times.push_back(ev.time);
    current = ev.post;
  }
  return flux;
}

std::vector<Mark> interchange_marks(const std::vector<Mark>& marks) {
  const std::size_t n = marks.size();
  std::vector<char> fixed(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (marks[i] == Mark::A && marks[i + 1] == Mark::B) fixed[i] = fixed[i + 1] = 1;
  std::vector<Mark> out(marks);
  std::size_t i = 0;
  while (i < n) {
    if (fixed[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !fixed[j]) ++j;
    // segment [i, j) has the form b^{nb} a^{na}
    std::size_t nb = 0, na = 0;
    for (std::size_t k = i; k < j; ++k)
      (marks[k] == Mark::B ? nb : na) += 1;
    for (std::size_t k = i; k < i + na; ++k) out[k] = Mark::B;
    for (std::size_t k = i + na; k < j; ++k) out[k] = Mark::A;
    i = j;
  }
  return out;
}

MarkedPointProcess interchange_marks(const MarkedPointProcess& mpp) {
  return {mpp.times, interchange_marks(mpp.marks)};
}

std::vector<double> two_station_output(const std::vector<double>& input,
                                       const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       std::pair<int, int> eta01) {
  if (eta01 == std::pair<int, int>{0, 1})
    throw std::invalid_argument(
        "two_station_output: initial occupancy (0,1) is outside the coupling "
        "guarantee and is rejected");
  if (eta01 != std::pair<int, int>{0, 0} && eta01 != std::pair<int, int>{1, 0} &&
      eta01 != std::pair<int, int>{1, 1})
    throw std::invalid_argument("two_station_output: bad eta01");

  enum Kind { kInput = 0, kBellA = 1, kBellB = 2 };
  std::vector<std::pair<double, int>> events;
  events.reserve(input.size() + a.size() + b.size());
  for (double t : input) events.emplace_back(t, kInput);
  for (double t : a) events.emplace_back(t, kBellA);
  for (double t : b) events.emplace_back(t, kBellB);
  std::sort(events.begin(), events.end());

  int occ1 = eta01.first, occ2 = eta01.second;
  std::vector<double> out;
  for (const auto& [t, kind] : events) {
    switch (kind) {
      case kInput:
        // arriving particle takes the first empty site; if both are full it
        // passes straight through
        if (occ1 == 0)
          occ1 = 1;
        else if (occ2 == 0)
          occ2 = 1;
        else
          out.push_back(t);
        break;
      case kBellA:
        if (occ1 == 1) {
          occ1 = 0;
          if (occ2 == 0)
            occ2 = 1;
          else
            out.push_back(t);
        }
        break;
      case kBellB:
        if (occ2 == 1) {
          occ2 = 0;
          out.push_back(t);
        }
        break;
    }
  }
  return out;
}

double PathStatistic::z() const {
  const double s = std::sqrt(se_base * se_base + se_perm * se_perm);
  if (s == 0) return mean_base == mean_perm ? 0 : HUGE_VAL;
  return (mean_base - mean_perm) / s;
}

bool CoupledPathReport::within_sigma(double nsigma) const {
  for (const auto& st : stats)
    if (std::abs(st.z()) > nsigma) return false;
  return true;
}

namespace {

struct ReplicaSummary {
  std::vector<double> values;  // one entry per statistic
};

ReplicaSummary replica_stats(const Trajectory& traj, int k, int species,
                             int flux_bond) {
  // occupation time of each species at each observed site, then the number
  // of events visible on sites 0..k-1, then the flux count
  const int L = static_cast<int>(traj.initial.size());
  std::vector<double> occ(static_cast<std::size_t>(k) * (species + 1), 0.0);
  Configuration current = traj.initial;
  double prev = 0;
  std::size_t visible_events = 0;
  auto credit = [&](double upto) {
    for (int i = 0; i < k; ++i)
      occ[static_cast<std::size_t>(i) * (species + 1) + current[i]] +=
          upto - prev;
  };
  for (const auto& ev : traj.events) {
    credit(ev.time);
    bool visible = false;
    for (int i = 0; i < k; ++i)
      if (ev.post[i] != current[i]) visible = true;
    if (visible) ++visible_events;
    current = ev.post;
    prev = ev.time;
  }
  credit(traj.horizon);

  ReplicaSummary s;
  for (double v : occ) s.values.push_back(v / traj.horizon);
  s.values.push_back(static_cast<double>(visible_events));
  if (flux_bond >= 0 && flux_bond < L)
    s.values.push_back(
        static_cast<double>(extract_flux(traj, flux_bond).times.size()));
  return s;
}

}  // namespace

CoupledPathReport coupled_path_statistics(const Content& content,
                                          const RateVector& beta,
                                          const Configuration& initial, int k,
                                          const std::vector<int>& perm,
                                          double horizon, std::uint64_t seed,
                                          int replicas) {
  const int L = static_cast<int>(beta.size());
  if (k < 1 || k >= L) throw std::invalid_argument("coupled_path: bad k");
  for (int i = k; i + 1 < L; ++i)
    if (initial[i] < initial[i + 1])
      throw std::invalid_argument(
          "coupled_path: initial tail must be weakly decreasing on sites "
          "k+1..L");
  if (static_cast<int>(perm.size()) != L - k)
    throw std::invalid_argument("coupled_path: perm size != L-k");
  {
    std::vector<int> sorted(perm);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < L - k; ++i)
      if (sorted[i] != k + i)
        throw std::invalid_argument("coupled_path: perm not a permutation of "
                                    "k..L-1");
  }

  std::vector<Rational> permuted = beta.beta;
  for (int i = 0; i < L - k; ++i) permuted[k + i] = beta.beta[perm[i]];
  const RateVector beta_perm{std::move(permuted)};

  const int species = content.num_species();
  const int flux_bond = k >= 2 ? k - 2 : -1;  // 1-based bond (k-1, k)

  std::vector<std::vector<double>> base_vals, perm_vals;
  for (int rep = 0; rep < replicas; ++rep) {
    SimulateOptions o1;
    o1.stream = 2ull * static_cast<std::uint64_t>(rep);
    SimulateOptions o2;
    o2.stream = 2ull * static_cast<std::uint64_t>(rep) + 1;
    auto t1 = simulate(content, beta, initial, horizon, seed, o1);
    auto t2 = simulate(content, beta_perm, initial, horizon, seed, o2);
    base_vals.push_back(replica_stats(t1, k, species, flux_bond).values);
    perm_vals.push_back(replica_stats(t2, k, species, flux_bond).values);
  }

  const std::size_t nstats = base_vals.front().size();
  auto mean_se = [&](const std::vector<std::vector<double>>& vals,
                     std::size_t idx) {
    double m = 0;
    for (const auto& v : vals) m += v[idx];
    m /= static_cast<double>(vals.size());
    double var = 0;
    for (const auto& v : vals) var += (v[idx] - m) * (v[idx] - m);
    var /= static_cast<double>(vals.size() - 1);
    return std::pair<double, double>(
        m, std::sqrt(var / static_cast<double>(vals.size())));
  };

  CoupledPathReport report;
  for (std::size_t i = 0; i < nstats; ++i) {
    PathStatistic st;
    if (i < static_cast<std::size_t>(k) * (species + 1)) {
      st.name = "occ_site" + std::to_string(i / (species + 1) + 1) +
                "_species" + std::to_string(i % (species + 1));
    } else if (i == static_cast<std::size_t>(k) * (species + 1)) {
      st.name = "visible_events";
    } else {
      st.name = "flux_count_bond_" + std::to_string(k - 1);
    }
    std::tie(st.mean_base, st.se_base) = mean_se(base_vals, i);
    std::tie(st.mean_perm, st.se_perm) = mean_se(perm_vals, i);
    report.stats.push_back(st);
  }
  return report;
}

}  // namespace pushlab
