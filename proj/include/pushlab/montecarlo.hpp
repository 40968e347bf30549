#pragma once

// Event-driven continuous-time simulation of the PushTASEP, flux-process
// extraction, and the deterministic mark-interchange coupling for
// neighbouring-site rate swaps.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pushlab/state.hpp"

namespace pushlab {

// Counter-based generator: output i is a SplitMix64-style hash of
// (key, i), where the key mixes the seed with the stream id. Streams are
// independent for distinct (seed, stream) pairs and reproducible across
// runs and platforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double next_unit();  // uniform in [0, 1)
  double next_exponential(double rate);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct TrajectoryEvent {
  double time;
  int site;  // 0-based bell site
  Configuration post;
};

struct Trajectory {
  Configuration initial;
  std::vector<TrajectoryEvent> events;
  double horizon = 0;
};

struct SimulateOptions {
  bool include_vacancy_bells = false;
  std::uint64_t stream = 0;
};

Trajectory simulate(const Content& content, const RateVector& beta,
                    const Configuration& initial, double horizon,
                    std::uint64_t seed, const SimulateOptions& opts = {});

struct EmpiricalDistribution {
  std::vector<Configuration> states;
  std::vector<double> probabilities;

  double probability_of(const Configuration& config) const;
};

// Time-weighted occupation fractions over [burn_in, horizon].
EmpiricalDistribution empirical_distribution(const Trajectory& traj,
                                             double burn_in);

struct FluxProcess {
  int bond;  // 0-based: the arc between sites bond and bond+1 (mod L)
  std::vector<double> times;
};

// A transition time enters F_{bond} iff some displaced particle's clockwise
// (origin, destination) arc crosses the bond. Simultaneous crossings within
// one cascade share the single event timestamp.
FluxProcess extract_flux(const Trajectory& traj, int bond);

enum class Mark : std::uint8_t { A, B };

struct MarkedPointProcess {
  std::vector<double> times;
  std::vector<Mark> marks;
};

// Deterministic coupling rewrite: every "ab" motif is kept in place; each
// maximal complementary segment b^{nb} a^{na} becomes b^{na} a^{nb}.
MarkedPointProcess interchange_marks(const MarkedPointProcess& mpp);
std::vector<Mark> interchange_marks(const std::vector<Mark>& marks);

// Output flux process of the two-site single-species subsystem (sites j and
// j+1 in isolation) fed by `input`, with bell processes `a` at j and `b` at
// j+1 and initial occupancies eta01. eta01 = (0,1) is rejected.
std::vector<double> two_station_output(const std::vector<double>& input,
                                       const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       std::pair<int, int> eta01);

struct PathStatistic {
  std::string name;
  double mean_base = 0, se_base = 0;
  double mean_perm = 0, se_perm = 0;

  double z() const;
};

struct CoupledPathReport {
  std::vector<PathStatistic> stats;
  bool within_sigma(double nsigma) const;
};

// Simulates the chain under beta and under the permuted rates with
// independent streams, and compares path statistics restricted to sites
// 1..k: per-site species occupation times, event counts, and flux counts at
// the bond (k-1, k). `perm` maps 0-based positions k..L-1 to their new beta
// source positions. Requires eta_{k+1} >= ... >= eta_L in the initial
// configuration.
CoupledPathReport coupled_path_statistics(const Content& content,
                                          const RateVector& beta,
                                          const Configuration& initial, int k,
                                          const std::vector<int>& perm,
                                          double horizon, std::uint64_t seed,
                                          int replicas);

}  // namespace pushlab
