// pushlab: command-line front end for exact verification and simulation of
// the site-inhomogeneous multispecies PushTASEP on a ring.
//
// Subcommands:
//   exact        stationary distribution via generator solve vs diagram sums
//   simulate     event-driven simulation with empirical/exact comparison
//   observables  closed-form densities, currents, and the two-point matrix
//   interchange  rate-interchange couplings (two-station exact + path stats)
//
// Every command reads a JSON config, writes artifacts plus summary.json into
// --out, and exits 0 iff all checks pass.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "pushlab/dynamics.hpp"
#include "pushlab/montecarlo.hpp"
#include "pushlab/multiline.hpp"
#include "pushlab/observables.hpp"
#include "pushlab/symfun.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pushlab;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  int threads = 1;
  bool force = false;
};

struct Check {
  std::string name;
  bool pass;
  json detail;
};

Rational json_rational(const json& v, bool& exact_mode) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    exact_mode = false;
    // decimal-literal floats convert exactly through a scaled integer
    const double d = v.get<double>();
    const double scaled = d * 1e9;
    if (scaled != static_cast<double>(static_cast<long long>(scaled)))
      throw std::invalid_argument("beta float with too many digits; "
                                  "use a \"p/q\" string for exact input");
    return Rational(static_cast<long long>(scaled), 1000000000LL);
  }
  throw std::invalid_argument("beta entries must be numbers or \"p/q\"");
}

struct Experiment {
  Content content;
  RateVector beta;
  json raw;
  bool exact_beta = true;
};

Experiment load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json cfg = json::parse(in);
  if (!cfg.contains("content") || !cfg.contains("beta"))
    throw std::invalid_argument("config requires \"content\" and \"beta\"");
  std::vector<std::int64_t> counts;
  for (const auto& c : cfg.at("content")) counts.push_back(c.get<std::int64_t>());
  Content content(std::move(counts));
  bool exact = true;
  std::vector<Rational> beta;
  for (const auto& b : cfg.at("beta")) beta.push_back(json_rational(b, exact));
  if (static_cast<std::int64_t>(beta.size()) != content.site_count())
    throw std::invalid_argument("beta length must equal the ring size L");
  return Experiment{std::move(content), RateVector(std::move(beta)),
                    std::move(cfg), exact};
}

void prepare_out_dir(const CommonArgs& args) {
  fs::create_directories(args.out_dir);
  const fs::path summary = fs::path(args.out_dir) / "summary.json";
  if (fs::exists(summary) && !args.force)
    throw std::runtime_error(args.out_dir +
                             " already holds results; pass --force to "
                             "overwrite");
}

int write_summary(const CommonArgs& args, const std::string& command,
                  const Experiment& exp, const std::vector<Check>& checks) {
  bool all = true;
  json jchecks = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    json jc{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.is_null()) jc["detail"] = c.detail;
    jchecks.push_back(std::move(jc));
  }
  json out{{"command", command},
           {"config", exp.raw},
           {"seed", args.seed},
           {"beta_mode", exp.exact_beta ? "exact" : "float"},
           {"checks", jchecks},
           {"pass", all}};
  std::ofstream f(fs::path(args.out_dir) / "summary.json");
  f << out.dump(2) << '\n';
  for (const auto& c : checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
  std::cout << (all ? "PASS" : "FAIL") << " overall\n";
  return all ? 0 : 1;
}

std::ofstream open_csv(const CommonArgs& args, const std::string& name) {
  std::ofstream f(fs::path(args.out_dir) / name);
  return f;
}

// ---------------------------------------------------------------- exact ----

int cmd_exact(const CommonArgs& args) {
  const Experiment exp = load_experiment(args.config_path);
  prepare_out_dir(args);
  std::vector<Check> checks;

  const auto gen = build_generator(exp.content, exp.beta);
  const auto pi = exact_stationary(gen);
  const Rational z = partition_function(exp.content, exp.beta);
  const auto sums = asep_values(exp.content, exp.beta);

  bool match = pi.states.size() == sums.states.size();
  Rational weight_total(0);
  for (std::size_t i = 0; match && i < pi.states.size(); ++i) {
    match = pi.states[i] == sums.states[i] &&
            pi.probabilities[i] * z == sums.probabilities[i];
  }
  for (const Rational& w : sums.probabilities) weight_total += w;

  auto csv = open_csv(args, "stationary.csv");
  csv << "configuration,probability,probability_float,diagram_weight\r\n";
  for (std::size_t i = 0; i < pi.states.size(); ++i)
    csv << to_text(pi.states[i]) << ',' << to_string(pi.probabilities[i])
        << ',' << to_double(pi.probabilities[i]) << ','
        << to_string(sums.probabilities[i]) << "\r\n";

  checks.push_back({"stationary_matches_diagram_sums", match, {}});
  checks.push_back({"partition_function_factorizes", weight_total == z,
                    json{{"Z", to_string(z)}}});

  if (exp.content.num_species() == 1) {
    // single-species closed form: pi(eta) = prod_{eta_i = 1} beta_i / e_{n_1}
    bool closed = true;
    const Rational denom =
        elementary<Rational>(exp.content.count(1), exp.beta.beta);
    for (std::size_t i = 0; i < pi.states.size(); ++i) {
      Rational mono(1);
      for (std::size_t s = 0; s < pi.states[i].size(); ++s)
        if (pi.states[i][s] == 1) mono *= exp.beta.beta[s];
      closed = closed && pi.probabilities[i] == mono / denom;
    }
    checks.push_back({"single_species_closed_form", closed, {}});
  }
  return write_summary(args, "exact", exp, checks);
}

// ------------------------------------------------------------- simulate ----

int cmd_simulate(const CommonArgs& args) {
  const Experiment exp = load_experiment(args.config_path);
  prepare_out_dir(args);
  std::vector<Check> checks;

  const double horizon = exp.raw.value("horizon", 10000.0);
  const double burn_in = exp.raw.value("burn_in", horizon * 0.01);
  const int replicas = exp.raw.value("replicas", 1);
  const double tv_bound = exp.raw.value("tv_bound", 0.02);

  Configuration initial;
  for (int sp = 0; sp <= exp.content.num_species(); ++sp)
    initial.insert(initial.end(), exp.content.count(sp), sp);

  const auto pi = exact_stationary(build_generator(exp.content, exp.beta));

  auto csv = open_csv(args, "empirical.csv");
  csv << "replica,configuration,empirical,exact\r\n";
  std::map<Configuration, double> pooled;
  double worst_tv = 0;
  for (int rep = 0; rep < replicas; ++rep) {
    SimulateOptions opts;
    opts.stream = static_cast<std::uint64_t>(rep);
    const auto traj =
        simulate(exp.content, exp.beta, initial, horizon, args.seed, opts);
    const auto emp = empirical_distribution(traj, burn_in);
    double tv = 0;
    for (std::size_t i = 0; i < pi.states.size(); ++i) {
      const double e = emp.probability_of(pi.states[i]);
      tv += std::abs(e - to_double(pi.probabilities[i]));
      pooled[pi.states[i]] += e;
      csv << rep + 1 << ',' << to_text(pi.states[i]) << ',' << e << ','
          << to_double(pi.probabilities[i]) << "\r\n";
    }
    worst_tv = std::max(worst_tv, tv / 2);
  }
  if (replicas > 1) {
    for (const auto& [cfg, p] : pooled)
      csv << "pooled," << to_text(cfg) << ',' << p / replicas << ','
          << to_double(pi.probabilities[std::lower_bound(pi.states.begin(),
                                                         pi.states.end(), cfg) -
                                        pi.states.begin()])
          << "\r\n";
  }
  checks.push_back({"tv_distance_below_bound", worst_tv < tv_bound,
                    json{{"worst_tv", worst_tv}, {"bound", tv_bound}}});
  return write_summary(args, "simulate", exp, checks);
}

// ---------------------------------------------------------- observables ----

int cmd_observables(const CommonArgs& args) {
  const Experiment exp = load_experiment(args.config_path);
  prepare_out_dir(args);
  std::vector<Check> checks;

  const Content& c = exp.content;
  const RateVector& beta = exp.beta;
  const int s = c.num_species();
  const auto pi = exact_stationary(build_generator(c, beta));

  // densities and currents per species, cross-checked against the solve
  auto dens_csv = open_csv(args, "observables.csv");
  dens_csv << "quantity,species,value,value_float,oracle\r\n";
  bool dens_ok = true, curr_ok = true;
  for (int sp = 1; sp <= s; ++sp) {
    Rational oracle(0);
    for (std::size_t u = 0; u < pi.states.size(); ++u)
      if (pi.states[u][0] == sp) oracle += pi.probabilities[u];
    const Rational d = density_multi(c, beta, sp);
    dens_ok = dens_ok && d == oracle;
    dens_csv << "density," << sp << ',' << to_string(d) << ',' << to_double(d)
             << ',' << to_string(oracle) << "\r\n";
    // the species current telescopes through threshold projections
    const Rational jr = current_multi(c, beta, sp);
    Rational jhi =
        elementary<Rational>(c.cumulative(sp) - 1, beta.beta) /
        elementary<Rational>(c.cumulative(sp), beta.beta);
    Rational jlo = sp == s ? Rational(0)
                           : elementary<Rational>(c.cumulative(sp + 1) - 1,
                                                  beta.beta) /
                                 elementary<Rational>(c.cumulative(sp + 1),
                                                      beta.beta);
    curr_ok = curr_ok && jr == jhi - jlo;
    dens_csv << "current," << sp << ',' << to_string(jr) << ',' << to_double(jr)
             << ',' << to_string(jhi - jlo) << "\r\n";
  }
  checks.push_back({"densities_match_stationary", dens_ok, {}});
  checks.push_back({"currents_telescoping", curr_ok, {}});

  // for content (L-1, ..., 1, 0) also emit the full two-point matrix
  bool all_one = true;
  for (int sp = 0; sp <= s; ++sp) all_one = all_one && c.count(sp) == 1;
  if (all_one) {
    const int L = static_cast<int>(c.site_count());
    auto tp_csv = open_csv(args, "two_point.csv");
    tp_csv << "species_site1,species_site2,value,value_float,status\r\n";
    bool cells_ok = true;
    std::vector<Rational> row_sum(L, Rational(0));
    for (int j = 0; j < L; ++j)
      for (int i = 0; i < L; ++i) {
        Rational oracle(0);
        for (std::size_t u = 0; u < pi.states.size(); ++u)
          if (pi.states[u][0] == j && pi.states[u][1] == i)
            oracle += pi.probabilities[u];
        const Rational v = two_point(j, i, beta);
        const bool ok = v == oracle;
        cells_ok = cells_ok && ok;
        row_sum[j] += v;
        tp_csv << j << ',' << i << ',' << to_string(v) << ',' << to_double(v)
               << ',' << (ok ? "PASS" : "FAIL") << "\r\n";
      }
    bool rows_ok = true;
    for (int j = 1; j < L; ++j)
      rows_ok = rows_ok && row_sum[j] == density_multi(c, beta, j);
    checks.push_back({"two_point_cells_match_stationary", cells_ok, {}});
    checks.push_back({"two_point_rows_are_densities", rows_ok, {}});
  }
  return write_summary(args, "observables", exp, checks);
}

// ---------------------------------------------------------- interchange ----

int cmd_interchange(const CommonArgs& args) {
  const Experiment exp = load_experiment(args.config_path);
  prepare_out_dir(args);
  std::vector<Check> checks;

  const int instances = exp.raw.value("instances", 10000);
  const double window = exp.raw.value("window", 10.0);

  // two-station harness: random inputs, both rate orders, all admissible
  // initial occupancies; outputs must agree exactly under the mark coupling
  std::atomic<long> failures{0};
  const int threads = std::max(1, args.threads);
  auto worker = [&](int lo, int hi) {
    long local = 0;
    for (int inst = lo; inst < hi; ++inst) {
      CounterRng rng(args.seed, static_cast<std::uint64_t>(inst));
      const double ra = 0.2 + 2.0 * rng.next_unit();
      const double rb = 0.2 + 2.0 * rng.next_unit();
      MarkedPointProcess bells;
      double ta = 0, tb = 0;
      while ((ta += rng.next_exponential(ra)) < window) {
        bells.times.push_back(ta);
        bells.marks.push_back(Mark::A);
      }
      while ((tb += rng.next_exponential(rb)) < window) {
        bells.times.push_back(tb);
        bells.marks.push_back(Mark::B);
      }
      std::vector<std::size_t> order(bells.times.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return bells.times[x] < bells.times[y];
      });
      MarkedPointProcess sorted;
      for (std::size_t i : order) {
        sorted.times.push_back(bells.times[i]);
        sorted.marks.push_back(bells.marks[i]);
      }
      std::vector<double> input;
      double ti = 0;
      while ((ti += rng.next_exponential(0.8)) < window) input.push_back(ti);

      const auto swapped = interchange_marks(sorted);
      auto split = [](const MarkedPointProcess& mpp) {
        std::pair<std::vector<double>, std::vector<double>> ab;
        for (std::size_t i = 0; i < mpp.times.size(); ++i)
          (mpp.marks[i] == Mark::A ? ab.first : ab.second)
              .push_back(mpp.times[i]);
        return ab;
      };
      const auto [a, b] = split(sorted);
      const auto [a2, b2] = split(swapped);
      for (std::pair<int, int> eta :
           {std::pair<int, int>{0, 0}, {1, 0}, {1, 1}}) {
        if (two_station_output(input, a, b, eta) !=
            two_station_output(input, a2, b2, eta))
          ++local;
      }
    }
    failures += local;
  };
  {
    std::vector<std::thread> pool;
    const int chunk = (instances + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(instances, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  checks.push_back({"two_station_outputs_equal", failures == 0,
                    json{{"instances", instances}}});

  bool rejected = false;
  try {
    two_station_output({}, {}, {}, {0, 1});
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  checks.push_back({"eta01_start_rejected", rejected, {}});

  // path statistics under a rate permutation outside the watched window
  if (exp.raw.contains("k") && exp.raw.contains("permutation")) {
    const int k = exp.raw.at("k").get<int>();
    std::vector<int> perm;
    for (const auto& p : exp.raw.at("permutation")) perm.push_back(p.get<int>());
    const double horizon = exp.raw.value("horizon", 50.0);
    const int replicas = exp.raw.value("replicas", 1000);
    Configuration initial;
    if (exp.raw.contains("initial"))
      initial = configuration_from_text(exp.raw.at("initial").get<std::string>());
    else {
      for (int sp = exp.content.num_species(); sp >= 0; --sp)
        initial.insert(initial.end(), exp.content.count(sp), sp);
    }
    const auto report = coupled_path_statistics(
        exp.content, exp.beta, initial, k, perm, horizon, args.seed, replicas);
    auto csv = open_csv(args, "path_statistics.csv");
    csv << "statistic,mean_base,se_base,mean_permuted,se_permuted,z\r\n";
    for (const auto& st : report.stats)
      csv << st.name << ',' << st.mean_base << ',' << st.se_base << ','
          << st.mean_perm << ',' << st.se_perm << ',' << st.z() << "\r\n";
    checks.push_back({"path_statistics_within_3_sigma",
                      report.within_sigma(3.0),
                      json{{"replicas", replicas}}});
  }
  return write_summary(args, "interchange", exp, checks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PushTASEP verification laboratory"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "JSON experiment config")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--threads", args.threads, "worker threads");
    cmd->add_flag("--force", args.force, "overwrite existing results");
  };

  auto* exact = app.add_subcommand("exact", "exact stationary verification");
  auto* sim = app.add_subcommand("simulate", "Monte Carlo simulation");
  auto* obs = app.add_subcommand("observables", "closed-form observables");
  auto* inter = app.add_subcommand("interchange", "rate-interchange coupling");
  for (auto* cmd : {exact, sim, obs, inter}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (exact->parsed()) return cmd_exact(args);
    if (sim->parsed()) return cmd_simulate(args);
    if (obs->parsed()) return cmd_observables(args);
    if (inter->parsed()) return cmd_interchange(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
