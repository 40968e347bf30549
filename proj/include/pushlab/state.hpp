#pragma once

// Particle content, ring configurations, species colourings, and exhaustive
// enumeration of the configuration space.

#include <cstdint>
#include <string>
#include <vector>

#include "pushlab/rational.hpp"

namespace pushlab {

// Occupancy word over {0,...,s}; entry 0 is a vacancy. Sites are 0-based
// internally; all text I/O is 1-based.
using Configuration = std::vector<int>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct EnumerationCapExceeded : std::runtime_error {
  std::uint64_t count;
  explicit EnumerationCapExceeded(std::uint64_t n)
      : std::runtime_error("enumeration cap exceeded: " + std::to_string(n) +
                           " states"),
        count(n) {}
};

// Particle content <0^{n_0}, 1^{n_1}, ..., s^{n_s}>. Requires n_0 >= 1 (the
// displacement cascade needs a vacancy to terminate); trailing zero species
// counts are normalized away, so the all-vacancy content has s = 0.
class Content {
 public:
  explicit Content(std::vector<std::int64_t> counts);

  int num_species() const { return static_cast<int>(counts_.size()) - 1; }
  std::int64_t site_count() const { return length_; }
  std::int64_t count(int species) const { return counts_.at(species); }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  // N_r = n_r + ... + n_s for 1 <= r <= s; N_{s+1} = 0.
  std::int64_t cumulative(int r) const;

  // |Omega_lambda| = L! / prod n_i!
  std::uint64_t configuration_count() const;
  // |hat-Omega_lambda| = prod_r C(L, N_r)
  std::uint64_t diagram_count() const;

  bool matches(const Configuration& config) const;
  static Content of_configuration(const Configuration& config);

  bool operator==(const Content&) const = default;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t length_;
};

// Positive site parameters beta_1..beta_L; the bell at site j rings at rate
// 1/beta_j.
struct RateVector {
  std::vector<Rational> beta;

  explicit RateVector(std::vector<Rational> b);
  std::int64_t size() const { return static_cast<std::int64_t>(beta.size()); }
  std::vector<double> as_doubles() const;
  // Rotated so that external site `first` (0-based) becomes position 0.
  RateVector rotated(int first) const;
};

// Weakly order-preserving species map with phi(0) = 0.
struct ColorMap {
  std::vector<int> phi;

  explicit ColorMap(std::vector<int> p);
  static ColorMap identity(int s);
  static ColorMap threshold(int r, int s);  // i -> (i >= r ? 1 : 0)
  ColorMap compose_after(const ColorMap& inner) const;  // this o inner
};

// All distinct multiset permutations, lexicographic order.
std::vector<Configuration> enumerate_configurations(
    const Content& content, std::uint64_t cap = kDefaultEnumerationCap);

Configuration recolor(const ColorMap& phi, const Configuration& config);

// Threshold colouring: species >= r become 1, the rest 0.
Configuration single_species_projection(int r, const Configuration& config);

// Digit string when s <= 9, comma-separated otherwise.
std::string to_text(const Configuration& config);
Configuration configuration_from_text(const std::string& text);

}  // namespace pushlab
