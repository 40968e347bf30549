#pragma once

// Multiline diagrams on the s x L cylinder: enumeration, weights, the
// bully-path projection to PushTASEP configurations, the forward and reverse
// multiline processes, and diagram-sum stationary quantities.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "pushlab/dynamics.hpp"
#include "pushlab/rational.hpp"
#include "pushlab/state.hpp"

namespace pushlab {

// Rows are stored bottom (paper row 1) to top (row s) as column bitmasks.
// The packed representation limits L to 64 columns, far beyond any
// enumerable state space.
struct MultilineDiagram {
  int cols = 0;
  std::vector<std::uint64_t> row_masks;  // index 0 = bottom row

  int rows() const { return static_cast<int>(row_masks.size()); }
  bool occupied(int row, int col) const {
    return (row_masks[row] >> col) & 1u;
  }
  int particles_in_row(int row) const;
  int particles_in_column(int col) const;

  auto operator<=>(const MultilineDiagram&) const = default;
};

std::vector<MultilineDiagram> enumerate_diagrams(
    const Content& content, std::uint64_t cap = kDefaultEnumerationCap);

// prod_i beta_i^{v_i} with v_i the particle count of column i.
Rational weight(const MultilineDiagram& diagram, const RateVector& beta);

// Bully-path projection: top-down matching in decreasing label order with
// left-to-right tie-break; unmatched row-r particles get label r; returns the
// labelled bottom row.
Configuration project(const MultilineDiagram& diagram);

struct MultilineStep {
  MultilineDiagram diagram;
  int end_column;  // where the bell leaves the cylinder
};

// Forward process: bell enters at the bottom of `site`, rows update bottom-up
// with right jumps. end_column is the destination of the top-row jump.
MultilineStep multiline_step_ext(const MultilineDiagram& diagram, int site);
MultilineDiagram multiline_step(const MultilineDiagram& diagram, int site);

// Reverse process: bell enters at the top of `site`, rows update top-down
// with left jumps.
MultilineStep reverse_step_ext(const MultilineDiagram& diagram, int site);
MultilineDiagram reverse_step(const MultilineDiagram& diagram, int site);

// pi-hat = wt / Z over all diagrams.
DistributionTable<MultilineDiagram> multiline_stationary(
    const Content& content, const RateVector& beta,
    std::uint64_t cap = kDefaultEnumerationCap);

// Z_lambda = prod_r e_{N_r}(beta) (equals the total diagram weight).
Rational partition_function(const Content& content, const RateVector& beta);

// Sum of diagram weights projecting to `config`: the ASEP polynomial at
// q = 1, t = 0.
Rational asep_value(const Configuration& config, const RateVector& beta,
                    std::uint64_t cap = kDefaultEnumerationCap);

// All ASEP values of a content in one diagram sweep, keyed like
// enumerate_configurations order.
DistributionTable<Configuration> asep_values(
    const Content& content, const RateVector& beta,
    std::uint64_t cap = kDefaultEnumerationCap);  // unnormalized weights

// Rows top-to-bottom, one line each, '.' vacancy and '*' particle.
std::string to_text(const MultilineDiagram& diagram);
MultilineDiagram diagram_from_text(const std::string& text);

}  // namespace pushlab
