#include "pushlab/multiline.hpp"

#include "pushlab/symfun.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pushlab {

int MultilineDiagram::particles_in_row(int row) const {
  return std::popcount(row_masks[row]);
}

int MultilineDiagram::particles_in_column(int col) const {
  int c = 0;
  for (std::uint64_t m : row_masks) c += (m >> col) & 1u;
  return c;
}

namespace {

// next k-subset bitmask in colex-increasing order (Gosper's hack)
std::uint64_t next_combination(std::uint64_t v) {
  std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

std::uint64_t first_combination(int k) { return (k == 0) ? 0 : (1ull << k) - 1; }

}  // namespace

std::vector<MultilineDiagram> enumerate_diagrams(const Content& content,
                                                 std::uint64_t cap) {
  const int L = static_cast<int>(content.site_count());
  const int s = content.num_species();
  if (L > 64) throw std::invalid_argument("enumerate_diagrams: L > 64");
  const std::uint64_t total = content.diagram_count();
  if (total > cap) throw EnumerationCapExceeded(total);

  std::vector<std::vector<std::uint64_t>> row_choices(s);
  const std::uint64_t full = (L == 64) ? ~0ull : ((1ull << L) - 1);
  for (int r = 1; r <= s; ++r) {
    const int k = static_cast<int>(content.cumulative(r));
    std::uint64_t m = first_combination(k);
    while (m <= full) {
      row_choices[r - 1].push_back(m);
      if (m == 0) break;
      std::uint64_t nm = next_combination(m);
      if (nm <= m) break;
      m = nm;
    }
  }
  std::vector<MultilineDiagram> out;
  out.reserve(total);
  MultilineDiagram d;
  d.cols = L;
  d.row_masks.assign(s, 0);
  // row-major: bottom row varies slowest
  std::vector<std::size_t> idx(s, 0);
  while (true) {
    for (int r = 0; r < s; ++r) d.row_masks[r] = row_choices[r][idx[r]];
    out.push_back(d);
    int r = s - 1;
    while (r >= 0 && ++idx[r] == row_choices[r].size()) idx[r--] = 0;
    if (r < 0) break;
  }
  return out;
}

Rational weight(const MultilineDiagram& diagram, const RateVector& beta) {
  if (beta.size() != diagram.cols)
    throw std::invalid_argument("weight: beta length != columns");
  Rational w(1);
  for (int c = 0; c < diagram.cols; ++c) {
    const int v = diagram.particles_in_column(c);
    for (int k = 0; k < v; ++k) w *= beta.beta[c];
  }
  return w;
}

Configuration project(const MultilineDiagram& diagram) {
  const int L = diagram.cols;
  const int s = diagram.rows();
  if (s == 0) return Configuration(L, 0);
  // labels[r][c] = species label of the particle at (row r, col c), 0 if none
  std::vector<std::vector<int>> labels(s, std::vector<int>(L, 0));
  for (int c = 0; c < L; ++c)
    if (diagram.occupied(s - 1, c)) labels[s - 1][c] = s;
  for (int r = s - 1; r >= 1; --r) {
    // matched flags for row r-1 (0-based), i.e. paper row r
    std::vector<char> matched(L, 0);
    // row-r+1 particles in decreasing label order, left-to-right tie-break
    std::vector<std::pair<int, int>> upper;  // (-label, col)
    for (int c = 0; c < L; ++c)
      if (diagram.occupied(r, c)) upper.emplace_back(-labels[r][c], c);
    std::sort(upper.begin(), upper.end());
    for (const auto& [neg_label, col] : upper) {
      for (int d = 0; d < L; ++d) {
        const int cc = (col + d) % L;
        if (diagram.occupied(r - 1, cc) && !matched[cc]) {
          matched[cc] = 1;
          labels[r - 1][cc] = -neg_label;
          break;
        }
      }
    }
    for (int c = 0; c < L; ++c)
      if (diagram.occupied(r - 1, c) && !matched[c]) labels[r - 1][c] = r;
  }
  return labels[0];
}

namespace {

// first vacant column strictly right of col, cyclic
int jump_right(std::uint64_t mask, int L, int col) {
  for (int d = 1; d <= L; ++d) {
    const int c = (col + d) % L;
    if (!((mask >> c) & 1u)) return c;
  }
  throw std::logic_error("full row in multiline diagram");
}

int jump_left(std::uint64_t mask, int L, int col) {
  for (int d = 1; d <= L; ++d) {
    const int c = ((col - d) % L + L) % L;
    if (!((mask >> c) & 1u)) return c;
  }
  throw std::logic_error("full row in multiline diagram");
}

}  // namespace

MultilineStep multiline_step_ext(const MultilineDiagram& diagram, int site) {
  const int L = diagram.cols;
  if (site < 0 || site >= L) throw std::out_of_range("multiline_step: site");
  MultilineStep out{diagram, site};
  int bell = site;
  for (int r = 0; r < diagram.rows(); ++r) {
    std::uint64_t& mask = out.diagram.row_masks[r];
    if ((mask >> bell) & 1u) {
      const int dest = jump_right(mask, L, bell);
      mask &= ~(1ull << bell);
      mask |= 1ull << dest;
      bell = dest;
    }
    // empty cell: the bell passes straight up
  }
  out.end_column = bell;
  return out;
}

MultilineDiagram multiline_step(const MultilineDiagram& diagram, int site) {
  return multiline_step_ext(diagram, site).diagram;
}

MultilineStep reverse_step_ext(const MultilineDiagram& diagram, int site) {
  const int L = diagram.cols;
  if (site < 0 || site >= L) throw std::out_of_range("reverse_step: site");
  MultilineStep out{diagram, site};
  int bell = site;
  for (int r = diagram.rows() - 1; r >= 0; --r) {
    std::uint64_t& mask = out.diagram.row_masks[r];
    if ((mask >> bell) & 1u) {
      const int dest = jump_left(mask, L, bell);
      mask &= ~(1ull << bell);
      mask |= 1ull << dest;
      bell = dest;
    }
  }
  out.end_column = bell;
  return out;
}

MultilineDiagram reverse_step(const MultilineDiagram& diagram, int site) {
  return reverse_step_ext(diagram, site).diagram;
}

DistributionTable<MultilineDiagram> multiline_stationary(const Content& content,
                                                         const RateVector& beta,
                                                         std::uint64_t cap) {
  DistributionTable<MultilineDiagram> table;
  table.states = enumerate_diagrams(content, cap);
  std::sort(table.states.begin(), table.states.end());
  const Rational z = partition_function(content, beta);
  table.probabilities.reserve(table.states.size());
  for (const auto& d : table.states)
    table.probabilities.push_back(weight(d, beta) / z);
  return table;
}

Rational partition_function(const Content& content, const RateVector& beta) {
  if (beta.size() != content.site_count())
    throw std::invalid_argument("partition_function: beta length != L");
  Rational z(1);
  for (int r = 1; r <= content.num_species(); ++r)
    z *= elementary<Rational>(content.cumulative(r), beta.beta);
  return z;
}

DistributionTable<Configuration> asep_values(const Content& content,
                                             const RateVector& beta,
                                             std::uint64_t cap) {
  std::map<Configuration, Rational> sums;
  for (const auto& d : enumerate_diagrams(content, cap))
    sums[project(d)] += weight(d, beta);
  DistributionTable<Configuration> out;
  for (auto& [cfg, w] : sums) {
    out.states.push_back(cfg);
    out.probabilities.push_back(w);
  }
  return out;
}

Rational asep_value(const Configuration& config, const RateVector& beta,
                    std::uint64_t cap) {
  const Content content = Content::of_configuration(config);
  Rational total(0);
  for (const auto& d : enumerate_diagrams(content, cap))
    if (project(d) == config) total += weight(d, beta);
  return total;
}

std::string to_text(const MultilineDiagram& diagram) {
  std::ostringstream os;
  for (int r = diagram.rows() - 1; r >= 0; --r) {
    for (int c = 0; c < diagram.cols; ++c)
      os << (diagram.occupied(r, c) ? '*' : '.');
    if (r > 0) os << '\n';
  }
  return os.str();
}

MultilineDiagram diagram_from_text(const std::string& text) {
  std::vector<std::uint64_t> top_down;
  std::istringstream is(text);
  std::string line;
  int cols = -1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (cols < 0)
      cols = static_cast<int>(line.size());
    else if (cols != static_cast<int>(line.size()))
      throw std::invalid_argument("diagram_from_text: ragged rows");
    std::uint64_t m = 0;
    for (int c = 0; c < cols; ++c) {
      if (line[c] == '*')
        m |= 1ull << c;
      else if (line[c] != '.')
        throw std::invalid_argument("diagram_from_text: bad character");
    }
    top_down.push_back(m);
  }
  if (top_down.empty()) throw std::invalid_argument("diagram_from_text: empty");
  MultilineDiagram d;
  d.cols = cols;
  d.row_masks.assign(top_down.rbegin(), top_down.rend());
  return d;
}

}  // namespace pushlab
