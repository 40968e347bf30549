#include "pushlab/state.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pushlab {

namespace {

// Overflow-safe only for the desk-scale inputs this library targets; counts
// beyond the enumeration cap are reported via the cap error anyway.
std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) /
        static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace

Content::Content(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  while (counts_.size() > 1 && counts_.back() == 0) counts_.pop_back();
  if (counts_.empty())
    throw std::invalid_argument("Content: empty count list");
  for (std::int64_t c : counts_)
    if (c < 0) throw std::invalid_argument("Content: negative count");
  if (counts_[0] < 1)
    throw std::invalid_argument("Content: at least one vacancy required");
  length_ = std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

std::int64_t Content::cumulative(int r) const {
  if (r < 1 || r > num_species() + 1)
    throw std::out_of_range("Content::cumulative: bad species");
  std::int64_t n = 0;
  for (int i = r; i <= num_species(); ++i) n += counts_[i];
  return n;
}

std::uint64_t Content::configuration_count() const {
  // L! / prod n_i!, evaluated as a product of binomials to stay in range
  std::uint64_t total = 1;
  std::int64_t remaining = length_;
  for (std::int64_t c : counts_) {
    total *= binomial(remaining, c);
    remaining -= c;
  }
  return total;
}

std::uint64_t Content::diagram_count() const {
  std::uint64_t total = 1;
  for (int r = 1; r <= num_species(); ++r)
    total *= binomial(length_, cumulative(r));
  return total;
}

bool Content::matches(const Configuration& config) const {
  if (static_cast<std::int64_t>(config.size()) != length_) return false;
  std::vector<std::int64_t> seen(counts_.size(), 0);
  for (int v : config) {
    if (v < 0 || v >= static_cast<int>(counts_.size())) return false;
    ++seen[v];
  }
  return seen == counts_;
}

Content Content::of_configuration(const Configuration& config) {
  int top = 0;
  for (int v : config) top = std::max(top, v);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(top) + 1, 0);
  for (int v : config) {
    if (v < 0) throw std::invalid_argument("negative species");
    ++counts[v];
  }
  return Content(std::move(counts));
}

RateVector::RateVector(std::vector<Rational> b) : beta(std::move(b)) {
  if (beta.empty()) throw std::invalid_argument("RateVector: empty");
  for (const Rational& x : beta)
    if (x <= 0) throw std::invalid_argument("RateVector: beta must be > 0");
}

std::vector<double> RateVector::as_doubles() const {
  std::vector<double> out;
  out.reserve(beta.size());
  for (const Rational& x : beta) out.push_back(to_double(x));
  return out;
}

RateVector RateVector::rotated(int first) const {
  std::vector<Rational> b(beta.size());
  const auto L = static_cast<int>(beta.size());
  for (int i = 0; i < L; ++i) b[i] = beta[(first + i) % L];
  return RateVector(std::move(b));
}

ColorMap::ColorMap(std::vector<int> p) : phi(std::move(p)) {
  if (phi.empty() || phi[0] != 0)
    throw std::invalid_argument("ColorMap: phi(0) must be 0");
  for (std::size_t i = 1; i < phi.size(); ++i)
    if (phi[i] < phi[i - 1])
      throw std::invalid_argument("ColorMap: not weakly order-preserving");
}

ColorMap ColorMap::identity(int s) {
  std::vector<int> p(static_cast<std::size_t>(s) + 1);
  std::iota(p.begin(), p.end(), 0);
  return ColorMap(std::move(p));
}

ColorMap ColorMap::threshold(int r, int s) {
  std::vector<int> p(static_cast<std::size_t>(s) + 1, 0);
  for (int i = r; i <= s; ++i) p[i] = 1;
  return ColorMap(std::move(p));
}

ColorMap ColorMap::compose_after(const ColorMap& inner) const {
  std::vector<int> p(inner.phi.size());
  for (std::size_t i = 0; i < inner.phi.size(); ++i) p[i] = phi.at(inner.phi[i]);
  return ColorMap(std::move(p));
}

std::vector<Configuration> enumerate_configurations(const Content& content,
                                                    std::uint64_t cap) {
  const std::uint64_t n = content.configuration_count();
  if (n > cap) throw EnumerationCapExceeded(n);
  Configuration word;
  word.reserve(content.site_count());
  for (int sp = 0; sp <= content.num_species(); ++sp)
    word.insert(word.end(), content.count(sp), sp);
  std::vector<Configuration> out;
  out.reserve(n);
  do {
    out.push_back(word);
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

Configuration recolor(const ColorMap& phi, const Configuration& config) {
  Configuration out(config.size());
  for (std::size_t i = 0; i < config.size(); ++i)
    out[i] = phi.phi.at(config[i]);
  return out;
}

Configuration single_species_projection(int r, const Configuration& config) {
  if (r < 1) throw std::invalid_argument("projection: r must be >= 1");
  Configuration out(config.size());
  for (std::size_t i = 0; i < config.size(); ++i)
    out[i] = config[i] >= r ? 1 : 0;
  return out;
}

std::string to_text(const Configuration& config) {
  int top = 0;
  for (int v : config) top = std::max(top, v);
  std::ostringstream os;
  if (top <= 9) {
    for (int v : config) os << v;
  } else {
    for (std::size_t i = 0; i < config.size(); ++i) {
      if (i) os << ',';
      os << config[i];
    }
  }
  return os.str();
}

Configuration configuration_from_text(const std::string& text) {
  Configuration out;
  if (text.find(',') != std::string::npos) {
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  } else {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("bad configuration text: " + text);
      out.push_back(c - '0');
    }
  }
  return out;
}

}  // namespace pushlab
