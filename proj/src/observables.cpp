#include "pushlab/observables.hpp"

#include "pushlab/dynamics.hpp"
#include "pushlab/symfun.hpp"

#include <array>
#include <span>
#include <stdexcept>

namespace pushlab {

namespace {

std::vector<Rational> drop_front(const std::vector<Rational>& xs, int n) {
  return {xs.begin() + n, xs.end()};
}

}  // namespace

Rational density_single(const Content& content, const RateVector& beta,
                        int site) {
  if (content.num_species() != 1)
    throw std::invalid_argument("density_single: content not single-species");
  const std::int64_t n1 = content.count(1);
  std::vector<Rational> rest;
  for (int j = 0; j < beta.size(); ++j)
    if (j != site) rest.push_back(beta.beta[j]);
  return beta.beta[site] * elementary<Rational>(n1 - 1, rest) /
         elementary<Rational>(n1, beta.beta);
}

Rational density_multi(const Content& content, const RateVector& beta,
                       int species) {
  const int s = content.num_species();
  if (species < 1 || species > s)
    throw std::invalid_argument("density_multi: bad species");
  const std::int64_t ni = content.count(species);
  if (ni == 0) return Rational(0);
  const std::int64_t upper = content.cumulative(species);
  const std::int64_t lower =
      species == s ? 0 : content.cumulative(species + 1);
  const auto tail = drop_front(beta.beta, 1);
  return beta.beta[0] *
         schur_two_column<Rational>({lower, ni - 1}, tail) /
         (elementary<Rational>(upper, beta.beta) *
          elementary<Rational>(lower, beta.beta));
}

Rational current_defining_sum(const Content& content, const RateVector& beta) {
  const auto pi = exact_stationary(build_generator(content, beta));
  const int L = static_cast<int>(beta.size());
  const std::int64_t n0 = content.count(0);
  Rational total(0);
  for (int j = static_cast<int>(n0); j < L; ++j) {  // 1-based j = n0+1 .. L
    Rational block(0);
    for (std::size_t u = 0; u < pi.states.size(); ++u) {
      bool all = true;
      for (int i = j; i < L; ++i)
        if (pi.states[u][i] != 1) all = false;
      if (all) block += pi.probabilities[u];
    }
    total += block / beta.beta[j];
  }
  return total;
}

Rational current_single(const Content& content, const RateVector& beta) {
  if (content.num_species() != 1)
    throw std::invalid_argument("current_single: content not single-species");
  const std::int64_t n1 = content.count(1);
  const Rational formula = elementary<Rational>(n1 - 1, beta.beta) /
                           elementary<Rational>(n1, beta.beta);
  if (formula != current_defining_sum(content, beta))
    throw std::runtime_error(
        "current_single: closed form disagrees with the defining sum");
  return formula;
}

Rational current_multi(const Content& content, const RateVector& beta,
                       int species) {
  const int s = content.num_species();
  if (species < 1 || species > s)
    throw std::invalid_argument("current_multi: bad species");
  const std::int64_t ni = content.count(species);
  if (ni == 0) return Rational(0);
  const std::int64_t upper = content.cumulative(species);
  const std::int64_t lower =
      species == s ? 0 : content.cumulative(species + 1);
  return schur_two_column<Rational>({lower, ni - 1}, beta.beta) /
         (elementary<Rational>(upper, beta.beta) *
          elementary<Rational>(lower, beta.beta));
}

Rational three_species_T(std::int64_t s_count, std::int64_t t_count,
                         const RateVector& beta, int which) {
  const std::int64_t L = beta.size();
  if (s_count <= 0 || t_count <= 0 || s_count + t_count >= L)
    throw std::invalid_argument("three_species_T: need s,t > 0, s+t < L");
  const auto tail = drop_front(beta.beta, 2);
  const Rational denom = elementary<Rational>(s_count + t_count, beta.beta) *
                         elementary<Rational>(s_count, beta.beta);
  const Rational s1 =
      schur_two_column<Rational>({s_count, t_count - 1}, tail);
  if (which == 1) return beta.beta[1] * s1 / denom;
  if (which == 2) {
    const Rational s2 =
        schur_two_column<Rational>({s_count - 1, t_count}, tail);
    return (beta.beta[0] * s1 + beta.beta[0] * beta.beta[1] * s2) / denom;
  }
  throw std::invalid_argument("three_species_T: which must be 1 or 2");
}

Rational f_poly(int j, int i, const RateVector& beta) {
  const std::int64_t L = beta.size();
  const auto tail = drop_front(beta.beta, 2);
  auto column = [&](std::int64_t k) {
    return std::array<Rational, 3>{
        schur_two_column<Rational>({L - k - 2, 0}, tail),
        schur_two_column<Rational>({L - k - 2, 1}, tail),
        schur_two_column<Rational>({L - k - 1, 0}, tail)};
  };
  const std::array<Rational, 3> c1{Rational(1),
                                   -beta.beta[0] - beta.beta[1],
                                   beta.beta[0] * beta.beta[1]};
  const auto c2 = column(j);
  const auto c3 = column(i);
  auto det2 = [](const Rational& a, const Rational& b, const Rational& c,
                 const Rational& d) { return a * d - b * c; };
  return c1[0] * det2(c2[1], c3[1], c2[2], c3[2]) -
         c2[0] * det2(c1[1], c3[1], c1[2], c3[2]) +
         c3[0] * det2(c1[1], c2[1], c1[2], c2[2]);
}

Rational g_poly(int j, int i, const RateVector& beta) {
  const std::int64_t L = beta.size();
  const auto tail = drop_front(beta.beta, 2);
  Rational total(0);
  for (int a = 0; a <= 2; ++a) {
    const Rational si = schur_two_column_tail<Rational>(
        L - i - 2, a, std::span<const Rational>(tail));
    if (si == 0) continue;
    for (int b = 0; b <= 2; ++b) {
      const Rational sj = schur_two_column_tail<Rational>(
          L - j - 2, b, std::span<const Rational>(tail));
      if (sj == 0) continue;
      Rational coef(1);
      for (int k = 0; k < 3 - a; ++k) coef *= beta.beta[0];
      for (int k = 0; k < 3 - b; ++k) coef *= beta.beta[1];
      total += coef * si * sj;
    }
  }
  return total;
}

Rational two_point(int j, int i, const RateVector& beta) {
  const std::int64_t L = beta.size();
  if (j < 0 || i < 0 || j >= L || i >= L)
    throw std::invalid_argument("two_point: species out of range");
  if (j == i) return Rational(0);
  if (j < i) {
    const std::vector<std::int64_t> mu{L - j, L - j - 1, L - i, L - i - 1};
    return beta.beta[0] * beta.beta[1] * beta.beta[1] * f_poly(j, i, beta) /
           elementary_mu<Rational>(mu, beta.beta);
  }
  if (j == i + 1) {
    const std::vector<std::int64_t> mu{L - i, L - i - 1, L - i - 1, L - i - 2};
    const std::vector<std::int64_t> mu2{L - j, L - j};
    const auto tail = drop_front(beta.beta, 2);
    return g_poly(i + 1, i, beta) / elementary_mu<Rational>(mu, beta.beta) +
           beta.beta[0] * beta.beta[1] *
               schur_two_column<Rational>({L - j - 1, 0}, tail) /
               elementary_mu<Rational>(mu2, beta.beta);
  }
  // j > i+1; the determinant/oracle fixes the orientation to g_{j,i}
  const std::vector<std::int64_t> mu{L - i, L - i - 1, L - j, L - j - 1};
  return g_poly(j, i, beta) / elementary_mu<Rational>(mu, beta.beta);
}

}  // namespace pushlab
