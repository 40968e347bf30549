#pragma once

// Elementary symmetric and Schur polynomial evaluation, exact or floating.
// All functions are pure and templated on the scalar type; instantiate with
// Rational for identity checks or double for Monte Carlo summaries.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pushlab/rational.hpp"

namespace pushlab {

// Shape <1^ones, 2^twos>. twos may be -1, in which case the Schur
// polynomial is 0 by convention.
struct TwoColumnShape {
  std::int64_t twos = 0;  // number of parts equal to 2
  std::int64_t ones = 0;  // number of parts equal to 1
};

// e_m(xs), computed by the one-variable recurrence
// e_m(x_1..x_k) = e_m(x_1..x_{k-1}) + x_k e_{m-1}(x_1..x_{k-1}).
template <typename T>
T elementary(std::int64_t m, std::span<const T> xs) {
  if (m < 0) throw std::invalid_argument("elementary: m < 0");
  if (m == 0) return T(1);
  if (m > static_cast<std::int64_t>(xs.size())) return T(0);
  std::vector<T> e(static_cast<std::size_t>(m) + 1, T(0));
  e[0] = T(1);
  for (const T& x : xs) {
    for (std::int64_t k = m; k >= 1; --k) e[k] += x * e[k - 1];
  }
  return e[m];
}

template <typename T>
T elementary(std::int64_t m, const std::vector<T>& xs) {
  return elementary<T>(m, std::span<const T>(xs));
}

// e_mu = prod_i e_{mu_i}. mu must be a partition (weakly decreasing, >= 0).
template <typename T>
T elementary_mu(std::span<const std::int64_t> mu, std::span<const T> xs) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] < 0) throw std::invalid_argument("elementary_mu: negative part");
    if (i + 1 < mu.size() && mu[i] < mu[i + 1])
      throw std::invalid_argument("elementary_mu: not weakly decreasing");
  }
  T out(1);
  for (std::int64_t m : mu) out *= elementary<T>(m, xs);
  return out;
}

template <typename T>
T elementary_mu(const std::vector<std::int64_t>& mu, const std::vector<T>& xs) {
  return elementary_mu<T>(std::span<const std::int64_t>(mu),
                          std::span<const T>(xs));
}

namespace detail {

// Determinant by Gaussian elimination with first-nonzero pivoting.
// Destroys its argument.
template <typename T>
T determinant(std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == T(0)) ++piv;
    if (piv == n) return T(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == T(0)) continue;
      T f = m[r][c] / m[c][c];
      for (std::size_t cc = c; cc < n; ++cc) m[r][cc] -= f * m[c][cc];
    }
  }
  return det;
}

inline std::vector<std::int64_t> conjugate(std::span<const std::int64_t> lambda) {
  std::vector<std::int64_t> out;
  if (lambda.empty()) return out;
  for (std::int64_t i = 1; i <= lambda[0]; ++i) {
    std::int64_t c = 0;
    for (std::int64_t p : lambda)
      if (p >= i) ++c;
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

// s_lambda via the dual Jacobi-Trudi identity det(e_{lambda'_i - i + j}).
// Valid for any partition and any xs, including repeated values.
template <typename T>
T schur_dual_jacobi_trudi(std::span<const std::int64_t> lambda,
                          std::span<const T> xs) {
  std::vector<std::int64_t> parts(lambda.begin(), lambda.end());
  std::erase(parts, std::int64_t{0});
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    if (parts[i] < parts[i + 1])
      throw std::invalid_argument("schur: shape not a partition");
  if (!parts.empty() && parts.back() < 0)
    throw std::invalid_argument("schur: negative part");
  if (static_cast<std::int64_t>(parts.size()) >
      static_cast<std::int64_t>(xs.size()))
    return T(0);
  auto conj = detail::conjugate(std::span<const std::int64_t>(parts));
  const std::size_t n = conj.size();
  if (n == 0) return T(1);
  std::vector<std::vector<T>> m(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t idx = conj[i] - static_cast<std::int64_t>(i) +
                         static_cast<std::int64_t>(j);
      m[i][j] = (idx < 0) ? T(0) : elementary<T>(idx, xs);
    }
  return detail::determinant(m);
}

// s_lambda as a ratio of alternants det(x_i^{lambda_j+n-j}) / det(x_i^{n-j}).
// Repeated xs values make both determinants vanish; that case is routed
// through the dual Jacobi-Trudi evaluation instead.
template <typename T>
T schur_bialternant(std::span<const std::int64_t> lambda,
                    std::span<const T> xs) {
  std::vector<std::int64_t> parts(lambda.begin(), lambda.end());
  std::erase(parts, std::int64_t{0});
  const std::size_t n = xs.size();
  if (parts.size() > n)
    throw std::invalid_argument("schur_bialternant: len(lambda) > |xs|");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (xs[i] == xs[j])
        return schur_dual_jacobi_trudi<T>(
            std::span<const std::int64_t>(parts), xs);
  parts.resize(n, 0);
  std::vector<std::vector<T>> num(n, std::vector<T>(n));
  std::vector<std::vector<T>> den(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t pn = parts[j] + static_cast<std::int64_t>(n - 1 - j);
      T p(1);
      // n and the exponents are tiny; repeated squaring is not worth it
      for (std::int64_t k = 0; k < pn; ++k) p *= xs[i];
      num[i][j] = p;
      T q(1);
      for (std::size_t k = 0; k < n - 1 - j; ++k) q *= xs[i];
      den[i][j] = q;
    }
  }
  T d = detail::determinant(den);
  return detail::determinant(num) / d;
}

template <typename T>
T schur_bialternant(const std::vector<std::int64_t>& lambda,
                    const std::vector<T>& xs) {
  return schur_bialternant<T>(std::span<const std::int64_t>(lambda),
                              std::span<const T>(xs));
}

// s_{<1^b, 2^a>} via the two-column dual Jacobi-Trudi determinant
//   e_{a+b} e_a - e_{a+b+1} e_{a-1},
// with the convention that the result is 0 when a < 0.
template <typename T>
T schur_two_column(const TwoColumnShape& shape, std::span<const T> xs) {
  const std::int64_t a = shape.twos;
  const std::int64_t b = shape.ones;
  if (a < 0 || b < 0) return T(0);
  T eam1 = (a == 0) ? T(0) : elementary<T>(a - 1, xs);
  return elementary<T>(a + b, xs) * elementary<T>(a, xs) -
         elementary<T>(a + b + 1, xs) * eam1;
}

template <typename T>
T schur_two_column(const TwoColumnShape& shape, const std::vector<T>& xs) {
  return schur_two_column<T>(shape, std::span<const T>(xs));
}

// s_{(2^m, a)} for a in {0,1,2}; 0 when any multiplicity goes negative.
template <typename T>
T schur_two_column_tail(std::int64_t m, std::int64_t a,
                        std::span<const T> xs) {
  switch (a) {
    case 0:
      return schur_two_column<T>({m, 0}, xs);
    case 1:
      return schur_two_column<T>({m, 1}, xs);
    case 2:
      return schur_two_column<T>({m + 1, 0}, xs);
    default:
      throw std::invalid_argument("schur_two_column_tail: a not in {0,1,2}");
  }
}

}  // namespace pushlab
