#include "pushlab/dynamics.hpp"

#include <map>
#include <stdexcept>

namespace pushlab {

Configuration apply_bell(const Configuration& config, int site) {
  const int L = static_cast<int>(config.size());
  if (site < 0 || site >= L) throw std::out_of_range("apply_bell: bad site");
  if (config[site] == 0) return config;
  Configuration out = config;
  int carried = out[site];
  out[site] = 0;
  int pos = site;
  // cursor walk: the carried species displaces the first strictly weaker
  // occupant; a vacancy ends the cascade
  while (true) {
    pos = (pos + 1) % L;
    if (out[pos] < carried) {
      std::swap(carried, out[pos]);
      if (carried == 0) break;
    }
  }
  return out;
}

GeneratorMatrix<Configuration> build_generator(const Content& content,
                                               const RateVector& beta,
                                               std::uint64_t cap) {
  if (beta.size() != content.site_count())
    throw std::invalid_argument("build_generator: beta length != L");
  auto states = enumerate_configurations(content, cap);
  return build_chain(std::move(states), beta,
                     [](const Configuration& c, int j) {
                       return apply_bell(c, j);
                     });
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u})
    if (n % d == 0) return n == d;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ull, 7ull, 61ull}) {  // deterministic for 32 bits
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// residue of an exact rational mod p; false when the denominator vanishes
bool rational_mod(const Rational& r, std::uint64_t p, std::uint64_t& out) {
  using boost::multiprecision::mpz_int;
  const mpz_int num = boost::multiprecision::numerator(r);
  const mpz_int den = boost::multiprecision::denominator(r);
  const mpz_int pz(static_cast<unsigned long>(p));
  mpz_int nm = num % pz;
  if (nm < 0) nm += pz;
  const mpz_int dm = den % pz;
  if (dm == 0) return false;
  const std::uint64_t dinv =
      powmod(dm.convert_to<std::uint64_t>(), p - 2, p);
  out = mulmod(nm.convert_to<std::uint64_t>(), dinv, p);
  return true;
}

// pi Q = 0 and sum(pi) = 1 over GF(p); false if the reduction is singular
bool solve_mod_p(const std::vector<std::vector<std::pair<int, Rational>>>& rows,
                 const std::vector<Rational>& exit_rate, std::uint64_t p,
                 std::vector<std::uint64_t>& x) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::vector<std::uint64_t>> a(
      n + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  for (int u = 0; u < n; ++u) {
    std::uint64_t e;
    if (!rational_mod(exit_rate[u], p, e)) return false;
    a[u][u] = (a[u][u] + p - e) % p;
    for (const auto& [v, r] : rows[u]) {
      std::uint64_t rm;
      if (!rational_mod(r, p, rm)) return false;
      a[v][u] = (a[v][u] + rm) % p;
    }
  }
  for (int c = 0; c < n; ++c) a[n][c] = 1;
  a[n][n] = 1;

  std::vector<int> where(n, -1);
  int rank = 0;
  for (int c = 0; c < n && rank <= n; ++c) {
    int piv = -1;
    for (int r = rank; r <= n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    const std::uint64_t inv = powmod(a[rank][c], p - 2, p);
    for (int cc = c; cc <= n; ++cc) a[rank][cc] = mulmod(a[rank][cc], inv, p);
    for (int r = 0; r <= n; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c];
      for (int cc = c; cc <= n; ++cc)
        a[r][cc] = (a[r][cc] + p - mulmod(f, a[rank][cc], p)) % p;
    }
    where[c] = rank;
    ++rank;
  }
  if (rank != n) return false;
  x.assign(n, 0);
  for (int c = 0; c < n; ++c) x[c] = a[where[c]][n];
  // the leftover row must have reduced to 0 = 0
  for (int cc = 0; cc <= n; ++cc)
    if (a[n][cc] != 0) return false;
  return true;
}

// p/q = X mod M with |p|, q bounded by sqrt(M/2), via the half Euclid
bool rational_reconstruct(const boost::multiprecision::mpz_int& x,
                          const boost::multiprecision::mpz_int& m,
                          Rational& out) {
  using boost::multiprecision::mpz_int;
  const mpz_int half = m / 2;
  mpz_int bound = boost::multiprecision::sqrt(half);
  mpz_int r0 = m, r1 = x % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    const mpz_int q = r0 / r1;
    mpz_int r2 = r0 - q * r1;
    mpz_int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return false;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  if (t1 > bound) return false;
  if (boost::multiprecision::gcd(r1, t1) != 1) return false;
  out = Rational(r1, t1);
  return true;
}

bool verify_stationary(
    const std::vector<std::vector<std::pair<int, Rational>>>& rows,
    const std::vector<Rational>& exit_rate, const std::vector<Rational>& pi) {
  const int n = static_cast<int>(rows.size());
  std::vector<Rational> inflow(n, Rational(0));
  Rational total(0);
  for (int u = 0; u < n; ++u) {
    total += pi[u];
    for (const auto& [v, r] : rows[u]) inflow[v] += pi[u] * r;
  }
  if (total != 1) return false;
  for (int u = 0; u < n; ++u) {
    if (pi[u] < 0) return false;
    if (inflow[u] != pi[u] * exit_rate[u]) return false;
  }
  return true;
}

// Multi-modular null-space solve: GF(p) eliminations, Chinese remaindering,
// rational reconstruction, then an exact pi Q = 0 certificate. Stationary
// probabilities are ratios of monomial sums in the rates, so a handful of
// 31-bit primes reconstructs them.
std::vector<Rational> stationary_solve_modular(
    const std::vector<std::vector<std::pair<int, Rational>>>& rows,
    const std::vector<Rational>& exit_rate) {
  using boost::multiprecision::mpz_int;
  const int n = static_cast<int>(rows.size());
  std::vector<mpz_int> acc(n, 0);
  mpz_int modulus = 1;
  std::uint32_t candidate = 0xFFFFFFFFu;
  int bad_primes = 0;
  while (bad_primes < 64) {
    while (!is_prime_u32(candidate)) --candidate;
    const std::uint64_t p = candidate--;
    std::vector<std::uint64_t> xp;
    if (!solve_mod_p(rows, exit_rate, p, xp)) {
      ++bad_primes;
      continue;
    }
    // CRT fold into (acc mod modulus*p)
    const mpz_int pz(static_cast<unsigned long>(p));
    std::uint64_t minv_p = 1;
    {
      mpz_int mm = modulus % pz;
      if (mm == 0) continue;
      minv_p = powmod(mm.convert_to<std::uint64_t>(), p - 2, p);
    }
    for (int i = 0; i < n; ++i) {
      mpz_int cur = acc[i] % pz;
      std::uint64_t curp = cur.convert_to<std::uint64_t>();
      const std::uint64_t delta = (xp[i] + p - curp % p) % p;
      acc[i] += modulus * mpz_int(static_cast<unsigned long>(
                              mulmod(delta, minv_p, p)));
    }
    modulus *= pz;

    std::vector<Rational> pi(n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      ok = rational_reconstruct(acc[i], modulus, pi[i]);
    if (ok && verify_stationary(rows, exit_rate, pi)) return pi;
  }
  throw std::runtime_error(
      "stationary_solve: modular reconstruction failed (reducible chain?)");
}

}  // namespace

namespace detail {

std::vector<Rational> stationary_solve(
    const std::vector<std::vector<std::pair<int, Rational>>>& rows,
    const std::vector<Rational>& exit_rate) {
  if (rows.size() > 48) return stationary_solve_modular(rows, exit_rate);
  return stationary_solve_dense(rows, exit_rate);
}

std::vector<Rational> stationary_solve_dense(
    const std::vector<std::vector<std::pair<int, Rational>>>& rows,
    const std::vector<Rational>& exit_rate) {
  const int n = static_cast<int>(rows.size());
  // A = Q^T augmented with the normalization row sum(pi) = 1
  std::vector<std::vector<Rational>> a(
      n + 1, std::vector<Rational>(static_cast<std::size_t>(n) + 1, Rational(0)));
  for (int u = 0; u < n; ++u) {
    a[u][u] -= exit_rate[u];
    for (const auto& [v, r] : rows[u]) a[v][u] += r;
  }
  for (int c = 0; c < n; ++c) a[n][c] = 1;
  a[n][n] = 1;  // rhs of the normalization row

  // Gauss-Jordan with deterministic first-nonzero pivoting
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < n && rank <= n; ++c) {
    int piv = -1;
    for (int r = rank; r <= n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    const Rational p = a[rank][c];
    for (int cc = 0; cc <= n; ++cc) a[rank][cc] /= p;
    for (int r = 0; r <= n; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (int cc = c; cc <= n; ++cc) a[r][cc] -= f * a[rank][cc];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank != n)
    throw std::runtime_error("stationary_solve: rank deficiency (reducible?)");
  std::vector<Rational> pi(n, Rational(0));
  for (int r = 0; r < rank; ++r) pi[pivot_col[r]] = a[r][n];
  Rational total(0);
  for (const Rational& p : pi) {
    if (p < 0) throw std::runtime_error("stationary_solve: negative entry");
    total += p;
  }
  if (total != 1) throw std::runtime_error("stationary_solve: not normalized");
  return pi;
}

}  // namespace detail

bool check_lumping(const Content& content, const ColorMap& phi,
                   const RateVector& beta, std::uint64_t cap) {
  const auto states = enumerate_configurations(content, cap);
  const int L = static_cast<int>(content.site_count());
  for (const auto& u : states)
    for (int j = 0; j < L; ++j)
      if (recolor(phi, apply_bell(u, j)) != apply_bell(recolor(phi, u), j))
        return false;

  // pushforward of the stationary distribution vs stationary of the
  // recoloured chain
  const auto gen = build_generator(content, beta, cap);
  const auto pi = exact_stationary(gen);
  std::map<Configuration, Rational> pushed;
  for (std::size_t i = 0; i < pi.states.size(); ++i)
    pushed[recolor(phi, pi.states[i])] += pi.probabilities[i];

  const Configuration image0 = recolor(phi, states.front());
  bool degenerate = true;
  for (int v : image0)
    if (v != 0) degenerate = false;
  if (degenerate) {
    // phi crushed every species to vacancy; the lumped chain is a single
    // frozen state
    return pushed.size() == 1 && pushed.begin()->second == 1;
  }
  const Content lumped = Content::of_configuration(image0);
  const auto lumped_pi = exact_stationary(build_generator(lumped, beta, cap));
  for (std::size_t i = 0; i < lumped_pi.states.size(); ++i) {
    auto it = pushed.find(lumped_pi.states[i]);
    const Rational p = it == pushed.end() ? Rational(0) : it->second;
    if (p != lumped_pi.probabilities[i]) return false;
  }
  return true;
}

}  // namespace pushlab
