#include "expdio/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace expdio {

namespace {

constexpr std::uint32_t kTrialDivisionLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kTrialDivisionLimit);
  return primes;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  std::uint64_t x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

int jacobi(const Integer& a_in, const Integer& m_in) {
  if (m_in <= 0 || mpz_even_p(m_in.get_mpz_t())) {
    throw DomainError("jacobi: modulus must be odd and positive");
  }
  Integer m = m_in;
  Integer a = a_in % m;
  if (a < 0) a += m;
  int result = 1;
  while (a != 0) {
    const mp_bitcnt_t twos = mpz_scan1(a.get_mpz_t(), 0);
    if (twos > 0) {
      mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
      const unsigned long m8 = mpz_fdiv_ui(m.get_mpz_t(), 8);
      if ((twos & 1) && (m8 == 3 || m8 == 5)) result = -result;
    }
    // reciprocity flips the sign when both are 3 mod 4
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) result = -result;
    std::swap(a, m);
    a %= m;
  }
  return m == 1 ? result : 0;
}

int jacobi(std::int64_t a_in, std::uint64_t m) {
  if (m == 0 || (m & 1) == 0) throw DomainError("jacobi: modulus must be odd and positive");
  std::uint64_t a = a_in >= 0 ? static_cast<std::uint64_t>(a_in) % m
                              : (m - (static_cast<std::uint64_t>(-(a_in + 1)) + 1) % m) % m;
  int result = 1;
  while (a != 0) {
    const int twos = std::countr_zero(a);
    a >>= twos;
    if ((twos & 1) && ((m & 7) == 3 || (m & 7) == 5)) result = -result;
    if ((a & 3) == 3 && (m & 3) == 3) result = -result;
    std::swap(a, m);
    a %= m;
  }
  return m == 1 ? result : 0;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("mod_pow: modulus must be positive");
  if (modulus == 1) return 0;
  std::uint64_t result = 1;
  base %= modulus;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exp >>= 1;
  }
  return result;
}

Integer mod_pow(const Integer& base, const Integer& exp, const Integer& modulus) {
  if (modulus <= 0) throw DomainError("mod_pow: modulus must be positive");
  if (exp < 0) throw DomainError("mod_pow: exponent must be non-negative");
  Integer result;
  mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return result;
}

RootResult integer_nth_root(const Integer& x, unsigned long k) {
  if (k == 0) throw DomainError("integer_nth_root: k must be positive");
  if (x < 0) throw DomainError("integer_nth_root: x must be non-negative");
  if (k == 1 || x <= 1) return {x, true};

  // 2^ceil(bits/k) is an overestimate, so the Newton sequence decreases to the floor.
  const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  Integer r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), (bits + k - 1) / k);
  Integer power;
  while (true) {
    mpz_pow_ui(power.get_mpz_t(), r.get_mpz_t(), k - 1);
    Integer next = (Integer(k - 1) * r + x / power) / k;
    if (next >= r) break;
    r = next;
  }
  mpz_pow_ui(power.get_mpz_t(), r.get_mpz_t(), k);
  return {r, power == x};
}

std::optional<std::uint64_t> power_exponent_of(const Integer& x, const Integer& base) {
  if (x < 1) throw DomainError("power_exponent_of: x must be positive");
  if (base < 2) throw DomainError("power_exponent_of: base must be at least 2");
  if (x == 1) return std::nullopt;
  if (!mpz_divisible_p(x.get_mpz_t(), base.get_mpz_t())) return std::nullopt;

  long x_exp = 0;
  long b_exp = 0;
  const double x_mant = mpz_get_d_2exp(&x_exp, x.get_mpz_t());
  const double b_mant = mpz_get_d_2exp(&b_exp, base.get_mpz_t());
  const double log2_x = static_cast<double>(x_exp) + std::log2(x_mant);
  const double log2_b = static_cast<double>(b_exp) + std::log2(b_mant);
  const double estimate = log2_x / log2_b;
  // Relative error of each log2 is a few ulps; 1e-9 leaves a wide margin.
  const double allowance = 1e-9 * (std::abs(estimate) + 1.0);

  if (allowance < 0.25) {
    const double nearest = std::round(estimate);
    if (std::abs(estimate - nearest) > allowance || nearest < 1.0) return std::nullopt;
    const auto e = static_cast<std::uint64_t>(nearest);
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), e);
    if (power == x) return e;
    return std::nullopt;
  }

  Integer rest = x;
  std::uint64_t e = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), base.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
    ++e;
  }
  if (rest == 1) return e;
  return std::nullopt;
}

std::vector<PrimePower> factor_u64(std::uint64_t n) {
  if (n == 0) throw DomainError("factor_u64: zero has no factorization");
  std::vector<PrimePower> factors;
  for (const std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p != 0) continue;
    PrimePower pp{p, 0};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
    }
    factors.push_back(pp);
  }
  if (n > 1) {
    if (!is_prime_u64(n)) throw DomainError("factor_u64: cofactor beyond trial-division reach");
    factors.push_back({n, 1});
  }
  return factors;
}

std::uint64_t carmichael_lambda(std::uint64_t m) {
  if (m == 0) throw DomainError("carmichael_lambda: m must be positive");
  std::uint64_t lambda = 1;
  for (const auto& [p, e] : factor_u64(m)) {
    std::uint64_t term = p - 1;
    for (unsigned i = 1; i < e; ++i) term *= p;
    if (p == 2 && e >= 3) term /= 2;
    lambda = std::lcm(lambda, term);
  }
  return lambda;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m < 2) throw DomainError("multiplicative_order: modulus must be at least 2");
  if (std::gcd(a % m, m) != 1) throw DomainError("multiplicative_order: gcd(a, m) > 1");
  std::uint64_t order = carmichael_lambda(m);
  for (const auto& [p, e] : factor_u64(order)) {
    for (unsigned i = 0; i < e; ++i) {
      if (mod_pow(a, order / p, m) != 1) break;
      order /= p;
    }
  }
  return order;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (const std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 2^64.
  for (const std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

}  // namespace expdio
