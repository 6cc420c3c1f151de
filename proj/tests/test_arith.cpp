#include <doctest.h>

#include <random>

#include "expdio/arith.hpp"
#include "oracles.hpp"

using namespace expdio;

TEST_CASE("jacobi small values") {
  CHECK(jacobi(2, 7) == 1);
  CHECK(jacobi(2, 5) == -1);
  CHECK(jacobi(6, 9) == 0);
  CHECK(jacobi(0, 1) == 1);
  CHECK(jacobi(-1, 7) == -1);
  CHECK_THROWS_AS(jacobi(3, 8), DomainError);
  CHECK_THROWS_AS(jacobi(Integer(3), Integer(-5)), DomainError);
}

TEST_CASE("jacobi agrees with GMP and is multiplicative") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t m = (rng() % 200000) | 1;
    const std::int64_t a = static_cast<std::int64_t>(rng() % 400000) - 200000;
    const std::int64_t b = static_cast<std::int64_t>(rng() % 400000) - 200000;
    const Integer A(static_cast<long>(a)), M(static_cast<unsigned long>(m));
    CHECK(jacobi(a, m) == mpz_jacobi(A.get_mpz_t(), M.get_mpz_t()));
    CHECK(jacobi(a, m) * jacobi(b, m) == jacobi(Integer(A * b), M));
  }
}

TEST_CASE("jacobi on large odd moduli") {
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), 3, 301);
  m += 2;
  for (long a = -50; a <= 50; ++a) {
    CHECK(jacobi(Integer(a), m) == mpz_jacobi(Integer(a).get_mpz_t(), m.get_mpz_t()));
  }
}

TEST_CASE("mod_pow") {
  CHECK(mod_pow(5, 2, 9) == 7);
  CHECK(mod_pow(7, 0, 13) == 1);
  CHECK(mod_pow(3, 100, 8) == 1);
  CHECK(mod_pow(7, 0, 1) == 0);
  CHECK_THROWS_AS(mod_pow(2, 3, 0), DomainError);
  for (std::uint64_t b = 0; b < 20; ++b) {
    for (std::uint64_t m = 1; m < 40; ++m) {
      std::uint64_t naive = 1 % m;
      for (std::uint64_t e = 0; e <= 1000; ++e) {
        if (e % 97 == 0 || e < 10) REQUIRE(mod_pow(b, e, m) == naive);
        naive = naive * b % m;
      }
    }
  }
  const Integer big = mod_pow(Integer(3), Integer(1000), Integer("1000000000000000000000007"));
  Integer ref;
  mpz_powm(ref.get_mpz_t(), Integer(3).get_mpz_t(), Integer(1000).get_mpz_t(),
           Integer("1000000000000000000000007").get_mpz_t());
  CHECK(big == ref);
}

TEST_CASE("integer_nth_root") {
  CHECK(integer_nth_root(Integer(27), 3).root == 3);
  CHECK(integer_nth_root(Integer(27), 3).exact);
  CHECK(integer_nth_root(Integer(26), 3).root == 2);
  CHECK_FALSE(integer_nth_root(Integer(26), 3).exact);
  CHECK(integer_nth_root(Integer(1), 7).root == 1);
  CHECK(integer_nth_root(Integer(1), 7).exact);
  CHECK(integer_nth_root(Integer(0), 4).root == 0);
  CHECK_THROWS_AS(integer_nth_root(Integer(5), 0), DomainError);

  std::mt19937_64 rng(5);
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(7);
  for (int i = 0; i < 400; ++i) {
    const Integer x = gr.get_z_bits(1 + rng() % 3000);
    const unsigned long k = 1 + rng() % 40;
    const auto r = integer_nth_root(x, k);
    Integer ref;
    const bool exact = mpz_root(ref.get_mpz_t(), x.get_mpz_t(), k) != 0;
    CHECK(r.root == ref);
    CHECK(r.exact == exact);
    Integer lo, hi;
    mpz_pow_ui(lo.get_mpz_t(), r.root.get_mpz_t(), k);
    const Integer next = r.root + 1;
    mpz_pow_ui(hi.get_mpz_t(), next.get_mpz_t(), k);
    CHECK(lo <= x);
    CHECK(x < hi);
  }
}

TEST_CASE("power_exponent_of") {
  CHECK(power_exponent_of(Integer(243), Integer(3)) == 5u);
  CHECK_FALSE(power_exponent_of(Integer(244), Integer(3)).has_value());
  CHECK(power_exponent_of(Integer(9), Integer(9)) == 1u);
  CHECK_FALSE(power_exponent_of(Integer(1), Integer(9)).has_value());
  CHECK_THROWS_AS(power_exponent_of(Integer(8), Integer(1)), DomainError);
  for (unsigned long b : {2ul, 3ul, 10ul, 2593ul, 65535ul}) {
    for (unsigned long e : {1ul, 2ul, 17ul, 300ul, 4001ul}) {
      Integer x;
      mpz_ui_pow_ui(x.get_mpz_t(), b, e);
      CHECK(power_exponent_of(x, Integer(b)) == e);
      CHECK_FALSE(power_exponent_of(x + 1, Integer(b)).has_value());
      CHECK_FALSE(power_exponent_of(x - 1, Integer(b)).has_value());
      CHECK_FALSE(power_exponent_of(x * (b + 1), Integer(b)).has_value());
    }
  }
  // 4^k is a power of 2 with exponent 2k, and 8 is not a power of 4
  CHECK(power_exponent_of(Integer(1024), Integer(4)) == 5u);
  CHECK_FALSE(power_exponent_of(Integer(8), Integer(4)).has_value());
}

TEST_CASE("multiplicative_order") {
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK(multiplicative_order(3, 8) == 2);
  CHECK(multiplicative_order(5, 11) == 5);
  CHECK_THROWS_AS(multiplicative_order(6, 9), DomainError);
  CHECK_THROWS_AS(multiplicative_order(1, 1), DomainError);
  for (std::uint64_t m = 2; m < 300; ++m) {
    for (std::uint64_t a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      std::uint64_t e = 1, v = a % m;
      while (v != 1) {
        v = v * a % m;
        ++e;
      }
      REQUIRE(multiplicative_order(a, m) == e);
    }
  }
}

TEST_CASE("multiplicative order divides the Carmichael function") {
  std::mt19937_64 rng(3);
  for (std::uint64_t m = 2; m <= 100000; m += 1 + rng() % 37) {
    const std::uint64_t lambda = carmichael_lambda(m);
    for (int i = 0; i < 3; ++i) {
      const std::uint64_t a = 1 + rng() % (m - 1 ? m - 1 : 1);
      if (std::gcd(a, m) != 1) continue;
      CHECK(lambda % multiplicative_order(a, m) == 0);
    }
  }
  CHECK(carmichael_lambda(8) == 2);
  CHECK(carmichael_lambda(15) == 4);
  CHECK(carmichael_lambda(2) == 1);
}

TEST_CASE("factor_u64 and primality") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t n = 2 + rng() % 1'000'000'000'000ULL;
    Integer prod = 1;
    for (const auto& pp : factor_u64(n)) {
      CHECK(is_prime_u64(pp.prime));
      for (unsigned j = 0; j < pp.exponent; ++j) prod *= static_cast<unsigned long>(pp.prime);
    }
    CHECK(prod == static_cast<unsigned long>(n));
    CHECK(is_prime_u64(n) == oracle::is_prime(n));
  }
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));
  CHECK(primes_up_to(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}
