#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace expdio {

using Integer = mpz_class;

/// Thrown when an argument violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Jacobi symbol (a/m) by binary reciprocity; m must be odd and positive.
int jacobi(const Integer& a, const Integer& m);
int jacobi(std::int64_t a, std::uint64_t m);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);
Integer mod_pow(const Integer& base, const Integer& exp, const Integer& modulus);

struct RootResult {
  Integer root;
  bool exact = false;
};

/// floor(x^(1/k)) by integer Newton iteration, plus whether the root is exact.
RootResult integer_nth_root(const Integer& x, unsigned long k);

/// The exponent e >= 1 with base^e == x, if one exists.
///
/// The candidate comes from a floating-point logarithm ratio with an explicit
/// error allowance; it is always confirmed by exact exponentiation. Inputs
/// whose exponent is too large for the float estimate to be trusted are
/// resolved by repeated exact division instead.
std::optional<std::uint64_t> power_exponent_of(const Integer& x, const Integer& base);

/// Least e >= 1 with a^e = 1 (mod m). Requires m >= 2 and gcd(a, m) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

/// Trial division up to 10^6, then a primality test on the cofactor. Throws
/// DomainError when a composite cofactor with no small factor remains, which
/// cannot happen for n <= 10^12.
std::vector<PrimePower> factor_u64(std::uint64_t n);

std::uint64_t carmichael_lambda(std::uint64_t m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Deterministic below 2^64, strong probable-prime (BPSW-style, via GMP) above.
bool is_probable_prime(const Integer& n);

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

}  // namespace expdio
