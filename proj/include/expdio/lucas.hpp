#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "expdio/arith.hpp"

namespace expdio {

/// Lucas pair given by P = alpha + beta and Q = alpha * beta.
struct LucasPair {
  std::int64_t P = 0;
  std::int64_t Q = 0;

  constexpr std::int64_t discriminant() const { return P * P - 4 * Q; }
  bool operator==(const LucasPair&) const = default;
};

/// gcd(P, Q) = 1, P != 0, Q != 0, and alpha/beta is not a root of unity.
bool is_valid(const LucasPair& pair);
void validate(const LucasPair& pair);

/// (P, Q) ~ (-P, Q): flipping the signs of alpha and beta.
constexpr bool same_up_to_sign(const LucasPair& a, const LucasPair& b) {
  return a.Q == b.Q && (a.P == b.P || a.P == -b.P);
}

Integer lucas_u(const LucasPair& pair, unsigned k);

/// u_0 .. u_k inclusive.
std::vector<Integer> lucas_sequence(const LucasPair& pair, unsigned k);

struct PrimitiveDivisor {
  enum class Status {
    None,          // u_k has no primitive divisor
    Found,         // prime holds the least primitive divisor
    Undetermined,  // one exists, but its least prime is beyond trial division
  };
  Status status = Status::None;
  std::optional<Integer> prime;
  Integer primitive_part;  // u_k with every prime of E*u_1*...*u_{k-1} removed

  bool exists() const { return status != Status::None; }
};

PrimitiveDivisor primitive_divisor(const LucasPair& pair, unsigned k);
bool is_defective(const LucasPair& pair, unsigned k);

/// alpha = (rational + coeff * sqrt(radicand)) / denominator, beta its conjugate.
struct QuadraticSurd {
  std::int64_t rational = 0;
  std::int64_t coeff = 0;
  std::int64_t radicand = 0;
  std::int64_t denominator = 1;

  constexpr LucasPair lucas_pair() const {
    return {2 * rational / denominator,
            (rational * rational - coeff * coeff * radicand) / (denominator * denominator)};
  }
  // P and Q computed above are exact only when these divisions have no remainder.
  constexpr bool integral() const {
    const std::int64_t d2 = denominator * denominator;
    return (2 * rational) % denominator == 0 && (rational * rational - coeff * coeff * radicand) % d2 == 0;
  }
};

struct DefectiveEntry {
  unsigned index = 0;
  QuadraticSurd alpha;
  LucasPair pair;
};

/// Every Lucas pair, up to sign, whose u_k has no primitive divisor for odd 4 < k <= 30.
std::span<const DefectiveEntry> defective_table();

/// Pairs from the table at index k. Requires k odd and 4 < k <= 30.
std::vector<LucasPair> defective_table_lookup(unsigned k);

}  // namespace expdio
