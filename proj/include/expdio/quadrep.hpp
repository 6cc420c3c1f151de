#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "expdio/arith.hpp"

namespace expdio {

/// D1 X^2 + D2 Y^2 = k^Z with gcd(X, Y) = 1, searched for 1 <= Z <= z_max.
struct RepresentationInstance {
  std::uint64_t d1 = 1;
  std::uint64_t d2 = 1;
  std::uint64_t k = 2;
  unsigned z_max = 1;
};

struct Representation {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  unsigned z = 0;
  auto operator<=>(const Representation&) const = default;
};

/// Checks gcd(D1, D2) = 1, gcd(k, D1 D2) = 1, k odd, D1 D2 not in {1, 3},
/// and that k^z_max fits the 64-bit scan.
void validate(const RepresentationInstance& inst);

/// Exhaustive scan over X <= sqrt(k^Z / D1); `scan_factor` widens the X range
/// for self-consistency checks. Results sorted by (Z, X, Y).
std::vector<Representation> enumerate_solutions(const RepresentationInstance& inst, unsigned scan_factor = 1);

struct SolutionClass {
  Representation minimal;
  std::vector<Representation> members;  // includes the minimal element
};

struct Classification {
  std::vector<SolutionClass> classes;
  std::uint64_t class_limit = 0;   // 2^(omega(k) - 1)
  std::uint64_t class_number = 0;  // h(-4 D1 D2)
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// True iff X sqrt(D1) + Y sqrt(-D2) = lambda1 (X1 sqrt(D1) + lambda2 Y1 sqrt(-D2))^t
/// for some admissible units lambda1 and some lambda2 in {1, -1}.
bool in_class_of(const RepresentationInstance& inst, const Representation& minimal, const Representation& s);

/// Groups solutions into classes generated by powers of a minimal solution and
/// checks the class-count and minimal-exponent divisibility claims.
Classification classify(const RepresentationInstance& inst, const std::vector<Representation>& sols);

unsigned distinct_prime_count(std::uint64_t k);

enum class DescentShape {
  TwistedByNMinus1,  // (n-1) x0^2 + y0^2 = n^z0, element x0 sqrt(-(n-1)) + y0
  Gaussian,          // x0^2 + y0^2 = n^z0, element x0 sqrt(-1) + y0
};

/// Confirms that no coprime (x0, y0) on the norm equation n^z0 gives an
/// expansion of degree `e` whose coefficients match the required powers:
///   e = 2: 2 x0 y0 = +-(n-1)^j (imaginary part only)
///   e = 3: imaginary part +-(n-1)^j and real part +-(n+2)^i with i >= 1
/// where j >= 0 for the twisted shape (x odd) and j >= 1 for the Gaussian
/// shape (x even). Returns true when the impossibility holds.
bool descent_square_cube_check(std::uint64_t n, unsigned z0, unsigned e,
                               DescentShape shape = DescentShape::TwistedByNMinus1);

}  // namespace expdio
