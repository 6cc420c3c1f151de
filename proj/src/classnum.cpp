#include "expdio/classnum.hpp"

#include <numeric>

namespace expdio {

Interval hua_upper_bound_enclosure(std::uint64_t D, Precision precision) {
  if (D == 0) throw DomainError("hua_upper_bound: D must be positive");
  const Precision p{std::max(precision.bits, Precision::from_digits(30).bits)};
  const Interval root = sqrt(Interval::from_integer(p, Integer(static_cast<unsigned long>(D))));
  const Interval two_e = Interval::euler(p) * 2;
  return root * 4 / Interval::pi(p) * log(two_e * root);
}

double hua_upper_bound(std::uint64_t D) { return hua_upper_bound_enclosure(D).upper_double(); }

std::uint64_t count_reduced_forms(std::uint64_t D) {
  if (D == 0) throw DomainError("class number: D must be positive");
  const std::uint64_t disc = 4 * D;  // |b^2 - 4ac|
  std::uint64_t h = 0;
  // reduced forms satisfy 3a^2 <= |disc|
  for (std::uint64_t a = 1; 3 * a * a <= disc; ++a) {
    for (std::int64_t b = -static_cast<std::int64_t>(a) + 1; b <= static_cast<std::int64_t>(a); ++b) {
      const std::uint64_t b2 = static_cast<std::uint64_t>(b * b);
      if ((b2 + disc) % (4 * a) != 0) continue;
      const std::uint64_t c = (b2 + disc) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      const std::uint64_t g = std::gcd(std::gcd(a, static_cast<std::uint64_t>(b < 0 ? -b : b)), c);
      if (g != 1) continue;
      ++h;
    }
  }
  return h;
}

ClassNumberResult class_number_exact(std::uint64_t D) {
  return {D, count_reduced_forms(D), hua_upper_bound(D)};
}

}  // namespace expdio
