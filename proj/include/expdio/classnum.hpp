#pragma once

#include <cstdint>

#include "expdio/interval.hpp"

namespace expdio {

struct ClassNumberResult {
  std::uint64_t D = 0;
  std::uint64_t h = 0;        // class number of discriminant -4D
  double hua_bound = 0.0;     // certified, rounded upward
};

/// Enclosure of 4*sqrt(D)/pi * log(2*e*sqrt(D)). Precision is raised to at
/// least 30 significant digits.
Interval hua_upper_bound_enclosure(std::uint64_t D, Precision precision = Precision::from_digits(40));

/// Upper endpoint of the enclosure, rounded up to the next double.
double hua_upper_bound(std::uint64_t D);

/// Number of primitive reduced forms (a, b, c) with b^2 - 4ac = -4D.
std::uint64_t count_reduced_forms(std::uint64_t D);

ClassNumberResult class_number_exact(std::uint64_t D);

}  // namespace expdio
