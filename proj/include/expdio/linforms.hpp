#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expdio/interval.hpp"

namespace expdio {

/// Omega = c2 log(phi2) - c1 log(phi1) over rational integers.
struct LinFormInstance {
  std::uint64_t phi1 = 2;
  std::uint64_t phi2 = 3;
  std::uint64_t c1 = 1;
  std::uint64_t c2 = 1;
  unsigned degree = 1;
};

/// No positive p, q with a^p = b^q. Decided by comparing prime exponent
/// vectors up to a scalar multiple; inputs must factor by trial division.
bool multiplicatively_independent(std::uint64_t a, std::uint64_t b);

void validate(const LinFormInstance& inst);

/// Absolute logarithmic height of p/q (any sign, q != 0): log max(|p|, |q|)
/// after reduction to lowest terms.
Interval log_height(const Integer& p, const Integer& q, Precision precision);
Interval log_height(const Integer& m, Precision precision);

/// max{h(phi), |log phi| / D, 1 / D}: the least admissible log B for phi.
Interval admissible_log_b(std::uint64_t phi, unsigned degree, Precision precision);

Interval dprime(const LinFormInstance& inst, const Interval& log_b1, const Interval& log_b2);

/// Lower bound for log |Omega| with C = 25.2 and m = 10:
///   -25.2 D^4 max{log d' + 0.38, 10/D}^2 log B1 log B2.
/// The lower endpoint of the returned enclosure is the certified bound.
Interval laurent_lower_bound(const LinFormInstance& inst, const Interval& log_b1, const Interval& log_b2);

/// |c2 log phi2 - c1 log phi1|.
Interval linear_form_abs(const LinFormInstance& inst, Precision precision);

/// |z log n - y log(n + 2)|.
Interval omega_actual(std::uint64_t n, std::uint64_t y, std::uint64_t z,
                      Precision precision = Precision::from_digits(kDefaultPrecisionDigits));

enum class DprimeBranch { LargeDprime, SmallDprime };

std::string to_string(DprimeBranch branch);

/// One link of the bound derivation. `holds_as_displayed` evaluates the link
/// with the published constants; `holds_sound` evaluates the replacement the
/// pipeline actually relies on (identical when the displayed link is true).
struct ChainStep {
  std::string label;
  std::string claim;
  bool holds_as_displayed = false;
  bool holds_sound = false;
  std::string detail;

  bool operator==(const ChainStep&) const = default;
};

struct BoundResult {
  std::uint64_t n_max = 0;  // every admissible n satisfies n <= n_max
  std::uint64_t y_max = 0;  // every admissible y satisfies y < y_max
  unsigned precision_digits = 0;
  DprimeBranch branch = DprimeBranch::SmallDprime;
  std::uint64_t y_over_log_n_bound = 0;  // large-d' branch: y < K log n
  std::string log_dprime_bound;          // large-d' branch: log d' < this
  std::vector<ChainStep> steps;
};

/// Raised when a link the pipeline depends on fails under certified rounding.
class BoundChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reproduces the bound chain for n - 1 + (n+2)^y = n^z with n = 7 (mod 8),
/// n >= 71, y, z odd, and returns (n_max, y_max) = (2591, 19808).
BoundResult derive_family_bounds(unsigned precision_digits = kDefaultPrecisionDigits);

/// log n / log(n^2 / (n+2)) > (n - 70.99) log n, evaluated at one n.
bool displayed_y_lower_chain_holds(std::uint64_t n, Precision precision);

/// n log n - n eps / 2 > (n - 70.99) log n, the lower bound on y that follows
/// from z - y >= 2 (both odd) and 0 < Omega < eps.
bool parity_y_lower_bound_holds(std::uint64_t n, Precision precision);

}  // namespace expdio
