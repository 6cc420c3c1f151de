#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expdio/arith.hpp"

namespace expdio {

inline constexpr const char* kToolVersion = "expdio 1.0.0";

/// a^x + b^y = c^z. a = 1 is allowed for the degenerate n = 2 family member.
struct EquationInstance {
  std::uint64_t a = 2;
  std::uint64_t b = 2;
  std::uint64_t c = 2;

  static EquationInstance family(std::uint64_t n) { return {n - 1, n + 2, n}; }
  std::string to_string() const;
  bool operator==(const EquationInstance&) const = default;
};

void validate(const EquationInstance& eq);

enum class Parity { Any, Odd, Even };

std::string to_string(Parity p);
Parity parse_parity(const std::string& s);

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

struct ExponentRange {
  std::uint64_t lo = 1;
  std::uint64_t hi = kUnbounded;  // inclusive
  Parity parity = Parity::Any;

  static ExponentRange upto(std::uint64_t hi, Parity p = Parity::Any) { return {1, hi, p}; }
  static ExponentRange fixed(std::uint64_t v) { return {v, v, Parity::Any}; }
  bool bounded() const { return hi != kUnbounded; }
  bool contains(std::uint64_t e) const;
  /// Least admissible exponent >= lo, if any.
  std::optional<std::uint64_t> first() const;
  bool operator==(const ExponentRange&) const = default;
};

struct SearchRange {
  ExponentRange x;
  ExponentRange y;
  ExponentRange z;

  static SearchRange upto(std::uint64_t x_max, std::uint64_t y_max, std::uint64_t z_max) {
    return {ExponentRange::upto(x_max), ExponentRange::upto(y_max), ExponentRange::upto(z_max)};
  }
  bool operator==(const SearchRange&) const = default;
};

/// n = 0 for solutions of a standalone equation.
struct Solution {
  std::uint64_t n = 0;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t z = 0;
  auto operator<=>(const Solution&) const = default;
};

/// n in [n_lo, n_hi] with n = residue (mod modulus).
struct FamilyRange {
  std::uint64_t n_lo = 2;
  std::uint64_t n_hi = 2;
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;
  bool operator==(const FamilyRange&) const = default;
};

enum class CertificateKind { SolutionList, ExhaustiveEmpty, CongruenceEmpty, SieveEmpty };

std::string to_string(CertificateKind k);
CertificateKind parse_certificate_kind(const std::string& s);

struct Certificate {
  CertificateKind kind = CertificateKind::ExhaustiveEmpty;
  std::string label;
  std::optional<EquationInstance> equation;
  std::optional<FamilyRange> family;
  SearchRange range;
  std::vector<std::uint64_t> moduli;  // congruence modulus, or sieve moduli
  std::vector<Solution> solutions;
  std::map<std::string, std::uint64_t> stats;
  std::vector<Certificate> parts;
  unsigned precision_digits = 0;
  std::string tool_version = kToolVersion;

  bool operator==(const Certificate&) const = default;
};

/// The first `count` primes not dividing a*b*c.
std::vector<std::uint64_t> default_sieve_moduli(const EquationInstance& eq, std::size_t count = 6);

/// All (x, y, z) in range with a^x + b^y = c^z, sorted. z must be bounded;
/// x must be bounded when a = 1. Passing `sieve` prefilters (x, z) pairs by
/// residue feasibility before any big-integer work.
Certificate solve_general(const EquationInstance& eq, const SearchRange& range,
                          const std::optional<std::vector<std::uint64_t>>& sieve = std::nullopt);

/// Residues of base^e mod m over the admissible e of `r`, sorted.
std::vector<std::uint64_t> exponent_residues(std::uint64_t base, const ExponentRange& r, std::uint64_t m);

/// The least m in [m_min, m_max] for which no residue triple is consistent, or empty.
std::optional<Certificate> congruence_certificate(const EquationInstance& eq, const SearchRange& range,
                                                  std::uint64_t m_max, std::uint64_t m_min = 2);

/// Re-derives the residue tables of a congruence-empty certificate by direct
/// modular exponentiation over a Carmichael-period window and confirms that no
/// triple is consistent.
bool recheck_congruence_certificate(const Certificate& cert);

struct SmallNOptions {
  std::uint64_t n_lo = 2;
  std::uint64_t n_hi = 64;
  std::uint64_t exponent_cap = 200;  // all exponents for 2 < n < 7
  std::uint64_t bounded_n_below = 7;  // from here on z < 2n
};

/// Aggregated search over the family for small n, one part per n. n = 2 is
/// settled by a congruence certificate since 1^x + 4^y = 2^z degenerates.
Certificate family_search_small_n(const SmallNOptions& opts = {});

struct X1Options {
  std::uint64_t n_lo = 71;
  std::uint64_t n_hi = 2591;  // inclusive
  std::uint64_t modulus = 8;
  std::uint64_t residue = 7;
  std::uint64_t y_lo = 73;
  std::uint64_t y_hi = 19807;  // inclusive
  unsigned workers = 1;
  unsigned precision_digits = 60;
  std::size_t sieve_primes = 6;
  std::size_t slice_size = 8;  // n values per work unit
  bool self_equation_control = false;
  std::string checkpoint_path;  // empty: no checkpointing
  double time_budget_seconds = 0;  // <= 0: unlimited
  std::size_t max_slices = 0;      // stop after this many work units; 0: no limit
};

struct X1Outcome {
  Certificate certificate;
  bool complete = false;
  std::uint64_t next_n = 0;  // first n not yet searched when incomplete
};

/// n - 1 + (n+2)^y = n^z over the configured range. Each (n, y) gets its z
/// candidates from a certified enclosure of y log(n+2)/log n; candidates are
/// sieved by small primes and only survivors are checked exactly.
X1Outcome family_search_x1(const X1Options& opts = {});

}  // namespace expdio
