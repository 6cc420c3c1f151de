#include "expdio/quadrep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <utility>

#include "expdio/classnum.hpp"

namespace expdio {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kDescentCeiling = 1'000'000'000'000ULL;

/// u + v sqrt(-D)
struct RingElement {
  Integer u;
  Integer v;
  bool operator==(const RingElement&) const = default;
};

RingElement multiply(const RingElement& a, const RingElement& b, const Integer& D) {
  return {a.u * b.u - D * a.v * b.v, a.u * b.v + a.v * b.u};
}

RingElement power(RingElement base, unsigned t, const Integer& D) {
  RingElement result{1, 0};
  while (t > 0) {
    if (t & 1) result = multiply(result, base, D);
    base = multiply(base, base, D);
    t >>= 1;
  }
  return result;
}

// (X sqrt(D1) + Y sqrt(-D2))^2 lands in Z[sqrt(-D1 D2)].
RingElement squared(const RepresentationInstance& inst, std::uint64_t x, std::uint64_t y, int sign) {
  const Integer X(static_cast<unsigned long>(x));
  const Integer Y(static_cast<unsigned long>(y));
  const Integer D1(static_cast<unsigned long>(inst.d1));
  const Integer D2(static_cast<unsigned long>(inst.d2));
  return {D1 * X * X - D2 * Y * Y, sign * 2 * X * Y};
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= base;
    if (r > static_cast<u128>(kDescentCeiling) * 1'000'000) throw DomainError("power exceeds the 64-bit scan range");
  }
  return static_cast<std::uint64_t>(r);
}

bool is_perfect_square(u128 v, std::uint64_t& root) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (static_cast<u128>(r) * r > v) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
  root = r;
  return static_cast<u128>(r) * r == v;
}

/// |value| = base^j for some j >= min_exp.
bool is_signed_power(const Integer& value, std::uint64_t base, unsigned min_exp) {
  const Integer mag = abs(value);
  if (mag == 0) return false;
  if (mag == 1) return min_exp == 0;
  const auto e = power_exponent_of(mag, Integer(static_cast<unsigned long>(base)));
  return e.has_value() && *e >= min_exp;
}

}  // namespace

void validate(const RepresentationInstance& inst) {
  if (inst.d1 == 0 || inst.d2 == 0) throw DomainError("quadrep: D1 and D2 must be positive");
  if (std::gcd(inst.d1, inst.d2) != 1) throw DomainError("quadrep: gcd(D1, D2) must be 1");
  if (inst.k < 2) throw DomainError("quadrep: k must be at least 2");
  if (inst.k % 2 == 0) throw DomainError("quadrep: k must be odd for the lambda = 1 branch");
  const std::uint64_t D = inst.d1 * inst.d2;
  if (std::gcd(inst.k, D) != 1) throw DomainError("quadrep: gcd(k, D1 D2) must be 1");
  if (D == 1 || D == 3) throw DomainError("quadrep: D1 D2 in {1, 3} is outside the supported branch");
  if (inst.z_max == 0) throw DomainError("quadrep: z_max must be positive");
  checked_pow(inst.k, inst.z_max);
}

unsigned distinct_prime_count(std::uint64_t k) { return static_cast<unsigned>(factor_u64(k).size()); }

std::vector<Representation> enumerate_solutions(const RepresentationInstance& inst, unsigned scan_factor) {
  validate(inst);
  if (scan_factor == 0) throw DomainError("enumerate_solutions: scan_factor must be positive");
  std::vector<Representation> sols;
  u128 target = 1;
  for (unsigned z = 1; z <= inst.z_max; ++z) {
    target *= inst.k;
    // X ranges up to scan_factor * sqrt(target / D1)
    const u128 x_limit_sq = target * scan_factor * scan_factor / inst.d1;
    for (std::uint64_t x = 1; static_cast<u128>(x) * x <= x_limit_sq; ++x) {
      const u128 d1x2 = static_cast<u128>(inst.d1) * x * x;
      if (d1x2 >= target) continue;
      const u128 rest = target - d1x2;
      if (rest % inst.d2 != 0) continue;
      std::uint64_t y = 0;
      if (!is_perfect_square(rest / inst.d2, y) || y == 0) continue;
      if (std::gcd(x, y) != 1) continue;
      sols.push_back({x, y, z});
    }
  }
  std::sort(sols.begin(), sols.end(), [](const Representation& a, const Representation& b) {
    return std::tie(a.z, a.x, a.y) < std::tie(b.z, b.x, b.y);
  });
  return sols;
}

bool in_class_of(const RepresentationInstance& inst, const Representation& minimal, const Representation& s) {
  if (s.z % minimal.z != 0) return false;
  const unsigned t = s.z / minimal.z;
  const Integer D(static_cast<unsigned long>(inst.d1 * inst.d2));
  // Equality up to lambda1 in {1, -1} is equality of squares; lambda1 in {i, -i}
  // (only for D2 = 1 and even t) flips the sign of the square.
  const bool unit_is_imaginary = inst.d2 == 1 && t % 2 == 0;
  const RingElement lhs = squared(inst, s.x, s.y, 1);
  for (const int lambda2 : {1, -1}) {
    RingElement rhs = power(squared(inst, minimal.x, minimal.y, lambda2), t, D);
    if (unit_is_imaginary) rhs = {-rhs.u, -rhs.v};
    if (rhs == lhs) return true;
  }
  return false;
}

Classification classify(const RepresentationInstance& inst, const std::vector<Representation>& sols) {
  validate(inst);
  Classification result;
  result.class_limit = std::uint64_t{1} << (distinct_prime_count(inst.k) - 1);
  result.class_number = count_reduced_forms(inst.d1 * inst.d2);

  std::vector<Representation> ordered = sols;
  std::sort(ordered.begin(), ordered.end(), [](const Representation& a, const Representation& b) {
    return std::tie(a.z, a.x, a.y) < std::tie(b.z, b.x, b.y);
  });
  for (const auto& s : ordered) {
    auto it = std::find_if(result.classes.begin(), result.classes.end(),
                           [&](const SolutionClass& c) { return in_class_of(inst, c.minimal, s); });
    if (it != result.classes.end()) {
      it->members.push_back(s);
    } else {
      result.classes.push_back({s, {s}});
    }
  }

  if (result.classes.size() > result.class_limit) {
    result.violations.push_back("class count " + std::to_string(result.classes.size()) + " exceeds 2^(omega(k)-1) = " +
                                std::to_string(result.class_limit));
  }
  const bool plain = inst.d1 == 1 || inst.d2 == 1;
  for (const auto& c : result.classes) {
    const std::uint64_t needed = plain ? c.minimal.z : 2ULL * c.minimal.z;
    if (result.class_number % needed != 0) {
      result.violations.push_back("minimal Z1 = " + std::to_string(c.minimal.z) + " fails " +
                                  (plain ? "Z1 | h" : "2 Z1 | h") + " with h = " + std::to_string(result.class_number));
    }
  }
  return result;
}

bool descent_square_cube_check(std::uint64_t n, unsigned z0, unsigned e, DescentShape shape) {
  if (n <= 2) throw DomainError("descent check: n must exceed 2");
  if (z0 == 0) throw DomainError("descent check: z0 must be positive");
  if (e != 2 && e != 3) throw DomainError("descent check: exponent must be 2 or 3");
  u128 norm = 1;
  for (unsigned i = 0; i < z0; ++i) {
    norm *= n;
    if (norm > kDescentCeiling) throw DomainError("descent check: n^z0 exceeds 10^12");
  }
  const std::uint64_t twist = shape == DescentShape::TwistedByNMinus1 ? n - 1 : 1;
  // j counts (x-1)/2 for odd x, or x/2 for even x
  const unsigned min_j = shape == DescentShape::TwistedByNMinus1 ? 0 : 1;

  for (std::uint64_t x0 = 1; static_cast<u128>(twist) * x0 * x0 < norm; ++x0) {
    std::uint64_t y0 = 0;
    if (!is_perfect_square(norm - static_cast<u128>(twist) * x0 * x0, y0) || y0 == 0) continue;
    if (std::gcd(x0, y0) != 1) continue;

    const Integer X(static_cast<unsigned long>(x0));
    const Integer Y(static_cast<unsigned long>(y0));
    const Integer d(static_cast<unsigned long>(twist));
    if (e == 2) {
      if (is_signed_power(2 * X * Y, n - 1, min_j)) return false;
    } else {
      const Integer imag = X * (3 * Y * Y - d * X * X);
      const Integer real = Y * (Y * Y - 3 * d * X * X);
      if (is_signed_power(imag, n - 1, min_j) && is_signed_power(real, n + 2, 1)) return false;
    }
  }
  return true;
}

}  // namespace expdio
