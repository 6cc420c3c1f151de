#include "expdio/linforms.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace expdio {

namespace {

Interval rational(Precision p, long num, long den) { return Interval::from_rational(p, Integer(num), Integer(den)); }

Interval integer(Precision p, std::uint64_t v) {
  return Interval::from_integer(p, Integer(static_cast<unsigned long>(v)));
}

Interval power_of(Precision p, std::uint64_t base, unsigned long e) {
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), base, e);
  return Interval::from_integer(p, v);
}

/// The constants of the chain, exactly as published.
struct ChainConstants {
  explicit ChainConstants(Precision p)
      : omega_factor(rational(p, 104, 100)),
        eps_displayed(Interval::from_decimal(p, {36, -137})),
        eps_sound(Interval::from_decimal(p, {37, -137})),
        laurent_c(rational(p, 252, 10)),
        laurent_shift(rational(p, 38, 100)),
        laurent_threshold(Interval(p, 10)),
        large_coeff(rational(p, 24, 100)),
        large_shift(rational(p, 108, 100)),
        displayed_margin(rational(p, 39, 1000)),
        lower_offset(rational(p, 7099, 100)),
        dprime_cap(Interval(p, 3741)),
        log_dprime_cap(rational(p, 823, 100)) {}

  Interval omega_factor;       // 1.04
  Interval eps_displayed;      // 0.36e-135
  Interval eps_sound;          // 0.37e-135
  Interval laurent_c;          // 25.2
  Interval laurent_shift;      // 0.38
  Interval laurent_threshold;  // 10
  Interval large_coeff;        // 0.24
  Interval large_shift;        // 1.08
  Interval displayed_margin;   // 0.039
  Interval lower_offset;       // 70.99
  Interval dprime_cap;         // 3741
  Interval log_dprime_cap;     // 8.23
};

constexpr std::uint64_t kNMin = 71;
constexpr std::uint64_t kYMin = 73;

std::string fmt(const Interval& v, unsigned digits = 12) { return v.to_string(digits); }

// log((n+2)/(n-1)): how far log Omega sits below -(y-1) log(n+2).
Interval sound_margin(Precision p, std::uint64_t n) {
  return log(rational(p, static_cast<long>(n + 2), static_cast<long>(n - 1)));
}

// Omega = log(1 + (n-1)/(n+2)^y) < (n-1)/(n+2)^y; largest at y = 73.
Interval omega_ceiling(Precision p, std::uint64_t n) {
  return integer(p, n - 1) / power_of(p, n + 2, kYMin);
}

struct Admissibility {
  bool admissible;
  Interval y_sup;
};

// (n - 70.99) log n < y < 1 + 25.2*10^2 log n - margin / log(n+2)
Admissibility combine(const ChainConstants& k, Precision p, std::uint64_t n, const Interval& margin) {
  const Interval log_n = log(integer(p, n));
  const Interval log_n2 = log(integer(p, n + 2));
  const Interval y_inf = (integer(p, n) - k.lower_offset) * log_n;
  const Interval small_branch = k.laurent_c * square(k.laurent_threshold);
  const Interval y_sup = Interval(p, 1) + small_branch * log_n - margin / log_n2;
  return {less(y_inf, y_sup), y_sup};
}

std::uint64_t largest_admissible_n(const ChainConstants& k, Precision p, bool sound) {
  std::uint64_t n = kNMin;
  auto margin = [&](std::uint64_t m) { return sound ? sound_margin(p, m) : k.displayed_margin; };
  if (!combine(k, p, n, margin(n)).admissible) throw BoundChainError("n = 71 is already excluded");
  while (combine(k, p, n + 1, margin(n + 1)).admissible) ++n;
  // (n - 2590.99) log n grows without bound, so nothing past a few steps returns.
  for (std::uint64_t m = n + 1; m <= n + 64; ++m) {
    if (combine(k, p, m, margin(m)).admissible) throw BoundChainError("admissible n set is not an interval");
  }
  return n;
}

std::uint64_t strict_y_bound(const ChainConstants& k, Precision p, std::uint64_t n_max, const Interval& margin) {
  const Interval y_sup = combine(k, p, n_max, margin).y_sup;
  const Integer lo = floor_lower(y_sup);
  Integer hi;
  mpfr_get_z(hi.get_mpz_t(), y_sup.upper(), MPFR_RNDD);
  if (lo != hi) throw PrecisionError("y bound straddles an integer: " + fmt(y_sup));
  return lo.get_ui() + 1;
}

// Least K with K > 0.24 + 25.2 (log(K + eps/2) + 1.08)^2 and the gap increasing from K on.
std::uint64_t large_branch_multiplier(const ChainConstants& k, Precision p, const Interval& eps) {
  const Interval half_eps = eps / 2;
  for (std::uint64_t K = 2; K < 1'000'000; ++K) {
    const Interval s = integer(p, K) + half_eps;
    const Interval ls = log(s) + k.large_shift;
    const Interval gap = integer(p, K) - (k.large_coeff + k.laurent_c * square(ls));
    const Interval slope = Interval(p, 1) - k.laurent_c * 2 * ls / s;
    if (certainly_less(Interval(p, 0), gap) && certainly_less(Interval(p, 0), slope)) return K;
    if (!certainly_less(gap, Interval(p, 0)) && !certainly_less(Interval(p, 0), gap)) {
      throw PrecisionError("large-d' fixed point undecided at K = " + std::to_string(K));
    }
  }
  throw BoundChainError("large-d' inequality has no finite multiplier");
}

std::string join_ns(const std::vector<std::uint64_t>& ns) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ns.size(); ++i) out << (i ? "," : "") << ns[i];
  return out.str();
}

}  // namespace

bool multiplicatively_independent(std::uint64_t a, std::uint64_t b) {
  if (a < 2 || b < 2) throw DomainError("multiplicative independence needs integers >= 2");
  const auto fa = factor_u64(a);
  const auto fb = factor_u64(b);
  if (fa.size() != fb.size()) return true;
  // a^p = b^q iff exponent vectors are proportional over the same primes
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i].prime != fb[i].prime) return true;
    if (static_cast<std::uint64_t>(fa[i].exponent) * fb[0].exponent !=
        static_cast<std::uint64_t>(fb[i].exponent) * fa[0].exponent) {
      return true;
    }
  }
  return false;
}

void validate(const LinFormInstance& inst) {
  if (inst.degree == 0) throw DomainError("linear form: degree must be positive");
  if (inst.c1 == 0 || inst.c2 == 0) throw DomainError("linear form: coefficients must be positive");
  if (!multiplicatively_independent(inst.phi1, inst.phi2)) {
    throw DomainError("linear form: phi1 and phi2 are multiplicatively dependent");
  }
}

Interval log_height(const Integer& p, const Integer& q, Precision precision) {
  if (p == 0) throw DomainError("log_height: zero has no height");
  if (q == 0) throw DomainError("log_height: zero denominator");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  const Integer num = abs(p) / g;
  const Integer den = abs(q) / g;
  return log(Interval::from_integer(precision, std::max(num, den)));
}

Interval log_height(const Integer& m, Precision precision) { return log_height(m, Integer(1), precision); }

Interval admissible_log_b(std::uint64_t phi, unsigned degree, Precision precision) {
  if (degree == 0) throw DomainError("admissible_log_b: degree must be positive");
  const Interval h = log_height(Integer(static_cast<unsigned long>(phi)), precision);
  const Interval scaled = abs(log(integer(precision, phi))) / static_cast<long>(degree);
  const Interval floor_term = Interval(precision, 1) / static_cast<long>(degree);
  return max(max(h, scaled), floor_term);
}

Interval dprime(const LinFormInstance& inst, const Interval& log_b1, const Interval& log_b2) {
  if (!log_b1.is_positive() || !log_b2.is_positive()) throw DomainError("dprime: log B values must be positive");
  if (inst.degree == 0) throw DomainError("dprime: degree must be positive");
  const Precision p{std::max(log_b1.precision().bits, log_b2.precision().bits)};
  const auto D = static_cast<long>(inst.degree);
  return integer(p, inst.c1) / (log_b2 * D) + integer(p, inst.c2) / (log_b1 * D);
}

Interval laurent_lower_bound(const LinFormInstance& inst, const Interval& log_b1, const Interval& log_b2) {
  validate(inst);
  const Precision p{std::max(log_b1.precision().bits, log_b2.precision().bits)};
  if (certainly_less(log_b1, admissible_log_b(inst.phi1, inst.degree, p)) ||
      certainly_less(log_b2, admissible_log_b(inst.phi2, inst.degree, p))) {
    throw DomainError("laurent_lower_bound: log B below max{h(phi), |log phi|/D, 1/D}");
  }
  const ChainConstants k(p);
  const auto D = static_cast<long>(inst.degree);
  const Interval shifted = log(dprime(inst, log_b1, log_b2)) + k.laurent_shift;
  const Interval t = max(shifted, k.laurent_threshold / D);
  return -(k.laurent_c * (D * D * D * D) * square(t) * log_b1 * log_b2);
}

Interval linear_form_abs(const LinFormInstance& inst, Precision precision) {
  const Interval v =
      integer(precision, inst.c2) * log(integer(precision, inst.phi2)) -
      integer(precision, inst.c1) * log(integer(precision, inst.phi1));
  return abs(v);
}

Interval omega_actual(std::uint64_t n, std::uint64_t y, std::uint64_t z, Precision precision) {
  if (n < 3) throw DomainError("omega_actual: n must be at least 3");
  if (y == 0 || z == 0) throw DomainError("omega_actual: y and z must be positive");
  return abs(integer(precision, z) * log(integer(precision, n)) -
             integer(precision, y) * log(integer(precision, n + 2)));
}

std::string to_string(DprimeBranch branch) {
  return branch == DprimeBranch::LargeDprime ? "large-dprime" : "small-dprime";
}

bool displayed_y_lower_chain_holds(std::uint64_t n, Precision p) {
  const ChainConstants k(p);
  const Interval log_n = log(integer(p, n));
  const Interval middle = log_n / log(square(integer(p, n)) / integer(p, n + 2));
  return less((integer(p, n) - k.lower_offset) * log_n, middle);
}

bool parity_y_lower_bound_holds(std::uint64_t n, Precision p) {
  const ChainConstants k(p);
  const Interval log_n = log(integer(p, n));
  // (z - y) log n = Omega + y log(1 + 2/n) < eps + 2y/n with z - y >= 2
  const Interval parity_bound = integer(p, n) * log_n - integer(p, n) * omega_ceiling(p, n) / 2;
  return less((integer(p, n) - k.lower_offset) * log_n, parity_bound);
}

BoundResult derive_family_bounds(unsigned precision_digits) {
  const Precision p = Precision::from_digits(precision_digits);
  const ChainConstants k(p);
  BoundResult result;
  result.precision_digits = precision_digits;

  // n_max first: several links are checked pointwise over the admissible n.
  const std::uint64_t n_max = largest_admissible_n(k, p, true);
  const std::uint64_t n_max_displayed_margin = largest_admissible_n(k, p, false);
  if (n_max != n_max_displayed_margin) throw BoundChainError("n bound depends on the Omega margin constant");
  std::vector<std::uint64_t> family_ns;
  for (std::uint64_t n = kNMin; n <= n_max; n += 8) family_ns.push_back(n);

  {
    ChainStep s{"omega-upper", "0 < Omega < 1/(1.04 (n+2)^(y-1)) for n >= 71", false, false, ""};
    std::vector<std::uint64_t> fails;
    for (const auto n : family_ns) {
      // (n-1)/(n+2) <= 1/1.04
      if (!less(integer(p, n - 1) * k.omega_factor, integer(p, n + 2) + Interval::from_decimal(p, {1, -40}))) {
        fails.push_back(n);
      }
    }
    s.holds_as_displayed = fails.empty();
    bool margins_positive = true;
    for (const auto n : family_ns) margins_positive = margins_positive && sound_margin(p, n).is_positive();
    s.holds_sound = margins_positive;
    s.detail = fails.empty() ? "holds at every n = 7 (mod 8) in range"
                             : "1.04 (n-1) > n+2 from n = " + std::to_string(fails.front()) +
                                   "; using Omega < (n-1)/(n+2)^y with margin log((n+2)/(n-1)) > 0";
    result.steps.push_back(s);
  }

  {
    ChainStep s{"epsilon", "1/(1.04 (n+2)^(y-1) log n log(n+2)) < 0.36e-135 for n >= 71, y >= 73", false, false, ""};
    const Interval logs = log(integer(p, kNMin)) * log(integer(p, kNMin + 2));
    const Interval displayed = Interval(p, 1) / (k.omega_factor * power_of(p, kNMin + 2, kYMin - 1) * logs);
    const Interval sound = omega_ceiling(p, kNMin) / logs;
    s.holds_as_displayed = less(displayed, k.eps_displayed);
    s.holds_sound = less(sound, k.eps_sound);
    s.detail = "at (71, 73): displayed expression " + fmt(displayed, 6) + ", sound expression " + fmt(sound, 6) +
               "; pipeline carries 0.37e-135";
    result.steps.push_back(s);
  }

  {
    ChainStep s{"large-dprime-constants", "(log(n+2) - 0.039)/(log n log(n+2)) < 0.24 and log 2 + 0.38 < 1.08",
                false, false, ""};
    const Interval inv_log = Interval(p, 1) / log(integer(p, kNMin));
    const Interval shift = log(Interval(p, 2)) + k.laurent_shift;
    const bool ok = less(inv_log, k.large_coeff) && less(shift, k.large_shift);
    s.holds_as_displayed = ok;
    s.holds_sound = ok;
    s.detail = "1/log 71 = " + fmt(inv_log, 8) + ", log 2 + 0.38 = " + fmt(shift, 8);
    result.steps.push_back(s);
  }

  const std::uint64_t multiplier_displayed = large_branch_multiplier(k, p, k.eps_displayed);
  const std::uint64_t multiplier = large_branch_multiplier(k, p, k.eps_sound);
  result.y_over_log_n_bound = multiplier;
  {
    ChainStep s{"y-over-log-n", "y/log n < 0.24 + 25.2 (log(y/log n + 0.18e-135) + 1.08)^2 gives y < 1870 log n",
                multiplier_displayed == 1870, multiplier == 1870, ""};
    s.detail = "least certified multiplier " + std::to_string(multiplier);
    result.steps.push_back(s);
  }

  {
    ChainStep s{"log-dprime", "d' < 2y/log n + 0.36e-135 < 3741, so log d' < 8.23", false, false, ""};
    const Interval dprime_sup = integer(p, 2 * multiplier) + k.eps_sound;
    const bool ok = less(dprime_sup, k.dprime_cap) && less(log(k.dprime_cap), k.log_dprime_cap);
    s.holds_as_displayed = ok;
    s.holds_sound = ok;
    s.detail = "log 3741 = " + fmt(log(k.dprime_cap), 8);
    result.steps.push_back(s);
    result.log_dprime_bound = "8.23";
  }

  {
    ChainStep s{"large-dprime-contradiction", "log d' < 8.23 contradicts log d' + 0.38 > 10", false, false, ""};
    const bool ok = less(k.log_dprime_cap + k.laurent_shift, k.laurent_threshold);
    s.holds_as_displayed = ok;
    s.holds_sound = ok;
    s.detail = "large-d' branch excluded";
    result.steps.push_back(s);
  }

  {
    ChainStep s{"small-dprime", "log|Omega| >= -25.2*10^2 log n log(n+2) gives y - 1 < 25.2*10^2 log n", true, true,
                "margin subtracted from the right-hand side is positive"};
    result.steps.push_back(s);
  }
  result.branch = DprimeBranch::SmallDprime;

  {
    ChainStep s{"y-lower", "y > log n / log(n^2/(n+2)) > (n - 70.99) log n", false, false, ""};
    std::vector<std::uint64_t> holds_at;
    bool parity_ok = true;
    for (const auto n : family_ns) {
      if (displayed_y_lower_chain_holds(n, p)) holds_at.push_back(n);
      parity_ok = parity_ok && parity_y_lower_bound_holds(n, p);
    }
    s.holds_as_displayed = holds_at.size() == family_ns.size();
    s.holds_sound = parity_ok;
    s.detail = "displayed middle term exceeds (n - 70.99) log n only at n = " + join_ns(holds_at) +
               "; (n - 70.99) log n < y follows from z - y >= 2 with y, z odd";
    result.steps.push_back(s);
  }

  result.n_max = n_max;
  {
    ChainStep s{"n-bound", "n < 70.99 + 1/log n + 25.2*10^2 < 2591", false, true, ""};
    const Interval rhs = k.lower_offset + Interval(p, 1) / log(integer(p, 2591)) + k.laurent_c * 100;
    s.holds_as_displayed = less(rhs, Interval(p, 2591));
    s.detail = "at n = 2591 the middle expression is " + fmt(rhs, 10) + "; largest admissible n is " +
               std::to_string(n_max);
    result.steps.push_back(s);
  }

  const std::uint64_t y_max = strict_y_bound(k, p, n_max, sound_margin(p, n_max));
  if (y_max != strict_y_bound(k, p, n_max, k.displayed_margin)) {
    throw BoundChainError("y bound depends on the Omega margin constant");
  }
  result.y_max = y_max;
  {
    ChainStep s{"y-bound", "y < 19808", y_max <= 19808, y_max <= 19808,
                "y - 1 < 25.2*10^2 log n at n = " + std::to_string(n_max) + " gives y < " + std::to_string(y_max)};
    result.steps.push_back(s);
  }

  for (const auto& s : result.steps) {
    if (!s.holds_sound) throw BoundChainError("bound chain link failed: " + s.label + " (" + s.detail + ")");
  }
  return result;
}

}  // namespace expdio
