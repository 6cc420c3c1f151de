#include "expdio/search.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace expdio {

namespace {

std::uint64_t step_of(const ExponentRange& r) { return r.parity == Parity::Any ? 1 : 2; }

void validate(const ExponentRange& r, const char* name) {
  if (r.lo == 0) throw DomainError(std::string("exponent range ") + name + ": exponents start at 1");
  if (r.lo > r.hi) throw DomainError(std::string("exponent range ") + name + ": lo exceeds hi");
  if (!r.first()) throw DomainError(std::string("exponent range ") + name + ": no admissible exponent");
}

void add_stats(std::map<std::string, std::uint64_t>& into, const std::map<std::string, std::uint64_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

Integer pow_ui(std::uint64_t base, std::uint64_t e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

std::string EquationInstance::to_string() const {
  return std::to_string(a) + "^x + " + std::to_string(b) + "^y = " + std::to_string(c) + "^z";
}

void validate(const EquationInstance& eq) {
  if (eq.a < 1) throw DomainError("equation: a must be positive");
  if (eq.b < 2 || eq.c < 2) throw DomainError("equation: b and c must be at least 2");
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Any: return "any";
    case Parity::Odd: return "odd";
    case Parity::Even: return "even";
  }
  return "any";
}

Parity parse_parity(const std::string& s) {
  if (s == "any") return Parity::Any;
  if (s == "odd") return Parity::Odd;
  if (s == "even") return Parity::Even;
  throw DomainError("unknown parity: " + s);
}

bool ExponentRange::contains(std::uint64_t e) const {
  if (e < lo || e > hi) return false;
  if (parity == Parity::Odd) return e % 2 == 1;
  if (parity == Parity::Even) return e % 2 == 0;
  return true;
}

std::optional<std::uint64_t> ExponentRange::first() const {
  std::uint64_t e = lo;
  if (!contains(e)) {
    if (e == hi) return std::nullopt;
    ++e;
  }
  if (!contains(e)) return std::nullopt;
  return e;
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::SolutionList: return "solution-list";
    case CertificateKind::ExhaustiveEmpty: return "exhaustive-empty";
    case CertificateKind::CongruenceEmpty: return "congruence-empty";
    case CertificateKind::SieveEmpty: return "sieve-empty";
  }
  return "exhaustive-empty";
}

CertificateKind parse_certificate_kind(const std::string& s) {
  for (auto k : {CertificateKind::SolutionList, CertificateKind::ExhaustiveEmpty, CertificateKind::CongruenceEmpty,
                 CertificateKind::SieveEmpty}) {
    if (to_string(k) == s) return k;
  }
  throw DomainError("unknown certificate kind: " + s);
}

std::vector<std::uint64_t> default_sieve_moduli(const EquationInstance& eq, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; out.size() < count; ++p) {
    if (!is_prime_u64(p)) continue;
    if (eq.a % p == 0 || eq.b % p == 0 || eq.c % p == 0) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<std::uint64_t> exponent_residues(std::uint64_t base, const ExponentRange& r, std::uint64_t m) {
  if (m == 0) throw DomainError("exponent_residues: modulus must be positive");
  const auto start = r.first();
  if (!start) return {};
  const std::uint64_t step = step_of(r);
  const std::uint64_t mult = mod_pow(base, step, m);
  std::vector<bool> seen(m, false);
  std::uint64_t cur = mod_pow(base, *start, m);
  // residue k+1 is a function of residue k, so the first repeat closes the orbit
  for (std::uint64_t e = *start;;) {
    if (seen[cur]) break;
    seen[cur] = true;
    if (r.hi - e < step) break;
    e += step;
    cur = mul_mod(cur, mult, m);
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

Certificate solve_general(const EquationInstance& eq, const SearchRange& range,
                          const std::optional<std::vector<std::uint64_t>>& sieve) {
  validate(eq);
  validate(range.x, "x");
  validate(range.y, "y");
  validate(range.z, "z");
  if (!range.z.bounded()) throw DomainError("solve_general: z range must be bounded");
  if (eq.a == 1 && !range.x.bounded()) throw DomainError("solve_general: x range must be bounded when a = 1");

  struct SieveModulus {
    std::uint64_t m;
    std::vector<bool> b_residues;
    std::uint64_t c_mult;
    std::uint64_t a_mult;
  };
  std::vector<SieveModulus> moduli;
  if (sieve) {
    for (const std::uint64_t m : *sieve) {
      if (m < 2) throw DomainError("solve_general: sieve moduli must be at least 2");
      SieveModulus s{m, std::vector<bool>(m, false), mod_pow(eq.c, step_of(range.z), m),
                     mod_pow(eq.a, step_of(range.x), m)};
      for (const auto v : exponent_residues(eq.b, range.y, m)) s.b_residues[v] = true;
      moduli.push_back(std::move(s));
    }
  }

  Certificate cert;
  cert.equation = eq;
  cert.range = range;
  if (sieve) cert.moduli = *sieve;
  std::uint64_t pairs = 0, rejected = 0, exact = 0;

  const Integer b(static_cast<unsigned long>(eq.b));
  const std::uint64_t z0 = *range.z.first();
  const std::uint64_t x0 = *range.x.first();
  const Integer c_step = pow_ui(eq.c, step_of(range.z));
  const Integer a_step = pow_ui(eq.a, step_of(range.x));
  Integer cz = pow_ui(eq.c, z0);
  std::vector<std::uint64_t> cz_mod(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) cz_mod[i] = mod_pow(eq.c, z0, moduli[i].m);

  for (std::uint64_t z = z0;;) {
    Integer ax = pow_ui(eq.a, x0);
    std::vector<std::uint64_t> ax_mod(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) ax_mod[i] = mod_pow(eq.a, x0, moduli[i].m);

    for (std::uint64_t x = x0;;) {
      if (eq.a >= 2 && ax >= cz) break;
      ++pairs;
      bool feasible = true;
      for (std::size_t i = 0; i < moduli.size() && feasible; ++i) {
        const std::uint64_t m = moduli[i].m;
        feasible = moduli[i].b_residues[(cz_mod[i] + m - ax_mod[i]) % m];
      }
      if (!feasible) {
        ++rejected;
      } else if (ax < cz) {
        ++exact;
        const auto y = power_exponent_of(cz - ax, b);
        if (y && range.y.contains(*y)) cert.solutions.push_back({0, x, *y, z});
      }
      if (range.x.hi - x < step_of(range.x)) break;
      x += step_of(range.x);
      ax *= a_step;
      for (std::size_t i = 0; i < moduli.size(); ++i) ax_mod[i] = mul_mod(ax_mod[i], moduli[i].a_mult, moduli[i].m);
    }

    if (range.z.hi - z < step_of(range.z)) break;
    z += step_of(range.z);
    cz *= c_step;
    for (std::size_t i = 0; i < moduli.size(); ++i) cz_mod[i] = mul_mod(cz_mod[i], moduli[i].c_mult, moduli[i].m);
  }

  std::sort(cert.solutions.begin(), cert.solutions.end());
  cert.stats["pairs"] = pairs;
  cert.stats["exact_checks"] = exact;
  if (sieve) cert.stats["sieve_rejected"] = rejected;
  if (!cert.solutions.empty()) {
    cert.kind = CertificateKind::SolutionList;
  } else {
    cert.kind = sieve ? CertificateKind::SieveEmpty : CertificateKind::ExhaustiveEmpty;
  }
  return cert;
}

std::optional<Certificate> congruence_certificate(const EquationInstance& eq, const SearchRange& range,
                                                  std::uint64_t m_max, std::uint64_t m_min) {
  validate(eq);
  validate(range.x, "x");
  validate(range.y, "y");
  validate(range.z, "z");
  if (m_min < 2) throw DomainError("congruence_certificate: moduli start at 2");
  if (m_max < m_min) throw DomainError("congruence_certificate: m_max below m_min");

  for (std::uint64_t m = m_min; m <= m_max; ++m) {
    auto A = exponent_residues(eq.a, range.x, m);
    auto B = exponent_residues(eq.b, range.y, m);
    const auto C = exponent_residues(eq.c, range.z, m);
    std::vector<bool> in_c(m, false);
    for (const auto v : C) in_c[v] = true;

    bool consistent = false;
    for (const auto alpha : A) {
      for (const auto beta : B) {
        if (in_c[(alpha + beta) % m]) {
          consistent = true;
          break;
        }
      }
      if (consistent) break;
    }
    if (consistent) continue;

    Certificate cert;
    cert.kind = CertificateKind::CongruenceEmpty;
    cert.equation = eq;
    cert.range = range;
    cert.moduli = {m};
    cert.stats["residues_a"] = A.size();
    cert.stats["residues_b"] = B.size();
    cert.stats["residues_c"] = C.size();
    return cert;
  }
  return std::nullopt;
}

bool recheck_congruence_certificate(const Certificate& cert) {
  if (cert.kind != CertificateKind::CongruenceEmpty || !cert.equation || cert.moduli.size() != 1) return false;
  const EquationInstance& eq = *cert.equation;
  const std::uint64_t m = cert.moduli.front();
  if (m < 2) return false;
  const std::uint64_t lambda = carmichael_lambda(m);

  // base^e mod m is periodic with period dividing lambda(m) once e exceeds the
  // largest prime exponent of m (< 64); parity doubles the joint period.
  auto residues = [&](std::uint64_t base, const ExponentRange& r) {
    std::set<std::uint64_t> out;
    const auto start = r.first();
    if (!start) return out;
    const std::uint64_t window_end = *start + 64 + 2 * lambda;
    const std::uint64_t end = std::min(r.hi, window_end);
    for (std::uint64_t e = *start; e <= end; ++e) {
      if (r.contains(e)) out.insert(mod_pow(base, e, m));
    }
    return out;
  };
  const auto A = residues(eq.a, cert.range.x);
  const auto B = residues(eq.b, cert.range.y);
  const auto C = residues(eq.c, cert.range.z);
  if (A.empty() || B.empty() || C.empty()) return false;
  for (const auto alpha : A) {
    for (const auto beta : B) {
      if (C.count((alpha + beta) % m)) return false;
    }
  }
  return true;
}

Certificate family_search_small_n(const SmallNOptions& opts) {
  if (opts.n_lo < 2 || opts.n_hi < opts.n_lo) throw DomainError("family_search_small_n: need 2 <= n_lo <= n_hi");
  if (opts.exponent_cap == 0) throw DomainError("family_search_small_n: exponent cap must be positive");

  Certificate agg;
  agg.label = "family n in [" + std::to_string(opts.n_lo) + ", " + std::to_string(opts.n_hi) + "]";
  agg.family = FamilyRange{opts.n_lo, opts.n_hi, 1, 0};
  agg.range = SearchRange::upto(opts.exponent_cap, opts.exponent_cap, opts.exponent_cap);

  for (std::uint64_t n = opts.n_lo; n <= opts.n_hi; ++n) {
    Certificate part;
    if (n == 2) {
      const SearchRange all{};
      auto cong = congruence_certificate(EquationInstance::family(2), all, 2);
      if (!cong) throw DomainError("family_search_small_n: expected a mod 2 certificate for n = 2");
      part = *cong;
    } else {
      const auto eq = EquationInstance::family(n);
      SearchRange range;
      if (n < opts.bounded_n_below) {
        range = SearchRange::upto(opts.exponent_cap, opts.exponent_cap, opts.exponent_cap);
      } else {
        range.z = ExponentRange::upto(2 * n - 1);
      }
      part = solve_general(eq, range, default_sieve_moduli(eq));
    }
    part.label = "n=" + std::to_string(n);
    for (auto s : part.solutions) {
      s.n = n;
      agg.solutions.push_back(s);
    }
    add_stats(agg.stats, part.stats);
    agg.parts.push_back(std::move(part));
  }
  std::sort(agg.solutions.begin(), agg.solutions.end());
  agg.kind = agg.solutions.empty() ? CertificateKind::ExhaustiveEmpty : CertificateKind::SolutionList;
  return agg;
}

}  // namespace expdio
