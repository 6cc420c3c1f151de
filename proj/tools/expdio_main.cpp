#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "expdio/classnum.hpp"
#include "expdio/lucas.hpp"
#include "expdio/quadrep.hpp"
#include "expdio/report.hpp"

namespace {

using namespace expdio;
using nlohmann::json;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kPrecision = 3, kIncomplete = 4 };

struct Global {
  std::string format = "human";
  std::string output;
  unsigned workers = 1;
  unsigned precision = kDefaultPrecisionDigits;
};

struct Output {
  std::string text;
  int status = kOk;
};

bool structured(const Global& g) { return g.format == "structured"; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string to_decimal(const Interval& v, unsigned digits) { return v.upper_string(digits); }

struct SolveArgs {
  std::uint64_t a = 0, b = 0, c = 0;
  std::uint64_t x_max = 100, y_max = 100, z_max = 100;
  std::string x_parity = "any", y_parity = "any", z_parity = "any";
  bool no_sieve = false;
  std::vector<std::uint64_t> sieve;
  std::string family;
  std::uint64_t n_lo = 0, n_hi = 0, y_lo = 73, y_hi = 19807;
  bool control = false;
  std::string checkpoint;
  double time_budget = 0;
};

Output run_solve(const Global& g, const SolveArgs& s) {
  Certificate cert;
  int status = kOk;
  if (s.family == "small-n") {
    SmallNOptions o;
    if (s.n_lo) o.n_lo = s.n_lo;
    if (s.n_hi) o.n_hi = s.n_hi;
    cert = family_search_small_n(o);
  } else if (s.family == "x1") {
    X1Options o;
    if (s.n_lo) o.n_lo = s.n_lo;
    if (s.n_hi) o.n_hi = s.n_hi;
    o.y_lo = s.y_lo;
    o.y_hi = s.y_hi;
    o.workers = g.workers;
    o.precision_digits = g.precision;
    o.self_equation_control = s.control;
    o.checkpoint_path = s.checkpoint;
    o.time_budget_seconds = s.time_budget;
    auto outcome = family_search_x1(o);
    cert = std::move(outcome.certificate);
    if (!outcome.complete) status = kIncomplete;
  } else if (!s.family.empty()) {
    throw CLI::ValidationError("--family", "expected small-n or x1");
  } else {
    if (!s.a || !s.b || !s.c) throw CLI::ValidationError("solve", "--a, --b and --c are required without --family");
    const EquationInstance eq{s.a, s.b, s.c};
    const SearchRange range{ExponentRange{1, s.x_max, parse_parity(s.x_parity)},
                            ExponentRange{1, s.y_max, parse_parity(s.y_parity)},
                            ExponentRange{1, s.z_max, parse_parity(s.z_parity)}};
    std::optional<std::vector<std::uint64_t>> sieve;
    if (!s.no_sieve) sieve = s.sieve.empty() ? default_sieve_moduli(eq) : s.sieve;
    cert = solve_general(eq, range, sieve);
  }
  return {structured(g) ? to_structured(cert) : to_human(cert), status};
}

Output run_verify(const Global& g, bool smoke, const std::string& checkpoint, double budget) {
  TheoremOptions o;
  o.smoke = smoke;
  o.workers = g.workers;
  o.precision_digits = g.precision;
  o.checkpoint_path = checkpoint;
  o.time_budget_seconds = budget;
  const TheoremReport report = verify_theorem(o);
  const int status = !report.complete ? kIncomplete : report.matches_expected() ? kOk : kFailure;
  return {structured(g) ? to_structured(report) : to_human(report), status};
}

Output run_bounds(const Global& g) {
  const BoundResult b = derive_family_bounds(g.precision);
  return {structured(g) ? to_structured(b) : to_human(b), kOk};
}

Output run_classnum(const Global& g, std::uint64_t D) {
  const auto r = class_number_exact(D);
  const Interval bound = hua_upper_bound_enclosure(D);
  if (structured(g)) {
    return {dump(json{{"D", D}, {"discriminant", "-" + std::to_string(4 * D)}, {"h", r.h},
                      {"hua_bound", to_decimal(bound, 12)}, {"below_bound", r.h < r.hua_bound}}),
            kOk};
  }
  std::ostringstream out;
  out << "h(-" << 4 * D << ") = " << r.h << "\n"
      << "bound 4 sqrt(D)/pi log(2e sqrt(D)) = " << to_decimal(bound, 6) << "\n";
  return {out.str(), r.h < r.hua_bound ? kOk : kFailure};
}

std::string status_name(PrimitiveDivisor::Status s) {
  switch (s) {
    case PrimitiveDivisor::Status::None: return "none";
    case PrimitiveDivisor::Status::Found: return "found";
    case PrimitiveDivisor::Status::Undetermined: return "undetermined";
  }
  return "undetermined";
}

Output run_lucas(const Global& g, std::int64_t P, std::int64_t Q, unsigned k, unsigned table) {
  if (table) {
    const auto pairs = defective_table_lookup(table);
    if (structured(g)) {
      json rows = json::array();
      for (const auto& p : pairs) rows.push_back({{"P", p.P}, {"Q", p.Q}});
      return {dump(json{{"index", table}, {"pairs", rows}}), kOk};
    }
    std::ostringstream out;
    out << "defective pairs at index " << table << ":";
    if (pairs.empty()) out << " none";
    for (const auto& p : pairs) out << " (" << p.P << ", " << p.Q << ")";
    out << "\n";
    return {out.str(), kOk};
  }
  if (k == 0) throw CLI::ValidationError("lucas", "give --k with --p/--q, or --table");
  const LucasPair pair{P, Q};
  const Integer u = lucas_u(pair, k);
  const auto pd = primitive_divisor(pair, k);
  if (structured(g)) {
    json j{{"P", P}, {"Q", Q}, {"k", k}, {"u_k", u.get_str()}, {"primitive_divisor", status_name(pd.status)},
           {"primitive_part", pd.primitive_part.get_str()}};
    if (pd.prime) j["prime"] = pd.prime->get_str();
    return {dump(j), kOk};
  }
  std::ostringstream out;
  out << "u_" << k << " = " << u.get_str() << "\n";
  out << "primitive divisor: " << status_name(pd.status);
  if (pd.prime) out << " (" << pd.prime->get_str() << ")";
  out << "\n";
  return {out.str(), kOk};
}

Output run_quadrep(const Global& g, const RepresentationInstance& inst) {
  const auto sols = enumerate_solutions(inst);
  const auto cls = classify(inst, sols);
  if (structured(g)) {
    json classes = json::array();
    for (const auto& c : cls.classes) {
      json members = json::array();
      for (const auto& m : c.members) members.push_back({{"X", m.x}, {"Y", m.y}, {"Z", m.z}});
      classes.push_back({{"minimal", {{"X", c.minimal.x}, {"Y", c.minimal.y}, {"Z", c.minimal.z}}},
                         {"members", members}});
    }
    return {dump(json{{"d1", inst.d1}, {"d2", inst.d2}, {"k", inst.k}, {"z_max", inst.z_max},
                      {"solutions", sols.size()}, {"classes", classes}, {"class_limit", cls.class_limit},
                      {"class_number", cls.class_number}, {"violations", cls.violations}}),
            cls.ok() ? kOk : kFailure};
  }
  std::ostringstream out;
  out << inst.d1 << " X^2 + " << inst.d2 << " Y^2 = " << inst.k << "^Z, Z <= " << inst.z_max << ": " << sols.size()
      << " solutions in " << cls.classes.size() << " classes (limit " << cls.class_limit << ", h = " << cls.class_number
      << ")\n";
  for (const auto& c : cls.classes) {
    out << "  minimal (" << c.minimal.x << ", " << c.minimal.y << ", " << c.minimal.z << "), " << c.members.size()
        << " member(s)\n";
  }
  for (const auto& v : cls.violations) out << "  VIOLATION: " << v << "\n";
  return {out.str(), cls.ok() ? kOk : kFailure};
}

struct CertifyArgs {
  std::uint64_t a = 0, b = 0, c = 0;
  std::uint64_t x_min = 1, y_min = 1, z_min = 1;
  std::string x_parity = "any", y_parity = "any", z_parity = "any";
  std::uint64_t m_min = 2, m_max = 64;
};

Output run_certify(const Global& g, const CertifyArgs& a) {
  const EquationInstance eq{a.a, a.b, a.c};
  const SearchRange range{ExponentRange{a.x_min, kUnbounded, parse_parity(a.x_parity)},
                          ExponentRange{a.y_min, kUnbounded, parse_parity(a.y_parity)},
                          ExponentRange{a.z_min, kUnbounded, parse_parity(a.z_parity)}};
  const auto cert = congruence_certificate(eq, range, a.m_max, a.m_min);
  if (!cert) {
    const std::string msg = "no congruence obstruction for modulus in [" + std::to_string(a.m_min) + ", " +
                            std::to_string(a.m_max) + "]";
    return {structured(g) ? dump(json{{"certificate", nullptr}, {"message", msg}}) : msg + "\n", kFailure};
  }
  const bool rechecked = recheck_congruence_certificate(*cert);
  std::string text = structured(g) ? to_structured(*cert) : to_human(*cert) + "  recheck: " +
                                                                 (rechecked ? "confirmed" : "FAILED") + "\n";
  return {text, rechecked ? kOk : kFailure};
}

unsigned default_precision() {
  if (const char* env = std::getenv("EXPDIO_PRECISION")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed EXPDIO_PRECISION=" << env << "\n";
    }
  }
  return kDefaultPrecisionDigits;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Searches, certificates and bounds for (n-1)^x + (n+2)^y = n^z", "expdio"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  g.precision = default_precision();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--output,-o", g.output, "Write the report to this file");
  app.add_option("--workers", g.workers, "Worker threads for the x=1 search")->check(CLI::PositiveNumber);
  app.add_option("--precision", g.precision, "Working precision in decimal digits (>= 60)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Search a^x + b^y = c^z, or a family range");
  solve_cmd->add_option("--a", solve.a);
  solve_cmd->add_option("--b", solve.b);
  solve_cmd->add_option("--c", solve.c);
  solve_cmd->add_option("--x-max", solve.x_max);
  solve_cmd->add_option("--y-max", solve.y_max);
  solve_cmd->add_option("--z-max", solve.z_max);
  for (auto [flag, target] : {std::pair{"--x-parity", &solve.x_parity}, std::pair{"--y-parity", &solve.y_parity},
                              std::pair{"--z-parity", &solve.z_parity}}) {
    solve_cmd->add_option(flag, *target)->check(CLI::IsMember({"any", "odd", "even"}));
  }
  solve_cmd->add_flag("--no-sieve", solve.no_sieve, "Skip the residue prefilter");
  solve_cmd->add_option("--sieve", solve.sieve, "Sieve moduli (default: six small primes)")->delimiter(',');
  solve_cmd->add_option("--family", solve.family, "small-n or x1");
  solve_cmd->add_option("--n-lo", solve.n_lo);
  solve_cmd->add_option("--n-hi", solve.n_hi);
  solve_cmd->add_option("--y-lo", solve.y_lo);
  solve_cmd->add_option("--y-hi", solve.y_hi);
  solve_cmd->add_flag("--control", solve.control, "x1 only: replace the equation by an identity");
  solve_cmd->add_option("--checkpoint", solve.checkpoint);
  solve_cmd->add_option("--time-budget", solve.time_budget, "Seconds");

  bool smoke = false;
  std::string checkpoint;
  double budget = 0;
  auto* verify_cmd = app.add_subcommand("verify-theorem", "Run every search and certificate behind the theorem");
  verify_cmd->add_flag("--smoke", smoke, "Short ranges for the x=1 search and congruence sweeps");
  verify_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file for the x=1 search");
  verify_cmd->add_option("--time-budget", budget, "Seconds for the x=1 search");

  auto* bounds_cmd = app.add_subcommand("bounds", "Derive n_max and y_max for the x=1 family");

  std::uint64_t D = 0;
  auto* classnum_cmd = app.add_subcommand("classnum", "Class number h(-4D) and its upper bound");
  classnum_cmd->add_option("--d", D)->required()->check(CLI::PositiveNumber);

  std::int64_t P = 0, Q = 0;
  unsigned k = 0, table = 0;
  auto* lucas_cmd = app.add_subcommand("lucas", "Lucas numbers and primitive divisors");
  lucas_cmd->add_option("--p", P);
  lucas_cmd->add_option("--q", Q);
  lucas_cmd->add_option("--k", k);
  lucas_cmd->add_option("--table", table, "List defective pairs at an odd index");

  RepresentationInstance rep;
  auto* quadrep_cmd = app.add_subcommand("quadrep", "Classes of D1 X^2 + D2 Y^2 = k^Z");
  quadrep_cmd->add_option("--d1", rep.d1)->required();
  quadrep_cmd->add_option("--d2", rep.d2)->required();
  quadrep_cmd->add_option("--k", rep.k)->required();
  quadrep_cmd->add_option("--z-max", rep.z_max)->required();

  CertifyArgs cert;
  auto* certify_cmd = app.add_subcommand("certify", "Least modulus ruling out a^x + b^y = c^z");
  certify_cmd->add_option("--a", cert.a)->required();
  certify_cmd->add_option("--b", cert.b)->required();
  certify_cmd->add_option("--c", cert.c)->required();
  certify_cmd->add_option("--x-min", cert.x_min);
  certify_cmd->add_option("--y-min", cert.y_min);
  certify_cmd->add_option("--z-min", cert.z_min);
  for (auto [flag, target] : {std::pair{"--x-parity", &cert.x_parity}, std::pair{"--y-parity", &cert.y_parity},
                              std::pair{"--z-parity", &cert.z_parity}}) {
    certify_cmd->add_option(flag, *target)->check(CLI::IsMember({"any", "odd", "even"}));
  }
  certify_cmd->add_option("--m-min", cert.m_min);
  certify_cmd->add_option("--m-max", cert.m_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (g.precision < kDefaultPrecisionDigits) {
    std::cerr << "error: --precision must be at least " << kDefaultPrecisionDigits << " digits\n";
    return kUsage;
  }

  Output out;
  try {
    if (*solve_cmd) out = run_solve(g, solve);
    else if (*verify_cmd) out = run_verify(g, smoke, checkpoint, budget);
    else if (*bounds_cmd) out = run_bounds(g);
    else if (*classnum_cmd) out = run_classnum(g, D);
    else if (*lucas_cmd) out = run_lucas(g, P, Q, k, table);
    else if (*quadrep_cmd) out = run_quadrep(g, rep);
    else if (*certify_cmd) out = run_certify(g, cert);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kPrecision;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFailure;
  }

  if (g.output.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream f(g.output, std::ios::trunc);
    if (!f) {
      std::cerr << "error: cannot write " << g.output << "\n";
      return kFailure;
    }
    f << out.text;
  }
  return out.status;
}
