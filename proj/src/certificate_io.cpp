#include <sstream>

#include <json.hpp>

#include "expdio/report.hpp"

namespace expdio {

using nlohmann::json;

namespace {

json exponent_json(const ExponentRange& r) {
  return json{{"lo", r.lo}, {"hi", r.bounded() ? json(r.hi) : json(nullptr)}, {"parity", to_string(r.parity)}};
}

ExponentRange exponent_from(const json& j) {
  ExponentRange r;
  r.lo = j.at("lo").get<std::uint64_t>();
  r.hi = j.at("hi").is_null() ? kUnbounded : j.at("hi").get<std::uint64_t>();
  r.parity = parse_parity(j.at("parity").get<std::string>());
  return r;
}

json certificate_json(const Certificate& c) {
  json j;
  j["kind"] = to_string(c.kind);
  if (!c.label.empty()) j["label"] = c.label;
  if (c.equation) j["equation"] = {{"a", c.equation->a}, {"b", c.equation->b}, {"c", c.equation->c}};
  if (c.family) {
    j["family"] = {{"n_lo", c.family->n_lo},
                   {"n_hi", c.family->n_hi},
                   {"modulus", c.family->modulus},
                   {"residue", c.family->residue}};
  }
  j["range"] = {{"x", exponent_json(c.range.x)}, {"y", exponent_json(c.range.y)}, {"z", exponent_json(c.range.z)}};
  j["moduli"] = c.moduli;
  json sols = json::array();
  for (const auto& s : c.solutions) {
    json e{{"x", s.x}, {"y", s.y}, {"z", s.z}};
    if (s.n != 0) e["n"] = s.n;
    sols.push_back(e);
  }
  j["solutions"] = sols;
  j["stats"] = c.stats;
  if (!c.parts.empty()) {
    json parts = json::array();
    for (const auto& p : c.parts) parts.push_back(certificate_json(p));
    j["parts"] = parts;
  }
  j["precision_digits"] = c.precision_digits;
  j["tool_version"] = c.tool_version;
  return j;
}

Certificate certificate_from(const json& j) {
  Certificate c;
  c.kind = parse_certificate_kind(j.at("kind").get<std::string>());
  c.label = j.value("label", std::string());
  if (j.contains("equation")) {
    const auto& e = j.at("equation");
    c.equation = EquationInstance{e.at("a"), e.at("b"), e.at("c")};
  }
  if (j.contains("family")) {
    const auto& f = j.at("family");
    c.family = FamilyRange{f.at("n_lo"), f.at("n_hi"), f.at("modulus"), f.at("residue")};
  }
  const auto& r = j.at("range");
  c.range = {exponent_from(r.at("x")), exponent_from(r.at("y")), exponent_from(r.at("z"))};
  c.moduli = j.at("moduli").get<std::vector<std::uint64_t>>();
  for (const auto& s : j.at("solutions")) {
    c.solutions.push_back({s.value("n", std::uint64_t{0}), s.at("x"), s.at("y"), s.at("z")});
  }
  c.stats = j.at("stats").get<std::map<std::string, std::uint64_t>>();
  if (j.contains("parts")) {
    for (const auto& p : j.at("parts")) c.parts.push_back(certificate_from(p));
  }
  c.precision_digits = j.at("precision_digits").get<unsigned>();
  c.tool_version = j.at("tool_version").get<std::string>();
  return c;
}

json bounds_json(const BoundResult& b) {
  json steps = json::array();
  for (const auto& s : b.steps) {
    steps.push_back({{"label", s.label},
                     {"claim", s.claim},
                     {"holds_as_displayed", s.holds_as_displayed},
                     {"holds_sound", s.holds_sound},
                     {"detail", s.detail}});
  }
  return json{{"n_max", b.n_max},
              {"y_max", b.y_max},
              {"precision_digits", b.precision_digits},
              {"branch", to_string(b.branch)},
              {"y_over_log_n_bound", b.y_over_log_n_bound},
              {"log_dprime_bound", b.log_dprime_bound},
              {"steps", steps}};
}

BoundResult bounds_from(const json& j) {
  BoundResult b;
  b.n_max = j.at("n_max");
  b.y_max = j.at("y_max");
  b.precision_digits = j.at("precision_digits");
  const auto branch = j.at("branch").get<std::string>();
  if (branch == to_string(DprimeBranch::LargeDprime)) {
    b.branch = DprimeBranch::LargeDprime;
  } else if (branch == to_string(DprimeBranch::SmallDprime)) {
    b.branch = DprimeBranch::SmallDprime;
  } else {
    throw DomainError("unknown d' branch: " + branch);
  }
  b.y_over_log_n_bound = j.at("y_over_log_n_bound");
  b.log_dprime_bound = j.at("log_dprime_bound");
  for (const auto& s : j.at("steps")) {
    b.steps.push_back({s.at("label"), s.at("claim"), s.at("holds_as_displayed"), s.at("holds_sound"), s.at("detail")});
  }
  return b;
}

json report_json(const TheoremReport& r) {
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back({{"n", s.n}, {"x", s.x}, {"y", s.y}, {"z", s.z}});
  json cases = json::array();
  for (const auto& c : r.cases) {
    json certs = json::array();
    for (const auto& cert : c.certificates) certs.push_back(certificate_json(cert));
    cases.push_back(
        {{"label", c.label}, {"title", c.title}, {"certified", c.certified}, {"detail", c.detail}, {"certificates", certs}});
  }
  return json{{"smoke", r.smoke},
              {"complete", r.complete},
              {"matches_expected", r.matches_expected()},
              {"precision_digits", r.precision_digits},
              {"tool_version", r.tool_version},
              {"solutions", sols},
              {"cases", cases},
              {"bounds", bounds_json(r.bounds)},
              {"diff", r.diff}};
}

TheoremReport report_from(const json& j) {
  TheoremReport r;
  r.smoke = j.at("smoke");
  r.complete = j.at("complete");
  r.precision_digits = j.at("precision_digits");
  r.tool_version = j.at("tool_version");
  for (const auto& s : j.at("solutions")) r.solutions.push_back({s.at("n"), s.at("x"), s.at("y"), s.at("z")});
  for (const auto& c : j.at("cases")) {
    CaseEntry e{c.at("label"), c.at("title"), c.at("certified"), c.at("detail"), {}};
    for (const auto& cert : c.at("certificates")) e.certificates.push_back(certificate_from(cert));
    r.cases.push_back(std::move(e));
  }
  r.bounds = bounds_from(j.at("bounds"));
  r.diff = j.at("diff").get<std::vector<std::string>>();
  if (j.at("matches_expected").get<bool>() != r.matches_expected()) {
    throw DomainError("report: matches_expected disagrees with its contents");
  }
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string range_text(const ExponentRange& r) {
  std::string s = std::to_string(r.lo) + ".." + (r.bounded() ? std::to_string(r.hi) : std::string("inf"));
  if (r.parity != Parity::Any) s += " " + to_string(r.parity);
  return s;
}

std::string solution_text(const Solution& s) {
  std::ostringstream out;
  out << "(";
  if (s.n != 0) out << s.n << ", ";
  out << s.x << ", " << s.y << ", " << s.z << ")";
  return out.str();
}

}  // namespace

std::string to_structured(const Certificate& cert) { return dump(certificate_json(cert)); }
std::string to_structured(const BoundResult& bounds) { return dump(bounds_json(bounds)); }
std::string to_structured(const TheoremReport& report) { return dump(report_json(report)); }

Certificate certificate_from_structured(const std::string& text) { return certificate_from(json::parse(text)); }
BoundResult bound_result_from_structured(const std::string& text) { return bounds_from(json::parse(text)); }
TheoremReport theorem_report_from_structured(const std::string& text) { return report_from(json::parse(text)); }

std::string to_human(const Certificate& c) {
  std::ostringstream out;
  out << to_string(c.kind);
  if (!c.label.empty()) out << " [" << c.label << "]";
  out << "\n";
  if (c.equation) out << "  equation: " << c.equation->to_string() << "\n";
  if (c.family) {
    out << "  family: n in [" << c.family->n_lo << ", " << c.family->n_hi << "]";
    if (c.family->modulus > 1) out << ", n = " << c.family->residue << " mod " << c.family->modulus;
    out << "\n";
  }
  out << "  x: " << range_text(c.range.x) << "  y: " << range_text(c.range.y) << "  z: " << range_text(c.range.z)
      << "\n";
  if (!c.moduli.empty()) {
    out << "  " << (c.kind == CertificateKind::CongruenceEmpty ? "modulus" : "moduli") << ":";
    for (const auto m : c.moduli) out << " " << m;
    out << "\n";
  }
  out << "  solutions:";
  if (c.solutions.empty()) out << " none";
  for (const auto& s : c.solutions) out << " " << solution_text(s);
  out << "\n";
  for (const auto& [k, v] : c.stats) out << "  " << k << ": " << v << "\n";
  if (!c.parts.empty()) out << "  parts: " << c.parts.size() << "\n";
  return out.str();
}

std::string to_human(const BoundResult& b) {
  std::ostringstream out;
  out << "n_max=" << b.n_max << " (n <= n_max)\n";
  out << "y_max=" << b.y_max << " (y < y_max)\n";
  out << "branch: " << to_string(b.branch) << "\n";
  out << "large-d' branch: y < " << b.y_over_log_n_bound << " log n, log d' < " << b.log_dprime_bound << "\n";
  out << "precision: " << b.precision_digits << " digits\n";
  for (const auto& s : b.steps) {
    out << "  [" << (s.holds_sound ? "ok" : "FAIL") << (s.holds_as_displayed ? "" : ", displayed form fails") << "] "
        << s.label << ": " << s.claim << "\n      " << s.detail << "\n";
  }
  return out.str();
}

std::string to_human(const TheoremReport& r) {
  std::ostringstream out;
  out << "theorem check (" << (r.smoke ? "smoke" : "full") << ", " << r.precision_digits << " digits)\n";
  for (const auto& c : r.cases) {
    out << "  " << c.label << "  " << c.title << ": " << (c.certified ? "certified" : "NOT certified") << "\n";
    if (!c.detail.empty()) out << "      " << c.detail << "\n";
  }
  out << "bounds: n_max=" << r.bounds.n_max << ", y_max=" << r.bounds.y_max << "\n";
  out << "solutions (n, x, y, z):";
  for (const auto& s : r.solutions) out << " " << solution_text(s);
  out << "\n";
  if (!r.complete) out << "INCOMPLETE: time budget reached before the x=1 search finished\n";
  for (const auto& d : r.diff) out << "DIFF: " << d << "\n";
  out << (r.matches_expected() ? "result: matches expected solution set\n" : "result: MISMATCH\n");
  return out.str();
}

}  // namespace expdio
