#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "expdio/interval.hpp"
#include "expdio/search.hpp"

namespace expdio {

namespace {

using nlohmann::json;

constexpr unsigned kMaxPrecisionDoublings = 4;

struct SliceResult {
  std::vector<Solution> solutions;
  std::map<std::string, std::uint64_t> stats;
};

/// Scratch MPFR values reused across every y of one n.
class Scratch {
 public:
  explicit Scratch(mpfr_prec_t bits) {
    for (auto* v : {lo_, hi_, w_}) mpfr_init2(v, bits);
  }
  ~Scratch() {
    for (auto* v : {lo_, hi_, w_}) mpfr_clear(v);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;

  mpfr_t lo_, hi_, w_;
};

struct Sieve {
  std::uint64_t p;
  std::uint64_t a_mod;               // (n - 1) mod p
  std::uint64_t b_mod;               // (n + 2) mod p
  std::vector<std::uint64_t> c_pow;  // n^i mod p for i in [0, p - 1)
};

std::vector<Sieve> sieve_for(std::uint64_t n, std::size_t count) {
  std::vector<Sieve> out;
  for (std::uint64_t p = 3; out.size() < count; p += 2) {
    if (!is_prime_u64(p)) continue;
    if (n % p == 0 || (n - 1) % p == 0 || (n + 2) % p == 0) continue;
    Sieve s{p, (n - 1) % p, (n + 2) % p, std::vector<std::uint64_t>(p - 1)};
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i + 1 < p; ++i) {
      s.c_pow[i] = cur;
      cur = mul_mod(cur, n % p, p);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Returns false if some enclosure was too wide at `bits`.
bool search_one_n(std::uint64_t n, const X1Options& opts, mpfr_prec_t bits, SliceResult& out) {
  const Precision prec{bits};
  const Interval ratio = log(Interval::from_integer(prec, Integer(static_cast<unsigned long>(n + 2)))) /
                         log(Interval::from_integer(prec, Integer(static_cast<unsigned long>(n))));
  Scratch t(bits);
  const auto sieves = sieve_for(n, opts.sieve_primes);
  std::vector<std::uint64_t> b_pow(sieves.size());
  for (std::size_t i = 0; i < sieves.size(); ++i) b_pow[i] = mod_pow(sieves[i].b_mod, opts.y_lo, sieves[i].p);

  SliceResult local;
  std::uint64_t pairs = 0, candidates = 0, rejected = 0, exact = 0;
  for (std::uint64_t y = opts.y_lo; y <= opts.y_hi; ++y) {
    ++pairs;
    mpfr_mul_ui(t.lo_, ratio.lower(), y, MPFR_RNDD);
    mpfr_mul_ui(t.hi_, ratio.upper(), y, MPFR_RNDU);
    mpfr_sub(t.w_, t.hi_, t.lo_, MPFR_RNDU);
    if (mpfr_cmp_ui(t.w_, 1) >= 0) return false;
    // n^z lies strictly between (n+2)^y and (n+2)^y (1 + (n-1)/(n+2)^y), so z > y L
    // and z - y L is far below 1: z is floor(lo) + 1 or floor(hi) + 1.
    const std::uint64_t z_first = mpfr_get_ui(t.lo_, MPFR_RNDD) + 1;
    const std::uint64_t z_last = mpfr_get_ui(t.hi_, MPFR_RNDD) + 1;
    for (std::uint64_t z = std::max(z_first, y + 1); z <= z_last; ++z) {
      ++candidates;
      bool passes = true;
      for (std::size_t i = 0; i < sieves.size() && passes; ++i) {
        const auto& s = sieves[i];
        const std::uint64_t lhs = (s.a_mod + b_pow[i]) % s.p;
        const std::uint64_t rhs = opts.self_equation_control ? lhs : s.c_pow[z % (s.p - 1)];
        passes = lhs == rhs;
      }
      if (!passes) {
        ++rejected;
        continue;
      }
      ++exact;
      Integer lhs;
      mpz_ui_pow_ui(lhs.get_mpz_t(), n + 2, y);
      lhs += n - 1;
      Integer rhs;
      if (opts.self_equation_control) {
        mpz_ui_pow_ui(rhs.get_mpz_t(), n + 2, y);
        rhs += n - 1;
      } else {
        mpz_ui_pow_ui(rhs.get_mpz_t(), n, z);
      }
      if (lhs == rhs) {
        local.solutions.push_back({n, 1, y, z});
        // the control equation holds for every z; one record per (n, y)
        if (opts.self_equation_control) break;
      }
    }
    for (std::size_t i = 0; i < sieves.size(); ++i) b_pow[i] = mul_mod(b_pow[i], sieves[i].b_mod, sieves[i].p);
  }
  local.stats["pairs"] = pairs;
  local.stats["candidates"] = candidates;
  local.stats["sieve_rejected"] = rejected;
  local.stats["exact_checks"] = exact;
  for (auto& s : local.solutions) out.solutions.push_back(s);
  for (const auto& [k, v] : local.stats) out.stats[k] += v;
  return true;
}

SliceResult search_slice(const std::vector<std::uint64_t>& ns, const X1Options& opts) {
  SliceResult out;
  const mpfr_prec_t base_bits = Precision::from_digits(opts.precision_digits).bits;
  for (const auto n : ns) {
    mpfr_prec_t bits = base_bits;
    unsigned doublings = 0;
    while (!search_one_n(n, opts, bits, out)) {
      if (++doublings > kMaxPrecisionDoublings) {
        throw PrecisionError("x=1 search: enclosure of y log(n+2)/log n stays wider than 1 at n = " +
                             std::to_string(n));
      }
      bits *= 2;
      out.stats["precision_raises"] += 1;
    }
    out.stats["n_values"] += 1;
  }
  return out;
}

json params_json(const X1Options& o) {
  return json{{"n_lo", o.n_lo},       {"n_hi", o.n_hi},
              {"modulus", o.modulus}, {"residue", o.residue},
              {"y_lo", o.y_lo},       {"y_hi", o.y_hi},
              {"sieve_primes", o.sieve_primes}, {"self_equation_control", o.self_equation_control}};
}

struct Progress {
  std::uint64_t next_n = 0;
  std::vector<Solution> solutions;
  std::map<std::string, std::uint64_t> stats;
};

json progress_json(const Progress& p, const X1Options& o) {
  json sols = json::array();
  for (const auto& s : p.solutions) sols.push_back({s.n, s.x, s.y, s.z});
  return json{{"next_n", p.next_n}, {"solutions", sols}, {"stats", p.stats}, {"params", params_json(o)}};
}

void write_checkpoint(const std::string& path, const Progress& p, const X1Options& o) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
    f << progress_json(p, o).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Progress> read_checkpoint(const std::string& path, const X1Options& o) {
  std::ifstream f(path);
  if (!f) return std::nullopt;
  const json j = json::parse(f);
  if (j.at("params") != params_json(o)) {
    throw DomainError("checkpoint " + path + " was written for different search parameters");
  }
  Progress p;
  p.next_n = j.at("next_n").get<std::uint64_t>();
  for (const auto& s : j.at("solutions")) p.solutions.push_back({s[0], s[1], s[2], s[3]});
  p.stats = j.at("stats").get<std::map<std::string, std::uint64_t>>();
  return p;
}

}  // namespace

X1Outcome family_search_x1(const X1Options& opts) {
  if (opts.n_lo < 3 || opts.n_hi < opts.n_lo) throw DomainError("x=1 search: need 3 <= n_lo <= n_hi");
  if (opts.modulus == 0 || opts.residue >= opts.modulus) throw DomainError("x=1 search: bad residue class");
  if (opts.y_lo == 0 || opts.y_hi < opts.y_lo) throw DomainError("x=1 search: need 1 <= y_lo <= y_hi");
  if (opts.workers == 0) throw DomainError("x=1 search: workers must be positive");
  if (opts.sieve_primes < 3) throw DomainError("x=1 search: at least 3 sieve primes are required");
  if (opts.slice_size == 0) throw DomainError("x=1 search: slice size must be positive");

  Progress progress;
  progress.next_n = opts.n_lo;
  if (!opts.checkpoint_path.empty()) {
    if (auto restored = read_checkpoint(opts.checkpoint_path, opts)) progress = std::move(*restored);
  }

  std::vector<std::vector<std::uint64_t>> slices;
  for (std::uint64_t n = std::max(opts.n_lo, progress.next_n); n <= opts.n_hi; ++n) {
    if (n % opts.modulus != opts.residue) continue;
    if (slices.empty() || slices.back().size() == opts.slice_size) slices.emplace_back();
    slices.back().push_back(n);
  }

  const auto started = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (opts.time_budget_seconds <= 0) return false;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;
    return spent.count() >= opts.time_budget_seconds;
  };

  std::vector<std::optional<SliceResult>> results(slices.size());
  std::size_t merged = 0;
  std::atomic<std::size_t> cursor{0};
  std::mutex mu;
  std::exception_ptr failure;

  // Folds the completed prefix of slices into `progress` and checkpoints it.
  auto merge_prefix = [&] {
    bool advanced = false;
    while (merged < slices.size() && results[merged]) {
      auto& r = *results[merged];
      progress.solutions.insert(progress.solutions.end(), r.solutions.begin(), r.solutions.end());
      for (const auto& [k, v] : r.stats) progress.stats[k] += v;
      progress.next_n = slices[merged].back() + 1;
      results[merged].reset();
      ++merged;
      advanced = true;
    }
    if (advanced && !opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, progress, opts);
  };

  auto worker = [&] {
    while (true) {
      if (out_of_time()) return;
      const std::size_t i = cursor.fetch_add(1);
      if (i >= slices.size() || (opts.max_slices && i >= opts.max_slices)) return;
      try {
        SliceResult r = search_slice(slices[i], opts);
        std::lock_guard lock(mu);
        results[i] = std::move(r);
        merge_prefix();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        cursor.store(slices.size());
        return;
      }
    }
  };

  const unsigned threads = std::min<std::size_t>(opts.workers, std::max<std::size_t>(slices.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  X1Outcome outcome;
  outcome.complete = merged == slices.size();
  if (outcome.complete) progress.next_n = opts.n_hi + 1;
  outcome.next_n = progress.next_n;

  Certificate& cert = outcome.certificate;
  cert.label = opts.self_equation_control ? "x=1 control scan" : "x=1 search";
  cert.family = FamilyRange{opts.n_lo, opts.n_hi, opts.modulus, opts.residue};
  cert.range.x = ExponentRange::fixed(1);
  cert.range.y = ExponentRange{opts.y_lo, opts.y_hi, Parity::Any};
  cert.range.z = ExponentRange{opts.y_lo + 1, kUnbounded, Parity::Any};
  cert.solutions = std::move(progress.solutions);
  std::sort(cert.solutions.begin(), cert.solutions.end());
  cert.stats = std::move(progress.stats);
  cert.stats["sieve_primes"] = opts.sieve_primes;
  cert.precision_digits = opts.precision_digits;
  cert.kind = cert.solutions.empty() ? CertificateKind::ExhaustiveEmpty : CertificateKind::SolutionList;
  return outcome;
}

}  // namespace expdio
