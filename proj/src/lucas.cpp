#include "expdio/lucas.hpp"

#include <string>

namespace expdio {

namespace {

constexpr std::array<DefectiveEntry, 10> make_table() {
  // alpha as quoted; beta is the conjugate surd.
  constexpr std::array<std::pair<unsigned, QuadraticSurd>, 10> surds{{
      {5, {1, 1, 5, 2}},
      {5, {1, 1, -7, 2}},
      {5, {1, 1, -15, 2}},
      {5, {6, 1, -19, 1}},
      {5, {1, 1, -10, 1}},
      {5, {1, 1, -11, 2}},
      {5, {6, 1, -341, 1}},
      {7, {1, 1, -7, 2}},
      {7, {1, 1, -19, 2}},
      {13, {1, 1, -7, 2}},
  }};
  std::array<DefectiveEntry, 10> table{};
  for (std::size_t i = 0; i < surds.size(); ++i) {
    table[i] = {surds[i].first, surds[i].second, surds[i].second.lucas_pair()};
  }
  return table;
}

constexpr std::array<DefectiveEntry, 10> kDefectiveTable = make_table();

constexpr bool table_is_integral() {
  for (const auto& e : kDefectiveTable) {
    if (!e.alpha.integral()) return false;
  }
  return true;
}
static_assert(table_is_integral(), "defective table surds must give integral (P, Q)");

std::int64_t gcd_signed(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

bool is_valid(const LucasPair& pair) {
  const auto [P, Q] = pair;
  if (P == 0 || Q == 0) return false;
  if (gcd_signed(P, Q) != 1) return false;
  const std::int64_t p2 = P * P;
  // alpha/beta is a root of unity iff P^2/Q is one of 0, 1, 2, 3, 4
  for (std::int64_t m = 1; m <= 4; ++m) {
    if (p2 == m * Q) return false;
  }
  return true;
}

void validate(const LucasPair& pair) {
  if (!is_valid(pair)) {
    throw DomainError("invalid Lucas pair (P, Q) = (" + std::to_string(pair.P) + ", " + std::to_string(pair.Q) + ")");
  }
}

std::vector<Integer> lucas_sequence(const LucasPair& pair, unsigned k) {
  validate(pair);
  std::vector<Integer> u;
  u.reserve(k + 1);
  u.emplace_back(0);
  if (k >= 1) u.emplace_back(1);
  const Integer P(static_cast<long>(pair.P));
  const Integer Q(static_cast<long>(pair.Q));
  for (unsigned i = 2; i <= k; ++i) u.push_back(P * u[i - 1] - Q * u[i - 2]);
  return u;
}

Integer lucas_u(const LucasPair& pair, unsigned k) { return lucas_sequence(pair, k).back(); }

PrimitiveDivisor primitive_divisor(const LucasPair& pair, unsigned k) {
  if (k < 2) throw DomainError("primitive_divisor: index must be at least 2");
  const std::vector<Integer> u = lucas_sequence(pair, k);
  if (u[k] == 0) throw DomainError("primitive_divisor: u_k = 0");

  Integer earlier = abs(Integer(static_cast<long>(pair.discriminant())));
  for (unsigned i = 1; i < k; ++i) earlier *= abs(u[i]);

  // Strip every prime shared with E*u_1*...*u_{k-1}; what remains is primitive.
  Integer part = abs(u[k]);
  Integer g;
  while (true) {
    mpz_gcd(g.get_mpz_t(), part.get_mpz_t(), earlier.get_mpz_t());
    if (g == 1) break;
    mpz_divexact(part.get_mpz_t(), part.get_mpz_t(), g.get_mpz_t());
  }

  PrimitiveDivisor result;
  result.primitive_part = part;
  if (part == 1) return result;

  static const std::vector<std::uint32_t> trial = primes_up_to(1'000'000);
  bool below_sqrt_exhausted = false;
  for (const std::uint32_t p : trial) {
    if (Integer(p) * p > part) {
      below_sqrt_exhausted = true;
      break;
    }
    if (mpz_divisible_ui_p(part.get_mpz_t(), p)) {
      result.status = PrimitiveDivisor::Status::Found;
      result.prime = Integer(p);
      return result;
    }
  }
  if (below_sqrt_exhausted || is_probable_prime(part)) {
    result.status = PrimitiveDivisor::Status::Found;
    result.prime = part;
    return result;
  }
  result.status = PrimitiveDivisor::Status::Undetermined;
  return result;
}

bool is_defective(const LucasPair& pair, unsigned k) { return !primitive_divisor(pair, k).exists(); }

std::span<const DefectiveEntry> defective_table() { return kDefectiveTable; }

std::vector<LucasPair> defective_table_lookup(unsigned k) {
  if (k % 2 == 0 || k <= 4 || k > 30) {
    throw DomainError("defective_table_lookup: index must be odd with 4 < k <= 30");
  }
  std::vector<LucasPair> pairs;
  for (const auto& e : kDefectiveTable) {
    if (e.index == k) pairs.push_back(e.pair);
  }
  return pairs;
}

}  // namespace expdio
