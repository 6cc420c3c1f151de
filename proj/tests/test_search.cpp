#include <doctest.h>

#include <random>

#include "expdio/search.hpp"

using namespace expdio;

namespace {

// Triple loop with exact powers, no pruning.
std::vector<Solution> brute(const EquationInstance& eq, std::uint64_t cap) {
  std::vector<Solution> out;
  for (std::uint64_t z = 1; z <= cap; ++z) {
    Integer cz;
    mpz_ui_pow_ui(cz.get_mpz_t(), eq.c, z);
    for (std::uint64_t x = 1; x <= cap; ++x) {
      Integer ax;
      mpz_ui_pow_ui(ax.get_mpz_t(), eq.a, x);
      if (ax >= cz) break;
      for (std::uint64_t y = 1; y <= cap; ++y) {
        Integer by;
        mpz_ui_pow_ui(by.get_mpz_t(), eq.b, y);
        if (ax + by > cz) break;
        if (ax + by == cz) out.push_back({0, x, y, z});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("exponent ranges") {
  const ExponentRange odd{2, 9, Parity::Odd};
  CHECK(odd.first() == 3u);
  CHECK(odd.contains(9));
  CHECK_FALSE(odd.contains(4));
  CHECK_FALSE((ExponentRange{4, 4, Parity::Odd}.first().has_value()));
  CHECK(exponent_residues(3, ExponentRange{}, 8) == std::vector<std::uint64_t>{1, 3});
  CHECK(exponent_residues(3, ExponentRange{1, kUnbounded, Parity::Odd}, 8) == std::vector<std::uint64_t>{3});
  CHECK(exponent_residues(6, ExponentRange{3, kUnbounded, Parity::Odd}, 8) == std::vector<std::uint64_t>{0});
  CHECK(exponent_residues(2, ExponentRange{1, 2, Parity::Any}, 100) == std::vector<std::uint64_t>{2, 4});
}

TEST_CASE("solve_general examples") {
  const auto sols = solve_general({2, 5, 3}, SearchRange::upto(100, 100, 100)).solutions;
  CHECK(sols == std::vector<Solution>{{0, 1, 2, 3}, {0, 2, 1, 2}});
  CHECK(solve_general({4, 7, 5}, SearchRange::upto(100, 100, 100)).solutions.empty());
  CHECK(solve_general({3, 6, 4}, SearchRange::upto(100, 100, 100)).solutions.empty());
  const auto sieved = solve_general({2, 5, 3}, SearchRange::upto(100, 100, 100), default_sieve_moduli({2, 5, 3}));
  CHECK(sieved.solutions == sols);
  CHECK(sieved.kind == CertificateKind::SolutionList);
  CHECK(sieved.stats.at("sieve_rejected") > 0);
  CHECK(solve_general({4, 7, 5}, SearchRange::upto(50, 50, 50), std::vector<std::uint64_t>{3, 11}).kind ==
        CertificateKind::SieveEmpty);
  CHECK(solve_general({4, 7, 5}, SearchRange::upto(50, 50, 50)).kind == CertificateKind::ExhaustiveEmpty);
  // 3 + 5 = 2^3, 3^2 + 2^4 = 5^2, 1 + 2^3 = 3^2 (a = 1)
  CHECK(solve_general({3, 5, 2}, SearchRange::upto(30, 30, 30)).solutions.front() == Solution{0, 1, 1, 3});
  CHECK(solve_general({1, 2, 3}, SearchRange::upto(5, 30, 30)).solutions.size() == 5 + 5);
  CHECK_THROWS_AS(solve_general({2, 5, 3}, SearchRange{}), DomainError);
  CHECK_THROWS_AS(solve_general({1, 2, 3}, SearchRange{{}, {}, ExponentRange::upto(5)}), DomainError);
}

TEST_CASE("solve_general matches a triple loop") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const EquationInstance eq{2 + rng() % 12, 2 + rng() % 12, 2 + rng() % 12};
    const auto ref = brute(eq, 25);
    CHECK(solve_general(eq, SearchRange::upto(25, 25, 25)).solutions == ref);
    CHECK(solve_general(eq, SearchRange::upto(25, 25, 25), default_sieve_moduli(eq)).solutions == ref);
  }
}

TEST_CASE("parity constraints") {
  const SearchRange odd{ExponentRange::upto(40, Parity::Odd), ExponentRange::upto(40), ExponentRange::upto(40)};
  CHECK(solve_general({2, 5, 3}, odd).solutions == std::vector<Solution>{{0, 1, 2, 3}});
  const SearchRange even{ExponentRange::upto(40, Parity::Even), ExponentRange::upto(40), ExponentRange::upto(40)};
  CHECK(solve_general({2, 5, 3}, even, default_sieve_moduli({2, 5, 3})).solutions ==
        std::vector<Solution>{{0, 2, 1, 2}});
}

TEST_CASE("congruence certificates") {
  // mod 2 already rules out 3^x + 6^y = 4^z: odd + even is odd
  auto c = congruence_certificate({3, 6, 4}, SearchRange{}, 10);
  REQUIRE(c);
  CHECK(c->moduli == std::vector<std::uint64_t>{2});
  CHECK(recheck_congruence_certificate(*c));
  c = congruence_certificate({3, 6, 4}, SearchRange{}, 10, 3);
  REQUIRE(c);
  CHECK(c->moduli == std::vector<std::uint64_t>{3});
  CHECK(recheck_congruence_certificate(*c));

  c = congruence_certificate(EquationInstance::family(2), SearchRange{}, 10);
  REQUIRE(c);
  CHECK(c->moduli == std::vector<std::uint64_t>{2});

  const SearchRange odd_odd_even{ExponentRange{1, kUnbounded, Parity::Odd}, ExponentRange{1, kUnbounded, Parity::Odd},
                                 ExponentRange{1, kUnbounded, Parity::Even}};
  for (unsigned t = 2; t <= 12; ++t) {
    const std::uint64_t p = std::uint64_t{1} << t;
    c = congruence_certificate({p - 2, p + 1, p - 1}, odd_odd_even, 10);
    REQUIRE(c);
    CHECK(c->moduli == std::vector<std::uint64_t>{3});
    CHECK(recheck_congruence_certificate(*c));
  }

  // 2^x + 5^y = 3^z has solutions, so nothing may be certified
  CHECK_FALSE(congruence_certificate({2, 5, 3}, SearchRange{}, 200).has_value());
  CHECK_THROWS_AS(congruence_certificate({2, 5, 3}, SearchRange{}, 1), DomainError);
}

TEST_CASE("recheck rejects a forged certificate") {
  auto c = congruence_certificate({3, 6, 4}, SearchRange{}, 10);
  REQUIRE(c);
  Certificate forged = *c;
  forged.equation = EquationInstance{2, 5, 3};
  CHECK_FALSE(recheck_congruence_certificate(forged));
  forged = *c;
  forged.moduli = {5};
  CHECK_FALSE(recheck_congruence_certificate(forged));
  forged.kind = CertificateKind::SieveEmpty;
  CHECK_FALSE(recheck_congruence_certificate(forged));
}

TEST_CASE("congruence certificates agree with bounded search") {
  // whenever a certificate exists the bounded search must be empty
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const EquationInstance eq{2 + rng() % 30, 2 + rng() % 30, 2 + rng() % 30};
    const auto c = congruence_certificate(eq, SearchRange{}, 40);
    if (!c) continue;
    CHECK(recheck_congruence_certificate(*c));
    CHECK(solve_general(eq, SearchRange::upto(40, 40, 40)).solutions.empty());
  }
}

TEST_CASE("small-n family") {
  const Certificate agg = family_search_small_n();
  CHECK(agg.solutions == std::vector<Solution>{{3, 1, 2, 3}, {3, 2, 1, 2}});
  CHECK(agg.parts.size() == 63);
  CHECK(agg.parts.front().kind == CertificateKind::CongruenceEmpty);
  CHECK(family_search_small_n({4, 4, 200, 7}).solutions.empty());
  CHECK(family_search_small_n({3, 3, 200, 7}).solutions.size() == 2);
  for (const auto& p : agg.parts) {
    if (p.label == "n=10") {
      CHECK(p.range.z.hi == 19);
    }
  }
}
