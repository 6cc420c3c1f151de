#include <doctest.h>

#include <string>

#include "expdio/linforms.hpp"

using namespace expdio;

namespace {
const Precision P = Precision::from_digits(60);

// The reference decimal is truncated, so allow its last digit as slack.
bool encloses(const Interval& v, const char* decimal) {
  const std::string s(decimal);
  const auto dot = s.find('.');
  const long places = dot == std::string::npos ? 0 : static_cast<long>(s.size() - dot - 1);
  mpfr_t x, slack;
  mpfr_inits2(400, x, slack, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_str(x, decimal, 10, MPFR_RNDN);
  mpfr_set_ui(slack, 10, MPFR_RNDN);
  mpfr_pow_si(slack, slack, -places, MPFR_RNDU);
  mpfr_mul_ui(slack, slack, 2, MPFR_RNDU);
  mpfr_add(slack, v.upper(), slack, MPFR_RNDU);
  bool ok = mpfr_cmp(x, slack) <= 0;
  mpfr_set_ui(slack, 10, MPFR_RNDN);
  mpfr_pow_si(slack, slack, -places, MPFR_RNDU);
  mpfr_mul_ui(slack, slack, 2, MPFR_RNDU);
  mpfr_sub(slack, v.lower(), slack, MPFR_RNDD);
  ok = ok && mpfr_cmp(slack, x) <= 0;
  mpfr_clears(x, slack, static_cast<mpfr_ptr>(nullptr));
  return ok;
}
}  // namespace

TEST_CASE("multiplicative independence") {
  CHECK(multiplicatively_independent(2, 3));
  CHECK(multiplicatively_independent(6, 12));
  CHECK_FALSE(multiplicatively_independent(4, 8));
  CHECK_FALSE(multiplicatively_independent(36, 216));
  CHECK_FALSE(multiplicatively_independent(7, 7));
  CHECK(multiplicatively_independent(71, 73));
  CHECK_THROWS_AS(multiplicatively_independent(1, 3), DomainError);
  CHECK_THROWS_AS(validate(LinFormInstance{4, 8, 1, 1, 1}), DomainError);
}

TEST_CASE("heights") {
  CHECK(encloses(log_height(Integer(3), P), "1.09861228866810969139524523692252570464749055782274945173469"));
  CHECK(encloses(log_height(Integer(-6), Integer(4), P), "1.09861228866810969139524523692252570464749055782274945173469"));
  CHECK(encloses(log_height(Integer(1), P), "0"));
  CHECK_THROWS_AS(log_height(Integer(0), P), DomainError);
  CHECK(encloses(admissible_log_b(2, 1, P), "1"));
  CHECK(encloses(admissible_log_b(3, 1, P), "1.09861228866810969139524523692252570464749055782274945173469"));
}

TEST_CASE("lower bound for 1 log 3 - 1 log 2") {
  const LinFormInstance inst{2, 3, 1, 1, 1};
  const Interval b1 = admissible_log_b(2, 1, P);
  const Interval b2 = admissible_log_b(3, 1, P);
  // mpmath at 40 digits
  CHECK(encloses(dprime(inst, b1, b2), "1.910239226626837393614"));
  CHECK(encloses(laurent_lower_bound(inst, b1, b2), "-2768.502967443636422316018"));
  CHECK(encloses(linear_form_abs(inst, P), "0.40546510810816438197801311546434913657199042346249419761401"));
  CHECK_THROWS_AS(laurent_lower_bound(inst, Interval(P, 0) + 1, Interval::from_rational(P, Integer(1), Integer(2))),
                  DomainError);
}

TEST_CASE("omega for the family") {
  CHECK(encloses(omega_actual(71, 73, 74), "2.234771697224788754655689"));
  CHECK_THROWS_AS(omega_actual(2, 1, 1), DomainError);
}

TEST_CASE("bound chain") {
  const BoundResult r = derive_family_bounds(60);
  CHECK(r.n_max == 2591);
  CHECK(r.y_max == 19808);
  CHECK(r.y_over_log_n_bound == 1870);
  CHECK(r.log_dprime_bound == "8.23");
  CHECK(r.branch == DprimeBranch::SmallDprime);
  for (const auto& s : r.steps) CHECK_MESSAGE(s.holds_sound, s.label);
  auto step = [&](const std::string& label) {
    for (const auto& s : r.steps) {
      if (s.label == label) return s;
    }
    FAIL("missing step " << label);
    return ChainStep{};
  };
  CHECK(step("y-over-log-n").holds_as_displayed);
  CHECK(step("log-dprime").holds_as_displayed);
  CHECK_FALSE(step("omega-upper").holds_as_displayed);
  CHECK_FALSE(step("epsilon").holds_as_displayed);
  CHECK_FALSE(step("y-lower").holds_as_displayed);
  CHECK_FALSE(step("n-bound").holds_as_displayed);

  const BoundResult hi = derive_family_bounds(120);
  CHECK(hi.n_max == r.n_max);
  CHECK(hi.y_max == r.y_max);
  CHECK(hi.y_over_log_n_bound == r.y_over_log_n_bound);
}

TEST_CASE("pointwise lower bounds on y") {
  CHECK(displayed_y_lower_chain_holds(71, P));
  CHECK_FALSE(displayed_y_lower_chain_holds(79, P));
  for (std::uint64_t n = 71; n <= 2591; n += 8) REQUIRE(parity_y_lower_bound_holds(n, P));
}
