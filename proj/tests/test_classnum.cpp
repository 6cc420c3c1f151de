#include <doctest.h>

#include "expdio/classnum.hpp"
#include "oracles.hpp"

using namespace expdio;

TEST_CASE("class numbers of small discriminants") {
  // independent enumeration, D = 1..30
  const std::uint64_t expected[] = {1, 1, 1, 1, 2, 2, 1, 2, 2, 2, 3, 2, 2, 4, 2,
                                    2, 4, 2, 3, 4, 4, 2, 3, 4, 2, 6, 3, 2, 6, 4};
  for (std::uint64_t D = 1; D <= 30; ++D) CHECK(count_reduced_forms(D) == expected[D - 1]);
  CHECK(class_number_exact(1).h == 1);
  CHECK(class_number_exact(2).h == 1);
  CHECK(class_number_exact(5).h == 2);
  CHECK_THROWS_AS(count_reduced_forms(0), DomainError);
}

TEST_CASE("class numbers agree with the b-first enumeration") {
  for (std::uint64_t D = 1; D <= 3000; D += (D < 500 ? 1 : 7)) {
    REQUIRE(count_reduced_forms(D) == oracle::class_number(D));
  }
}

TEST_CASE("upper bound values") {
  // mpmath at 40 digits
  CHECK(hua_upper_bound(1) == doctest::Approx(2.1557819453457690597).epsilon(1e-14));
  CHECK(hua_upper_bound(5) == doctest::Approx(7.1115502185121303442).epsilon(1e-14));
  CHECK(hua_upper_bound(66) == doctest::Approx(39.182229048823362006).epsilon(1e-14));
  CHECK(hua_upper_bound(2000) == doctest::Approx(312.8110061639794913).epsilon(1e-14));
  CHECK(hua_upper_bound(5) >= 7.1115502185121303442);
  const auto e = hua_upper_bound_enclosure(5, Precision::from_digits(60));
  CHECK(e.width().upper_double() < 1e-50);
}

TEST_CASE("class number stays below the bound") {
  for (std::uint64_t D = 1; D <= 400; ++D) {
    const auto r = class_number_exact(D);
    REQUIRE(static_cast<double>(r.h) < r.hua_bound);
  }
}
