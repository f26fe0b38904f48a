#include <doctest.h>

#include <vector>

#include "test_support.hpp"
#include "v1sign/errors.hpp"
#include "v1sign/series.hpp"
#include "v1sign/verifier.hpp"

using namespace v1sign;

TEST_SUITE("series") {
  TEST_CASE("first coefficients") {
    const std::vector<long> expected{1, 1, 0, 0, 0, 0, 1, -1, -1, 1, 1};
    const auto v = v1_coefficients(10);
    REQUIRE(v.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(v[i] == expected[i]);
  }

  TEST_CASE("max_n zero gives the constant term") {
    const auto v = v1_coefficients(0);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == 1);
  }

  TEST_CASE("engine agrees with dense division up to 1200") {
    const auto oracle = test::dense_v1(1200);
    const auto v = v1_coefficients(1200);
    REQUIRE(v.size() == oracle.size());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < v.size(); ++i) mismatches += v[i] == oracle[i] ? 0 : 1;
    CHECK(mismatches == 0);
  }

  TEST_CASE("published values") {
    const auto v = v1_coefficients(705);
    CHECK(v[293] == 4);
    CHECK(v[546] == -6309);
    CHECK(v[705] == 8716);
    for (const auto& [n, value] : kInitialValues) CHECK(v[static_cast<std::size_t>(n)] == value);
  }

  TEST_CASE("outer truncation index") {
    CHECK(outer_terms_needed(0) == 0);
    CHECK(outer_terms_needed(1) == 1);
    CHECK(outer_terms_needed(705) == 37);
    CHECK(outer_terms_needed(702) == 36);
  }

  TEST_CASE("large-index values and checksum match the reference run") {
    const auto fx = test::load_fixture("baselines.json").at("coefficients");
    const auto v = v1_coefficients(fx.at("max_n").get<std::size_t>());
    for (const auto& [key, value] : fx.at("spot").items()) {
      CHECK_MESSAGE(v[std::stoul(key)] == mpz_class(value.get<std::string>()), "n = " << key);
    }
    const unsigned long modulus = fx.at("checksum_modulus").get<unsigned long>();
    mpz_class acc;
    for (std::size_t n = 0; n < v.size(); ++n) acc += mpz_class(static_cast<unsigned long>(n + 1)) * v[n];
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), acc.get_mpz_t(), modulus);
    CHECK(r == fx.at("weighted_checksum").get<unsigned long>());
  }

  TEST_CASE("threaded evaluation is bit-identical") {
    const auto seq = v1_coefficients(4000);
    for (unsigned jobs : {2u, 3u, 7u}) {
      CoefficientOptions opts;
      opts.jobs = jobs;
      CHECK(v1_coefficients(4000, opts) == seq);
    }
  }

  TEST_CASE("resource ceiling") {
    CHECK_THROWS_AS(v1_coefficients(kDefaultMaxNCeiling + 1), ResourceLimitError);
    CoefficientOptions opts;
    opts.ceiling = 10;
    CHECK_NOTHROW(v1_coefficients(10, opts));
    try {
      v1_coefficients(11, opts);
      FAIL("expected ResourceLimitError");
    } catch (const ResourceLimitError& e) {
      CHECK(e.requested() == 11);
      CHECK(e.ceiling() == 10);
    }
  }

  TEST_CASE("products and inverses") {
    const auto p = pochhammer_neg_q2(2, 10);
    const auto expected = TruncatedIntSeries::from_terms(10, {{0, 1}, {2, 1}, {4, 1}, {6, 1}});
    CHECK(p == expected);
    CHECK(pochhammer_neg_q2(0, 5) == TruncatedIntSeries::one(5));

    const auto inv = series_inverse(TruncatedIntSeries::from_terms(6, {{0, 1}, {1, 1}}));
    const std::vector<long> alternating{1, -1, 1, -1, 1, -1, 1};
    for (std::size_t i = 0; i <= 6; ++i) CHECK(inv[i] == alternating[i]);
  }

  TEST_CASE("invalid series operations") {
    CHECK_THROWS_AS(TruncatedIntSeries(std::vector<mpz_class>{}), InvalidInput);
    CHECK_THROWS_AS(series_inverse(TruncatedIntSeries::from_terms(3, {{0, 2}})), InvalidInput);
    CHECK_THROWS_AS(series_inverse(TruncatedIntSeries(3)), InvalidInput);
    CHECK_THROWS_AS(series_mul(TruncatedIntSeries::one(3), TruncatedIntSeries::one(4)), ContractViolation);
  }

  TEST_CASE("property: inverse multiplies back to one") {
    test::Gen gen(0xA11CE);
    for (int i = 0; i < 200; ++i) {
      const auto order = static_cast<std::size_t>(gen.integer(0, 120));
      std::vector<mpz_class> c(order + 1);
      c[0] = 1;
      for (std::size_t k = 1; k <= order; ++k) c[k] = gen.coin(0.4) ? 0 : gen.integer(-10'000, 10'000);
      const TruncatedIntSeries a(std::move(c));
      const auto inv = series_inverse(a);
      REQUIRE(series_mul(a, inv) == TruncatedIntSeries::one(order));
      REQUIRE(series_mul(inv, a) == TruncatedIntSeries::one(order));
    }
  }

  TEST_CASE("property: division by 1 + q^s undoes multiplication") {
    test::Gen gen(0xB0B);
    for (int i = 0; i < 100; ++i) {
      const auto order = static_cast<std::size_t>(gen.integer(1, 80));
      const auto step = static_cast<std::size_t>(gen.integer(1, 20));
      std::vector<mpz_class> c(order + 1);
      for (auto& x : c) x = gen.integer(-99, 99);
      const TruncatedIntSeries a(c);
      const auto factor = TruncatedIntSeries::from_terms(order, {{0, 1}, {step, 1}});
      auto prod = series_mul(a, factor).release();
      divide_by_one_plus_power(prod, step);
      REQUIRE(prod == c);
    }
  }

  TEST_CASE("property: multiplication is commutative and associative") {
    test::Gen gen(0xC0FFEE);
    for (int i = 0; i < 50; ++i) {
      const auto order = static_cast<std::size_t>(gen.integer(0, 40));
      const auto make = [&] {
        std::vector<mpz_class> c(order + 1);
        for (auto& x : c) x = gen.integer(-50, 50);
        return TruncatedIntSeries(std::move(c));
      };
      const auto a = make();
      const auto b = make();
      const auto c = make();
      REQUIRE(series_mul(a, b) == series_mul(b, a));
      REQUIRE(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
    }
  }
}
