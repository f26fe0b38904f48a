#include <doctest.h>

#include "test_support.hpp"
#include "v1sign/constants.hpp"
#include "v1sign/errors.hpp"

using namespace v1sign;
using test::decimal;

namespace {

mpq_class pow10_inv(unsigned k) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, k);
  return mpq_class(mpz_class(1), d);
}

}  // namespace

TEST_SUITE("constants") {
  TEST_CASE("grouped terms and tail bound") {
    CHECK(bw_group_term(0) == mpq_class(1) + mpq_class(1, 4) - mpq_class(1, 16) - mpq_class(1, 25));
    CHECK(bw_group_term(1) == mpq_class(1, 49) + mpq_class(1, 64) - mpq_class(1, 100) - mpq_class(1, 121));
    CHECK(bw_tail_bound(10) == mpq_class(1, 61 * 61));
    // Direct tail sum over many terms stays below the bound.
    mpq_class tail;
    for (std::size_t m = 11; m < 2000; ++m) tail += bw_group_term(m);
    CHECK(tail < bw_tail_bound(10));
  }

  TEST_CASE("partial sums") {
    const Enclosure s10 = bw_partial_sum(10);
    CHECK(s10.intersects(Enclosure(decimal("1.01474306703675825"), decimal("1.01474306703675835"))));
    CHECK(s10.width() <= pow10_inv(12));
    const Enclosure s0 = bw_partial_sum(0);
    CHECK(s0.intersects(sqrt3_over_2(Precision{}) * Enclosure::exact(bw_group_term(0))));
  }

  TEST_CASE("partial sums increase strictly across the exact/fixed-point switch") {
    Enclosure prev = bw_partial_sum(0);
    for (std::size_t M = 1; M <= kExactPartialSumTerms + 40; ++M) {
      const Enclosure cur = bw_partial_sum(M);
      REQUIRE(prev.certainly_less(cur));
      prev = cur;
    }
    // The two summation paths agree where they meet.
    const Enclosure exact_path = sqrt3_over_2(Precision{}) * [] {
      mpq_class s;
      for (std::size_t m = 0; m <= kExactPartialSumTerms + 1; ++m) s += bw_group_term(m);
      return Enclosure::exact(s);
    }();
    CHECK(bw_partial_sum(kExactPartialSumTerms + 1).intersects(exact_path));
  }

  TEST_CASE("ten-term enclosure of G") {
    const Enclosure g10 = dilog_G_at(10);
    const Enclosure gap = sqrt3_over_2(Precision{}) * Enclosure::exact(bw_tail_bound(10));
    CHECK(g10.width() <= gap.hi() + pow10_inv(40));
    CHECK(gap.intersects(Enclosure(decimal("0.0002327399633927"), decimal("0.0002327399633928"))));
    CHECK(g10.contains(Enclosure(decimal("1.0147430671"), decimal("1.0149758070"))));
  }

  TEST_CASE("default G matches the Clausen reference") {
    const auto ref = test::load_fixture("constants.json");
    const DilogResult r = dilog_G_with_terms();
    CHECK(r.G.width() <= pow10_inv(12));
    CHECK(r.G.contains(test::reference(ref, "G")));
    CHECK(Enclosure(decimal("1.0147430670"), decimal("1.0149758071")).contains(r.G));
    CHECK(r.G == dilog_G_at(r.terms, PrecisionBudget{}.precision()));
  }

  TEST_CASE("derived constants enclose the reference values") {
    const auto ref = test::load_fixture("constants.json");
    const ConstantSet k = compute_constants();
    CHECK(k.abs_V.contains(test::reference(ref, "abs_V")));
    CHECK(k.c.contains(test::reference(ref, "c")));
    CHECK(k.alpha.contains(test::reference(ref, "alpha")));
    CHECK(k.amp.gamma_plus.intersects(test::reference(ref, "gamma_plus")));
    CHECK(k.amp.gamma_minus.intersects(test::reference(ref, "gamma_minus")));
    CHECK(k.amp.A0.intersects(test::reference(ref, "A0")));
    CHECK(k.amp.A1.intersects(test::reference(ref, "A1")));
    CHECK(Enclosure(decimal("38.8959"), decimal("38.9049")).contains(k.alpha));
    CHECK(excludes_all_integers(k.alpha));
    CHECK(constant_c().contains(test::reference(ref, "c")));
    CHECK(constant_alpha().contains(test::reference(ref, "alpha")));
  }

  TEST_CASE("amplitudes at high precision are narrow") {
    const auto ref = test::load_fixture("constants.json");
    const Amplitudes a = amplitudes(Precision::from_digits(60));
    CHECK(a.A0.width() < pow10_inv(55));
    CHECK((a.gamma_plus + a.gamma_minus).intersects(a.A0));
    CHECK((a.gamma_plus - a.gamma_minus).intersects(a.A1));
    CHECK(a.A1.intersects(test::reference(ref, "A1")));
  }

  TEST_CASE("property: tighter budgets nest inside looser ones") {
    test::Gen gen(2024);
    for (int i = 0; i < 10; ++i) {
      const auto e1 = static_cast<unsigned>(gen.integer(2, 13));
      auto e2 = static_cast<unsigned>(gen.integer(2, 13));
      if (e2 == e1) e2 = e1 + 1;
      PrecisionBudget loose;
      PrecisionBudget tight;
      loose.target_width = pow10_inv(std::min(e1, e2));
      tight.target_width = pow10_inv(std::max(e1, e2));
      loose.working_digits = static_cast<unsigned>(gen.integer(15, 90));
      tight.working_digits = static_cast<unsigned>(gen.integer(15, 90));
      const Enclosure a = dilog_G(loose);
      const Enclosure b = dilog_G(tight);
      REQUIRE(a.contains(b));
      REQUIRE(b.width() <= tight.target_width);
    }
  }

  TEST_CASE("exhausted budget reports the best enclosure") {
    PrecisionBudget b;
    b.target_width = pow10_inv(14);
    b.max_terms = 1000;
    try {
      (void)dilog_G(b);
      FAIL("expected PrecisionError");
    } catch (const PrecisionError& e) {
      REQUIRE(e.best().has_value());
      CHECK(e.best()->contains(test::reference(test::load_fixture("constants.json"), "G")));
      CHECK(e.best()->width() > b.target_width);
    }
  }

  TEST_CASE("budget validation") {
    PrecisionBudget b;
    b.target_width = 0;
    CHECK_THROWS_AS(b.validate(), InvalidInput);
    b = PrecisionBudget{};
    b.working_digits = 3;
    CHECK_THROWS_AS(b.validate(), InvalidInput);
    b = PrecisionBudget{};
    b.max_terms = kMaxGroupedTerms + 1;
    CHECK_THROWS_AS(b.validate(), InvalidInput);
  }
}
