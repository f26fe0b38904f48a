#include "properties.hpp"

#include <numeric>
#include <random>
#include <utility>

#include <gmpxx.h>

#include "v1sign/asymptotics.hpp"
#include "v1sign/constants.hpp"
#include "v1sign/series.hpp"

namespace v1sign::cli {
namespace {

void record(SuiteResult& r, bool ok, const std::string& label) {
  ++r.cases;
  if (ok) return;
  if (r.failures++ == 0) r.first_failure = label;
}

mpz_class pow10(unsigned k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return p;
}

}  // namespace

SuiteResult series_inverse_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"series_inverse_multiply_back", 0, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> order_dist(0, 80);
  std::uniform_int_distribution<long> coeff_dist(-1000, 1000);
  std::bernoulli_distribution sparse(0.3);
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t order = order_dist(rng);
    std::vector<mpz_class> c(order + 1);
    c[0] = 1;
    for (std::size_t k = 1; k <= order; ++k) c[k] = sparse(rng) ? 0 : coeff_dist(rng);
    const TruncatedIntSeries a(std::move(c));
    const bool ok = series_mul(a, series_inverse(a)) == TruncatedIntSeries::one(order);
    record(r, ok, "order " + std::to_string(order) + ", case " + std::to_string(i));
  }
  return r;
}

SuiteResult pythagorean_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"pythagorean_identity", 0, 0, {}};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<unsigned long> den_dist(1, 1'000'000);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Precision p{256};
  const Enclosure two = Enclosure::exact(2);
  for (std::size_t i = 0; i < cases; ++i) {
    const unsigned long den = den_dist(rng);
    const mpz_class num(static_cast<unsigned long>(unit(rng) * 1e6 * static_cast<double>(den)));
    const Enclosure x = Enclosure::exact(mpq_class(num, den));
    const Enclosure sum = square(f_minus(x, p)) + square(f_plus(x, p));
    record(r, sum.contains(two), "x = " + num.get_str() + "/" + std::to_string(den));
  }
  return r;
}

SuiteResult budget_nesting_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"budget_nesting", 0, 0, {}};
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::uniform_int_distribution<unsigned> exp_dist(3, 12);
  std::uniform_int_distribution<unsigned> digit_dist(20, 80);
  for (std::size_t i = 0; i < cases; ++i) {
    unsigned e1 = exp_dist(rng);
    unsigned e2 = exp_dist(rng);
    if (e1 == e2) e2 = e1 == 12 ? 11 : e1 + 1;
    PrecisionBudget loose;
    PrecisionBudget tight;
    loose.target_width = mpq_class(mpz_class(1), pow10(std::min(e1, e2)));
    tight.target_width = mpq_class(mpz_class(1), pow10(std::max(e1, e2)));
    loose.working_digits = digit_dist(rng);
    tight.working_digits = digit_dist(rng);
    const Enclosure g_loose = dilog_G(loose);
    const Enclosure g_tight = dilog_G(tight);
    record(r, g_loose.contains(g_tight),
           "1e-" + std::to_string(std::min(e1, e2)) + " vs 1e-" + std::to_string(std::max(e1, e2)));
  }
  return r;
}

SuiteResult periodicity_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"periodicity_identities", 0, 0, {}};
  std::mt19937_64 rng(seed ^ 0x165667b19e3779f9ULL);
  std::uniform_int_distribution<long> a_dist(-500, 500);
  std::uniform_int_distribution<unsigned long> b_dist(1, 60);
  while (r.cases < cases) {
    const long a = a_dist(rng);
    const unsigned long b = b_dist(rng);
    if (std::gcd(static_cast<unsigned long>(a < 0 ? -a : a), b) != 1) continue;
    const PeriodicityReport rep = periodicity_diagnostic(mpz_class(a), mpz_class(b));
    bool ok = rep.minus_identity_holds && rep.plus_identity_holds && rep.minus.size() == 4 * b &&
              rep.plus.size() == 4 * b;
    // Every class fraction must equal frac(alpha (r + offset)^2) computed directly.
    const mpq_class alpha(a, b);
    for (std::size_t k = 0; ok && k < rep.minus.size(); ++k) {
      const mpq_class rq(static_cast<long>(k));
      for (int fam = 0; fam < 2; ++fam) {
        const mpq_class shift = fam == 0 ? mpq_class(1, 4) : mpq_class(3, 4);
        mpq_class v = alpha * (rq + shift) * (rq + shift);
        v.canonicalize();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        const mpq_class frac = v - mpq_class(fl);
        const auto& cls = fam == 0 ? rep.minus[k] : rep.plus[k];
        const mpq_class shifted = rq + mpq_class(static_cast<long>(4 * b)) + shift;
        mpq_class diff = alpha * shifted * shifted - v;
        diff.canonicalize();
        ok = cls.value == v && cls.fraction == frac && cls.integral == (frac == 0) && diff.get_den() == 1;
        if (!ok) break;
      }
    }
    record(r, ok, "a/b = " + std::to_string(a) + "/" + std::to_string(b));
  }
  return r;
}

std::vector<SuiteResult> run_property_suites(std::uint64_t seed) {
  return {series_inverse_suite(seed), pythagorean_suite(seed), budget_nesting_suite(seed),
          periodicity_suite(seed)};
}

}  // namespace v1sign::cli
