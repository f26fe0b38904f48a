#include "v1sign/constants.hpp"

#include <algorithm>
#include <string>

#include "v1sign/errors.hpp"

namespace v1sign {

namespace {

// Extra fractional bits for fixed-point accumulation of the grouped series.
constexpr unsigned long kSumGuardBits = 64;
// The tail bound keeps the G width above 1e-20 for any admissible M, so
// accumulating beyond this many bits never tightens the result.
constexpr unsigned long kMaxSumBits = 192;

mpq_class inverse_square(unsigned long k) {
  mpz_class d(k);
  d *= d;
  return mpq_class(mpz_class(1), d);
}

// Sum of B_0..B_M as an enclosure of dyadic rationals with denominator 2^scale_bits.
Enclosure fixed_point_group_sum(std::size_t M, unsigned long scale_bits) {
  mpz_class one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, scale_bits);
  mpz_class lower = 0;
  mpz_class upper = 0;
  mpz_class q;
  for (std::size_t m = 0; m <= M; ++m) {
    const unsigned long base = 6UL * m;
    for (unsigned long k : {1UL, 2UL}) {
      const unsigned long d = (base + k) * (base + k);
      const unsigned long rem = mpz_fdiv_q_ui(q.get_mpz_t(), one.get_mpz_t(), d);
      lower += q;
      upper += q;
      if (rem != 0) upper += 1;
    }
    for (unsigned long k : {4UL, 5UL}) {
      const unsigned long d = (base + k) * (base + k);
      const unsigned long rem = mpz_fdiv_q_ui(q.get_mpz_t(), one.get_mpz_t(), d);
      upper -= q;
      lower -= q;
      if (rem != 0) lower -= 1;
    }
  }
  return Enclosure(mpq_class(lower, one), mpq_class(upper, one));
}

Enclosure group_sum(std::size_t M, Precision p) {
  if (M <= kExactPartialSumTerms) {
    mpq_class sum = 0;
    for (std::size_t m = 0; m <= M; ++m) sum += bw_group_term(m);
    return Enclosure::exact(sum);
  }
  return fixed_point_group_sum(M, std::min(p.bits, kMaxSumBits) + kSumGuardBits);
}

}  // namespace

void PrecisionBudget::validate() const {
  if (sgn(target_width) <= 0) throw InvalidInput("PrecisionBudget: target_width must be positive");
  if (max_terms < 1 || max_terms > kMaxGroupedTerms) {
    throw InvalidInput("PrecisionBudget: max_terms must be in [1, " + std::to_string(kMaxGroupedTerms) + "]");
  }
  if (working_digits < 10) throw InvalidInput("PrecisionBudget: working_digits must be >= 10");
}

mpq_class bw_group_term(std::size_t m) {
  const unsigned long base = 6UL * m;
  return inverse_square(base + 1) + inverse_square(base + 2) - inverse_square(base + 4) -
         inverse_square(base + 5);
}

mpq_class bw_tail_bound(std::size_t M) { return inverse_square(6UL * M + 1); }

Enclosure sqrt3_over_2(Precision p) {
  return interval::sqrt(Enclosure::exact(3), p) * Enclosure::exact(mpq_class(1, 2));
}

Enclosure bw_partial_sum(std::size_t M, Precision p) {
  if (M > kMaxGroupedTerms) throw InvalidInput("bw_partial_sum: M too large");
  return (sqrt3_over_2(p) * group_sum(M, p)).rounded(p);
}

Enclosure dilog_G_at(std::size_t M, Precision p) {
  if (M > kMaxGroupedTerms) throw InvalidInput("dilog_G_at: M too large");
  const Enclosure factor = sqrt3_over_2(p);
  const Enclosure sum = group_sum(M, p);
  // Tail of positive terms: add [0, 1/(6M+1)^2] to the grouped sum.
  const Enclosure with_tail(sum.lo(), sum.hi() + bw_tail_bound(M));
  return (factor * with_tail).rounded(p);
}

std::size_t dilog_terms_for(const PrecisionBudget& budget) {
  budget.validate();
  // Half the budget goes to the tail: (sqrt 3/2)/(6M+1)^2 <= w/2.
  const mpq_class need = 2 * sqrt3_over_2(budget.precision()).hi() / budget.target_width;
  mpz_class ceil_need;
  mpz_cdiv_q(ceil_need.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), ceil_need.get_mpz_t());
  root += 1;  // (6M+1) >= root guarantees (6M+1)^2 >= need
  mpz_class M = (root - 1 + 5) / 6;
  if (!M.fits_ulong_p() || M.get_ui() > kMaxGroupedTerms) return kMaxGroupedTerms + 1;
  return static_cast<std::size_t>(M.get_ui());
}

Enclosure dilog_G(const PrecisionBudget& budget) { return dilog_G_with_terms(budget).G; }

DilogResult dilog_G_with_terms(const PrecisionBudget& budget) {
  const Precision p = budget.precision();
  std::size_t M = dilog_terms_for(budget);
  while (true) {
    if (M > budget.max_terms) {
      throw PrecisionError("dilog_G: target width needs more than max_terms = " +
                               std::to_string(budget.max_terms) + " grouped terms",
                           dilog_G_at(budget.max_terms, p));
    }
    Enclosure g = dilog_G_at(M, p);
    if (g.width() <= budget.target_width) return {std::move(g), M};
    // Rounding consumed the other half of the budget; push the tail further.
    M *= 2;
  }
}

ConstantSet constants_from_G(const PrecisionBudget& budget, const Enclosure& G, std::size_t g_terms) {
  const Precision p = budget.precision();
  ConstantSet k;
  k.budget = budget;
  k.g_terms = g_terms;
  k.G = G;
  k.pi = interval::pi(p);
  k.abs_V = (G * Enclosure::exact(mpq_class(1, 8))).rounded(p);
  k.c = interval::sqrt(G * Enclosure::exact(mpq_class(1, 4)), p);
  k.alpha = (Enclosure::exact(4) * square(k.pi) / G).rounded(p);
  k.amp = amplitudes(p);
  return k;
}

ConstantSet compute_constants(const PrecisionBudget& budget) {
  auto [G, terms] = dilog_G_with_terms(budget);
  return constants_from_G(budget, G, terms);
}

Enclosure constant_c(const PrecisionBudget& budget) {
  const Enclosure G = dilog_G(budget);
  return interval::sqrt(G * Enclosure::exact(mpq_class(1, 4)), budget.precision());
}

Enclosure constant_alpha(const PrecisionBudget& budget) {
  const Precision p = budget.precision();
  const Enclosure G = dilog_G(budget);
  return (Enclosure::exact(4) * square(interval::pi(p)) / G).rounded(p);
}

Amplitudes amplitudes(Precision p) {
  const Enclosure root3 = interval::sqrt(Enclosure::exact(3), p);
  const auto fourth_root = [p](const Enclosure& x) { return interval::sqrt(interval::sqrt(x, p), p); };
  const Enclosure two = Enclosure::exact(2);
  const Enclosure three = Enclosure::exact(3);
  const Enclosure one = Enclosure::exact(1);

  Amplitudes a;
  a.gamma_plus = (one / (two * fourth_root(three * (two - root3)))).rounded(p);
  a.gamma_minus = (one / (two * fourth_root(three * (two + root3)))).rounded(p);
  a.A0 = a.gamma_plus + a.gamma_minus;
  a.A1 = a.gamma_plus - a.gamma_minus;
  return a;
}

}  // namespace v1sign
