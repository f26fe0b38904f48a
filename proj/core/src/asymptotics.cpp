#include "v1sign/asymptotics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "v1sign/errors.hpp"

namespace v1sign {

namespace {

mpz_class floor_of(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

mpz_class ceil_of(const mpq_class& x) {
  mpz_class f;
  mpz_cdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

mpq_class dist_point(const mpq_class& y) {
  return std::min(y - mpq_class(floor_of(y)), mpq_class(ceil_of(y)) - y);
}

// (m + offset/4) as an exact rational, offset in {1, 3}.
mpq_class shifted_index(std::size_t m, unsigned offset) {
  return mpq_class(mpz_class(4 * static_cast<unsigned long>(m) + offset), mpz_class(4));
}

unsigned family_offset(Family f) { return f == Family::minus ? 1 : 3; }

}  // namespace

std::string_view to_string(Family f) noexcept { return f == Family::minus ? "minus" : "plus"; }

Family parse_family(std::string_view text) {
  if (text == "minus") return Family::minus;
  if (text == "plus") return Family::plus;
  throw InvalidInput("family must be 'minus' or 'plus', got '" + std::string(text) + "'");
}

AsymptoticContext::AsymptoticContext() : AsymptoticContext(default_ladder()) {}

AsymptoticContext::AsymptoticContext(std::vector<PrecisionBudget> ladder) : ladder_(std::move(ladder)) {
  if (ladder_.empty()) throw InvalidInput("AsymptoticContext: empty precision ladder");
  for (const auto& b : ladder_) b.validate();
  cache_.resize(ladder_.size());
}

std::vector<PrecisionBudget> AsymptoticContext::default_ladder() {
  std::vector<PrecisionBudget> ladder;
  unsigned digits = 50;
  mpz_class width_den("1000000000000");
  for (int level = 0; level < 5; ++level) {
    PrecisionBudget b;
    b.working_digits = digits;
    b.target_width = mpq_class(mpz_class(1), width_den);
    ladder.push_back(b);
    digits *= 2;
    width_den *= 10;
  }
  return ladder;
}

const ConstantSet& AsymptoticContext::constants(std::size_t level) const {
  std::lock_guard lock(mutex_);
  auto& slot = cache_.at(level);
  if (!slot) slot = std::make_unique<ConstantSet>(compute_constants(ladder_[level]));
  return *slot;
}

Enclosure f_minus(const Enclosure& x, Precision p) { return interval::cos(x, p) - interval::sin(x, p); }

Enclosure f_plus(const Enclosure& x, Precision p) { return interval::cos(x, p) + interval::sin(x, p); }

Enclosure f_family(Family f, const Enclosure& x, Precision p) {
  return f == Family::minus ? f_minus(x, p) : f_plus(x, p);
}

Enclosure zero_of(Family f, std::size_t m, const ConstantSet& k) {
  return k.pi * Enclosure::exact(shifted_index(m, family_offset(f)));
}

Enclosure zero_r(std::size_t m, const ConstantSet& k) { return zero_of(Family::minus, m, k); }
Enclosure zero_s(std::size_t m, const ConstantSet& k) { return zero_of(Family::plus, m, k); }

Enclosure quad(Family f, std::size_t m, const ConstantSet& k) {
  const mpq_class s = shifted_index(m, family_offset(f));
  return k.alpha * Enclosure::exact(s * s);
}

Enclosure quad_minus(std::size_t m, const ConstantSet& k) { return quad(Family::minus, m, k); }
Enclosure quad_plus(std::size_t m, const ConstantSet& k) { return quad(Family::plus, m, k); }

Enclosure dist_to_int(const Enclosure& x) {
  const mpq_class half(1, 2);
  if (x.width() >= half) {
    throw PrecisionError("dist_to_int: enclosure too wide to locate the nearest integer: " + x.to_string(),
                         Enclosure(0, half));
  }
  // d(y) = |y - round(y)| is monotone between consecutive points of (1/2)Z.
  const bool has_integer = mpq_class(ceil_of(x.lo())) <= x.hi();
  const bool has_half = mpq_class(ceil_of(x.lo() - half)) <= x.hi() - half;
  const mpq_class d_lo = dist_point(x.lo());
  const mpq_class d_hi = dist_point(x.hi());
  const mpq_class lower = has_integer ? mpq_class(0) : std::min(d_lo, d_hi);
  const mpq_class upper = has_half ? half : std::max(d_lo, d_hi);
  return Enclosure(lower, upper);
}

AdmissibleSearch admissible_indices(Family f, std::size_t m_max, const mpq_class& delta,
                                    const AsymptoticContext& ctx) {
  if (sgn(delta) <= 0 || delta >= mpq_class(1, 2)) {
    throw InvalidInput("admissible_indices: delta must lie in (0, 1/2), got " + delta.get_str());
  }
  AdmissibleSearch out;
  for (std::size_t m = 0; m <= m_max; ++m) {
    bool decided = false;
    for (std::size_t level = 0; level < ctx.levels() && !decided; ++level) {
      const Enclosure d = dist_to_int(quad(f, m, ctx.constants(level)));
      if (d.lo() >= delta) {
        out.admissible.push_back(m);
        decided = true;
      } else if (d.hi() < delta) {
        decided = true;
      }
    }
    if (!decided) out.undecided.push_back(m);
  }
  return out;
}

PeriodicityReport periodicity_diagnostic(const mpz_class& a, const mpz_class& b) {
  if (sgn(b) <= 0) throw InvalidInput("periodicity_diagnostic: b must be positive");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1) throw InvalidInput("periodicity_diagnostic: a/b must be in lowest terms");
  if (b > kMaxDiagnosticDenominator) {
    throw InvalidInput("periodicity_diagnostic: b exceeds " + std::to_string(kMaxDiagnosticDenominator));
  }

  PeriodicityReport rep;
  rep.a = a;
  rep.b = b;
  rep.period = 4 * b.get_ui();
  const mpq_class alpha(a, b);

  const auto value = [&](std::uint64_t r, unsigned offset) -> mpq_class {
    const mpq_class s(mpz_class(4 * static_cast<unsigned long>(r) + offset), mpz_class(4));
    return alpha * s * s;
  };
  const auto fill = [&](unsigned offset, std::vector<ResidueClass>& classes, bool& identity,
                        std::optional<mpq_class>& delta) {
    const mpz_class constant = mpz_class(offset == 1 ? 2 : 6) * a;
    identity = true;
    for (std::uint64_t r = 0; r <= rep.period; ++r) {
      const mpq_class diff = value(r + rep.period, offset) - value(r, offset);
      const mpz_class expected = 8 * a * r + 16 * a * b + constant;
      if (diff.get_den() != 1 || diff.get_num() != expected) identity = false;
    }
    for (std::uint64_t r = 0; r < rep.period; ++r) {
      ResidueClass rc;
      rc.r = r;
      rc.value = value(r, offset);
      rc.fraction = rc.value - mpq_class(floor_of(rc.value));
      rc.integral = sgn(rc.fraction) == 0;
      if (!rc.integral) {
        const mpq_class d = std::min(rc.fraction, mpq_class(1 - rc.fraction));
        if (!delta || d < *delta) delta = d;
      }
      classes.push_back(std::move(rc));
    }
  };
  fill(1, rep.minus, rep.minus_identity_holds, rep.delta_minus);
  fill(3, rep.plus, rep.plus_identity_holds, rep.delta_plus);
  return rep;
}

CandidateTriple candidate(Family f, std::size_t m, const AsymptoticContext& ctx) {
  std::optional<Enclosure> widest;
  for (std::size_t level = 0; level < ctx.levels(); ++level) {
    const Enclosure t = quad(f, m, ctx.constants(level));
    if (!widest) widest = t;
    // minus: start = 2 floor(t/2); plus: start = 2 floor((t-1)/2) + 1.
    const mpq_class shift = f == Family::minus ? mpq_class(0) : mpq_class(1);
    const mpz_class k_lo = floor_of((t.lo() - shift) / 2);
    const mpz_class k_hi = floor_of((t.hi() - shift) / 2);
    if (k_lo != k_hi) continue;
    const mpz_class start = 2 * k_lo + shift.get_num();
    if (!(t.lo() > mpq_class(start) && t.hi() < mpq_class(start + 2))) continue;
    if (!start.fits_slong_p()) throw InvalidInput("candidate: start does not fit in 64 bits");

    CandidateTriple c;
    c.family = f;
    c.m = m;
    c.start = start.get_si();
    c.t = t;
    c.dist = dist_to_int(t);
    c.level = level;
    return c;
  }
  throw PrecisionError("candidate(" + std::string(to_string(f)) + ", m=" + std::to_string(m) +
                           "): floor undecided at every precision level",
                       widest);
}

CandidateList candidates_up_to(Family f, std::int64_t n_max, const AsymptoticContext& ctx) {
  CandidateList out;
  for (std::size_t m = 0;; ++m) {
    const Enclosure t = quad(f, m, ctx.constants(0));
    if (t.lo() > mpq_class(n_max)) break;
    try {
      CandidateTriple c = candidate(f, m, ctx);
      if (c.start + 2 > n_max) break;
      out.candidates.push_back(std::move(c));
    } catch (const PrecisionError&) {
      out.skipped.push_back(m);
    }
  }
  return out;
}

std::vector<Enclosure> crossings_up_to(std::int64_t n_max, const ConstantSet& k) {
  std::vector<Enclosure> out;
  for (Family f : {Family::minus, Family::plus}) {
    for (std::size_t m = 0;; ++m) {
      Enclosure t = quad(f, m, k);
      if (t.lo() > mpq_class(n_max)) break;
      out.push_back(std::move(t));
    }
  }
  std::sort(out.begin(), out.end(), [](const Enclosure& a, const Enclosure& b) { return a.lo() < b.lo(); });
  return out;
}

Enclosure evaluation_point(std::uint64_t n, const ConstantSet& k) {
  const Precision p = k.budget.precision();
  return (k.c * interval::sqrt(Enclosure::exact(mpq_class(mpz_class(n))), p)).rounded(p);
}

MainTermEstimate main_term(std::uint64_t n, const AsymptoticContext& ctx) {
  if (n == 0) throw InvalidInput("main_term: n must be >= 1");
  const bool even = n % 2 == 0;
  const Family fam = even ? Family::minus : Family::plus;

  MainTermEstimate est;
  est.n = n;
  est.parity_factor = (n / 2) % 2 == 0 ? 1 : -1;
  for (std::size_t level = 0; level < ctx.levels(); ++level) {
    const ConstantSet& k = ctx.constants(level);
    const Precision p = ctx.precision(level);
    const Enclosure x = evaluation_point(n, k);
    est.trig_value = f_family(fam, x, p);
    est.level = level;
    const int trig_sign = est.trig_value.certified_sign();
    if (trig_sign == 0) continue;

    // A0, A1 > 0, so the sign is the parity factor times sign F.
    est.sign = static_cast<PredictedSign>(est.parity_factor * trig_sign);
    const Enclosure& amp = even ? k.amp.A0 : k.amp.A1;
    const Enclosure log_n = interval::log(Enclosure::exact(mpq_class(mpz_class(n))), p);
    est.log_magnitude = (x - log_n * Enclosure::exact(mpq_class(1, 2)) + interval::log(amp, p) +
                         interval::log(abs(est.trig_value), p))
                            .rounded(p);
    return est;
  }
  est.sign = PredictedSign::undetermined;
  est.log_magnitude.reset();
  return est;
}

ZeroGap zero_gap(const CandidateTriple& cand, const AsymptoticContext& ctx) {
  if (cand.start <= 0) throw InvalidInput("zero_gap: candidate start must be positive");
  const ConstantSet& k = ctx.constants(cand.level);
  const Precision p = ctx.precision(cand.level);
  const auto start = static_cast<std::uint64_t>(cand.start);
  const Enclosure zero = zero_of(cand.family, cand.m, k);
  const Enclosure root = interval::sqrt(Enclosure::exact(mpq_class(mpz_class(start))), p);
  return ZeroGap{((zero - evaluation_point(start, k)) * root).rounded(p),
                 ((evaluation_point(start + 2, k) - zero) * root).rounded(p)};
}

}  // namespace v1sign
