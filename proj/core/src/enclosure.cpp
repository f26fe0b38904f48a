#include "v1sign/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>

#include "mpfr_value.hpp"
#include "v1sign/errors.hpp"

namespace v1sign {

using detail::MpfrValue;

namespace {

constexpr unsigned long kGuardBits = 32;

mpq_class round_to_bits(const mpq_class& x, unsigned long bits, mpfr_rnd_t rnd) {
  return MpfrValue(x, static_cast<mpfr_prec_t>(bits), rnd).to_rational();
}

mpz_class pow10(unsigned digits) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  return p;
}

std::string format_scaled(const mpz_class& scaled, unsigned digits) {
  std::string body = mpz_class(abs(scaled)).get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  if (digits > 0) body.insert(body.size() - digits, ".");
  return (sgn(scaled) < 0 ? "-" : "") + body;
}

}  // namespace

Precision Precision::from_digits(unsigned digits) {
  const double bits = std::ceil(digits * std::log2(10.0));
  return Precision{static_cast<unsigned long>(bits) + kGuardBits};
}

unsigned Precision::digits() const {
  if (bits <= kGuardBits) return 0;
  return static_cast<unsigned>(std::floor(static_cast<double>(bits - kGuardBits) * std::log10(2.0)));
}

Enclosure::Enclosure(mpq_class lo, mpq_class hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_.canonicalize();
  hi_.canonicalize();
  if (lo_ > hi_) {
    throw InvalidInput("Enclosure: lo > hi (" + lo_.get_str() + " > " + hi_.get_str() + ")");
  }
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
}

double Enclosure::midpoint_double() const { return midpoint().get_d(); }

Enclosure Enclosure::rounded(Precision p) const {
  return Enclosure(round_to_bits(lo_, p.bits, MPFR_RNDD), round_to_bits(hi_, p.bits, MPFR_RNDU));
}

std::string Enclosure::to_string(unsigned digits) const {
  return "[" + decimal_down(lo_, digits) + ", " + decimal_up(hi_, digits) + "]";
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  if (sgn(a.lo_) >= 0 && sgn(b.lo_) >= 0) {
    return Enclosure(a.lo_ * b.lo_, a.hi_ * b.hi_);
  }
  const mpq_class p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return Enclosure(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.contains(mpq_class(0))) {
    throw InvalidInput("Enclosure division by an interval containing zero");
  }
  const mpq_class inv_lo = 1 / b.hi_;
  const mpq_class inv_hi = 1 / b.lo_;
  return a * Enclosure(inv_lo, inv_hi);
}

Enclosure square(const Enclosure& x) {
  if (sgn(x.lo()) >= 0) return Enclosure(x.lo() * x.lo(), x.hi() * x.hi());
  if (sgn(x.hi()) <= 0) return Enclosure(x.hi() * x.hi(), x.lo() * x.lo());
  const mpq_class m = std::max(mpq_class(-x.lo()), x.hi());
  return Enclosure(0, m * m);
}

bool excludes_all_integers(const Enclosure& x) {
  mpz_class floor_lo;
  mpz_class floor_hi;
  mpz_fdiv_q(floor_lo.get_mpz_t(), x.lo().get_num_mpz_t(), x.lo().get_den_mpz_t());
  mpz_fdiv_q(floor_hi.get_mpz_t(), x.hi().get_num_mpz_t(), x.hi().get_den_mpz_t());
  return floor_lo == floor_hi && x.lo() > mpq_class(floor_lo);
}

Enclosure abs(const Enclosure& x) {
  if (sgn(x.lo()) >= 0) return x;
  if (sgn(x.hi()) <= 0) return -x;
  return Enclosure(0, std::max(mpq_class(-x.lo()), x.hi()));
}

std::string decimal_down(const mpq_class& x, unsigned digits) {
  mpz_class scaled;
  const mpq_class y = x * pow10(digits);
  mpz_fdiv_q(scaled.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return format_scaled(scaled, digits);
}

std::string decimal_up(const mpq_class& x, unsigned digits) {
  mpz_class scaled;
  const mpq_class y = x * pow10(digits);
  mpz_cdiv_q(scaled.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return format_scaled(scaled, digits);
}

mpq_class parse_rational(const std::string& text) {
  const auto bad = [&] { return InvalidInput("expected a rational 'p/q' or integer, got '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const auto is_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false)) throw bad();
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (sgn(d) == 0) throw bad();
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

namespace interval {

namespace {

using UnaryMpfr = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// f increasing on the domain of x.
Enclosure monotone_up(const Enclosure& x, Precision p, UnaryMpfr f) {
  const auto prec = static_cast<mpfr_prec_t>(p.bits);
  MpfrValue a(x.lo(), prec, MPFR_RNDD);
  MpfrValue b(x.hi(), prec, MPFR_RNDU);
  MpfrValue fa(prec);
  MpfrValue fb(prec);
  f(fa.get(), a.get(), MPFR_RNDD);
  f(fb.get(), b.get(), MPFR_RNDU);
  return Enclosure(fa.to_rational(), fb.to_rational());
}

// Range of cos (phase = 0) or sin (phase = 1/2) over x. Both attain +1 at
// (2j + phase)*pi and -1 at (2j + 1 + phase)*pi; elsewhere they are monotone,
// so the endpoints plus any certified-possible extremum bound the range.
Enclosure trig_range(const Enclosure& x, Precision p, bool is_sin) {
  const auto prec = static_cast<mpfr_prec_t>(p.bits);
  MpfrValue a(x.lo(), prec, MPFR_RNDD);
  MpfrValue b(x.hi(), prec, MPFR_RNDU);
  const Enclosure widened(a.to_rational(), b.to_rational());

  const Enclosure pi_enc = pi(p);
  Enclosure turns = widened / pi_enc;
  if (is_sin) turns = turns - Enclosure::exact(mpq_class(1, 2));

  mpz_class k_first;
  mpz_class k_last;
  mpz_cdiv_q(k_first.get_mpz_t(), turns.lo().get_num_mpz_t(), turns.lo().get_den_mpz_t());
  mpz_fdiv_q(k_last.get_mpz_t(), turns.hi().get_num_mpz_t(), turns.hi().get_den_mpz_t());

  const Enclosure unit(-1, 1);
  if (k_last - k_first >= 1) return unit;

  const auto f = is_sin ? &mpfr_sin : &mpfr_cos;
  MpfrValue fa_lo(prec), fa_hi(prec), fb_lo(prec), fb_hi(prec);
  f(fa_lo.get(), a.get(), MPFR_RNDD);
  f(fa_hi.get(), a.get(), MPFR_RNDU);
  f(fb_lo.get(), b.get(), MPFR_RNDD);
  f(fb_hi.get(), b.get(), MPFR_RNDU);
  mpq_class lo = std::min(fa_lo.to_rational(), fb_lo.to_rational());
  mpq_class hi = std::max(fa_hi.to_rational(), fb_hi.to_rational());
  if (k_first == k_last) {
    if (mpz_even_p(k_first.get_mpz_t())) {
      hi = 1;
    } else {
      lo = -1;
    }
  }
  return Enclosure(std::max(lo, mpq_class(-1)), std::min(hi, mpq_class(1)));
}

}  // namespace

Enclosure pi(Precision p) {
  const auto prec = static_cast<mpfr_prec_t>(p.bits);
  MpfrValue lo(prec);
  MpfrValue hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return Enclosure(lo.to_rational(), hi.to_rational());
}

Enclosure sqrt(const Enclosure& x, Precision p) {
  if (sgn(x.lo()) < 0) {
    throw InvalidInput("interval::sqrt of an enclosure reaching below zero: " + x.to_string());
  }
  return monotone_up(x, p, &mpfr_sqrt);
}

Enclosure exp(const Enclosure& x, Precision p) { return monotone_up(x, p, &mpfr_exp); }

Enclosure log(const Enclosure& x, Precision p) {
  if (sgn(x.lo()) <= 0) {
    throw InvalidInput("interval::log of an enclosure not strictly positive: " + x.to_string());
  }
  return monotone_up(x, p, &mpfr_log);
}

Enclosure cos(const Enclosure& x, Precision p) { return trig_range(x, p, false); }

Enclosure sin(const Enclosure& x, Precision p) { return trig_range(x, p, true); }

}  // namespace interval

}  // namespace v1sign
