#pragma once

#include <gmpxx.h>
#include <mpfr.h>

namespace v1sign::detail {

// Owning wrapper around mpfr_t.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  MpfrValue(const mpq_class& q, mpfr_prec_t precision, mpfr_rnd_t rnd) : MpfrValue(precision) {
    mpfr_set_q(value_, q.get_mpq_t(), rnd);
  }
  ~MpfrValue() { mpfr_clear(value_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

  // Exact: every finite MPFR number is a dyadic rational.
  mpq_class to_rational() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return q;
  }

 private:
  mpfr_t value_;
};

}  // namespace v1sign::detail
