#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace wbe {

/// Working precision, counted in decimal digits.  All numeric types carry
/// their precision explicitly; there is no ambient global precision state.
struct Precision {
    long digits = 64;

    long bits() const {
        // log2(10) ~ 3.3219, plus guard bits so that decimal round trips
        // and repeated arithmetic stay below one ulp per operation.
        return static_cast<long>(digits * 3.3219280948873623) + 24;
    }
};

inline constexpr long kDefaultDigits = 64;

/// Arbitrary-precision real number (MPFR backed, value semantics).
///
/// Binary operations compute at the larger precision of the two operands,
/// so precision propagates from the inputs of a computation.
class BigFloat {
  public:
    BigFloat() { mpfr_init2(v_, Precision{kDefaultDigits}.bits()); mpfr_set_zero(v_, 1); }
    explicit BigFloat(Precision p) { mpfr_init2(v_, p.bits()); mpfr_set_zero(v_, 1); }
    BigFloat(long x, Precision p) { mpfr_init2(v_, p.bits()); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(int x, Precision p) : BigFloat(static_cast<long>(x), p) {}
    BigFloat(double x, Precision p) { mpfr_init2(v_, p.bits()); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const std::string& dec, Precision p) {
        mpfr_init2(v_, p.bits());
        mpfr_set_str(v_, dec.c_str(), 10, MPFR_RNDN);
    }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    long prec_bits() const { return mpfr_get_prec(v_); }

    /// Rounds the value to precision p (used by refine/escalation paths).
    BigFloat at_precision(Precision p) const {
        BigFloat r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r = raw(mpfr_get_prec(a.v_));
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define WBE_BF_BINOP(op, fn)                                        \
    friend BigFloat operator op(const BigFloat& a, const BigFloat& b) { \
        BigFloat r = raw(std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_))); \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                            \
        return r;                                                   \
    }
    WBE_BF_BINOP(+, mpfr_add)
    WBE_BF_BINOP(-, mpfr_sub)
    WBE_BF_BINOP(*, mpfr_mul)
    WBE_BF_BINOP(/, mpfr_div)
#undef WBE_BF_BINOP

    friend BigFloat operator*(const BigFloat& a, long b) {
        BigFloat r = raw(mpfr_get_prec(a.v_));
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, long b) {
        BigFloat r = raw(mpfr_get_prec(a.v_));
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r = raw(mpfr_get_prec(a.v_));
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r = raw(mpfr_get_prec(a.v_));
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    /// sqrt(a^2 + b^2) without overflow.
    friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
        BigFloat r = raw(std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

    /// 10^e at the precision of the requested target.
    static BigFloat pow10(long e, Precision p) {
        BigFloat r(p);
        mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
        if (e < 0) mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
        return r;
    }

    static void sin_cos_pi_frac(BigFloat& s, BigFloat& c, long num, long den, Precision p);

    /// Decimal string, full working precision, round-trip safe.
    std::string str() const;
    /// Decimal string with a fixed number of significant digits.
    std::string str(long digits) const;

    mpfr_ptr raw_handle() { return v_; }
    mpfr_srcptr raw_handle() const { return v_; }

  private:
    static BigFloat raw(long bits) {
        BigFloat r(Precision{1});
        mpfr_set_prec(r.v_, bits);
        return r;
    }
    mpfr_t v_;
};

}  // namespace wbe
