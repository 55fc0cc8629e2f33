#include "wbe/bigcomplex.hpp"

#include <cstdlib>
#include <stdexcept>

namespace wbe {

void BigFloat::sin_cos_pi_frac(BigFloat& s, BigFloat& c, long num, long den, Precision p) {
    mpfr_t pi, ang;
    mpfr_init2(pi, p.bits());
    mpfr_init2(ang, p.bits());
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_mul_si(ang, pi, num, MPFR_RNDN);
    mpfr_div_si(ang, ang, den, MPFR_RNDN);
    s = BigFloat(p);
    c = BigFloat(p);
    mpfr_sin_cos(s.raw_handle(), c.raw_handle(), ang, MPFR_RNDN);
    mpfr_clear(pi);
    mpfr_clear(ang);
}

std::string BigFloat::str() const {
    long digits = static_cast<long>(mpfr_get_prec(v_) / 3.3219280948873623) + 2;
    return str(digits);
}

std::string BigFloat::str(long digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);
    // Trim trailing zeros of the mantissa but keep at least one digit.
    size_t last = mant.find_last_not_of('0');
    mant = mant.substr(0, last == std::string::npos ? 1 : last + 1);
    std::string out = neg ? "-" : "";
    out += "0.";
    out += mant;
    out += "e";
    out += std::to_string(static_cast<long>(e));
    return out;
}

BigComplex BigComplex::parse(const std::string& s0, Precision p) {
    std::string s;
    for (char ch : s0)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    // Split at the last '+'/'-' that is not part of an exponent and not leading.
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto part = [&](const std::string& t) -> BigFloat {
        if (t.empty() || t == "+") return BigFloat(1, p);
        if (t == "-") return BigFloat(-1, p);
        return BigFloat(t, p);
    };
    bool tail_imag = s.back() == 'i' || s.back() == 'I';
    if (!tail_imag) {
        if (split != std::string::npos) throw std::invalid_argument("bad complex literal: " + s0);
        return BigComplex(BigFloat(s, p), BigFloat(p));
    }
    std::string body = s.substr(0, s.size() - 1);
    if (split == std::string::npos || split == 0)
        return BigComplex(BigFloat(p), part(body));
    return BigComplex(BigFloat(s.substr(0, split), p), part(body.substr(split)));
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    // Smith's algorithm, keeps intermediate magnitudes balanced.
    if (abs(b.re) >= abs(b.im)) {
        if (b.re.is_zero()) throw std::domain_error("complex division by zero");
        BigFloat r = b.im / b.re;
        BigFloat d = b.re + b.im * r;
        return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    BigFloat r = b.re / b.im;
    BigFloat d = b.im + b.re * r;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

BigComplex sqrt(const BigComplex& a) {
    if (a.im.is_zero()) {
        if (a.re.sign() >= 0) return {sqrt(a.re), BigFloat(a.re - a.re)};
        return {a.re - a.re, sqrt(-a.re)};
    }
    BigFloat m = abs(a);
    BigFloat t = sqrt((m + abs(a.re)) / 2);
    BigFloat u = a.im / (t * 2);
    if (a.re.sign() >= 0) return {t, u};
    if (a.im.sign() >= 0) return {u, t};
    return {-u, -t};
}

BigComplex pow_int(const BigComplex& a, long n) {
    Precision p = a.precision_of();
    if (n == 0) return BigComplex::one(p);
    BigComplex base = n > 0 ? a : BigComplex::one(p) / a;
    unsigned long e = static_cast<unsigned long>(n > 0 ? n : -n);
    BigComplex acc = BigComplex::one(p);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

BigComplex pow_half_int(const BigComplex& a, long n) {
    if (n % 2 == 0) return pow_int(a, n / 2);
    BigComplex r = sqrt(a);
    return pow_int(r, n);
}

std::string BigComplex::str() const { return re.str() + "|" + im.str(); }
std::string BigComplex::str(long d) const { return re.str(d) + "|" + im.str(d); }

bool approx_equal(const BigComplex& a, const BigComplex& b, const BigFloat& tol) {
    BigFloat scale = max(BigFloat(1, Precision{32}), max(abs(a), abs(b)));
    return abs(a - b) <= tol * scale;
}

}  // namespace wbe
