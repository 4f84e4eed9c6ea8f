#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>

#include "beattysum/arith.hpp"

namespace bsum::arith {

namespace {

constexpr unsigned kBits = FixedReal::kFracBits;
constexpr std::size_t kMaxDecimalDigits = 80;

mpz_class pow2(unsigned bits) {
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    return r;
}

const mpz_class& one_unit() {
    static const mpz_class u = pow2(kBits);
    return u;
}

// floor(a / 2^bits) and whether the division was exact.
mpz_class shift_floor(const mpz_class& a, unsigned bits, bool& exact) {
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), a.get_mpz_t(), bits);
    exact = mpz_divisible_2exp_p(a.get_mpz_t(), bits) != 0;
    return q;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

double detail::round_scaled(const mpz_class& m, unsigned bits) {
    if (m == 0) return 0.0;
    mpz_class a = abs(m);
    long shift = 0;
    const std::size_t size = mpz_sizeinbase(a.get_mpz_t(), 2);
    if (size > 64) {
        // Keep 64 bits plus a sticky bit so the uint64 -> double conversion rounds correctly.
        shift = static_cast<long>(size - 64);
        const bool sticky = mpz_scan1(a.get_mpz_t(), 0) < static_cast<mp_bitcnt_t>(shift);
        mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        if (sticky) mpz_setbit(a.get_mpz_t(), 0);
    }
    std::uint64_t top = 0;
    mpz_export(&top, nullptr, -1, sizeof top, 0, 0, a.get_mpz_t());
    const double v = std::ldexp(static_cast<double>(top), static_cast<int>(shift - static_cast<long>(bits)));
    return m < 0 ? -v : v;
}

FixedReal::FixedReal(mpz_class mantissa, mpz_class err_ulps)
    : m_(std::move(mantissa)), e_(std::move(err_ulps)) {
    if (e_ < 0) throw DomainError("negative FixedReal error bound");
}

FixedReal FixedReal::from_integer(const mpz_class& n) { return FixedReal(n * one_unit(), 0); }

FixedReal FixedReal::from_surd(const QuadraticSurd& x) {
    mpz_class m = x.scaled_floor(kBits);
    bool exact = false;
    if (x.is_rational()) {
        mpz_class num = x.p() * one_unit();
        exact = mpz_divisible_p(num.get_mpz_t(), x.r().get_mpz_t()) != 0;
    }
    return FixedReal(std::move(m), exact ? 0 : 1);
}

FixedReal FixedReal::parse_decimal(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) negative = s[pos++] == '-';
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_point = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            throw ParseError("malformed decimal '" + s + "'");
        }
    }
    if (digits.empty()) throw ParseError("malformed decimal '" + s + "'");
    std::size_t first = digits.find_first_not_of('0');
    std::size_t significant = first == std::string::npos ? 0 : digits.size() - first;
    if (significant > kMaxDecimalDigits)
        throw ParseError("decimal '" + s + "' has more than 80 significant digits");

    mpz_class num(digits, 10);
    if (negative) num = -num;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    mpz_class scaled = num * one_unit();
    mpz_class m;
    mpz_fdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    bool exact = mpz_divisible_p(scaled.get_mpz_t(), den.get_mpz_t()) != 0;
    return FixedReal(std::move(m), exact ? 0 : 1);
}

double FixedReal::err_bound() const {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, e_.get_mpz_t());
    return std::ldexp(mant, static_cast<int>(exp) - static_cast<int>(kBits));
}

mpz_class FixedReal::floor() const {
    bool unused = false;
    mpz_class lo = shift_floor(m_ - e_, kBits, unused);
    mpz_class hi = shift_floor(m_ + e_, kBits, unused);
    if (lo != hi)
        throw PrecisionExhausted("floor undecidable: value within " + std::to_string(err_bound()) +
                                 " of an integer");
    return lo;
}

FixedReal FixedReal::frac() const {
    mpz_class f = floor();
    return FixedReal(m_ - f * one_unit(), e_);
}

FixedReal FixedReal::invert() const { return from_integer(1) / *this; }

double FixedReal::to_double() const { return detail::round_scaled(m_, kBits); }

std::string FixedReal::to_string() const {
    // 60 decimal digits of the midpoint; the error bound is reported separately.
    mpf_class v(m_, 256);
    mpf_div_2exp(v.get_mpf_t(), v.get_mpf_t(), kBits);
    mp_exp_t exp = 0;
    std::string digits = v.get_str(exp, 10, 60);
    if (digits.empty()) return "0";
    bool negative = digits[0] == '-';
    if (negative) digits.erase(0, 1);
    std::string out;
    if (exp <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else if (static_cast<std::size_t>(exp) >= digits.size()) {
        out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
    } else {
        out = digits.substr(0, static_cast<std::size_t>(exp)) + "." +
              digits.substr(static_cast<std::size_t>(exp));
    }
    return negative ? "-" + out : out;
}

FixedReal operator+(const FixedReal& a, const FixedReal& b) {
    return FixedReal(a.m_ + b.m_, a.e_ + b.e_);
}

FixedReal operator-(const FixedReal& a, const FixedReal& b) {
    return FixedReal(a.m_ - b.m_, a.e_ + b.e_);
}

FixedReal operator*(const FixedReal& a, const FixedReal& b) {
    bool exact = false;
    mpz_class m = shift_floor(a.m_ * b.m_, kBits, exact);
    mpz_class spread = abs(a.m_) * b.e_ + abs(b.m_) * a.e_ + a.e_ * b.e_;
    mpz_class err = ceil_div(spread, one_unit()) + (exact ? 0 : 1);
    return FixedReal(std::move(m), std::move(err));
}

FixedReal operator/(const FixedReal& a, const FixedReal& b) {
    mpz_class bm = abs(b.m_);
    if (bm <= b.e_) throw PrecisionExhausted("divisor interval contains zero");
    mpz_class num = a.m_ * one_unit();
    mpz_class m;
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), b.m_.get_mpz_t());
    bool exact = mpz_divisible_p(num.get_mpz_t(), b.m_.get_mpz_t()) != 0;
    // |a/b - ma/mb| <= (ea|mb| + |ma|eb) / (|mb|(|mb| - eb)), in units.
    mpz_class spread = (a.e_ * bm + abs(a.m_) * b.e_) * one_unit();
    mpz_class err = ceil_div(spread, bm * (bm - b.e_)) + (exact ? 0 : 1);
    return FixedReal(std::move(m), std::move(err));
}

int compare(const FixedReal& a, const FixedReal& b) {
    mpz_class diff = a.mantissa() - b.mantissa();
    mpz_class err = a.err_ulps() + b.err_ulps();
    if (diff > err) return 1;
    if (diff < -err) return -1;
    if (diff == 0 && err == 0) return 0;
    throw PrecisionExhausted("comparison undecidable within certified error bound");
}

}  // namespace bsum::arith
