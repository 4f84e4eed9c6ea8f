#include <cmath>
#include <limits>

#include "beattysum/arith.hpp"

namespace bsum::arith {

Real Real::parse(std::string_view text) {
    try {
        return parse_surd(text);
    } catch (const ParseError&) {
    }
    try {
        return FixedReal::parse_decimal(text);
    } catch (const ParseError&) {
        throw ParseError("'" + std::string(text) +
                         "' is neither a quadratic surd nor a decimal literal");
    }
}

const QuadraticSurd& Real::surd() const {
    if (!is_exact()) throw DomainError("value is not held exactly");
    return std::get<QuadraticSurd>(v_);
}

FixedReal Real::to_fixed() const {
    if (is_exact()) return FixedReal::from_surd(std::get<QuadraticSurd>(v_));
    return std::get<FixedReal>(v_);
}

bool Real::compatible(const Real& other) const {
    return is_exact() && other.is_exact() && surd().compatible(other.surd());
}

int Real::sign() const {
    if (is_exact()) return surd().sign();
    return compare(std::get<FixedReal>(v_), FixedReal());
}

mpz_class Real::floor() const {
    if (is_exact()) return surd().floor();
    return std::get<FixedReal>(v_).floor();
}

Real Real::frac() const {
    if (is_exact()) return surd().frac();
    return std::get<FixedReal>(v_).frac();
}

Real Real::invert() const {
    if (is_exact()) return surd().invert();
    return std::get<FixedReal>(v_).invert();
}

double Real::to_double() const {
    if (is_exact()) return surd().to_double();
    return std::get<FixedReal>(v_).to_double();
}

std::string Real::to_string() const {
    if (is_exact()) return surd().to_string();
    return std::get<FixedReal>(v_).to_string();
}

Real Real::operator-() const {
    if (is_exact()) return -surd();
    return -std::get<FixedReal>(v_);
}

Real operator+(const Real& a, const Real& b) {
    if (a.compatible(b)) return a.surd() + b.surd();
    return a.to_fixed() + b.to_fixed();
}

Real operator-(const Real& a, const Real& b) {
    if (a.compatible(b)) return a.surd() - b.surd();
    return a.to_fixed() - b.to_fixed();
}

Real operator*(const Real& a, const Real& b) {
    if (a.compatible(b)) return a.surd() * b.surd();
    return a.to_fixed() * b.to_fixed();
}

Real operator/(const Real& a, const Real& b) {
    if (a.compatible(b)) return a.surd() / b.surd();
    return a.to_fixed() / b.to_fixed();
}

int compare(const Real& a, const Real& b) {
    if (a.compatible(b)) return compare(a.surd(), b.surd());
    return compare(a.to_fixed(), b.to_fixed());
}

Real frac_part(const Real& x, std::uint64_t n, const Real& shift) {
    if (n > kMaxIndex) throw CapacityExceeded("index n exceeds 2^40");
    return (x * Real::integer(static_cast<long>(n)) + shift).frac();
}

Fixed128 to_fixed128(const Real& x) {
    mpz_class m;
    mpz_class err;
    if (x.is_exact()) {
        m = x.surd().scaled_floor(128);
        err = 1;
    } else {
        FixedReal f = x.to_fixed();
        const unsigned drop = FixedReal::kFracBits - 128;
        mpz_fdiv_q_2exp(m.get_mpz_t(), f.mantissa().get_mpz_t(), drop);
        mpz_cdiv_q_2exp(err.get_mpz_t(), f.err_ulps().get_mpz_t(), drop);
        err += 1;
    }
    mpz_class whole;
    mpz_fdiv_q_2exp(whole.get_mpz_t(), m.get_mpz_t(), 128);
    if (!whole.fits_slong_p()) throw CapacityExceeded("value too large for 128-bit fixed point");
    if (err > mpz_class(std::numeric_limits<long>::max()))
        throw PrecisionExhausted("error bound too large for 128-bit fixed point");
    mpz_class low;
    mpz_fdiv_r_2exp(low.get_mpz_t(), m.get_mpz_t(), 128);
    mpz_class lo64, hi64;
    mpz_fdiv_r_2exp(lo64.get_mpz_t(), low.get_mpz_t(), 64);
    mpz_fdiv_q_2exp(hi64.get_mpz_t(), low.get_mpz_t(), 64);

    Fixed128 out;
    out.whole = whole.get_si();
    out.frac = (static_cast<unsigned __int128>(hi64.get_ui()) << 64) | lo64.get_ui();
    out.err = err.get_ui();
    return out;
}

}  // namespace bsum::arith
