#pragma once

// Exact and certified real arithmetic used throughout the library.
//
// Two representations of a real number are supported:
//
//   QuadraticSurd  (p + q*sqrt(d)) / r with unbounded integers; every
//                  comparison and floor is decided exactly.
//   FixedReal      mantissa * 2^-192 together with an absolute error bound
//                  (in units of 2^-192). Decisions that fall inside the
//                  error bound raise PrecisionExhausted.
//
// `Real` wraps either one and promotes to FixedReal when two surds from
// different quadratic fields meet.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "beattysum/errors.hpp"

namespace bsum::arith {

namespace detail {
/// m * 2^-bits rounded to the nearest double.
double round_scaled(const mpz_class& m, unsigned bits);
}  // namespace detail

class QuadraticSurd {
public:
    /// Zero.
    QuadraticSurd();
    /// (p + q*sqrt(d)) / r, canonicalized: r > 0, d squarefree, gcd(p,q,r) = 1.
    /// A perfect-square radicand folds into the rational part. Rationals
    /// carry d = 0.
    QuadraticSurd(mpz_class p, mpz_class q, mpz_class d, mpz_class r);

    static QuadraticSurd rational(const mpz_class& num, const mpz_class& den = 1);

    const mpz_class& p() const { return p_; }
    const mpz_class& q() const { return q_; }
    const mpz_class& d() const { return d_; }
    const mpz_class& r() const { return r_; }

    bool is_rational() const { return q_ == 0; }
    /// True when both operands live in a common field Q(sqrt d).
    bool compatible(const QuadraticSurd& other) const;

    int sign() const;
    mpz_class floor() const;
    /// x - floor(x), in [0, 1).
    QuadraticSurd frac() const { return *this - rational(floor()); }
    QuadraticSurd invert() const;
    /// floor(x * 2^bits), exact.
    mpz_class scaled_floor(unsigned bits) const;
    double to_double() const;
    std::string to_string() const;

    QuadraticSurd operator-() const;
    friend QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b);
    friend QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b);
    friend QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b);
    friend QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b);
    friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b);

private:
    // Radicand already squarefree; only sign and gcd normalization run.
    static QuadraticSurd in_field(mpz_class p, mpz_class q, const mpz_class& d, mpz_class r);
    void canonicalize();

    mpz_class p_, q_, d_, r_;
};

/// Sign of a - b, decided exactly.
int compare(const QuadraticSurd& a, const QuadraticSurd& b);

/// Grammar: "(" INT ("+"|"-") INT "*sqrt(" INT "))/" INT, or the shorthands
/// "sqrt(" INT ")", INT, INT "/" INT. Whitespace is ignored.
QuadraticSurd parse_surd(std::string_view text);

class FixedReal {
public:
    static constexpr unsigned kFracBits = 192;

    FixedReal() = default;
    /// Value mantissa * 2^-192 with absolute error at most err_ulps * 2^-192.
    FixedReal(mpz_class mantissa, mpz_class err_ulps);

    static FixedReal from_integer(const mpz_class& n);
    static FixedReal from_surd(const QuadraticSurd& x);
    /// Decimal literal with at most 80 significant digits, e.g. "-2.7",
    /// "3.14159265358979323846".
    static FixedReal parse_decimal(std::string_view text);

    const mpz_class& mantissa() const { return m_; }
    const mpz_class& err_ulps() const { return e_; }
    /// Error bound as a real number.
    double err_bound() const;

    mpz_class floor() const;
    FixedReal frac() const;
    FixedReal invert() const;
    double to_double() const;
    std::string to_string() const;

    FixedReal operator-() const { return FixedReal(-m_, e_); }
    friend FixedReal operator+(const FixedReal& a, const FixedReal& b);
    friend FixedReal operator-(const FixedReal& a, const FixedReal& b);
    friend FixedReal operator*(const FixedReal& a, const FixedReal& b);
    friend FixedReal operator/(const FixedReal& a, const FixedReal& b);
    FixedReal scaled(const mpz_class& n) const { return FixedReal(m_ * n, e_ * abs(n)); }

    /// True when the certified interval contains x (in units of 2^-192).
    bool contains_ulps(const mpz_class& x) const { return abs(x - m_) <= e_; }

private:
    mpz_class m_ = 0;
    mpz_class e_ = 0;
};

/// Sign of a - b; throws PrecisionExhausted when the intervals overlap and
/// the two values are not provably identical.
int compare(const FixedReal& a, const FixedReal& b);

/// A real number held either exactly or with a certified error bound.
class Real {
public:
    Real() : v_(QuadraticSurd()) {}
    Real(QuadraticSurd x) : v_(std::move(x)) {}
    Real(FixedReal x) : v_(std::move(x)) {}
    static Real integer(long n) { return QuadraticSurd::rational(mpz_class(n)); }

    /// Surd grammar first (exact); otherwise a decimal literal (FixedReal).
    static Real parse(std::string_view text);

    bool is_exact() const { return std::holds_alternative<QuadraticSurd>(v_); }
    const QuadraticSurd& surd() const;
    FixedReal to_fixed() const;
    bool compatible(const Real& other) const;

    int sign() const;
    mpz_class floor() const;
    Real frac() const;
    Real invert() const;
    double to_double() const;
    std::string to_string() const;

    Real operator-() const;
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

private:
    std::variant<QuadraticSurd, FixedReal> v_;
};

int compare(const Real& a, const Real& b);

/// n is capped so that n * 2^-192 accumulated error stays far below 2^-150.
inline constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 40;

/// {x*n + shift}. Exact for surds; certified FixedReal otherwise.
Real frac_part(const Real& x, std::uint64_t n, const Real& shift);

/// 128-bit fixed-point approximation used by the hot loops: the true value
/// lies within err units of 2^-128 of whole + frac * 2^-128.
struct Fixed128 {
    std::int64_t whole = 0;
    unsigned __int128 frac = 0;
    std::uint64_t err = 0;
};

Fixed128 to_fixed128(const Real& x);

/// Top 53 bits of a 128-bit fraction as a double in [0, 1).
inline double fraction_to_double(unsigned __int128 f) {
    return static_cast<double>(static_cast<std::uint64_t>(f >> 75)) * 0x1p-53;
}

// ---------------------------------------------------------------------------
// Continued fractions

struct Convergent {
    mpz_class p;
    mpz_class q;
};

struct ContinuedFraction {
    std::vector<mpz_class> quotients;
    std::vector<Convergent> convergents;
};

/// Lazily produces partial quotients and convergents of a real number.
/// Surds use the exact periodic (P + sqrt D)/Q recurrence; FixedReal inputs
/// yield only the quotients shared by every point of the certified interval.
class ConvergentStream {
public:
    explicit ConvergentStream(const Real& x);

    /// Next convergent, or nullopt when the expansion terminates (rational
    /// input) or, for FixedReal input, when the next quotient cannot be
    /// certified; see exhausted_precision().
    std::optional<Convergent> next();
    const mpz_class& last_quotient() const { return last_a_; }
    bool exhausted_precision() const { return precision_out_; }

private:
    std::optional<mpz_class> next_quotient();

    // Quadratic state: x_i = (P + sqrt(D)) / Q.
    bool quadratic_ = false;
    mpz_class P_, D_, Q_, sqrtD_;
    // Rational / certified state.
    std::vector<mpz_class> prefix_;
    std::size_t pos_ = 0;
    bool precision_out_ = false;

    mpz_class last_a_;
    mpz_class p1_ = 1, p2_ = 0, q1_ = 0, q2_ = 1;
};

/// First `count` partial quotients and convergents. Throws
/// PrecisionExhausted when a FixedReal cannot certify them; rational input
/// returns its (shorter) terminating expansion.
ContinuedFraction cf_expand(const Real& x, std::size_t count);

/// Smallest-denominator convergent a/q of x with q_min <= q <= q_max, or
/// nullopt when the convergent denominators skip the window.
std::optional<Convergent> best_rational_in_range(const Real& x, const mpz_class& q_min,
                                                 const mpz_class& q_max);

struct TypeWitness {
    std::size_t depth = 0;
    double tau_hat = 1.0;
    /// log q_{i+1} / log max(q_i, 2) for every i.
    std::vector<double> ratios;
};

/// Finite-depth estimate of the type from denominator growth. The type is
/// a limsup, so only the tail half of the ratios enters tau_hat.
TypeWitness estimate_type(const ContinuedFraction& cf);

/// Natural log of a positive big integer.
double log_mpz(const mpz_class& x);

}  // namespace bsum::arith
