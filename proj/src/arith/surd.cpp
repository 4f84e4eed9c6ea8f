#include <cctype>
#include <cmath>
#include <string>

#include "beattysum/arith.hpp"

namespace bsum::arith {

namespace {

// Radicands are trial-factored on construction; anything larger than this
// would make canonicalization (squarefree extraction) impractically slow.
constexpr std::uint64_t kMaxRadicand = 100'000'000'000'000ULL;  // 1e14

mpz_class isqrt(const mpz_class& x) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// floor((p + q*sqrt(d)) / r) for r > 0 and d not a perfect square (q != 0).
// With t = isqrt(q^2 d), q*sqrt(d) lies strictly inside (t, t+1) when q > 0
// and inside (-t-1, -t) when q < 0; for an integer m and z in (m, m+1),
// floor(z / r) = floor(m / r).
mpz_class floor_quadratic(const mpz_class& p, const mpz_class& q, const mpz_class& d,
                          const mpz_class& r) {
    if (q == 0) return floor_div(p, r);
    mpz_class t = isqrt(q * q * d);
    mpz_class m = q > 0 ? mpz_class(p + t) : mpz_class(p - t - 1);
    return floor_div(m, r);
}

int sgn(const mpz_class& x) { return ::sgn(x); }

}  // namespace

QuadraticSurd::QuadraticSurd() : p_(0), q_(0), d_(0), r_(1) {}

QuadraticSurd::QuadraticSurd(mpz_class p, mpz_class q, mpz_class d, mpz_class r)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
    if (r_ == 0) throw DomainError("quadratic surd with zero denominator");
    if (q_ != 0) {
        if (d_ < 0) throw DomainError("negative radicand");
        if (d_ > kMaxRadicand) throw DomainError("radicand exceeds 1e14");
        std::uint64_t rad = d_.get_ui();
        std::uint64_t square_part = 1;
        for (std::uint64_t i = 2; i * i <= rad; ++i) {
            while (rad % (i * i) == 0) {
                rad /= i * i;
                square_part *= i;
            }
        }
        q_ *= square_part;
        d_ = rad;
        if (rad == 0) {
            q_ = 0;
        } else if (rad == 1) {
            p_ += q_;
            q_ = 0;
        }
    }
    canonicalize();
}

void QuadraticSurd::canonicalize() {
    if (r_ < 0) {
        p_ = -p_;
        q_ = -q_;
        r_ = -r_;
    }
    if (q_ == 0) d_ = 0;
    mpz_class g = gcd(gcd(p_, q_), r_);
    if (g > 1) {
        p_ /= g;
        q_ /= g;
        r_ /= g;
    }
}

QuadraticSurd QuadraticSurd::rational(const mpz_class& num, const mpz_class& den) {
    return QuadraticSurd(num, 0, 0, den);
}

bool QuadraticSurd::compatible(const QuadraticSurd& other) const {
    return q_ == 0 || other.q_ == 0 || d_ == other.d_;
}

int QuadraticSurd::sign() const {
    int sp = sgn(p_);
    int sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    mpz_class lhs = p_ * p_;
    mpz_class rhs = q_ * q_ * d_;
    return lhs > rhs ? sp : sq;
}

mpz_class QuadraticSurd::floor() const { return floor_quadratic(p_, q_, d_, r_); }

mpz_class QuadraticSurd::scaled_floor(unsigned bits) const {
    mpz_class p = p_, q = q_;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), bits);
    mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), bits);
    return floor_quadratic(p, q, d_, r_);
}

double QuadraticSurd::to_double() const {
    return detail::round_scaled(scaled_floor(256), 256);
}

std::string QuadraticSurd::to_string() const {
    if (q_ == 0) return r_ == 1 ? p_.get_str() : p_.get_str() + "/" + r_.get_str();
    std::string s = "(" + p_.get_str();
    s += q_ < 0 ? "-" : "+";
    s += mpz_class(abs(q_)).get_str() + "*sqrt(" + d_.get_str() + "))/" + r_.get_str();
    return s;
}

QuadraticSurd QuadraticSurd::operator-() const {
    QuadraticSurd out = *this;
    out.p_ = -out.p_;
    out.q_ = -out.q_;
    return out;
}

namespace {

const mpz_class& common_radicand(const QuadraticSurd& a, const QuadraticSurd& b) {
    if (!a.compatible(b))
        throw DomainError("mismatched radicands: " + a.to_string() + " and " + b.to_string());
    return a.q() != 0 ? a.d() : b.d();
}

}  // namespace

QuadraticSurd QuadraticSurd::in_field(mpz_class p, mpz_class q, const mpz_class& d,
                                      mpz_class r) {
    if (r == 0) throw DomainError("division by zero");
    QuadraticSurd out;
    out.p_ = std::move(p);
    out.q_ = std::move(q);
    out.d_ = d;
    out.r_ = std::move(r);
    out.canonicalize();
    return out;
}

QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b) {
    const mpz_class& d = common_radicand(a, b);
    return QuadraticSurd::in_field(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, d, a.r_ * b.r_);
}

QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b) { return a + (-b); }

QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b) {
    const mpz_class& d = common_radicand(a, b);
    return QuadraticSurd::in_field(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d, a.r_ * b.r_);
}

QuadraticSurd QuadraticSurd::invert() const {
    // r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
    mpz_class norm = p_ * p_ - q_ * q_ * d_;
    if (norm == 0) throw DomainError("division by zero");
    return in_field(r_ * p_, -r_ * q_, d_, norm);
}

QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b) {
    common_radicand(a, b);
    return a * b.invert();
}

bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_ && a.r_ == b.r_;
}

int compare(const QuadraticSurd& a, const QuadraticSurd& b) { return (a - b).sign(); }

// ---------------------------------------------------------------------------

namespace {

class SurdParser {
public:
    explicit SurdParser(std::string_view text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    QuadraticSurd parse() {
        if (s_.empty()) fail("empty input");
        QuadraticSurd out;
        if (peek('(')) {
            ++pos_;
            mpz_class p = integer();
            int sign = 0;
            if (peek('+'))
                sign = 1;
            else if (peek('-'))
                sign = -1;
            else
                fail("expected '+' or '-'");
            ++pos_;
            mpz_class q = natural() * sign;
            expect("*sqrt(");
            mpz_class d = integer();
            expect("))");
            mpz_class r = 1;
            if (peek('/')) {
                ++pos_;
                r = integer();
            }
            out = build(p, q, d, r);
        } else if (s_.compare(pos_, 5, "sqrt(") == 0) {
            pos_ += 5;
            mpz_class d = integer();
            expect(")");
            out = build(0, 1, d, 1);
        } else {
            mpz_class num = integer();
            mpz_class den = 1;
            if (peek('/')) {
                ++pos_;
                den = integer();
            }
            out = build(num, 0, 0, den);
        }
        if (pos_ != s_.size()) fail("trailing characters");
        return out;
    }

private:
    QuadraticSurd build(const mpz_class& p, const mpz_class& q, const mpz_class& d,
                        const mpz_class& r) {
        if (r == 0) throw DomainError("zero denominator in '" + s_ + "'");
        if (q != 0 && d < 0) throw DomainError("negative radicand in '" + s_ + "'");
        QuadraticSurd x(p, q, d, r);
        return x;
    }

    bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

    void expect(std::string_view lit) {
        if (s_.compare(pos_, lit.size(), lit) != 0) fail("expected '" + std::string(lit) + "'");
        pos_ += lit.size();
    }

    mpz_class natural() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return mpz_class(s_.substr(start, pos_ - start), 10);
    }

    mpz_class integer() {
        int sign = 1;
        if (peek('-') || peek('+')) {
            sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
        }
        return natural() * sign;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("malformed surd '" + s_ + "' at offset " + std::to_string(pos_) + ": " +
                         why);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

QuadraticSurd parse_surd(std::string_view text) { return SurdParser(text).parse(); }

}  // namespace bsum::arith
