#include <algorithm>
#include <cmath>

#include "beattysum/arith.hpp"

namespace bsum::arith {

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Complete partial-quotient list of num/den (den > 0).
std::vector<mpz_class> rational_quotients(mpz_class num, mpz_class den) {
    std::vector<mpz_class> out;
    while (den != 0) {
        mpz_class a = floor_div(num, den);
        mpz_class rem = num - a * den;
        out.push_back(a);
        num = den;
        den = rem;
    }
    return out;
}

}  // namespace

ConvergentStream::ConvergentStream(const Real& x) {
    if (x.is_exact() && !x.surd().is_rational()) {
        const QuadraticSurd& s = x.surd();
        quadratic_ = true;
        // x = (P + sqrt(D)) / Q with D = q^2 d.
        D_ = s.q() * s.q() * s.d();
        if (s.q() > 0) {
            P_ = s.p();
            Q_ = s.r();
        } else {
            P_ = -s.p();
            Q_ = -s.r();
        }
        mpz_class rem = D_ - P_ * P_;
        if (!mpz_divisible_p(rem.get_mpz_t(), Q_.get_mpz_t())) {
            mpz_class aq = abs(Q_);
            P_ *= aq;
            D_ *= Q_ * Q_;
            Q_ *= aq;
        }
        mpz_sqrt(sqrtD_.get_mpz_t(), D_.get_mpz_t());
    } else if (x.is_exact()) {
        prefix_ = rational_quotients(x.surd().p(), x.surd().r());
    } else {
        // Quotients shared by both interval endpoints, never trusting the
        // final quotient of either endpoint's terminating expansion.
        FixedReal f = x.to_fixed();
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), FixedReal::kFracBits);
        auto lo = rational_quotients(f.mantissa() - f.err_ulps(), den);
        auto hi = rational_quotients(f.mantissa() + f.err_ulps(), den);
        std::size_t limit = std::min(lo.size(), hi.size());
        limit = limit == 0 ? 0 : limit - 1;
        if (f.err_ulps() == 0) limit = lo.size();
        std::size_t i = 0;
        while (i < limit && lo[i] == hi[i]) ++i;
        prefix_.assign(lo.begin(), lo.begin() + static_cast<std::ptrdiff_t>(i));
        precision_out_ = f.err_ulps() != 0;
    }
}

std::optional<mpz_class> ConvergentStream::next_quotient() {
    if (!quadratic_) {
        if (pos_ < prefix_.size()) return prefix_[pos_++];
        return std::nullopt;
    }
    mpz_class a;
    if (Q_ > 0)
        a = floor_div(P_ + sqrtD_, Q_);
    else
        a = floor_div(-P_ - sqrtD_ - 1, -Q_);
    mpz_class next_p = a * Q_ - P_;
    mpz_class next_q = (D_ - next_p * next_p) / Q_;
    P_ = std::move(next_p);
    Q_ = std::move(next_q);
    return a;
}

std::optional<Convergent> ConvergentStream::next() {
    auto a = next_quotient();
    if (!a) return std::nullopt;
    last_a_ = *a;
    mpz_class p = *a * p1_ + p2_;
    mpz_class q = *a * q1_ + q2_;
    p2_ = p1_;
    p1_ = p;
    q2_ = q1_;
    q1_ = q;
    return Convergent{std::move(p), std::move(q)};
}

ContinuedFraction cf_expand(const Real& x, std::size_t count) {
    ContinuedFraction cf;
    ConvergentStream stream(x);
    while (cf.quotients.size() < count) {
        auto c = stream.next();
        if (!c) {
            if (stream.exhausted_precision())
                throw PrecisionExhausted("cannot certify partial quotient " +
                                         std::to_string(cf.quotients.size()));
            break;
        }
        cf.quotients.push_back(stream.last_quotient());
        cf.convergents.push_back(std::move(*c));
    }
    return cf;
}

std::optional<Convergent> best_rational_in_range(const Real& x, const mpz_class& q_min,
                                                 const mpz_class& q_max) {
    if (q_min < 2) throw DomainError("best_rational_in_range requires q_min >= 2");
    ConvergentStream stream(x);
    while (auto c = stream.next()) {
        if (c->q > q_max) return std::nullopt;
        if (c->q >= q_min) return c;
    }
    if (stream.exhausted_precision())
        throw PrecisionExhausted("convergents exhausted before reaching q_max");
    return std::nullopt;
}

double log_mpz(const mpz_class& x) {
    if (x <= 0) throw DomainError("log of non-positive integer");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

TypeWitness estimate_type(const ContinuedFraction& cf) {
    const auto& conv = cf.convergents;
    if (conv.size() < 3) throw DomainError("type estimate needs at least 3 convergents");
    TypeWitness w;
    w.depth = conv.size();
    for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
        mpz_class base = conv[i].q < 2 ? mpz_class(2) : conv[i].q;
        w.ratios.push_back(log_mpz(conv[i + 1].q) / log_mpz(base));
    }
    std::size_t tail = (w.ratios.size()) / 2;
    double best = 1.0;
    for (std::size_t i = tail; i < w.ratios.size(); ++i) best = std::max(best, w.ratios[i]);
    w.tau_hat = best;
    return w;
}

}  // namespace bsum::arith
