#include "beattysum/beatty.hpp"

#include <numeric>

#include "beattysum/parallel.hpp"

namespace bsum::beatty {

using arith::Fixed128;
using arith::FixedReal;
using u128 = unsigned __int128;

namespace {

bool near_zero(u128 theta, u128 err) { return theta <= err || u128(0) - theta <= err; }

}  // namespace

BeattyParams::BeattyParams(Real alpha, Real beta) {
    if (!alpha.compatible(beta)) {
        alpha = alpha.to_fixed();
        beta = beta.to_fixed();
    }
    if (compare(alpha, Real::integer(1)) <= 0) throw DomainError("alpha must exceed 1");
    alpha_ = std::move(alpha);
    beta_ = std::move(beta);
    gamma_ = alpha_.invert();
    offset_ = (Real::integer(1) - beta_) / alpha_;
    try {
        delta_ = offset_.frac();
    } catch (const PrecisionExhausted&) {
        // Only {gamma n + delta} is ever used; an unreduced delta is fine.
        delta_ = offset_;
    }
    gamma128_ = arith::to_fixed128(gamma_);
    delta128_ = arith::to_fixed128(delta_);
}

BeattyParams derive_params(const Real& alpha, const Real& beta) { return BeattyParams(alpha, beta); }

bool is_member(const BeattyParams& params, std::uint64_t n) {
    if (n == 0) throw DomainError("membership is defined for n >= 1");
    Real f = arith::frac_part(params.gamma(), n, params.delta());
    return f.sign() > 0 && compare(f, params.gamma()) <= 0;
}

std::vector<std::uint64_t> generate_by_floor(const BeattyParams& params, std::uint64_t N) {
    if (N > arith::kMaxIndex) throw CapacityExceeded("N exceeds 2^40");
    const Real& alpha = params.alpha();
    const Real& beta = params.beta();

    mpz_class start;
    try {
        start = params.offset().floor();
    } catch (const PrecisionExhausted&) {
        start = params.offset().to_fixed().mantissa();
        mpz_fdiv_q_2exp(start.get_mpz_t(), start.get_mpz_t(), FixedReal::kFracBits);
        start -= 1;
    }
    long m = start.get_si();

    auto exact_floor = [&](long index) {
        return (alpha * Real::integer(index) + beta).floor();
    };

    const Fixed128 step = arith::to_fixed128(alpha);
    Fixed128 cur = arith::to_fixed128(alpha * Real::integer(m) + beta);
    std::int64_t whole = cur.whole;
    u128 frac = cur.frac;
    u128 err = cur.err;

    std::vector<std::uint64_t> out;
    for (;; ++m) {
        std::int64_t value = whole;
        if (near_zero(frac, err)) value = exact_floor(m).get_si();
        if (value > static_cast<std::int64_t>(N)) break;
        if (value >= 1) out.push_back(static_cast<std::uint64_t>(value));
        u128 next = frac + step.frac;
        whole += step.whole + (next < frac ? 1 : 0);
        frac = next;
        err += step.err;
    }
    return out;
}

std::vector<std::uint8_t> membership_mask(const BeattyParams& params, std::uint64_t N,
                                          unsigned threads) {
    if (N > arith::kMaxIndex) throw CapacityExceeded("N exceeds 2^40");
    std::vector<std::uint8_t> mask(N + 1, 0);
    const Fixed128& g = params.gamma128();
    const Fixed128& d = params.delta128();
    const u128 gamma_err = g.err;
    auto chunks = split_range(1, N + 1, kScanChunk);
    parallel_for(chunks.size(), threads, [&](std::size_t c) {
        const auto [begin, end] = chunks[c];
        u128 theta = u128(begin) * g.frac + d.frac;
        for (std::uint64_t n = begin; n < end; ++n, theta += g.frac) {
            const u128 err = u128(n) * g.err + d.err;
            const u128 to_gamma = theta - g.frac;
            if (near_zero(theta, err) || near_zero(to_gamma, err + gamma_err)) {
                mask[n] = is_member(params, n) ? 1 : 0;
            } else {
                mask[n] = theta < g.frac ? 1 : 0;
            }
        }
    });
    return mask;
}

std::uint64_t count_members(const BeattyParams& params, std::uint64_t N, unsigned threads) {
    auto mask = membership_mask(params, N, threads);
    return std::accumulate(mask.begin(), mask.end(), std::uint64_t{0});
}

}  // namespace bsum::beatty
