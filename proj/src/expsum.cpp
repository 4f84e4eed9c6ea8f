#include "beattysum/expsum.hpp"

#include <cmath>
#include <numbers>

#include "beattysum/parallel.hpp"

namespace bsum::expsum {

namespace {

using u128 = unsigned __int128;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kChunk = std::uint64_t{1} << 15;

std::complex<double> unit(double turns) { return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)}; }

struct ComplexSum {
    CompensatedSum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

std::complex<double> chunk_sum(const multfun::SieveTable& f, u128 step, Range r) {
    ComplexSum acc;
    u128 theta = u128(r.begin) * step;
    for (std::uint64_t n = r.begin; n < r.end; ++n, theta += step) {
        const double v = f.value(n);
        if (v == 0.0) continue;
        acc.add(v * unit(arith::fraction_to_double(theta)));
    }
    return acc.value();
}

}  // namespace

std::complex<double> exp_sum_fixed(const multfun::SieveTable& f, const arith::Fixed128& alpha,
                                   std::uint64_t N, unsigned threads) {
    if (N > f.size()) throw CapacityExceeded("exponential sum beyond the sieve table");
    auto chunks = split_range(1, N + 1, kChunk);
    std::vector<std::complex<double>> partial(chunks.size());
    parallel_for(chunks.size(), threads,
                 [&](std::size_t c) { partial[c] = chunk_sum(f, alpha.frac, chunks[c]); });
    ComplexSum total;
    for (const auto& z : partial) total.add(z);
    return total.value();
}

ExpSumResult exp_sum(const multfun::SieveTable& f, const arith::Real& alpha, std::uint64_t N,
                     unsigned threads) {
    if (N > arith::kMaxIndex) throw CapacityExceeded("N exceeds 2^40");
    const arith::Fixed128 a = arith::to_fixed128(alpha);
    ExpSumResult out;
    out.alpha = alpha.to_string();
    out.N = N;
    out.value = exp_sum_fixed(f, a, N, threads);
    CompensatedSum mass;
    for (std::uint64_t n = 1; n <= N; ++n) mass.add(std::abs(f.value(n)));
    // Per term: phase error (n err 2^-128 + 2^-53 turns), sin/cos rounding,
    // and compensated summation, each bounded relative to |f(n)|.
    const double phase = static_cast<double>(N) * static_cast<double>(a.err) * 0x1p-128 + 0x1p-53;
    out.accumulation_error = mass.value() * (kTwoPi * phase + 0x1p-50);
    return out;
}

double mv_envelope(double N, double R) {
    if (!(N > 1.0)) throw DomainError("mv_envelope requires N > 1");
    if (!(R >= 2.0 && R <= N)) throw DomainError("mv_envelope requires 2 <= R <= N");
    return N / std::log(N) + N * std::pow(std::log(R), 1.5) / std::sqrt(R);
}

std::uint64_t log_cubed(std::uint64_t N) {
    return static_cast<std::uint64_t>(std::ceil(std::pow(std::log(static_cast<double>(N)), 3)));
}

EnvelopeReport select_convergent_window(const arith::Real& x, std::uint64_t N) {
    if (N < 100) throw DomainError("select_convergent_window requires N >= 100");
    EnvelopeReport rep;
    rep.N = N;
    rep.R = log_cubed(N);
    rep.window_hi = N / rep.R;
    rep.envelope = mv_envelope(static_cast<double>(N), static_cast<double>(rep.R));
    const mpz_class lo(static_cast<unsigned long>(rep.R));
    const mpz_class hi(static_cast<unsigned long>(rep.window_hi));
    if (rep.R <= rep.window_hi) {
        if (auto c = arith::best_rational_in_range(x, lo, hi)) {
            rep.convergent = std::move(c);
            rep.window_hit = true;
            return rep;
        }
    }
    arith::ConvergentStream stream(x);
    while (auto c = stream.next()) {
        if (c->q >= lo) {
            rep.convergent = std::move(c);
            break;
        }
    }
    return rep;
}

std::complex<double> h_sum(const beatty::BeattyParams& params,
                           const smoothing::SmoothingParams& smoothing, std::uint64_t K,
                           const multfun::SieveTable& f, std::uint64_t N, unsigned threads) {
    if (K == 0) throw DomainError("h_sum requires K >= 1");
    if (N > f.size()) throw CapacityExceeded("h_sum beyond the sieve table");
    std::vector<std::complex<double>> terms(K);
    parallel_for(K, threads, [&](std::size_t idx) {
        const auto k = static_cast<long>(idx + 1);
        const arith::Real kk = arith::Real::integer(k);
        const arith::Fixed128 step = arith::to_fixed128(kk * params.gamma());
        const double kd = arith::fraction_to_double(arith::to_fixed128(kk * params.delta()).frac);
        const std::complex<double> s = exp_sum_fixed(f, step, N, 1);
        const std::complex<double> shift = unit(kd);
        terms[idx] = smoothing::fourier_coeff(smoothing, k) * shift * s +
                     smoothing::fourier_coeff(smoothing, -k) * std::conj(shift) * std::conj(s);
    });
    ComplexSum total;
    for (const auto& t : terms) total.add(t);
    return total.value();
}

std::vector<SweepRow> k_sweep(const beatty::BeattyParams& params, const multfun::SieveTable& f,
                              std::uint64_t N, std::uint64_t k_max, unsigned threads) {
    std::vector<double> magnitude(k_max);
    parallel_for(k_max, threads, [&](std::size_t idx) {
        const arith::Real x = arith::Real::integer(static_cast<long>(idx + 1)) * params.gamma();
        magnitude[idx] = std::abs(exp_sum_fixed(f, arith::to_fixed128(x), N, 1));
    });
    std::vector<SweepRow> rows;
    for (std::int64_t k = -static_cast<std::int64_t>(k_max); k <= static_cast<std::int64_t>(k_max);
         ++k) {
        if (k == 0) continue;
        const arith::Real x = arith::Real::integer(k) * params.gamma();
        rows.push_back({k, magnitude[static_cast<std::size_t>(std::abs(k)) - 1],
                        select_convergent_window(x, std::max<std::uint64_t>(N, 100))});
    }
    return rows;
}

}  // namespace bsum::expsum
