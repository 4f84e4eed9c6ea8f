#include "beattysum/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "beattysum/discrepancy.hpp"
#include "beattysum/errors.hpp"
#include "beattysum/expsum.hpp"
#include "beattysum/parallel.hpp"
#include "beattysum/smoothing.hpp"

namespace bsum::harness {

namespace {

using u128 = unsigned __int128;
using beatty::BeattyParams;
using multfun::SieveTable;

mpz_class to_mpz(u128 v) {
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return (hi << 64) + lo;
}

double to_double(const mpz_class& v) { return v.get_d(); }

void check_capacity(const SieveTable& table, std::uint64_t N) {
    if (N > table.size()) throw CapacityExceeded("N exceeds the sieve table");
    const std::uint64_t cap =
        table.function().indicator() ? multfun::kMaxIndicatorN : multfun::kMaxDivisorN;
    if (N > cap) throw CapacityExceeded("N exceeds the capacity for " + table.function().id());
}

/// Calls fn(n, {gamma n + delta}) for n in r, phases from the 128-bit stepper.
template <class Fn>
void for_each_phase(const BeattyParams& params, Range r, Fn&& fn) {
    const u128 g = params.gamma128().frac;
    u128 theta = u128(r.begin) * g + params.delta128().frac;
    for (std::uint64_t n = r.begin; n < r.end; ++n, theta += g)
        fn(n, arith::fraction_to_double(theta));
}

/// Sums f over the n <= N with keep(n), exactly when f is integer valued.
template <class Keep>
BeattySum masked_sum(const SieveTable& table, std::uint64_t N, unsigned threads, Keep&& keep) {
    const auto chunks = split_range(1, N + 1, beatty::kScanChunk);
    BeattySum out;
    if (table.integer_valued()) {
        std::vector<u128> partial(chunks.size(), 0);
        parallel_for(chunks.size(), threads, [&](std::size_t c) {
            u128 s = 0;
            for (std::uint64_t n = chunks[c].begin; n < chunks[c].end; ++n)
                if (keep(n)) s += table.raw(n);
            partial[c] = s;
        });
        mpz_class total = 0;
        for (u128 s : partial) total += to_mpz(s);
        out.value = to_double(total);
        out.exact = std::move(total);
        return out;
    }
    std::vector<double> partial(chunks.size(), 0.0);
    parallel_for(chunks.size(), threads, [&](std::size_t c) {
        CompensatedSum s;
        for (std::uint64_t n = chunks[c].begin; n < chunks[c].end; ++n)
            if (keep(n)) s.add(table.value(n));
        partial[c] = s.value();
    });
    CompensatedSum total;
    for (double s : partial) total.add(s);
    out.value = total.value();
    return out;
}

double abs_mass(const SieveTable& table, std::uint64_t N) {
    CompensatedSum s;
    for (std::uint64_t n = 1; n <= N; ++n) s.add(std::abs(table.value(n)));
    return s.value();
}

double max_abs_upto(const SieveTable& table, std::uint64_t N) {
    double m = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) m = std::max(m, std::abs(table.value(n)));
    return m;
}

Comparator compare_to(std::string name, double observed, double reference) {
    return {std::move(name), reference, observed, observed / reference - 1.0};
}

CorollaryReport base_report(std::string corollary, const BeattyParams& params,
                            const SieveTable& table, std::uint64_t N, unsigned threads) {
    check_capacity(table, N);
    CorollaryReport rep;
    rep.corollary = std::move(corollary);
    rep.alpha = params.alpha().to_string();
    rep.beta = params.beta().to_string();
    rep.function_id = table.function().id();
    rep.N = N;
    rep.sieve_method = multfun::to_string(table.method());
    rep.precision_mode = params.precision_mode();
    BeattySum b = beatty_sum(params, table, N, threads);
    rep.beatty_exact = std::move(b.exact);
    rep.beatty_value = b.value;
    BeattySum g = global_sum(table, N);
    rep.global_exact = std::move(g.exact);
    rep.global_value = g.value;
    rep.comparators.push_back(
        compare_to("gamma_times_global", rep.beatty_value, params.gamma().to_double() * g.value));
    return rep;
}

}  // namespace

HarnessConfig HarnessConfig::for_N(std::uint64_t N, double gamma) {
    if (N < 16) throw DomainError("harness requires N >= 16");
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
    const double L = std::log(static_cast<double>(N));
    HarnessConfig cfg;
    cfg.Delta = 1.0 / (L * L);
    cfg.K = static_cast<std::uint64_t>(std::ceil(L * L * L));
    cfg.R = cfg.K;
    const double limit = std::min(std::min(gamma, 1.0 - gamma) / 2.0, 0.12);
    if (cfg.Delta > limit) {
        cfg.Delta = limit;
        cfg.clamped = true;
    }
    return cfg;
}

BeattySum beatty_sum(const BeattyParams& params, const SieveTable& table, std::uint64_t N,
                     unsigned threads) {
    check_capacity(table, N);
    const auto mask = beatty::membership_mask(params, N, threads);
    return masked_sum(table, N, threads, [&](std::uint64_t n) { return mask[n] != 0; });
}

BeattySum global_sum(const SieveTable& table, std::uint64_t N) {
    check_capacity(table, N);
    return masked_sum(table, N, 1, [](std::uint64_t) { return true; });
}

std::uint64_t boundary_set_size(const BeattyParams& params, double Delta, std::uint64_t N,
                                unsigned threads) {
    const smoothing::SmoothingParams sp(params.gamma().to_double(), Delta);
    const auto chunks = split_range(1, N + 1, beatty::kScanChunk);
    std::vector<std::uint64_t> partial(chunks.size(), 0);
    parallel_for(chunks.size(), threads, [&](std::size_t c) {
        std::uint64_t count = 0;
        for_each_phase(params, chunks[c], [&](std::uint64_t, double x) {
            if (smoothing::exceptional_indicator(sp, x)) ++count;
        });
        partial[c] = count;
    });
    std::uint64_t total = 0;
    for (auto v : partial) total += v;
    return total;
}

AuditReport decomposition_audit(const BeattyParams& params, const SieveTable& table,
                                std::uint64_t N, const HarnessConfig& cfg, unsigned threads) {
    if (N > kMaxAuditN) throw CapacityExceeded("decomposition audit is limited to N <= 10^5");
    check_capacity(table, N);
    const double gamma = params.gamma().to_double();
    const smoothing::SmoothingParams sp(gamma, cfg.Delta);
    const smoothing::TrigPoly poly(sp, cfg.K);

    AuditReport rep;
    rep.N = N;
    rep.config = cfg;
    rep.G = beatty_sum(params, table, N, threads).value;

    const auto chunks = split_range(1, N + 1, std::uint64_t{1} << 12);
    std::vector<double> partial(chunks.size(), 0.0);
    parallel_for(chunks.size(), threads, [&](std::size_t c) {
        CompensatedSum s;
        for_each_phase(params, chunks[c], [&](std::uint64_t n, double x) {
            const double v = table.value(n);
            if (v != 0.0) s.add(v * poly(x));
        });
        partial[c] = s.value();
    });
    CompensatedSum direct;
    for (double v : partial) direct.add(v);
    rep.direct_smoothed = direct.value();

    const double sum_f = global_sum(table, N).value;
    const std::complex<double> H = expsum::h_sum(params, sp, cfg.K, table, N, threads);
    rep.fourier_side = gamma * sum_f + H.real();
    rep.h_imag = H.imag();
    rep.exchange_residual = std::abs(std::complex<double>(rep.direct_smoothed - gamma * sum_f, 0.0) - H);

    rep.boundary_set_size = boundary_set_size(params, cfg.Delta, N, threads);
    rep.smoothing_gap = std::abs(rep.G - rep.direct_smoothed);
    rep.smoothing_budget = max_abs_upto(table, N) * static_cast<double>(rep.boundary_set_size) +
                           smoothing::tail_bound(sp, cfg.K) * abs_mass(table, N);
    return rep;
}

TheoremReport theorem_check(const BeattyParams& params, const SieveTable& table, std::uint64_t N,
                            const HarnessConfig& cfg, unsigned threads) {
    check_capacity(table, N);
    TheoremReport rep;
    rep.alpha = params.alpha().to_string();
    rep.beta = params.beta().to_string();
    rep.function_id = table.function().id();
    rep.N = N;
    rep.config = cfg;
    rep.sieve_method = multfun::to_string(table.method());
    rep.precision_mode = params.precision_mode();

    BeattySum G = beatty_sum(params, table, N, threads);
    rep.G_exact = std::move(G.exact);
    rep.G = G.value;
    BeattySum total = global_sum(table, N);
    rep.sum_f_exact = std::move(total.exact);
    const double gamma = params.gamma().to_double();
    rep.main_term = gamma * total.value;
    rep.diff = rep.G - rep.main_term;
    const double L = std::log(static_cast<double>(N));
    rep.envelope = static_cast<double>(N) * std::log(L) / L;
    rep.ratio = rep.main_term != 0.0 ? rep.G / rep.main_term : 0.0;
    rep.normalized_diff = rep.diff / rep.envelope;
    rep.pass = std::abs(rep.diff) <= rep.envelope;

    rep.boundary_set_size = boundary_set_size(params, cfg.Delta, N, threads);
    rep.discrepancy_points = std::min(N, discrepancy::kMaxBeattyPoints);
    rep.discrepancy =
        discrepancy::beatty_discrepancy(params.gamma(), params.delta(), rep.discrepancy_points,
                                        threads)
            .value;
    if (N <= kMaxAuditN) rep.audit = decomposition_audit(params, table, N, cfg, threads);
    return rep;
}

const Comparator& CorollaryReport::comparator(const std::string& name) const {
    for (const auto& c : comparators)
        if (c.name == name) return c;
    throw Error("no comparator named " + name);
}

CorollaryReport corollary_two_squares(const BeattyParams& params, std::uint64_t N,
                                      unsigned threads) {
    const SieveTable table = multfun::sieve_two_squares(N, multfun::SieveMethod::mark_sum_of_squares,
                                                        threads);
    CorollaryReport rep = base_report("two-squares", params, table, N, threads);
    const auto C = multfun::landau_constant(1'000'000);
    const double L = std::log(static_cast<double>(N));
    const double closed = C.value * static_cast<double>(N) * params.gamma().to_double() / std::sqrt(L);
    rep.comparators.push_back(compare_to("closed_form", rep.beatty_value, closed));
    rep.comparators.push_back(compare_to("global_closed_form", rep.global_value,
                                         C.value * static_cast<double>(N) / std::sqrt(L)));
    const double envelope = static_cast<double>(N) * std::log(L) / L;
    if (envelope >= closed)
        rep.notes.push_back("error envelope N lnln N/ln N exceeds the main term at this N; "
                            "only the comparison against gamma times the global count is tight");
    rep.notes.push_back("closed form carries a relative error of order 1/ln N");
    return rep;
}

CorollaryReport corollary_kfree(const BeattyParams& params, unsigned k, std::uint64_t N,
                                unsigned threads) {
    const SieveTable table = multfun::sieve_kfree(N, k);
    CorollaryReport rep = base_report("kfree", params, table, N, threads);
    const double zeta = multfun::zeta_int(k).value;
    const double n = static_cast<double>(N);
    rep.comparators.push_back(
        compare_to("closed_form", rep.beatty_value, params.gamma().to_double() * n / zeta));
    rep.comparators.push_back(compare_to("global_closed_form", rep.global_value, n / zeta));
    if (params.alpha().is_exact() && params.alpha().surd().is_rational())
        rep.notes.push_back("rational alpha: the Beatty density of k-free numbers need not be "
                            "gamma/zeta(k)");
    return rep;
}

CorollaryReport corollary_four_squares(const BeattyParams& params, std::uint64_t N,
                                       unsigned threads) {
    const SieveTable table = multfun::sieve_r4(N);
    CorollaryReport rep = base_report("four-squares", params, table, N, threads);
    const double n = static_cast<double>(N);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    rep.comparators.push_back(compare_to("closed_form", rep.beatty_value,
                                         pi2 * n * n * params.gamma().to_double() / 2.0));
    rep.comparators.push_back(compare_to("global_closed_form", rep.global_value, pi2 * n * n / 2.0));

    CompensatedSum over_n;
    for (std::uint64_t m = 1; m <= N; ++m)
        over_n.add(static_cast<double>(table.raw(m)) / static_cast<double>(m));
    rep.comparators.push_back(compare_to("r4_over_n_sum", over_n.value(), pi2 * n));
    const double L = std::log(n);
    rep.notes.push_back("sum r4(n)/n - pi^2 N = " + std::to_string(over_n.value() - pi2 * n) +
                        ", (ln N)^2 = " + std::to_string(L * L));

    if (N <= 1'000'000) {
        const double zeta3 = multfun::zeta_int(3).value;
        rep.comparators.push_back(compare_to("sigma_sq_sum", to_double(multfun::sigma_sq_sum(N)),
                                             5.0 / 6.0 * zeta3 * n * n * n));
    }
    return rep;
}

}  // namespace bsum::harness
