#include <cmath>

#include "beattysum/errors.hpp"
#include "beattysum/multfun.hpp"

namespace bsum::multfun {

LandauConstant landau_constant(std::uint64_t prime_cutoff) {
    if (prime_cutoff < 1000) throw DomainError("landau_constant requires cutoff >= 1000");
    // log C = -log(2)/2 - (1/2) sum_{p = 3 mod 4} log(1 - p^-2)
    long double log_sum = 0.0L;
    long double comp = 0.0L;
    for (std::uint32_t p : primes_up_to(prime_cutoff)) {
        if (p % 4 != 3) continue;
        const long double inv = 1.0L / (static_cast<long double>(p) * p);
        const long double term = -0.5L * std::log1p(-inv);
        const long double y = term - comp;
        const long double t = log_sum + y;
        comp = (t - log_sum) - y;
        log_sum = t;
    }
    const long double c = std::exp(log_sum - 0.5L * std::log(2.0L));
    // Remaining factor is exp(T) with
    // T = -(1/2) sum_{p > x} log(1 - p^-2) <= (1/2) sum p^-2 / (1 - x^-2) <= (1/2) (1/x) / (1 - x^-2).
    const long double x = static_cast<long double>(prime_cutoff);
    const long double t_bound = 0.5L / x / (1.0L - 1.0L / (x * x));
    return {static_cast<double>(c), static_cast<double>(c * std::expm1(t_bound))};
}

ZetaValue zeta_int(unsigned s, double tol) {
    if (s < 2) throw DomainError("zeta_int requires s >= 2");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    const long double sd = s;
    // Euler-Maclaurin through the B_4 term; the next term bounds the remainder.
    auto remainder = [&](long double M) {
        return sd * (sd + 1) * (sd + 2) * (sd + 3) * (sd + 4) / 30240.0L * std::pow(M, -sd - 5);
    };
    std::uint64_t M = 16;
    while (remainder(static_cast<long double>(M)) > 0.25L * tol) M *= 2;
    long double partial = 0.0L;
    for (std::uint64_t n = M - 1; n >= 1; --n) partial += std::pow(static_cast<long double>(n), -sd);
    const long double m = static_cast<long double>(M);
    const long double tail = std::pow(m, 1 - sd) / (sd - 1) + 0.5L * std::pow(m, -sd) +
                             sd / 12.0L * std::pow(m, -sd - 1) -
                             sd * (sd + 1) * (sd + 2) / 720.0L * std::pow(m, -sd - 3);
    const double value = static_cast<double>(partial + tail);
    const double rounding = static_cast<double>(M) * 1e-19 + 2.3e-16 * value;
    return {value, static_cast<double>(remainder(m)) + rounding};
}

double zeta_truncated(unsigned s, std::uint64_t cutoff) {
    if (s < 2) throw DomainError("zeta_truncated requires s >= 2");
    if (cutoff == 0) throw DomainError("cutoff must be positive");
    const long double sd = s;
    long double partial = 0.0L;
    for (std::uint64_t n = cutoff; n >= 1; --n) partial += std::pow(static_cast<long double>(n), -sd);
    const long double m = static_cast<long double>(cutoff);
    return static_cast<double>(partial + std::pow(m, 1 - sd) / (sd - 1) - 0.5L * std::pow(m, -sd));
}

}  // namespace bsum::multfun
