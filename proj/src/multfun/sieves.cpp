#include <algorithm>
#include <cmath>
#include <numeric>

#include "beattysum/errors.hpp"
#include "beattysum/multfun.hpp"
#include "beattysum/parallel.hpp"

namespace bsum::multfun {

namespace {

constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

void require_capacity(std::uint64_t N, std::uint64_t cap, const char* what) {
    if (N == 0) throw DomainError(std::string(what) + ": N must be positive");
    if (N > cap)
        throw CapacityExceeded(std::string(what) + ": N exceeds " + std::to_string(cap));
}

std::uint64_t isqrt64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

ArithmeticFunction ArithmeticFunction::k_free(unsigned k) {
    if (k < 2) throw DomainError("k-free requires k >= 2");
    return {FunctionKind::k_free, k};
}

ArithmeticFunction ArithmeticFunction::parse(std::string_view name, unsigned k) {
    if (name == "unit") return unit();
    if (name == "two_squares" || name == "two-squares") return two_squares();
    if (name == "kfree" || name == "k_free" || name == "k-free") return k_free(k);
    if (name == "r4") return r4();
    if (name == "r4_over_8n") return r4_over_8n();
    if (name == "sigma") return sigma();
    if (name == "moebius_abs" || name == "squarefree") return moebius_abs();
    throw ParseError("unknown arithmetic function '" + std::string(name) + "'");
}

std::string ArithmeticFunction::id() const {
    switch (kind) {
        case FunctionKind::unit: return "unit";
        case FunctionKind::two_squares: return "two_squares";
        case FunctionKind::k_free: return "k_free(" + std::to_string(k) + ")";
        case FunctionKind::r4: return "r4";
        case FunctionKind::r4_over_8n: return "r4_over_8n";
        case FunctionKind::sigma: return "sigma";
        case FunctionKind::moebius_abs: return "moebius_abs";
    }
    return "unknown";
}

bool ArithmeticFunction::indicator() const {
    return kind == FunctionKind::unit || kind == FunctionKind::two_squares ||
           kind == FunctionKind::k_free || kind == FunctionKind::moebius_abs;
}

double ArithmeticFunction::class_bound() const {
    if (indicator()) return 1.0;
    // Certified at tested N; the mean square tends to (5/2) zeta(3) ~ 3.005.
    if (kind == FunctionKind::r4_over_8n) return 4.0;
    return 0.0;
}

std::string to_string(SieveMethod m) {
    switch (m) {
        case SieveMethod::constant: return "constant";
        case SieveMethod::mark_sum_of_squares: return "mark_sum_of_squares";
        case SieveMethod::factor_criterion: return "factor_criterion";
        case SieveMethod::power_crossout: return "power_crossout";
        case SieveMethod::divisor_sieve: return "divisor_sieve";
        case SieveMethod::moebius_sieve: return "moebius_sieve";
    }
    return "unknown";
}

SieveTable::SieveTable(ArithmeticFunction fn, SieveMethod method, std::vector<std::uint8_t> bytes)
    : fn_(fn), method_(method), n_(bytes.size()), bytes_(std::move(bytes)) {
    if (!fn_.indicator()) throw DomainError("byte tables hold indicator functions only");
}

SieveTable::SieveTable(ArithmeticFunction fn, SieveMethod method, std::vector<std::uint64_t> words)
    : fn_(fn), method_(method), n_(words.size()), words_(std::move(words)) {
    if (fn_.indicator()) throw DomainError("indicator functions use byte tables");
}

double SieveTable::max_abs() const {
    double best = 0.0;
    for (std::uint64_t n = 1; n <= n_; ++n) best = std::max(best, std::abs(value(n)));
    return best;
}

bool operator==(const SieveTable& a, const SieveTable& b) {
    return a.fn_ == b.fn_ && a.n_ == b.n_ && a.bytes_ == b.bytes_ && a.words_ == b.words_;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t N) {
    std::vector<std::uint32_t> primes;
    if (N < 2) return primes;
    if (N > std::numeric_limits<std::uint32_t>::max())
        throw CapacityExceeded("prime list limited to 32-bit primes");
    std::vector<std::uint8_t> composite(N + 1, 0);
    for (std::uint64_t p = 2; p * p <= N; ++p)
        if (!composite[p])
            for (std::uint64_t m = p * p; m <= N; m += p) composite[m] = 1;
    for (std::uint64_t n = 2; n <= N; ++n)
        if (!composite[n]) primes.push_back(static_cast<std::uint32_t>(n));
    return primes;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t N, unsigned threads) {
    require_capacity(N, kMaxIndicatorN, "smallest_prime_factors");
    std::vector<std::uint32_t> spf(N + 1, 0);
    const auto base = primes_up_to(isqrt64(N));
    auto segments = split_range(2, N + 1, kSegment);
    parallel_for(segments.size(), threads, [&](std::size_t s) {
        const auto [lo, hi] = segments[s];
        for (std::uint32_t p : base) {
            const std::uint64_t pp = std::uint64_t{p} * p;
            if (pp >= hi) break;
            std::uint64_t m = std::max(pp, (lo + p - 1) / p * p);
            for (; m < hi; m += p)
                if (spf[m] == 0) spf[m] = p;
        }
        for (std::uint64_t n = lo; n < hi; ++n)
            if (spf[n] == 0) spf[n] = static_cast<std::uint32_t>(n);
    });
    return spf;
}

SieveTable sieve_unit(std::uint64_t N) {
    require_capacity(N, kMaxIndicatorN, "sieve_unit");
    return SieveTable(ArithmeticFunction::unit(), SieveMethod::constant,
                      std::vector<std::uint8_t>(N, 1));
}

SieveTable sieve_two_squares(std::uint64_t N, SieveMethod method, unsigned threads) {
    require_capacity(N, kMaxIndicatorN, "sieve_two_squares");
    std::vector<std::uint8_t> v(N, 0);
    if (method == SieveMethod::mark_sum_of_squares) {
        for (std::uint64_t a = 0; a * a <= N; ++a)
            for (std::uint64_t b = a; a * a + b * b <= N; ++b)
                if (a * a + b * b >= 1) v[a * a + b * b - 1] = 1;
    } else if (method == SieveMethod::factor_criterion) {
        // n is a sum of two squares iff every prime p = 3 mod 4 divides n
        // to an even power.
        const auto spf = smallest_prime_factors(N, threads);
        auto chunks = split_range(1, N + 1, kSegment);
        parallel_for(chunks.size(), threads, [&](std::size_t c) {
            for (std::uint64_t n = chunks[c].begin; n < chunks[c].end; ++n) {
                std::uint64_t m = n;
                bool ok = true;
                while (m > 1 && ok) {
                    const std::uint32_t p = spf[m];
                    unsigned e = 0;
                    while (m % p == 0) {
                        m /= p;
                        ++e;
                    }
                    if (p % 4 == 3 && e % 2 == 1) ok = false;
                }
                v[n - 1] = ok ? 1 : 0;
            }
        });
    } else {
        throw DomainError("two-squares sieve supports mark_sum_of_squares or factor_criterion");
    }
    return SieveTable(ArithmeticFunction::two_squares(), method, std::move(v));
}

SieveTable sieve_kfree(std::uint64_t N, unsigned k) {
    require_capacity(N, kMaxIndicatorN, "sieve_kfree");
    auto fn = ArithmeticFunction::k_free(k);
    std::vector<std::uint8_t> v(N, 1);
    for (std::uint32_t p : primes_up_to(isqrt64(N))) {
        std::uint64_t pk = 1;
        bool overflow = false;
        for (unsigned i = 0; i < k && !overflow; ++i) {
            pk *= p;
            overflow = pk > N;
        }
        if (overflow) break;
        for (std::uint64_t m = pk; m <= N; m += pk) v[m - 1] = 0;
    }
    return SieveTable(fn, SieveMethod::power_crossout, std::move(v));
}

SieveTable sieve_moebius_abs(std::uint64_t N) {
    require_capacity(N, kMaxIndicatorN, "sieve_moebius_abs");
    // mu(n) built multiplicatively: flip sign per prime, zero on p^2.
    std::vector<std::int8_t> mu(N + 1, 1);
    for (std::uint32_t p : primes_up_to(N)) {
        for (std::uint64_t m = p; m <= N; m += p) mu[m] = static_cast<std::int8_t>(-mu[m]);
        const std::uint64_t pp = std::uint64_t{p} * p;
        for (std::uint64_t m = pp; m <= N; m += pp) mu[m] = 0;
    }
    std::vector<std::uint8_t> v(N);
    for (std::uint64_t n = 1; n <= N; ++n) v[n - 1] = mu[n] != 0 ? 1 : 0;
    return SieveTable(ArithmeticFunction::moebius_abs(), SieveMethod::moebius_sieve, std::move(v));
}

SieveTable sieve_r4(std::uint64_t N, bool over_8n) {
    require_capacity(N, kMaxDivisorN, "sieve_r4");
    std::vector<std::uint64_t> s(N, 0);
    for (std::uint64_t d = 1; d <= N; d += 2)
        for (std::uint64_t m = d; m <= N; m += d) s[m - 1] += d;
    for (std::uint64_t n = 1; n <= N; ++n) s[n - 1] *= 8 * (n % 2 == 0 ? 3 : 1);
    auto fn = over_8n ? ArithmeticFunction::r4_over_8n() : ArithmeticFunction::r4();
    return SieveTable(fn, SieveMethod::divisor_sieve, std::move(s));
}

SieveTable sieve_sigma(std::uint64_t N) {
    require_capacity(N, kMaxDivisorN, "sieve_sigma");
    std::vector<std::uint64_t> s(N, 0);
    for (std::uint64_t d = 1; d <= N; ++d)
        for (std::uint64_t m = d; m <= N; m += d) s[m - 1] += d;
    return SieveTable(ArithmeticFunction::sigma(), SieveMethod::divisor_sieve, std::move(s));
}

SieveTable build_table(const ArithmeticFunction& f, std::uint64_t N, unsigned threads) {
    switch (f.kind) {
        case FunctionKind::unit: return sieve_unit(N);
        case FunctionKind::two_squares:
            return sieve_two_squares(N, SieveMethod::mark_sum_of_squares, threads);
        case FunctionKind::k_free: return sieve_kfree(N, f.k);
        case FunctionKind::r4: return sieve_r4(N, false);
        case FunctionKind::r4_over_8n: return sieve_r4(N, true);
        case FunctionKind::sigma: return sieve_sigma(N);
        case FunctionKind::moebius_abs: return sieve_moebius_abs(N);
    }
    throw DomainError("unknown arithmetic function");
}

std::uint64_t r4_jacobi(std::uint64_t n) {
    if (n == 0) throw DomainError("r4_jacobi requires n >= 1");
    std::uint64_t odd_sum = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::uint64_t e = n / d;
        if (d % 2 == 1) odd_sum += d;
        if (e != d && e % 2 == 1) odd_sum += e;
    }
    return 8 * (n % 2 == 0 ? 3 : 1) * odd_sum;
}

namespace {

// r2[m] = #{(a, b) in Z^2 : a^2 + b^2 = m} for m <= N.
std::vector<std::uint64_t> r2_table(std::uint64_t N) {
    std::vector<std::uint64_t> r2(N + 1, 0);
    const auto root = static_cast<std::int64_t>(isqrt64(N));
    for (std::int64_t a = -root; a <= root; ++a)
        for (std::int64_t b = -root; b <= root; ++b) {
            const auto m = static_cast<std::uint64_t>(a * a + b * b);
            if (m <= N) ++r2[m];
        }
    return r2;
}

}  // namespace

std::uint64_t r4_lattice_oracle(std::uint64_t n) {
    if (n > 100'000) throw CapacityExceeded("r4_lattice_oracle supports n <= 1e5");
    const auto r2 = r2_table(n);
    std::uint64_t total = 0;
    for (std::uint64_t m = 0; m <= n; ++m) total += r2[m] * r2[n - m];
    return total;
}

std::vector<std::uint64_t> r4_lattice_table(std::uint64_t N) {
    if (N > 20'000) throw CapacityExceeded("r4_lattice_table supports N <= 2e4");
    const auto r2 = r2_table(N);
    std::vector<std::uint64_t> out(N + 1, 0);
    for (std::uint64_t n = 0; n <= N; ++n)
        for (std::uint64_t m = 0; m <= n; ++m) out[n] += r2[m] * r2[n - m];
    return out;
}

mpz_class sigma_sq_sum(std::uint64_t N) {
    const SieveTable sigma = sieve_sigma(N);
    mpz_class total = 0;
    for (const auto [lo, hi] : split_range(1, N + 1, kSegment)) {
        unsigned __int128 chunk = 0;
        for (std::uint64_t n = lo; n < hi; ++n) {
            const unsigned __int128 s = sigma.raw(n);
            chunk += s * s;
        }
        mpz_class part = static_cast<unsigned long>(chunk >> 64);
        part <<= 64;
        part += static_cast<unsigned long>(chunk & 0xFFFFFFFFFFFFFFFFull);
        total += part;
    }
    return total;
}

ClassCheck class_check(const SieveTable& table, double A) {
    if (A < 1.0) throw DomainError("class bound A must be >= 1");
    const std::uint64_t N = table.size();
    CompensatedSum sq;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const double v = table.value(n);
        sq.add(v * v);
    }
    double max_prime = 0.0;
    for (std::uint32_t p : primes_up_to(N)) max_prime = std::max(max_prime, std::abs(table.value(p)));
    ClassCheck out;
    out.mean_square = sq.value() / static_cast<double>(N);
    out.max_prime_value = max_prime;
    out.member = sq.value() <= A * A * static_cast<double>(N) && max_prime <= A;
    return out;
}

}  // namespace bsum::multfun
