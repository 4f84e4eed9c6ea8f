#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace bsum::multfun {

enum class FunctionKind : std::uint16_t {
    unit = 1,
    two_squares = 2,
    k_free = 3,
    r4 = 4,
    r4_over_8n = 5,
    sigma = 6,
    moebius_abs = 7,
};

/// A named arithmetic function from the supported family.
struct ArithmeticFunction {
    FunctionKind kind = FunctionKind::unit;
    /// Only meaningful for k_free.
    unsigned k = 0;

    static ArithmeticFunction unit() { return {FunctionKind::unit, 0}; }
    static ArithmeticFunction two_squares() { return {FunctionKind::two_squares, 0}; }
    static ArithmeticFunction k_free(unsigned k);
    static ArithmeticFunction r4() { return {FunctionKind::r4, 0}; }
    static ArithmeticFunction r4_over_8n() { return {FunctionKind::r4_over_8n, 0}; }
    static ArithmeticFunction sigma() { return {FunctionKind::sigma, 0}; }
    static ArithmeticFunction moebius_abs() { return {FunctionKind::moebius_abs, 0}; }

    /// "unit", "two_squares", "kfree" (with k), "r4", "r4_over_8n", "sigma",
    /// "moebius_abs".
    static ArithmeticFunction parse(std::string_view name, unsigned k = 2);

    /// Stable identifier, e.g. "k_free(2)".
    std::string id() const;
    bool indicator() const;
    bool integer_valued() const { return kind != FunctionKind::r4_over_8n; }
    /// A with f in F_A certified computationally where applicable (0 when f
    /// is not claimed to be in any F_A, e.g. unnormalized r4 or sigma).
    double class_bound() const;

    friend bool operator==(const ArithmeticFunction&, const ArithmeticFunction&) = default;
};

enum class SieveMethod : std::uint8_t {
    constant,
    mark_sum_of_squares,
    factor_criterion,
    power_crossout,
    divisor_sieve,
    moebius_sieve,
};

std::string to_string(SieveMethod m);

inline constexpr std::uint64_t kMaxIndicatorN = 100'000'000;
inline constexpr std::uint64_t kMaxDivisorN = 10'000'000;

/// Dense table of f(1..N). Indicators are stored one byte per entry; r4 and
/// sigma as 64-bit integers.
class SieveTable {
public:
    SieveTable(ArithmeticFunction fn, SieveMethod method, std::vector<std::uint8_t> bytes);
    SieveTable(ArithmeticFunction fn, SieveMethod method, std::vector<std::uint64_t> words);

    const ArithmeticFunction& function() const { return fn_; }
    SieveMethod method() const { return method_; }
    std::uint64_t size() const { return n_; }

    /// Raw integer entry (r4(n) for r4_over_8n tables).
    std::uint64_t raw(std::uint64_t n) const {
        return bytes_.empty() ? words_[n - 1] : bytes_[n - 1];
    }
    /// f(n) as a real number, 1 <= n <= size().
    double value(std::uint64_t n) const {
        if (fn_.kind == FunctionKind::r4_over_8n)
            return static_cast<double>(words_[n - 1]) / (8.0 * static_cast<double>(n));
        return static_cast<double>(raw(n));
    }
    bool integer_valued() const { return fn_.integer_valued(); }
    double max_abs() const;

    /// Binary dump: 16-byte little-endian header (magic "BSTB", kind u16,
    /// k u16, N u64) followed by the entries (1 or 8 bytes each).
    void save(std::ostream& out) const;
    static SieveTable load(std::istream& in);

    friend bool operator==(const SieveTable& a, const SieveTable& b);

private:
    ArithmeticFunction fn_;
    SieveMethod method_;
    std::uint64_t n_;
    std::vector<std::uint8_t> bytes_;
    std::vector<std::uint64_t> words_;
};

/// spf[n] = smallest prime factor of n for 2 <= n <= N (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t N, unsigned threads = 1);
std::vector<std::uint32_t> primes_up_to(std::uint64_t N);

SieveTable sieve_two_squares(std::uint64_t N,
                             SieveMethod method = SieveMethod::mark_sum_of_squares,
                             unsigned threads = 1);
SieveTable sieve_kfree(std::uint64_t N, unsigned k);
SieveTable sieve_moebius_abs(std::uint64_t N);
SieveTable sieve_r4(std::uint64_t N, bool over_8n = false);
SieveTable sieve_sigma(std::uint64_t N);
SieveTable sieve_unit(std::uint64_t N);

/// Builds the table for f with its default method.
SieveTable build_table(const ArithmeticFunction& f, std::uint64_t N, unsigned threads = 1);

struct LandauConstant {
    double value;
    /// value <= C <= value + tail_bound.
    double tail_bound;
};

/// 2^{-1/2} prod_{p = 3 mod 4, p <= cutoff} (1 - p^{-2})^{-1/2} with a tail
/// bound from sum_{p > x} p^{-2} <= 1/x.
LandauConstant landau_constant(std::uint64_t prime_cutoff);

struct ZetaValue {
    double value;
    double error_bound;
};

/// zeta(s) for integer s >= 2 to within tol (Euler-Maclaurin tail).
ZetaValue zeta_int(unsigned s, double tol = 1e-12);
/// Partial sum to `cutoff` plus the integral tail estimate cutoff^{1-s}/(s-1).
double zeta_truncated(unsigned s, std::uint64_t cutoff);

/// Jacobi: 8 (2 + (-1)^n) sum_{d | n, d odd} d.
std::uint64_t r4_jacobi(std::uint64_t n);
/// Exact count of (a,b,c,d) in Z^4 with a^2+b^2+c^2+d^2 = n, via the
/// convolution of two-square representation counts.
std::uint64_t r4_lattice_oracle(std::uint64_t n);
/// r4_lattice_oracle for every n <= N in one pass.
std::vector<std::uint64_t> r4_lattice_table(std::uint64_t N);

/// sum_{n <= N} sigma(n)^2, exact.
mpz_class sigma_sq_sum(std::uint64_t N);

struct ClassCheck {
    bool member;
    /// sum_{n<=N} |f(n)|^2 / N
    double mean_square;
    /// max_{p <= N} |f(p)|
    double max_prime_value;
};

/// sum |f(n)|^2 <= A^2 N and |f(p)| <= A at every prime p <= N.
ClassCheck class_check(const SieveTable& table, double A);

}  // namespace bsum::multfun
