#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "beattysum/beatty.hpp"
#include "beattysum/multfun.hpp"

namespace bsum::harness {

struct HarnessConfig {
    double Delta = 0.0;
    std::uint64_t K = 0;
    std::uint64_t R = 0;
    /// True when (ln N)^-2 was not admissible for gamma and Delta was clamped.
    bool clamped = false;

    /// Delta = (ln N)^-2, K = R = ceil((ln N)^3). Delta is clamped to
    /// min(gamma, 1 - gamma)/2 (and below 1/8) when needed. Requires N >= 16.
    static HarnessConfig for_N(std::uint64_t N, double gamma);
};

struct BeattySum {
    /// Exact total for integer-valued f.
    std::optional<mpz_class> exact;
    double value = 0.0;
};

/// Sum of f(n) over members n <= N. `table` must cover N.
BeattySum beatty_sum(const beatty::BeattyParams& params, const multfun::SieveTable& table,
                     std::uint64_t N, unsigned threads = 1);

/// Sum of f(n) over all n <= N.
BeattySum global_sum(const multfun::SieveTable& table, std::uint64_t N);

/// Number of n <= N with {gamma n + delta} in the exceptional set of width Delta.
std::uint64_t boundary_set_size(const beatty::BeattyParams& params, double Delta, std::uint64_t N,
                                unsigned threads = 1);

struct AuditReport {
    std::uint64_t N = 0;
    HarnessConfig config;
    /// sum f(n) psi(gamma n + delta) = G.
    double G = 0.0;
    /// sum f(n) Psi_K(gamma n + delta), evaluated directly.
    double direct_smoothed = 0.0;
    /// gamma sum f + Re H(N).
    double fourier_side = 0.0;
    double h_imag = 0.0;
    /// |direct_smoothed - gamma sum f - H(N)|.
    double exchange_residual = 0.0;
    /// |G - direct_smoothed| and its pointwise budget
    /// max|f| |V| + tail_bound sum |f|.
    double smoothing_gap = 0.0;
    double smoothing_budget = 0.0;
    std::uint64_t boundary_set_size = 0;
};

inline constexpr std::uint64_t kMaxAuditN = 100'000;

AuditReport decomposition_audit(const beatty::BeattyParams& params,
                                const multfun::SieveTable& table, std::uint64_t N,
                                const HarnessConfig& cfg, unsigned threads = 1);

struct TheoremReport {
    std::string alpha;
    std::string beta;
    std::string function_id;
    std::uint64_t N = 0;
    HarnessConfig config;
    std::optional<mpz_class> G_exact;
    double G = 0.0;
    std::optional<mpz_class> sum_f_exact;
    double main_term = 0.0;
    double diff = 0.0;
    /// N lnln N / ln N.
    double envelope = 0.0;
    double ratio = 0.0;
    /// diff / envelope.
    double normalized_diff = 0.0;
    bool pass = false;
    std::uint64_t boundary_set_size = 0;
    /// Discrepancy of the first min(N, 10^7) points {gamma n + delta}.
    double discrepancy = 0.0;
    std::uint64_t discrepancy_points = 0;
    /// Present when N <= kMaxAuditN.
    std::optional<AuditReport> audit;
    std::string sieve_method;
    std::string precision_mode;
};

TheoremReport theorem_check(const beatty::BeattyParams& params, const multfun::SieveTable& table,
                            std::uint64_t N, const HarnessConfig& cfg, unsigned threads = 1);

struct Comparator {
    std::string name;
    double reference = 0.0;
    double observed = 0.0;
    /// observed / reference - 1.
    double relative_deviation = 0.0;
};

struct CorollaryReport {
    std::string corollary;
    std::string alpha;
    std::string beta;
    std::string function_id;
    std::uint64_t N = 0;
    std::optional<mpz_class> beatty_exact;
    double beatty_value = 0.0;
    std::optional<mpz_class> global_exact;
    double global_value = 0.0;
    std::vector<Comparator> comparators;
    std::vector<std::string> notes;
    std::string sieve_method;
    std::string precision_mode;

    const Comparator& comparator(const std::string& name) const;
};

CorollaryReport corollary_two_squares(const beatty::BeattyParams& params, std::uint64_t N,
                                      unsigned threads = 1);
CorollaryReport corollary_kfree(const beatty::BeattyParams& params, unsigned k, std::uint64_t N,
                                unsigned threads = 1);
/// Also reports sum r4(n)/n against pi^2 N, sum r4 against pi^2 N^2/2 and,
/// for N <= 10^6, sum sigma(n)^2 against (5/6) zeta(3) N^3.
CorollaryReport corollary_four_squares(const beatty::BeattyParams& params, std::uint64_t N,
                                       unsigned threads = 1);

}  // namespace bsum::harness
