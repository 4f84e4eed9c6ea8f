#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beattysum/arith.hpp"
#include "beattysum/beatty.hpp"
#include "beattysum/multfun.hpp"
#include "beattysum/smoothing.hpp"

namespace bsum::expsum {

struct ExpSumResult {
    std::string alpha;
    std::uint64_t N = 0;
    std::complex<double> value;
    /// Certified bound on |computed - exact|.
    double accumulation_error = 0.0;
};

/// S(N) = sum_{n<=N} f(n) e(n alpha). Phases come from the certified 128-bit
/// fractional part of n*alpha; partial sums are compensated per fixed-size
/// chunk and merged in index order, so the result does not depend on the
/// thread count.
ExpSumResult exp_sum(const multfun::SieveTable& f, const arith::Real& alpha, std::uint64_t N,
                     unsigned threads = 1);

/// Same sum with alpha given directly as a 128-bit fixed-point phase step.
std::complex<double> exp_sum_fixed(const multfun::SieveTable& f, const arith::Fixed128& alpha,
                                   std::uint64_t N, unsigned threads = 1);

/// N/ln N + N (ln R)^{3/2} / R^{1/2} with unit constant (report-only).
double mv_envelope(double N, double R);

struct EnvelopeReport {
    std::uint64_t N = 0;
    std::uint64_t R = 0;
    /// Upper end of the window, floor(N/R).
    std::uint64_t window_hi = 0;
    /// Convergent in the window, or the smallest convergent with q >= R
    /// when the window is missed.
    std::optional<arith::Convergent> convergent;
    double envelope = 0.0;
    bool window_hit = false;
};

/// ceil((ln N)^3).
std::uint64_t log_cubed(std::uint64_t N);

/// Convergent a/q of x with R <= q <= N/R, R = ceil((ln N)^3).
EnvelopeReport select_convergent_window(const arith::Real& x, std::uint64_t N);

/// H(N) = sum_{0<|k|<=K} g(k) e(k delta) S_{k gamma, f}(N). The -k terms use
/// S_{-k gamma} = conj(S_{k gamma}), valid because every supported f is real.
std::complex<double> h_sum(const beatty::BeattyParams& params,
                           const smoothing::SmoothingParams& smoothing, std::uint64_t K,
                           const multfun::SieveTable& f, std::uint64_t N, unsigned threads = 1);

struct SweepRow {
    std::int64_t k;
    double magnitude;
    EnvelopeReport window;
};

/// |S_{k gamma, f}(N)| and the convergent window of k*gamma for
/// 0 < |k| <= k_max (negative k first, ascending).
std::vector<SweepRow> k_sweep(const beatty::BeattyParams& params, const multfun::SieveTable& f,
                              std::uint64_t N, std::uint64_t k_max, unsigned threads = 1);

}  // namespace bsum::expsum
