#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beattysum/arith.hpp"

namespace bsum::beatty {

using arith::Real;

/// Parameters of the non-homogeneous Beatty sequence {floor(alpha*m + beta)}
/// together with gamma = 1/alpha and delta = (1 - beta)/alpha.
///
/// When alpha and beta are surds from a common quadratic field, all four
/// values are exact; otherwise everything is carried as FixedReal.
class BeattyParams {
public:
    BeattyParams(Real alpha, Real beta);

    const Real& alpha() const { return alpha_; }
    const Real& beta() const { return beta_; }
    const Real& gamma() const { return gamma_; }
    /// delta reduced into [0, 1) whenever the reduction is decidable.
    const Real& delta() const { return delta_; }
    /// (1 - beta)/alpha before reduction; the smallest floor index is its ceiling.
    const Real& offset() const { return offset_; }
    bool exact() const { return alpha_.is_exact(); }
    std::string precision_mode() const { return exact() ? "exact-surd" : "fixed-192"; }

    const arith::Fixed128& gamma128() const { return gamma128_; }
    const arith::Fixed128& delta128() const { return delta128_; }

private:
    Real alpha_, beta_, gamma_, delta_, offset_;
    arith::Fixed128 gamma128_, delta128_;
};

BeattyParams derive_params(const Real& alpha, const Real& beta);

/// n is in the sequence iff 0 < {gamma*n + delta} <= gamma. Boundary cases
/// are decided exactly in surd mode.
bool is_member(const BeattyParams& params, std::uint64_t n);

/// {floor(alpha*m + beta) : m in Z} intersected with [1, N], ascending.
std::vector<std::uint64_t> generate_by_floor(const BeattyParams& params, std::uint64_t N);

/// mask[n] == 1 iff n is a member, for 1 <= n <= N (mask[0] == 0).
/// Uses a certified 128-bit fast path and falls back to is_member only when
/// {gamma*n + delta} lies within its error bound of 0 or gamma.
std::vector<std::uint8_t> membership_mask(const BeattyParams& params, std::uint64_t N,
                                          unsigned threads = 1);

std::uint64_t count_members(const BeattyParams& params, std::uint64_t N, unsigned threads = 1);

/// Deterministic chunk length shared by all range-parallel scans.
inline constexpr std::uint64_t kScanChunk = std::uint64_t{1} << 16;

}  // namespace bsum::beatty
