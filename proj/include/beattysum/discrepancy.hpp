#pragma once

// Extreme discrepancy of a finite point set in [0, 1):
//
//   D(M) = sup over open (a, c) in [0, 1) of | V((a,c), M)/M - (c - a) |.
//
// On sorted points x(1) <= ... <= x(M) the supremum is realized in the limit
// by one of four configurations:
//
//   overfull            [x(i), x(j)], i <= j:  (j-i+1)/M - (x(j) - x(i))
//   underfull interior  (x(i), x(j)), i < j:   (x(j) - x(i)) - (j-i-1)/M
//   underfull left      (0, x(j)):             x(j) - (j-1)/M
//   underfull right     (x(i), 1):             (1 - x(i)) - (M-i)/M
//
// discrepancy_oracle enumerates them in O(M^2); discrepancy_fast rewrites the
// two pairwise families as maximal rises of u(k) = k/M - x(k) and its
// negation, which a single pass after sorting evaluates.
//
// Both are templates so they run on doubles and on exact rationals
// (mpq_class).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "beattysum/arith.hpp"
#include "beattysum/errors.hpp"

namespace bsum::discrepancy {

template <class T>
struct DiscrepancyResult {
    std::size_t M = 0;
    T value{};
    /// Witness interval (left, right) in its limiting configuration.
    T left{};
    T right{};
    /// Number of points counted in the witness configuration.
    std::size_t count = 0;
};

namespace detail {

template <class T>
void check_points(const std::vector<T>& points) {
    if (points.empty()) throw DomainError("discrepancy of an empty point set");
    for (const T& x : points)
        if (x < T(0) || !(x < T(1))) throw DomainError("discrepancy points must lie in [0, 1)");
}

template <class T>
T ratio(std::size_t num, std::size_t den) {
    T r = T(static_cast<long>(num));
    r /= T(static_cast<long>(den));
    return r;
}

template <class T>
void offer(DiscrepancyResult<T>& best, const T& value, const T& left, const T& right,
           std::size_t count) {
    if (value > best.value) {
        best.value = value;
        best.left = left;
        best.right = right;
        best.count = count;
    }
}

}  // namespace detail

template <class T>
DiscrepancyResult<T> discrepancy_oracle(std::vector<T> points) {
    detail::check_points(points);
    std::sort(points.begin(), points.end());
    const std::size_t M = points.size();
    const auto x = [&](std::size_t k) -> const T& { return points[k - 1]; };

    DiscrepancyResult<T> best;
    best.M = M;
    best.value = T(-1);
    for (std::size_t i = 1; i <= M; ++i) {
        for (std::size_t j = i; j <= M; ++j) {
            T over = detail::ratio<T>(j - i + 1, M);
            over -= x(j) - x(i);
            detail::offer(best, over, x(i), x(j), j - i + 1);
            if (j > i) {
                T under = x(j) - x(i);
                under -= detail::ratio<T>(j - i - 1, M);
                detail::offer(best, under, x(i), x(j), j - i - 1);
            }
        }
    }
    for (std::size_t j = 1; j <= M; ++j) {
        T left = x(j) - detail::ratio<T>(j - 1, M);
        detail::offer(best, left, T(0), x(j), j - 1);
    }
    for (std::size_t i = 1; i <= M; ++i) {
        T right = T(1) - x(i);
        right -= detail::ratio<T>(M - i, M);
        detail::offer(best, right, x(i), T(1), M - i);
    }
    return best;
}

template <class T>
DiscrepancyResult<T> discrepancy_fast(std::vector<T> points) {
    detail::check_points(points);
    std::sort(points.begin(), points.end());
    const std::size_t M = points.size();
    const T unit = detail::ratio<T>(1, M);

    DiscrepancyResult<T> best;
    best.M = M;
    best.value = T(-1);

    // Overfull: 1/M + max_{i<=j} (u_j - u_i), u_k = k/M - x_k.
    // Underfull interior: 1/M + max_{i<j} (v_j - v_i), v_k = -u_k.
    std::size_t argmin_u = 1, argmax_u = 1;
    T min_u{}, max_u{};
    for (std::size_t k = 1; k <= M; ++k) {
        const T& xk = points[k - 1];
        T u = detail::ratio<T>(k, M);
        u -= xk;
        if (k > 1) {
            // Underfull uses i < j, so the running max of u excludes k.
            T under = max_u - u;
            under += unit;
            detail::offer(best, under, points[argmax_u - 1], xk, k - argmax_u - 1);
        }
        if (k == 1 || u < min_u) {
            min_u = u;
            argmin_u = k;
        }
        if (k == 1 || u > max_u) {
            max_u = u;
            argmax_u = k;
        }
        T over = u - min_u;
        over += unit;
        detail::offer(best, over, points[argmin_u - 1], xk, k - argmin_u + 1);

        T left = xk - detail::ratio<T>(k - 1, M);
        detail::offer(best, left, T(0), xk, k - 1);
        T right = T(1) - xk;
        right -= detail::ratio<T>(M - k, M);
        detail::offer(best, right, xk, T(1), M - k);
    }
    return best;
}

/// Discrepancy of ({gamma*m + delta})_{m=1..M}; points come from the
/// certified 128-bit fractional-part stepper.
DiscrepancyResult<double> beatty_discrepancy(const arith::Real& gamma, const arith::Real& delta,
                                             std::uint64_t M, unsigned threads = 1);

/// The points {gamma*m + delta}, m = 1..M, as doubles in [0, 1).
std::vector<double> beatty_points(const arith::Real& gamma, const arith::Real& delta,
                                  std::uint64_t M, unsigned threads = 1);

/// M^(-1/tau_hat): report-only reference curve.
double discrepancy_envelope(double tau_hat, double M);

inline constexpr std::uint64_t kMaxBeattyPoints = 10'000'000;

}  // namespace bsum::discrepancy
