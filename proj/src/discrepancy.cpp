#include "beattysum/discrepancy.hpp"

#include <cmath>

#include "beattysum/parallel.hpp"

namespace bsum::discrepancy {

std::vector<double> beatty_points(const arith::Real& gamma, const arith::Real& delta,
                                  std::uint64_t M, unsigned threads) {
    if (M == 0) throw DomainError("M must be positive");
    if (M > kMaxBeattyPoints) throw CapacityExceeded("beatty_discrepancy supports M <= 1e7");
    const arith::Fixed128 g = arith::to_fixed128(gamma);
    const arith::Fixed128 d = arith::to_fixed128(delta);
    std::vector<double> points(M);
    auto chunks = split_range(1, M + 1, std::uint64_t{1} << 16);
    parallel_for(chunks.size(), threads, [&](std::size_t c) {
        unsigned __int128 theta = static_cast<unsigned __int128>(chunks[c].begin) * g.frac + d.frac;
        for (std::uint64_t m = chunks[c].begin; m < chunks[c].end; ++m, theta += g.frac)
            points[m - 1] = arith::fraction_to_double(theta);
    });
    return points;
}

DiscrepancyResult<double> beatty_discrepancy(const arith::Real& gamma, const arith::Real& delta,
                                             std::uint64_t M, unsigned threads) {
    return discrepancy_fast(beatty_points(gamma, delta, M, threads));
}

double discrepancy_envelope(double tau_hat, double M) {
    if (tau_hat < 1.0) throw DomainError("tau_hat must be >= 1");
    if (M < 2.0) throw DomainError("M must be >= 2");
    return std::pow(M, -1.0 / tau_hat);
}

}  // namespace bsum::discrepancy
