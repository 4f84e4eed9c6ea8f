#include "beattysum/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "beattysum/errors.hpp"

namespace bsum::smoothing {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Rotation recurrence is re-seeded from sin/cos this often.
constexpr std::uint64_t kReseed = 32;

double frac(double x) { return x - std::floor(x); }

// e(k*x) with the argument reduced exactly via fma.
std::complex<double> unit_phase(double k, double x) {
    double r = std::fma(k, x, -std::nearbyint(k * x));
    return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

}  // namespace

SmoothingParams::SmoothingParams(double gamma, double width) : gamma_(gamma), width_(width) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
    if (!(width > 0.0 && width < 0.125))
        throw DomainError("smoothing width must lie in (0, 1/8), got " + std::to_string(width));
    if (width > 0.5 * std::min(gamma, 1.0 - gamma))
        throw DomainError("smoothing width exceeds min(gamma, 1 - gamma)/2");
}

int psi(double gamma, double x) {
    double f = frac(x);
    return f > 0.0 && f <= gamma ? 1 : 0;
}

double psi_smooth(const SmoothingParams& p, double x) {
    const double y = frac(x);
    const double g = p.gamma();
    const double w = p.width();
    if (y < w) return (y + w) / (2.0 * w);
    if (y <= g - w) return 1.0;
    if (y < g + w) return (g + w - y) / (2.0 * w);
    if (y <= 1.0 - w) return 0.0;
    return (y - (1.0 - w)) / (2.0 * w);
}

std::complex<double> fourier_coeff(const SmoothingParams& p, std::int64_t k) {
    if (k == 0) return {p.gamma(), 0.0};
    const double kd = static_cast<double>(k);
    const std::complex<double> jump = 1.0 - unit_phase(-kd, p.gamma());
    const std::complex<double> indicator = jump / std::complex<double>(0.0, kTwoPi * kd);
    const double arg = kTwoPi * kd * p.width();
    return indicator * (std::sin(arg) / arg);
}

double coeff_bound(const SmoothingParams& p, std::int64_t k) {
    const double a = std::abs(static_cast<double>(k));
    return std::min(1.0 / (kPi * a), 1.0 / (2.0 * kPi * kPi * p.width() * a * a));
}

double tail_bound(const SmoothingParams& p, std::uint64_t K) {
    if (K == 0) throw DomainError("tail_bound requires K >= 1");
    return 1.0 / (kPi * kPi * p.width() * static_cast<double>(K));
}

bool exceptional_indicator(const SmoothingParams& p, double x) {
    const double y = frac(x);
    const double w = p.width();
    return y < w || std::abs(y - p.gamma()) < w || y > 1.0 - w;
}

TrigPoly::TrigPoly(const SmoothingParams& p, std::uint64_t K) : params_(p), K_(K) {
    if (K == 0) throw DomainError("trigonometric polynomial order must be >= 1");
    pos_.resize(K);
    neg_.resize(K);
    for (std::uint64_t k = 1; k <= K; ++k) {
        pos_[k - 1] = fourier_coeff(p, static_cast<std::int64_t>(k));
        neg_[k - 1] = fourier_coeff(p, -static_cast<std::int64_t>(k));
    }
}

double TrigPoly::operator()(double x) const {
    const std::complex<double> w = unit_phase(1.0, x);
    std::complex<double> z = w;
    double acc = 0.0;
    for (std::uint64_t k = 1; k <= K_; ++k) {
        if (k % kReseed == 0) z = unit_phase(static_cast<double>(k), x);
        const std::complex<double>& g = pos_[k - 1];
        acc += g.real() * z.real() - g.imag() * z.imag();
        z *= w;
    }
    return params_.gamma() + 2.0 * acc;
}

TrigPoly::Symmetric TrigPoly::eval_symmetric(double x) const {
    const std::complex<double> w = unit_phase(1.0, x);
    const std::complex<double> wbar = unit_phase(-1.0, x);
    std::complex<double> z = w, zbar = wbar;
    std::complex<double> acc(params_.gamma(), 0.0);
    for (std::uint64_t k = 1; k <= K_; ++k) {
        if (k % kReseed == 0) {
            z = unit_phase(static_cast<double>(k), x);
            zbar = unit_phase(-static_cast<double>(k), x);
        }
        acc += pos_[k - 1] * z + neg_[k - 1] * zbar;
        z *= w;
        zbar *= wbar;
    }
    return {acc.real(), acc.imag()};
}

double trig_poly_eval(const SmoothingParams& p, std::uint64_t K, double x) {
    auto r = TrigPoly(p, K).eval_symmetric(x);
    if (std::abs(r.imag_residue) >= 1e-12)
        throw std::logic_error("imaginary residue " + std::to_string(r.imag_residue) +
                               " in symmetric trigonometric sum");
    return r.value;
}

}  // namespace bsum::smoothing
