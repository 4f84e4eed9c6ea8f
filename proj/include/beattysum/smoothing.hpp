#pragma once

// The periodic indicator psi of (0, gamma] and its smoothed companion Psi.
//
// Psi is the convolution of psi with the box kernel of half-width Delta,
// i.e. a periodic trapezoid: 1 on [Delta, gamma - Delta], 0 on
// [gamma + Delta, 1 - Delta], linear ramps of width 2*Delta around the two
// jumps. Its Fourier coefficients are
//
//   g(0) = gamma,
//   g(k) = (1 - e(-k gamma)) / (2 pi i k) * sin(2 pi k Delta) / (2 pi k Delta),
//
// so |g(k)| <= min{1/(pi|k|), 1/(2 pi^2 Delta k^2)} and the tail beyond |k| = K
// sums to at most 1/(pi^2 Delta K).

#include <complex>
#include <cstdint>
#include <vector>

namespace bsum::smoothing {

class SmoothingParams {
public:
    /// Throws DomainError unless 0 < gamma < 1, 0 < width < 1/8 and
    /// width <= min(gamma, 1 - gamma) / 2.
    SmoothingParams(double gamma, double width);

    double gamma() const { return gamma_; }
    double width() const { return width_; }

private:
    double gamma_;
    double width_;
};

/// 1 if 0 < {x} <= gamma, else 0.
int psi(double gamma, double x);
inline int psi(const SmoothingParams& p, double x) { return psi(p.gamma(), x); }

double psi_smooth(const SmoothingParams& p, double x);

std::complex<double> fourier_coeff(const SmoothingParams& p, std::int64_t k);

/// Bound on |g(k)| for k != 0.
double coeff_bound(const SmoothingParams& p, std::int64_t k);

/// 1/(pi^2 Delta K): bounds sum_{|k|>K} |g(k)| and hence sup |Psi_K - Psi|.
double tail_bound(const SmoothingParams& p, std::uint64_t K);

/// {x} in [0, Delta) u (gamma - Delta, gamma + Delta) u (1 - Delta, 1).
bool exceptional_indicator(const SmoothingParams& p, double x);

/// Psi_K(x) = gamma + sum_{0<|k|<=K} g(k) e(kx), with the coefficient table
/// computed once.
class TrigPoly {
public:
    TrigPoly(const SmoothingParams& p, std::uint64_t K);

    std::uint64_t order() const { return K_; }
    const SmoothingParams& params() const { return params_; }

    /// Real part of the symmetric sum, using g(-k)e(-kx) = conj(g(k)e(kx)).
    double operator()(double x) const;

    struct Symmetric {
        double value;
        double imag_residue;
    };
    /// Evaluates the k and -k halves independently and reports the
    /// imaginary residue of their sum.
    Symmetric eval_symmetric(double x) const;

private:
    SmoothingParams params_;
    std::uint64_t K_;
    std::vector<std::complex<double>> pos_;  // g(1..K)
    std::vector<std::complex<double>> neg_;  // g(-1..-K)
};

/// Single-point Psi_K(x). Throws std::logic_error if the imaginary residue
/// of the symmetric sum reaches 1e-12.
double trig_poly_eval(const SmoothingParams& p, std::uint64_t K, double x);

}  // namespace bsum::smoothing
