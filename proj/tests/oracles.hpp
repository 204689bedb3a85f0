#pragma once

// Reference values and checks that do not go through the library's quadrature.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// Bump kernel exp(-1/(1-u^2)) constants, 40-digit mpmath quadrature.
inline constexpr double kBumpNormalization = 2.2522836210435810105;
inline constexpr double kBumpValueAtZero = 0.82856883986910515166;
inline constexpr double kBumpSelfEnergy = 0.67511681300969752899;
inline constexpr double kBumpSecondMomentEnergy = 0.077589315943183739075; // int u^2 phi^2
inline constexpr double kBumpNormalizedNorm = 0.81479869930463530484;      // C / phi(0)

inline const double kGaussianPhi0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
inline const double kGaussianSelfEnergy = 0.5 / std::sqrt(std::numbers::pi);

/// <delta_eps^2, exp(-x^2)> for the Gaussian kernel: C / (eps sqrt(1 + eps^2)).
inline double gaussian_pair_delta_sq_gaussian(double eps) {
    return kGaussianSelfEnergy / (eps * std::sqrt(1.0 + eps * eps));
}

/// <delta_eps^2, x^2 exp(-x^2)> for the Gaussian kernel: eps / (4 sqrt(pi) (1 + eps^2)^(3/2)).
inline double gaussian_pair_delta_sq_quadratic(double eps) {
    return eps / (4.0 * std::sqrt(std::numbers::pi) * std::pow(1.0 + eps * eps, 1.5));
}

/// <delta_eps, exp(-x^2)> for the Gaussian kernel: 1 / sqrt(1 + 2 eps^2).
inline double gaussian_pair_delta_gaussian(double eps) { return 1.0 / std::sqrt(1.0 + 2.0 * eps * eps); }

/// Plane integral of (f delta_eps(x1 - x2 + x0))^2, Gaussian kernel, closed form
/// after integrating x1 exactly and the kernel variable as a Gaussian integral.
inline double modified_norm_closed_form(double x0, double sigma, double eps) {
    const double A = 1.0 + eps * eps / (8.0 * sigma * sigma);
    const double B = x0 * eps / (4.0 * sigma * sigma);
    return std::sqrt(std::numbers::pi / A) * std::exp(B * B / (4.0 * A)) /
           (2.0 * std::numbers::pi * eps);
}

// modified ratio for x0=2, sigma=1, [a,b]=[-2,0], 30-digit mpmath.
inline constexpr double kModifiedRatioEps1e2 = 0.68268646752193373;
inline constexpr double kModifiedRatioEps1e3 = 0.68268946189074722;
inline constexpr double kNormalOneSigmaMass = 0.6826894921370859;

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

} // namespace oracle
