#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace mollify {

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool operator==(const Interval&) const = default;
};

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 60;
    double truncation_tail_tol = 1e-12;
    /// Hard cap on the number of live subintervals of one 1D integral.
    int max_subintervals = 20000;

    /// Throws PreconditionError unless every tolerance is positive.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

// Tail bounds. A GaussianDecay promises |f(x)| <= A exp(-(x - center)^2 / (2 scale^2))
// for some constant A; a CompactDecay promises f = 0 outside [lo, hi]; BoundedDecay
// promises nothing beyond finiteness.
struct GaussianDecay {
    double center = 0.0;
    double scale = 1.0;
    bool operator==(const GaussianDecay&) const = default;
};

struct CompactDecay {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const CompactDecay&) const = default;
};

struct BoundedDecay {
    bool operator==(const BoundedDecay&) const = default;
};

using DecayHint = std::variant<GaussianDecay, CompactDecay, BoundedDecay>;

/// Bound for a product: the tighter of the two tails. Two Gaussian bounds
/// multiply into a Gaussian bound; compact support wins over everything.
DecayHint intersect(const DecayHint& a, const DecayHint& b);

/// Conservative bound for a sum.
DecayHint hull(const DecayHint& a, const DecayHint& b);

DecayHint shifted(const DecayHint& d, double offset);

/// Integration window outside which the bounded tail mass is below `tail_tol`.
/// Empty for BoundedDecay.
std::optional<Interval> truncation_window(const DecayHint& d, double tail_tol);

/// Multiplier k such that a Gaussian bound of scale s is truncated at center +- k*s.
double gaussian_window_multiplier(double tail_tol);

/// Breakpoints c, c +- w, c +- 2w, c +- 4w, ... that lie strictly inside `range`.
/// Seeding a peak of width w this way keeps every subinterval comparable to its
/// distance from the peak, so no first-pass rule can step over it.
void append_ridge_breakpoints(std::vector<double>& out, double center, double width,
                              Interval range);

/// Global adaptive Gauss-Kronrod (7/15) integration over [a, b]. Breakpoints inside
/// (a, b) seed the initial partition.
QuadratureResult integrate_1d(const Integrand1D& f, double a, double b,
                              const QuadratureConfig& cfg = {},
                              std::span<const double> breakpoints = {});

/// Integral over the real line. The decay hint selects a finite window whose
/// excluded tail is below cfg.truncation_tail_tol; a BoundedDecay hint is rejected.
QuadratureResult integrate_improper(const Integrand1D& f, const QuadratureConfig& cfg,
                                    const DecayHint& decay_hint,
                                    std::span<const double> breakpoints = {});

/// A line x2 = x1 + offset along which the integrand concentrates with transverse
/// width `width`.
struct RidgeLine {
    double offset = 0.0;
    double width = 0.0;
};

/// Inner decay hint for the whole-line x2 integration, as a function of x1.
using InnerDecay = std::function<DecayHint(double)>;
using InnerDomain = std::variant<Interval, InnerDecay>;

/// Iterated integration: inner over x2 (an interval or the whole line), outer over
/// x1 in `x1_range`. Ridge lines seed breakpoints for the inner integral and, where
/// they cross a finite inner boundary, for the outer one.
QuadratureResult integrate_2d(const Integrand2D& f, Interval x1_range, const InnerDomain& x2_range,
                              const QuadratureConfig& cfg = {},
                              std::span<const RidgeLine> ridges = {});

} // namespace mollify
