#pragma once

#include "mollify/asymptotics.hpp"
#include "mollify/genfunc.hpp"
#include "mollify/mollifier.hpp"
#include "mollify/quadrature.hpp"

namespace mollify::epr {

/// Scenario for a position-entangled two-particle pair concentrated on x2 = x1 + x0.
/// Defaults put the ridge marginal's one-sigma interval exactly on [a, b].
struct EprConfig {
    double x0 = 2.0;
    double sigma_x = 1.0;
    double a = -2.0;
    double b = 0.0;
    double L = 10.0;
    MollifierKind mollifier = MollifierKind::gaussian;
    /// Constant prefactor of the bare delta state; cancels in every ratio.
    double h = 1.0;
    /// Truncate the x2 integration of the normalization to [-L, L] as well.
    bool box_denominator = false;
    QuadratureConfig quadrature{};

    /// Throws PreconditionError unless a <= b, sigma_x > 0 and L > 0.
    void validate() const;
    Mollifier kernel() const { return Mollifier::of_kind(mollifier); }
};

struct ProbabilityReport {
    double numerator = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
    double epsilon = 0.0;
    double L = 0.0;
};

/// f(x1, x2) = (sqrt(2 pi) sigma)^(-1/2) exp((x0^2 - 2 x1^2 - 2 x2^2) / (16 sigma^2)).
double envelope(double x0, double sigma_x, double x1, double x2);

/// The envelope as an eps-constant two-variable function with its x2 tail bound.
GeneralizedFunction2D envelope_function(double x0, double sigma_x);

/// |Psi_eps|^2 for the bare state h delta_eps(x1 - x2 + x0).
GeneralizedFunction2D bare_density(const EprConfig& cfg);

/// |Psi~_eps|^2 for the enveloped state f delta_eps(x1 - x2 + x0).
GeneralizedFunction2D modified_density(const EprConfig& cfg);

/// Half-width of the x1 window standing in for the whole line in the envelope
/// computations: |x0| / 2 + 12 sigma_x.
double envelope_window(const EprConfig& cfg);

/// Integral over x1 in [a, b] and x2 over the line of delta_eps(x1 - x2 + x0)^2.
double delta_sq_box_integral(const EprConfig& cfg, double eps);

/// Numerator over [a, b], denominator over [-L, L] (x2 over the line, or over
/// [-L, L] when cfg.box_denominator), both for |h delta_eps|^2.
ProbabilityReport relative_probability_unmodified(const EprConfig& cfg, double eps);

/// Plane integral of |Psi~_eps|^2. Requires eps <= sigma_x / 10.
double modified_norm(const EprConfig& cfg, double eps);

ProbabilityReport modified_relative_probability(const EprConfig& cfg, double eps);

/// eps -> 0 limit of modified_relative_probability:
/// G((b + x0/2) / sigma) - G((a + x0/2) / sigma), G the standard normal CDF.
double modified_ratio_limit(const EprConfig& cfg);

struct Moments2D {
    double mass = 0.0;
    double mean_x1 = 0.0;
    double mean_x2 = 0.0;
    double covariance = 0.0;
};

/// Mass, means and covariance of a nonnegative density over x1 in `x1_window`,
/// x2 over the line.
Moments2D moments(const GeneralizedFunction2D& density, double eps, Interval x1_window,
                  const QuadratureConfig& cfg);

struct IndependenceReport {
    double covariance = 0.0;
    double max_conditional_variation = 0.0;
};

/// Covariance and conditional-density spread of the normalized |Psi'|^2, the
/// delta-free envelope state. Both vanish for a product state.
IndependenceReport psi_prime_independence(const EprConfig& cfg);

/// Covariance of x1 and x2 under the normalized |Psi~_eps|^2 (close to sigma_x^2).
double ridge_covariance(const EprConfig& cfg, double eps);

/// Integral of (delta_eps / sqrt(delta_eps(0)))^2 = C_phi / phi(0).
double normalized_delta_norm(const Mollifier& m, double eps, const QuadratureConfig& cfg = {});

struct SweepGrid {
    double eps_max = 1e-1;
    double eps_min = 1e-4;
    int points = 13;
};

struct AssociationReport {
    EpsilonSweep sweep;
    Classification classification;
};

/// Sweeps <delta_eps^2, psi> and classifies its eps -> 0 behaviour.
AssociationReport association_check(const TestFunction& psi, const Mollifier& m,
                                    const SweepGrid& grid = {},
                                    const QuadratureConfig& cfg = {},
                                    const ClassifyOptions& opts = {});

} // namespace mollify::epr
