#include "mollify/epr.hpp"

#include "mollify/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mollify::epr {

namespace {

double checked(const QuadratureResult& r, const char* what) {
    if (!r.converged) {
        std::ostringstream msg;
        msg << what << " did not converge (value " << r.value << ", error estimate "
            << r.error_estimate << ")";
        throw ConvergenceError(msg.str(), r.value, r.error_estimate);
    }
    return r.value;
}

void require_positive_eps(double eps) {
    if (!(eps > 0.0)) {
        throw PreconditionError("eps must be positive");
    }
}

void require_ridge_resolved(const EprConfig& cfg, double eps) {
    require_positive_eps(eps);
    if (eps > cfg.sigma_x / 10.0 * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "eps=" << eps << " exceeds sigma_x/10=" << cfg.sigma_x / 10.0;
        throw PreconditionError(msg.str());
    }
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

QuadratureResult integrate_weighted(const GeneralizedFunction2D& g, double eps, Interval x1_range,
                                    const QuadratureConfig& cfg,
                                    const std::function<double(double, double)>& weight) {
    const std::vector<RidgeLine> lines = g.ridge_lines(eps);
    return integrate_2d([&](double x1, double x2) { return weight(x1, x2) * g(eps, x1, x2); },
                        x1_range, InnerDecay([&](double x1) { return g.x2_decay(eps, x1); }),
                        cfg, lines);
}

} // namespace

void EprConfig::validate() const {
    if (!(a <= b)) {
        throw PreconditionError("interval requires a <= b");
    }
    if (!(sigma_x > 0.0)) {
        throw PreconditionError("sigma_x must be positive");
    }
    if (!(L > 0.0)) {
        throw PreconditionError("L must be positive");
    }
    quadrature.validate();
}

double envelope(double x0, double sigma_x, double x1, double x2) {
    const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * std::numbers::pi) * sigma_x);
    return norm * std::exp((x0 * x0 - 2.0 * x1 * x1 - 2.0 * x2 * x2) / (16.0 * sigma_x * sigma_x));
}

GeneralizedFunction2D envelope_function(double x0, double sigma_x) {
    // exp(-2 x2^2 / (16 sigma^2)) is a Gaussian bound of scale 2 sigma in x2.
    return embed_smooth_2d([x0, sigma_x](double x1, double x2) { return envelope(x0, sigma_x, x1, x2); },
                           [sigma_x](double) { return GaussianDecay{0.0, 2.0 * sigma_x}; });
}

GeneralizedFunction2D bare_density(const EprConfig& cfg) {
    const GeneralizedFunction2D delta = delta_line_2d(cfg.kernel(), cfg.x0);
    return scale(delta * delta, cfg.h * cfg.h);
}

GeneralizedFunction2D modified_density(const EprConfig& cfg) {
    const GeneralizedFunction2D psi = envelope_function(cfg.x0, cfg.sigma_x) *
                                      delta_line_2d(cfg.kernel(), cfg.x0);
    return psi * psi;
}

double envelope_window(const EprConfig& cfg) { return std::abs(cfg.x0) / 2.0 + 12.0 * cfg.sigma_x; }

double delta_sq_box_integral(const EprConfig& cfg, double eps) {
    cfg.validate();
    require_positive_eps(eps);
    const GeneralizedFunction2D delta = delta_line_2d(cfg.kernel(), cfg.x0);
    return checked(integrate(delta * delta, eps, {cfg.a, cfg.b}, cfg.quadrature),
                   "delta-squared box integral");
}

ProbabilityReport relative_probability_unmodified(const EprConfig& cfg, double eps) {
    cfg.validate();
    require_positive_eps(eps);
    if (!(cfg.L > std::max(std::abs(cfg.a), std::abs(cfg.b)) + 10.0 * eps)) {
        throw PreconditionError("relative probability requires L > max(|a|, |b|) + 10 eps");
    }
    const GeneralizedFunction2D density = bare_density(cfg);
    ProbabilityReport report;
    report.epsilon = eps;
    report.L = cfg.L;
    report.numerator =
        checked(integrate(density, eps, {cfg.a, cfg.b}, cfg.quadrature), "numerator");
    const Interval normalization{-cfg.L, cfg.L};
    report.denominator =
        cfg.box_denominator
            ? checked(integrate_box(density, eps, normalization, normalization, cfg.quadrature),
                      "box denominator")
            : checked(integrate(density, eps, normalization, cfg.quadrature), "denominator");
    report.ratio = report.numerator / report.denominator;
    return report;
}

double modified_norm(const EprConfig& cfg, double eps) {
    cfg.validate();
    require_ridge_resolved(cfg, eps);
    const double w = envelope_window(cfg);
    return checked(integrate(modified_density(cfg), eps, {-w, w}, cfg.quadrature),
                   "modified norm");
}

ProbabilityReport modified_relative_probability(const EprConfig& cfg, double eps) {
    cfg.validate();
    require_ridge_resolved(cfg, eps);
    const double w = envelope_window(cfg);
    const GeneralizedFunction2D density = modified_density(cfg);
    ProbabilityReport report;
    report.epsilon = eps;
    report.L = w;
    const Interval target{std::clamp(cfg.a, -w, w), std::clamp(cfg.b, -w, w)};
    report.numerator = checked(integrate(density, eps, target, cfg.quadrature), "numerator");
    report.denominator = checked(integrate(density, eps, {-w, w}, cfg.quadrature), "denominator");
    report.ratio = report.numerator / report.denominator;
    return report;
}

double modified_ratio_limit(const EprConfig& cfg) {
    cfg.validate();
    const double mean = -cfg.x0 / 2.0;
    return normal_cdf((cfg.b - mean) / cfg.sigma_x) - normal_cdf((cfg.a - mean) / cfg.sigma_x);
}

Moments2D moments(const GeneralizedFunction2D& density, double eps, Interval x1_window,
                  const QuadratureConfig& cfg) {
    Moments2D m;
    m.mass = checked(integrate_weighted(density, eps, x1_window, cfg,
                                        [](double, double) { return 1.0; }),
                     "mass");
    if (!(m.mass > 0.0)) {
        throw PreconditionError("density has no mass in the window");
    }
    // Moments may vanish by symmetry, so their tolerance is anchored to the mass
    // and the window's length scale rather than to their own size.
    const double length = std::max(1.0, x1_window.width() / 24.0);
    QuadratureConfig scaled = cfg;
    scaled.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * m.mass * length * length);
    m.mean_x1 = checked(integrate_weighted(density, eps, x1_window, scaled,
                                           [](double x1, double) { return x1; }),
                        "first moment in x1") /
                m.mass;
    m.mean_x2 = checked(integrate_weighted(density, eps, x1_window, scaled,
                                           [](double, double x2) { return x2; }),
                        "first moment in x2") /
                m.mass;
    const double m1 = m.mean_x1;
    const double m2 = m.mean_x2;
    m.covariance = checked(integrate_weighted(density, eps, x1_window, scaled,
                                              [m1, m2](double x1, double x2) {
                                                  return (x1 - m1) * (x2 - m2);
                                              }),
                           "covariance") /
                   m.mass;
    return m;
}

IndependenceReport psi_prime_independence(const EprConfig& cfg) {
    cfg.validate();
    const GeneralizedFunction2D psi = envelope_function(cfg.x0, cfg.sigma_x);
    const GeneralizedFunction2D density = psi * psi;
    // |Psi'|^2 decays like exp(-x1^2 / (4 sigma^2)) in x1: Gaussian scale sqrt(2) sigma.
    const double spread = std::numbers::sqrt2 * cfg.sigma_x;
    const double half = gaussian_window_multiplier(cfg.quadrature.truncation_tail_tol) * spread;
    constexpr double eps = 1.0; // the state carries no regularization
    IndependenceReport report;
    report.covariance = moments(density, eps, {-half, half}, cfg.quadrature).covariance;

    constexpr int kConditioning = 9;
    constexpr int kProbes = 49;
    std::vector<double> lowest(kProbes, std::numeric_limits<double>::infinity());
    std::vector<double> highest(kProbes, -std::numeric_limits<double>::infinity());
    for (int i = 0; i < kConditioning; ++i) {
        const double x1 = -2.0 * cfg.sigma_x + 4.0 * cfg.sigma_x * i / (kConditioning - 1);
        const double marginal = checked(
            integrate_improper([&](double x2) { return density(eps, x1, x2); }, cfg.quadrature,
                               density.x2_decay(eps, x1)),
            "conditional normalization");
        for (int j = 0; j < kProbes; ++j) {
            const double x2 = -6.0 * spread + 12.0 * spread * j / (kProbes - 1);
            const double conditional = density(eps, x1, x2) / marginal;
            lowest[static_cast<std::size_t>(j)] = std::min(lowest[static_cast<std::size_t>(j)], conditional);
            highest[static_cast<std::size_t>(j)] = std::max(highest[static_cast<std::size_t>(j)], conditional);
        }
    }
    for (int j = 0; j < kProbes; ++j) {
        report.max_conditional_variation =
            std::max(report.max_conditional_variation,
                     highest[static_cast<std::size_t>(j)] - lowest[static_cast<std::size_t>(j)]);
    }
    return report;
}

double ridge_covariance(const EprConfig& cfg, double eps) {
    cfg.validate();
    require_ridge_resolved(cfg, eps);
    const double w = envelope_window(cfg);
    return moments(modified_density(cfg), eps, {-w, w}, cfg.quadrature).covariance;
}

double normalized_delta_norm(const Mollifier& m, double eps, const QuadratureConfig& cfg) {
    require_positive_eps(eps);
    const GeneralizedFunction1D delta = scaled_delta(m);
    const double peak = point_eval(delta, eps, 0.0);
    return pair(delta * delta, test_functions::constant_one(), eps, cfg) / peak;
}

AssociationReport association_check(const TestFunction& psi, const Mollifier& m,
                                    const SweepGrid& grid, const QuadratureConfig& cfg,
                                    const ClassifyOptions& opts) {
    const GeneralizedFunction1D delta = scaled_delta(m);
    const GeneralizedFunction1D square = delta * delta;
    AssociationReport report;
    report.sweep = sweep([&](double eps) { return pair(square, psi, eps, cfg); }, grid.eps_max,
                         grid.eps_min, grid.points);
    report.classification = classify(report.sweep, opts);
    return report;
}

} // namespace mollify::epr
