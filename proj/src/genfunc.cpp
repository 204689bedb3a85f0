#include "mollify/genfunc.hpp"

#include "mollify/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace mollify {

namespace {

template <typename T>
std::vector<T> merged(std::span<const T> a, std::span<const T> b) {
    std::vector<T> out(a.begin(), a.end());
    for (const T& item : b) {
        if (std::find(out.begin(), out.end(), item) == out.end()) {
            out.push_back(item);
        }
    }
    return out;
}

} // namespace

namespace test_functions {

TestFunction gaussian() {
    return {[](double x) { return std::exp(-x * x); }, GaussianDecay{0.0, std::sqrt(0.5)}};
}

TestFunction quadratic_gaussian() {
    // x^2 exp(-x^2) <= exp(-x^2 / 2) / e for all x.
    return {[](double x) { return x * x * std::exp(-x * x); }, GaussianDecay{0.0, 1.0}};
}

TestFunction odd_gaussian() {
    return {[](double x) { return x * std::exp(-x * x); }, GaussianDecay{0.0, 1.0}};
}

TestFunction constant_one() {
    return {[](double) { return 1.0; }, BoundedDecay{}};
}

TestFunction unit_bump() {
    const Mollifier m = Mollifier::bump();
    return {[m](double x) { return m(x); }, CompactDecay{-1.0, 1.0}};
}

} // namespace test_functions

GeneralizedFunction1D::GeneralizedFunction1D(Representative representative, DecayRule decay,
                                             std::vector<RidgeHint> ridges)
    : representative_(std::move(representative)), decay_(std::move(decay)),
      ridges_(std::move(ridges)) {}

std::vector<double> GeneralizedFunction1D::breakpoints(double eps, Interval range) const {
    std::vector<double> out;
    for (const RidgeHint& r : ridges_) {
        append_ridge_breakpoints(out, r.center, r.width_per_eps * eps, range);
    }
    return out;
}

GeneralizedFunction2D::GeneralizedFunction2D(Representative representative, DecayRule x2_decay,
                                             std::vector<RidgeLineHint> ridges)
    : representative_(std::move(representative)), x2_decay_(std::move(x2_decay)),
      ridges_(std::move(ridges)) {}

std::vector<RidgeLine> GeneralizedFunction2D::ridge_lines(double eps) const {
    std::vector<RidgeLine> out;
    out.reserve(ridges_.size());
    for (const RidgeLineHint& r : ridges_) {
        out.push_back({r.offset, r.width_per_eps * eps});
    }
    return out;
}

GeneralizedFunction1D embed_smooth_1d(std::function<double(double)> f, DecayHint decay) {
    return GeneralizedFunction1D([f = std::move(f)](double, double x) { return f(x); },
                                 [decay](double) { return decay; });
}

GeneralizedFunction2D embed_smooth_2d(std::function<double(double, double)> f,
                                      std::function<DecayHint(double)> x2_decay) {
    return GeneralizedFunction2D(
        [f = std::move(f)](double, double x1, double x2) { return f(x1, x2); },
        [d = std::move(x2_decay)](double, double x1) { return d(x1); });
}

GeneralizedFunction1D scaled_delta(const Mollifier& m, double shift) {
    const double width = m.support_radius().value_or(1.0);
    return GeneralizedFunction1D(
        [m, shift](double eps, double x) { return m((x - shift) / eps) / eps; },
        [m, shift](double eps) { return m.decay(shift, eps); }, {RidgeHint{shift, width}});
}

GeneralizedFunction2D delta_line_2d(const Mollifier& m, double x0) {
    const double width = m.support_radius().value_or(1.0);
    return GeneralizedFunction2D(
        [m, x0](double eps, double x1, double x2) { return m((x1 - x2 + x0) / eps) / eps; },
        [m, x0](double eps, double x1) { return m.decay(x1 + x0, eps); },
        {RidgeLineHint{x0, width}});
}

GeneralizedFunction1D multiply(const GeneralizedFunction1D& g, const GeneralizedFunction1D& h) {
    return GeneralizedFunction1D(
        [rg = g.representative(), rh = h.representative()](double eps, double x) {
            return rg(eps, x) * rh(eps, x);
        },
        [dg = g.decay_rule(), dh = h.decay_rule()](double eps) {
            return intersect(dg(eps), dh(eps));
        },
        merged(g.ridges(), h.ridges()));
}

GeneralizedFunction2D multiply(const GeneralizedFunction2D& g, const GeneralizedFunction2D& h) {
    return GeneralizedFunction2D(
        [rg = g.representative(), rh = h.representative()](double eps, double x1, double x2) {
            return rg(eps, x1, x2) * rh(eps, x1, x2);
        },
        [dg = g.x2_decay_rule(), dh = h.x2_decay_rule()](double eps, double x1) {
            return intersect(dg(eps, x1), dh(eps, x1));
        },
        merged(g.ridges(), h.ridges()));
}

GeneralizedFunction1D add(const GeneralizedFunction1D& g, const GeneralizedFunction1D& h) {
    return GeneralizedFunction1D(
        [rg = g.representative(), rh = h.representative()](double eps, double x) {
            return rg(eps, x) + rh(eps, x);
        },
        [dg = g.decay_rule(), dh = h.decay_rule()](double eps) { return hull(dg(eps), dh(eps)); },
        merged(g.ridges(), h.ridges()));
}

GeneralizedFunction1D scale(const GeneralizedFunction1D& g, double factor) {
    return GeneralizedFunction1D(
        [rg = g.representative(), factor](double eps, double x) { return factor * rg(eps, x); },
        g.decay_rule(), std::vector<RidgeHint>(g.ridges().begin(), g.ridges().end()));
}

GeneralizedFunction2D scale(const GeneralizedFunction2D& g, double factor) {
    return GeneralizedFunction2D(
        [rg = g.representative(), factor](double eps, double x1, double x2) {
            return factor * rg(eps, x1, x2);
        },
        g.x2_decay_rule(), std::vector<RidgeLineHint>(g.ridges().begin(), g.ridges().end()));
}

GeneralizedFunction1D shift(const GeneralizedFunction1D& g, double offset) {
    std::vector<RidgeHint> ridges(g.ridges().begin(), g.ridges().end());
    for (RidgeHint& r : ridges) {
        r.center += offset;
    }
    return GeneralizedFunction1D(
        [rg = g.representative(), offset](double eps, double x) { return rg(eps, x - offset); },
        [dg = g.decay_rule(), offset](double eps) { return shifted(dg(eps), offset); },
        std::move(ridges));
}

double point_eval(const GeneralizedFunction1D& g, double eps, double x) {
    if (!(eps > 0.0)) {
        throw PreconditionError("point_eval requires eps > 0");
    }
    return g(eps, x);
}

QuadratureResult pair_result(const GeneralizedFunction1D& g, const TestFunction& psi, double eps,
                             const QuadratureConfig& cfg) {
    if (!(eps > 0.0)) {
        throw PreconditionError("pair requires eps > 0");
    }
    const DecayHint decay = intersect(g.decay(eps), psi.decay);
    const auto window = truncation_window(decay, cfg.truncation_tail_tol);
    if (!window) {
        throw PreconditionError("pairing of two non-decaying functions is not an integrable product");
    }
    const std::vector<double> seeds = g.breakpoints(eps, *window);
    return integrate_1d([&](double x) { return g(eps, x) * psi(x); }, window->lo, window->hi, cfg,
                        seeds);
}

double pair(const GeneralizedFunction1D& g, const TestFunction& psi, double eps,
            const QuadratureConfig& cfg) {
    const QuadratureResult r = pair_result(g, psi, eps, cfg);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "pairing did not converge at eps=" << eps << " (error estimate "
            << r.error_estimate << ")";
        throw ConvergenceError(msg.str(), r.value, r.error_estimate);
    }
    return r.value;
}

QuadratureResult integrate(const GeneralizedFunction2D& g, double eps, Interval x1_range,
                           const QuadratureConfig& cfg) {
    if (!(eps > 0.0)) {
        throw PreconditionError("integrate requires eps > 0");
    }
    const std::vector<RidgeLine> lines = g.ridge_lines(eps);
    return integrate_2d([&](double x1, double x2) { return g(eps, x1, x2); }, x1_range,
                        InnerDecay([&](double x1) { return g.x2_decay(eps, x1); }), cfg, lines);
}

QuadratureResult integrate_box(const GeneralizedFunction2D& g, double eps, Interval x1_range,
                               Interval x2_range, const QuadratureConfig& cfg) {
    if (!(eps > 0.0)) {
        throw PreconditionError("integrate_box requires eps > 0");
    }
    const std::vector<RidgeLine> lines = g.ridge_lines(eps);
    return integrate_2d([&](double x1, double x2) { return g(eps, x1, x2); }, x1_range, x2_range,
                        cfg, lines);
}

} // namespace mollify
