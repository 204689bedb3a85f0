#pragma once

#include "mollify/mollifier.hpp"
#include "mollify/quadrature.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mollify {

/// A location where a representative concentrates with width `width_per_eps * eps`.
struct RidgeHint {
    double center = 0.0;
    double width_per_eps = 1.0;

    bool operator==(const RidgeHint&) const = default;
};

/// The ridge x2 = x1 + offset with transverse width `width_per_eps * eps`.
struct RidgeLineHint {
    double offset = 0.0;
    double width_per_eps = 1.0;

    bool operator==(const RidgeLineHint&) const = default;
};

/// A smooth function of one variable with a truthful tail bound.
struct TestFunction {
    std::function<double(double)> evaluate;
    DecayHint decay = BoundedDecay{};

    double operator()(double x) const { return evaluate(x); }
};

namespace test_functions {
TestFunction gaussian();           ///< exp(-x^2)
TestFunction quadratic_gaussian(); ///< x^2 exp(-x^2): vanishes to second order at 0
TestFunction odd_gaussian();       ///< x exp(-x^2)
TestFunction constant_one();       ///< 1, no decay
TestFunction unit_bump();          ///< the unit-mass bump kernel itself
} // namespace test_functions

/// An eps-parameterized family of smooth representatives R(eps, x), evaluated lazily.
/// Decay metadata may depend on eps; ridge hints mark where R concentrates so that
/// quadrature seeds its partition there.
class GeneralizedFunction1D {
public:
    using Representative = std::function<double(double eps, double x)>;
    using DecayRule = std::function<DecayHint(double eps)>;

    GeneralizedFunction1D(Representative representative, DecayRule decay,
                          std::vector<RidgeHint> ridges = {});

    double operator()(double eps, double x) const { return representative_(eps, x); }

    DecayHint decay(double eps) const { return decay_(eps); }
    std::span<const RidgeHint> ridges() const { return ridges_; }

    /// Quadrature seeds for the representative at this eps, restricted to `range`.
    std::vector<double> breakpoints(double eps, Interval range) const;

    const Representative& representative() const { return representative_; }
    const DecayRule& decay_rule() const { return decay_; }

private:
    Representative representative_;
    DecayRule decay_;
    std::vector<RidgeHint> ridges_;
};

/// Two-variable counterpart. Decay is given for x2 as a function of (eps, x1); the
/// x1 range is always supplied by the caller.
class GeneralizedFunction2D {
public:
    using Representative = std::function<double(double eps, double x1, double x2)>;
    using DecayRule = std::function<DecayHint(double eps, double x1)>;

    GeneralizedFunction2D(Representative representative, DecayRule x2_decay,
                          std::vector<RidgeLineHint> ridges = {});

    double operator()(double eps, double x1, double x2) const {
        return representative_(eps, x1, x2);
    }

    DecayHint x2_decay(double eps, double x1) const { return x2_decay_(eps, x1); }
    std::span<const RidgeLineHint> ridges() const { return ridges_; }

    std::vector<RidgeLine> ridge_lines(double eps) const;

    const Representative& representative() const { return representative_; }
    const DecayRule& x2_decay_rule() const { return x2_decay_; }

private:
    Representative representative_;
    DecayRule x2_decay_;
    std::vector<RidgeLineHint> ridges_;
};

// Construction.

/// Embeds a smooth function as the eps-constant family R(eps, x) = f(x).
GeneralizedFunction1D embed_smooth_1d(std::function<double(double)> f, DecayHint decay);

/// R(eps, x1, x2) = f(x1, x2); `x2_decay` bounds the x2 tail for each x1.
GeneralizedFunction2D embed_smooth_2d(std::function<double(double, double)> f,
                                      std::function<DecayHint(double)> x2_decay);

/// delta_eps(x - shift) = phi((x - shift) / eps) / eps.
GeneralizedFunction1D scaled_delta(const Mollifier& m, double shift = 0.0);

/// delta_eps(x1 - x2 + x0): the regularized delta concentrated on x2 = x1 + x0.
GeneralizedFunction2D delta_line_2d(const Mollifier& m, double x0);

// Algebra at the representative level.

GeneralizedFunction1D multiply(const GeneralizedFunction1D& g, const GeneralizedFunction1D& h);
GeneralizedFunction2D multiply(const GeneralizedFunction2D& g, const GeneralizedFunction2D& h);
GeneralizedFunction1D add(const GeneralizedFunction1D& g, const GeneralizedFunction1D& h);
GeneralizedFunction1D scale(const GeneralizedFunction1D& g, double factor);
GeneralizedFunction2D scale(const GeneralizedFunction2D& g, double factor);
/// x -> g(x - offset).
GeneralizedFunction1D shift(const GeneralizedFunction1D& g, double offset);

inline GeneralizedFunction1D operator*(const GeneralizedFunction1D& g,
                                       const GeneralizedFunction1D& h) {
    return multiply(g, h);
}
inline GeneralizedFunction2D operator*(const GeneralizedFunction2D& g,
                                       const GeneralizedFunction2D& h) {
    return multiply(g, h);
}
inline GeneralizedFunction1D operator+(const GeneralizedFunction1D& g,
                                       const GeneralizedFunction1D& h) {
    return add(g, h);
}
inline GeneralizedFunction1D operator*(double factor, const GeneralizedFunction1D& g) {
    return scale(g, factor);
}
inline GeneralizedFunction2D operator*(double factor, const GeneralizedFunction2D& g) {
    return scale(g, factor);
}

// Evaluation.

double point_eval(const GeneralizedFunction1D& g, double eps, double x);

/// Integral of R(eps, x) psi(x) over the real line, with the quadrature partition
/// seeded at every ridge. Throws ConvergenceError when the tolerance is not met.
double pair(const GeneralizedFunction1D& g, const TestFunction& psi, double eps,
            const QuadratureConfig& cfg = {});

/// Same integral, returning the full quadrature record instead of throwing.
QuadratureResult pair_result(const GeneralizedFunction1D& g, const TestFunction& psi, double eps,
                             const QuadratureConfig& cfg = {});

/// Integral of R(eps, x1, x2) over x1 in `x1_range` and x2 over the whole line.
QuadratureResult integrate(const GeneralizedFunction2D& g, double eps, Interval x1_range,
                           const QuadratureConfig& cfg = {});

/// Integral of R(eps, x1, x2) over the box x1_range x x2_range.
QuadratureResult integrate_box(const GeneralizedFunction2D& g, double eps, Interval x1_range,
                               Interval x2_range, const QuadratureConfig& cfg = {});

} // namespace mollify
