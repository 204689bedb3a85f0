#include "mollify/asymptotics.hpp"

#include "mollify/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mollify {

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::divergent:
        return "divergent";
    case Verdict::convergent:
        return "convergent";
    case Verdict::indeterminate:
        return "indeterminate";
    }
    return "indeterminate";
}

std::vector<std::size_t> EpsilonSweep::failures() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < converged.size(); ++i) {
        if (!converged[i]) {
            out.push_back(i);
        }
    }
    return out;
}

std::size_t EpsilonSweep::valid_count() const {
    return static_cast<std::size_t>(std::count(converged.begin(), converged.end(), true));
}

std::vector<double> geometric_grid(double eps_max, double eps_min, int n) {
    if (n < 1 || !(eps_min > 0.0) || !std::isfinite(eps_max)) {
        throw PreconditionError("sweep grid requires n >= 1 and eps_min > 0");
    }
    if (n == 1) {
        if (eps_max != eps_min) {
            throw PreconditionError("a one-point sweep requires eps_max == eps_min");
        }
        return {eps_max};
    }
    if (!(eps_max > eps_min)) {
        throw PreconditionError("sweep grid requires eps_max > eps_min");
    }
    const double log_max = std::log(eps_max);
    const double step = (std::log(eps_min) - log_max) / (n - 1);
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = std::exp(log_max + step * i);
    }
    grid.front() = eps_max;
    grid.back() = eps_min;
    return grid;
}

EpsilonSweep sweep(const std::function<double(double)>& f, double eps_max, double eps_min, int n) {
    EpsilonSweep s;
    s.epsilons = geometric_grid(eps_max, eps_min, n);
    s.values.reserve(s.epsilons.size());
    s.converged.reserve(s.epsilons.size());
    for (double eps : s.epsilons) {
        try {
            const double v = f(eps);
            s.values.push_back(v);
            s.converged.push_back(std::isfinite(v));
        } catch (const ConvergenceError& e) {
            s.values.push_back(e.value());
            s.converged.push_back(false);
        }
    }
    if (s.valid_count() == 0) {
        throw ConvergenceError("every sweep point failed to evaluate",
                               std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::infinity());
    }
    return s;
}

PowerLawFit fit_power_law(const EpsilonSweep& s) {
    std::vector<double> xs;
    std::vector<double> ys;
    int sign = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s.converged[i]) {
            continue;
        }
        const double v = s.values[i];
        if (v == 0.0) {
            throw PreconditionError("power-law fit undefined: zero value in sweep");
        }
        const int sv = v > 0.0 ? 1 : -1;
        if (sign != 0 && sv != sign) {
            throw PreconditionError("power-law fit undefined: values change sign");
        }
        sign = sv;
        xs.push_back(std::log(s.epsilons[i]));
        ys.push_back(std::log(std::abs(v)));
    }
    if (xs.size() < 4) {
        throw PreconditionError("power-law fit needs at least 4 valid points");
    }

    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    PowerLawFit fit;
    fit.order = sxy / sxx;
    fit.log_constant = my - fit.order * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.log_constant + fit.order * xs[i]);
        ss_res += r * r;
        fit.residual_max = std::max(fit.residual_max, std::abs(r));
    }
    // A flat sequence is fitted perfectly by the zero-slope line.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

Classification classify(const EpsilonSweep& s, const ClassifyOptions& opts) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    Classification c{Verdict::indeterminate, nan, nan, std::nullopt};

    std::vector<double> valid;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.converged[i]) {
            valid.push_back(s.values[i]);
        }
    }
    if (valid.size() < 4) {
        return c;
    }

    try {
        c.fit = fit_power_law(s);
        c.order = c.fit->order;
    } catch (const PreconditionError&) {
        c.fit.reset();
    }

    const bool clean = c.fit && c.fit->r_squared >= opts.min_r_squared;
    if (clean && c.order <= -opts.order_tol) {
        c.verdict = Verdict::divergent;
        return c;
    }
    if (clean && c.order >= opts.order_tol) {
        c.verdict = Verdict::convergent;
        c.limit = 0.0;
        return c;
    }

    const double last = valid.back();
    const double reference = std::max(std::abs(last), opts.zero_floor);
    bool cauchy = true;
    for (std::size_t k = valid.size() - 3; k < valid.size(); ++k) {
        if (std::abs(valid[k] - last) > opts.cauchy_tol * reference) {
            cauchy = false;
        }
    }
    const bool order_near_zero = !clean || std::abs(c.order) < opts.order_tol;
    if (cauchy && order_near_zero) {
        c.verdict = Verdict::convergent;
        c.limit = last;
    }
    return c;
}

} // namespace mollify
