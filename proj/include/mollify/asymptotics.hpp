#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace mollify {

/// Values of F on a descending geometric eps grid. Points where F threw a
/// ConvergenceError or returned a non-finite value are kept but marked.
struct EpsilonSweep {
    std::vector<double> epsilons;
    std::vector<double> values;
    std::vector<bool> converged;

    std::size_t size() const { return epsilons.size(); }
    std::vector<std::size_t> failures() const;
    std::size_t valid_count() const;
};

/// F(eps) ~ exp(log_constant) * eps^order.
struct PowerLawFit {
    double order = 0.0;
    double log_constant = 0.0;
    double r_squared = 0.0;
    double residual_max = 0.0;
};

enum class Verdict { divergent, convergent, indeterminate };

std::string_view to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::indeterminate;
    /// Fitted order when a power law could be fitted, NaN otherwise.
    double order = 0.0;
    /// Limit for convergent sequences, NaN otherwise.
    double limit = 0.0;
    std::optional<PowerLawFit> fit;
};

struct ClassifyOptions {
    double order_tol = 0.1;
    double cauchy_tol = 1e-4;
    double min_r_squared = 0.999;
    /// Values this small count as zero in the Cauchy test (odd integrands,
    /// quadrature roundoff).
    double zero_floor = 1e-12;
};

/// Geometric grid from eps_max down to eps_min with n points. n == 1 requires
/// eps_max == eps_min.
std::vector<double> geometric_grid(double eps_max, double eps_min, int n);

EpsilonSweep sweep(const std::function<double(double)>& f, double eps_max, double eps_min, int n);

/// Least-squares line through (ln eps_i, ln |F_i|) over the valid points.
/// Throws PreconditionError with fewer than 4 valid points or when the values
/// contain zeros or change sign.
PowerLawFit fit_power_law(const EpsilonSweep& s);

/// Divergent(order) for a clean power law with order <= -order_tol.
/// Convergent(0) for a clean power law with order >= order_tol.
/// Convergent(last value) when the last three values agree within cauchy_tol
/// (relative, with an absolute floor) and the sequence is not a power law away
/// from order zero. Otherwise Indeterminate.
Classification classify(const EpsilonSweep& s, const ClassifyOptions& opts = {});

} // namespace mollify
