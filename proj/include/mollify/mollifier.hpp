#pragma once

#include "mollify/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace mollify {

enum class MollifierKind { gaussian, bump };

std::string_view to_string(MollifierKind kind);

/// Parses "gaussian" or "bump"; throws PreconditionError otherwise.
MollifierKind parse_mollifier_kind(std::string_view name);

/// A smooth, symmetric, nonnegative kernel with unit mass. The regularized delta
/// family is built from it as phi(x / eps) / eps.
///
/// - gaussian: phi(u) = exp(-u^2 / 2) / sqrt(2 pi), unbounded support.
/// - bump:     phi(u) = N exp(-1 / (1 - u^2)) on |u| < 1, zero outside; N is
///             fixed by quadrature so that the mass is one.
///
/// Values are immutable after construction and safe to share across threads.
class Mollifier {
public:
    static Mollifier gaussian();
    static Mollifier bump();
    static Mollifier of_kind(MollifierKind kind);

    MollifierKind kind() const { return kind_; }

    double operator()(double u) const;

    double value_at_zero() const { return value_at_zero_; }

    /// Integral of phi^2: the constant in the integral of delta_eps^2 = C / eps.
    double self_energy() const { return self_energy_; }

    /// Radius of the support for compact kernels; empty for the Gaussian.
    std::optional<double> support_radius() const { return support_radius_; }

    /// Half-width (in units of u) beyond which the kernel is negligible; 12 for the
    /// Gaussian (tail mass below 1e-30), the support radius for compact kernels.
    double decay_radius() const { return decay_radius_; }

    /// Tail bound of u -> phi((u - center) / scale).
    DecayHint decay(double center, double scale) const;

    /// Tail bound of u -> phi((u - center) / scale)^2.
    DecayHint squared_decay(double center, double scale) const;

private:
    Mollifier(MollifierKind kind, double normalization, double value_at_zero, double self_energy,
              std::optional<double> support_radius, double decay_radius);

    MollifierKind kind_;
    double normalization_;
    double value_at_zero_;
    double self_energy_;
    std::optional<double> support_radius_;
    double decay_radius_;
};

double phi(const Mollifier& m, double u);
double self_energy(const Mollifier& m);

} // namespace mollify
