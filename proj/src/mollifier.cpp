#include "mollify/mollifier.hpp"

#include "mollify/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mollify {

namespace {

double bump_profile(double u) {
    const double r = 1.0 - u * u;
    if (r <= 0.0) {
        return 0.0;
    }
    return std::exp(-1.0 / r);
}

QuadratureConfig constant_cfg() {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-13;
    return cfg;
}

// Computed once; Mollifier::bump() is cheap afterwards.
struct BumpConstants {
    double normalization;
    double self_energy;

    static const BumpConstants& get() {
        static const BumpConstants constants = [] {
            const QuadratureConfig cfg = constant_cfg();
            const double zero[] = {0.0};
            const double mass = integrate_1d(bump_profile, -1.0, 1.0, cfg, zero).value;
            const double n = 1.0 / mass;
            const double energy =
                integrate_1d([n](double u) { return n * n * bump_profile(u) * bump_profile(u); },
                             -1.0, 1.0, cfg, zero)
                    .value;
            return BumpConstants{n, energy};
        }();
        return constants;
    }
};

} // namespace

std::string_view to_string(MollifierKind kind) {
    switch (kind) {
    case MollifierKind::gaussian:
        return "gaussian";
    case MollifierKind::bump:
        return "bump";
    }
    return "unknown";
}

MollifierKind parse_mollifier_kind(std::string_view name) {
    if (name == "gaussian") {
        return MollifierKind::gaussian;
    }
    if (name == "bump") {
        return MollifierKind::bump;
    }
    throw PreconditionError("unknown mollifier '" + std::string(name) + "'");
}

Mollifier::Mollifier(MollifierKind kind, double normalization, double value_at_zero,
                     double self_energy, std::optional<double> support_radius, double decay_radius)
    : kind_(kind), normalization_(normalization), value_at_zero_(value_at_zero),
      self_energy_(self_energy), support_radius_(support_radius), decay_radius_(decay_radius) {}

Mollifier Mollifier::gaussian() {
    const double n = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    return Mollifier(MollifierKind::gaussian, n, n, 0.5 / std::sqrt(std::numbers::pi),
                     std::nullopt, 12.0);
}

Mollifier Mollifier::bump() {
    const BumpConstants& c = BumpConstants::get();
    return Mollifier(MollifierKind::bump, c.normalization, c.normalization * std::exp(-1.0),
                     c.self_energy, 1.0, 1.0);
}

Mollifier Mollifier::of_kind(MollifierKind kind) {
    return kind == MollifierKind::bump ? bump() : gaussian();
}

double Mollifier::operator()(double u) const {
    switch (kind_) {
    case MollifierKind::gaussian:
        return normalization_ * std::exp(-0.5 * u * u);
    case MollifierKind::bump:
        return normalization_ * bump_profile(u);
    }
    return 0.0;
}

DecayHint Mollifier::decay(double center, double scale) const {
    if (support_radius_) {
        const double r = *support_radius_ * scale;
        return CompactDecay{center - r, center + r};
    }
    return GaussianDecay{center, scale};
}

DecayHint Mollifier::squared_decay(double center, double scale) const {
    const DecayHint d = decay(center, scale);
    return intersect(d, d);
}

double phi(const Mollifier& m, double u) { return m(u); }

double self_energy(const Mollifier& m) { return m.self_energy(); }

} // namespace mollify
