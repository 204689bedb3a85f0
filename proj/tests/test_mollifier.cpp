#include "oracles.hpp"

#include "mollify/mollifier.hpp"
#include "mollify/errors.hpp"
#include "mollify/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace mollify;

namespace {

QuadratureConfig tight() {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-13;
    return cfg;
}

double kernel_integral(const Mollifier& m, const std::function<double(double)>& f) {
    const double zero[] = {0.0};
    const double r = m.decay_radius();
    return integrate_1d(f, -r, r, tight(), zero).value;
}

} // namespace

TEST_CASE("phi point values") {
    const Mollifier g = Mollifier::gaussian();
    CHECK(phi(g, 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(phi(g, 1.0) == doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(phi(g, 1.0) == doctest::Approx(0.2419707).epsilon(1e-7));

    const Mollifier b = Mollifier::bump();
    CHECK(phi(b, 1.5) == 0.0);
    CHECK(phi(b, 1.0) == 0.0);
    CHECK(phi(b, -1.0) == 0.0);
    CHECK(b.value_at_zero() == doctest::Approx(oracle::kBumpValueAtZero).epsilon(1e-12));
    CHECK(b.support_radius().value() == 1.0);
    CHECK_FALSE(g.support_radius().has_value());
}

TEST_CASE("self energy against oracles") {
    CHECK(self_energy(Mollifier::gaussian()) == doctest::Approx(0.2820948).epsilon(1e-7));
    CHECK(std::abs(self_energy(Mollifier::gaussian()) - oracle::kGaussianSelfEnergy) < 1e-15);
    CHECK(std::abs(self_energy(Mollifier::bump()) - oracle::kBumpSelfEnergy) < 1e-12);
}

TEST_CASE("kernel invariants") {
    for (const Mollifier& m : {Mollifier::gaussian(), Mollifier::bump()}) {
        CAPTURE(to_string(m.kind()));
        const double mass = kernel_integral(m, [&](double u) { return m(u); });
        CHECK(std::abs(mass - 1.0) < 1e-10);

        const double energy = kernel_integral(m, [&](double u) { return m(u) * m(u); });
        CHECK(std::abs(energy - m.self_energy()) < 1e-10);
        CHECK(m.self_energy() > 0.0);

        // Flipping the kernel leaves the self energy unchanged.
        const double flipped = kernel_integral(m, [&](double u) { return m(-u) * m(-u); });
        CHECK(std::abs(flipped - energy) < 1e-12);

        for (double u = -3.0; u <= 3.0; u += 0.125) {
            CHECK(m(u) == m(-u));
            CHECK(m(u) >= 0.0);
        }
    }
}

TEST_CASE("bump normalization agrees with an independent Simpson rule") {
    const double mass = oracle::simpson(
        [](double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }, -1.0,
        1.0, 20000);
    CHECK(1.0 / mass == doctest::Approx(oracle::kBumpNormalization).epsilon(1e-10));
    const Mollifier b = Mollifier::bump();
    CHECK(b.value_at_zero() * std::exp(1.0) ==
          doctest::Approx(oracle::kBumpNormalization).epsilon(1e-12));
}

TEST_CASE("decay metadata") {
    const Mollifier g = Mollifier::gaussian();
    CHECK(g.decay_radius() == 12.0);
    CHECK(g(12.0) < 1e-30);
    CHECK(std::get<GaussianDecay>(g.decay(3.0, 0.1)) == GaussianDecay{3.0, 0.1});
    const auto sq = std::get<GaussianDecay>(g.squared_decay(3.0, 0.1));
    CHECK(sq.center == doctest::Approx(3.0));
    CHECK(sq.scale == doctest::Approx(0.1 / std::sqrt(2.0)));

    const Mollifier b = Mollifier::bump();
    CHECK(std::get<CompactDecay>(b.decay(1.0, 0.5)) == CompactDecay{0.5, 1.5});
}

TEST_CASE("kind parsing") {
    CHECK(parse_mollifier_kind("gaussian") == MollifierKind::gaussian);
    CHECK(parse_mollifier_kind("bump") == MollifierKind::bump);
    CHECK_THROWS_AS(parse_mollifier_kind("lorentzian"), PreconditionError);
    CHECK(Mollifier::of_kind(MollifierKind::bump).kind() == MollifierKind::bump);
}
