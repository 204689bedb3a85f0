#include "mollify/asymptotics.hpp"
#include "mollify/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace mollify;

namespace {

EpsilonSweep exact(std::function<double(double)> f, int n = 13) {
    return sweep(f, 1e-1, 1e-4, n);
}

} // namespace

TEST_CASE("geometric grid") {
    const std::vector<double> g = geometric_grid(1e-1, 1e-4, 7);
    REQUIRE(g.size() == 7);
    CHECK(g.front() == 1e-1);
    CHECK(g.back() == 1e-4);
    const double ratio = g[1] / g[0];
    for (std::size_t i = 1; i < g.size(); ++i) {
        CHECK(g[i] < g[i - 1]);
        CHECK(std::abs(g[i] / g[i - 1] - ratio) < 1e-12);
    }
    CHECK(geometric_grid(1e-2, 1e-2, 1) == std::vector<double>{1e-2});
    CHECK_THROWS_AS(geometric_grid(1e-2, 1e-3, 1), PreconditionError);
    CHECK_THROWS_AS(geometric_grid(1e-4, 1e-2, 5), PreconditionError);
    CHECK_THROWS_AS(geometric_grid(1e-1, 0.0, 5), PreconditionError);
}

TEST_CASE("sweep evaluates and records failures") {
    const EpsilonSweep s = sweep([](double e) { return 1.0 / e; }, 1e-1, 1e-4, 7);
    CHECK(s.values.front() == doctest::Approx(10.0));
    CHECK(s.values.back() == doctest::Approx(10000.0));
    CHECK(s.failures().empty());

    const EpsilonSweep c = sweep([](double) { return 3.0; }, 1e-1, 1e-4, 5);
    for (double v : c.values) {
        CHECK(v == 3.0);
    }

    const EpsilonSweep partial = sweep(
        [](double e) -> double {
            if (e < 1e-3) {
                throw ConvergenceError("no", 0.0, 1.0);
            }
            return e;
        },
        1e-1, 1e-4, 7);
    CHECK(partial.failures().size() == 2);
    CHECK(partial.valid_count() == 5);
    CHECK(fit_power_law(partial).order == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(
        sweep([](double) -> double { throw ConvergenceError("no", 0.0, 1.0); }, 1e-1, 1e-4, 5),
        ConvergenceError);
    CHECK_THROWS_AS(sweep([](double) { return std::nan(""); }, 1e-1, 1e-2, 4), ConvergenceError);
}

TEST_CASE("exact power laws") {
    const PowerLawFit inv = fit_power_law(exact([](double e) { return 1.0 / e; }));
    CHECK(std::abs(inv.order + 1.0) < 1e-10);
    CHECK(std::abs(std::exp(inv.log_constant) - 1.0) < 1e-10);
    CHECK(inv.r_squared == doctest::Approx(1.0));

    const PowerLawFit quad = fit_power_law(exact([](double e) { return 5.0 * e * e; }));
    CHECK(std::abs(quad.order - 2.0) < 1e-10);
    CHECK(std::abs(quad.log_constant - std::log(5.0)) < 1e-10);

    for (int p = -2; p <= 2; ++p) {
        const PowerLawFit f = fit_power_law(exact([p](double e) { return 0.7 * std::pow(e, p); }));
        CHECK(std::abs(f.order - p) < 1e-10);
        CHECK(f.residual_max < 1e-10);
    }
}

TEST_CASE("fit preconditions") {
    CHECK_THROWS_AS(fit_power_law(exact([](double e) { return std::sin(1.0 / e); })),
                    PreconditionError);
    CHECK_THROWS_AS(fit_power_law(exact([](double e) { return e > 1e-2 ? e : 0.0; })),
                    PreconditionError);
    CHECK_THROWS_AS(fit_power_law(exact([](double e) { return e; }, 3)), PreconditionError);
    // Negative sequences of one sign are fine.
    CHECK(fit_power_law(exact([](double e) { return -2.0 / e; })).order ==
          doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("property: fit invariants") {
    const EpsilonSweep base = exact([](double e) { return 0.3 / e * (1.0 + 0.1 * e); });
    const PowerLawFit f = fit_power_law(base);
    CHECK(f.r_squared >= 0.0);
    CHECK(f.r_squared <= 1.0);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double r =
            std::log(std::abs(base.values[i])) - (f.log_constant + f.order * std::log(base.epsilons[i]));
        CHECK(std::abs(r) <= f.residual_max + 1e-15);
    }

    // Scale equivariance.
    for (double alpha : {1e-3, 2.0, 1e5}) {
        EpsilonSweep scaled = base;
        for (double& v : scaled.values) {
            v *= alpha;
        }
        const PowerLawFit g = fit_power_law(scaled);
        CHECK(std::abs(g.order - f.order) < 1e-12);
        CHECK(std::abs(g.log_constant - (f.log_constant + std::log(alpha))) < 1e-12);
    }

    // Grid refinement.
    const PowerLawFit coarse = fit_power_law(exact([](double e) { return 4.0 * e * e * e; }, 7));
    const PowerLawFit fine = fit_power_law(exact([](double e) { return 4.0 * e * e * e; }, 14));
    CHECK(std::abs(coarse.order - fine.order) < 1e-10);
}

TEST_CASE("classification") {
    const Classification div = classify(exact([](double e) { return 1.0 / e; }));
    CHECK(div.verdict == Verdict::divergent);
    CHECK(div.order == doctest::Approx(-1.0));

    const Classification conv = classify(exact([](double e) { return 3.0 + e * e; }));
    CHECK(conv.verdict == Verdict::convergent);
    CHECK(std::abs(conv.limit - 3.0) < 1e-4 * 3.0);

    CHECK(classify(exact([](double e) { return std::sin(1.0 / e); })).verdict ==
          Verdict::indeterminate);

    const Classification to_zero = classify(exact([](double e) { return 0.14 * e; }));
    CHECK(to_zero.verdict == Verdict::convergent);
    CHECK(to_zero.limit == 0.0);
    CHECK(to_zero.order == doctest::Approx(1.0));

    const Classification noise = classify(exact([](double e) { return 1e-18 * std::sin(1.0 / e); }));
    CHECK(noise.verdict == Verdict::convergent);
    CHECK(std::abs(noise.limit) < 1e-17);

    CHECK(classify(exact([](double e) { return e; }, 3)).verdict == Verdict::indeterminate);
    CHECK(classify(sweep([](double) { return 1.0; }, 1e-2, 1e-2, 1)).verdict ==
          Verdict::indeterminate);

    // Logarithmic growth is neither a power law nor Cauchy.
    CHECK(classify(exact([](double e) { return std::log(1.0 / e); })).verdict !=
          Verdict::convergent);
}

TEST_CASE("property: convergent limits shift with the sequence") {
    auto f = [](double e) { return 0.25 + 2.0 * e * e; };
    const Classification c = classify(exact(f));
    REQUIRE(c.verdict == Verdict::convergent);
    const double v = c.limit;
    const Classification shifted = classify(exact([&](double e) { return 1.0 + f(e) - v; }));
    REQUIRE(shifted.verdict == Verdict::convergent);
    CHECK(std::abs(shifted.limit - 1.0) < 1e-12);
}
