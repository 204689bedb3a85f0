#include "mollify/quadrature.hpp"

#include "mollify/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace mollify {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    int depth;
    double side;
};

// `side`, when set, is read after every evaluation of f and integrated with the
// Kronrod weights alongside it (used to carry inner error estimates in 2D).
Segment kronrod15(const Integrand1D& f, double lo, double hi, int depth, long& evaluations,
                  const double* side) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto side_value = [side] { return side ? *side : 0.0; };
    const double fc = f(center);
    double side_k = side_value() * kWgk[7];
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double s1 = side_value();
        const double f2 = f(center + dx);
        const double s2 = side_value();
        side_k += kWgk[j] * (s1 + s2);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) {
            resg += kWg[j / 2] * (f1 + f2);
        }
    }
    evaluations += 15;

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    const double scale = std::abs(half);
    double err = std::abs((resk - resg) * half);
    resasc *= scale;
    resabs *= scale;
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * resabs, err);
    }
    double value = resk * half;
    if (!std::isfinite(value) || !std::isfinite(err)) {
        err = std::numeric_limits<double>::infinity();
    }
    return {lo, hi, value, err, depth, side_k * scale};
}

struct ByError {
    bool operator()(const Segment& a, const Segment& b) const {
        if (a.error != b.error) {
            return a.error < b.error;
        }
        return a.lo > b.lo;
    }
};

double tolerance(const QuadratureConfig& cfg, double value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

QuadratureResult adaptive(const Integrand1D& f, double a, double b, const QuadratureConfig& cfg,
                          std::span<const double> breakpoints, const double* side,
                          double* side_total) {
    cfg.validate();
    if (!(a <= b)) {
        throw PreconditionError("integrate_1d requires a <= b");
    }
    QuadratureResult result;
    if (a == b) {
        return result;
    }

    std::vector<double> points{a};
    for (double p : breakpoints) {
        if (p > a && p < b) {
            points.push_back(p);
        }
    }
    points.push_back(b);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::priority_queue<Segment, std::vector<Segment>, ByError> active;
    std::vector<Segment> finished;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        Segment s = kronrod15(f, points[i], points[i + 1], 0, result.evaluations, side);
        total += s.value;
        total_err += s.error;
        active.push(s);
    }

    bool converged = false;
    while (true) {
        if (total_err <= tolerance(cfg, total)) {
            converged = true;
            break;
        }
        if (active.empty() || !std::isfinite(total_err)) {
            break;
        }
        if (static_cast<int>(active.size() + finished.size()) >= cfg.max_subintervals) {
            break;
        }
        Segment worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (worst.depth >= cfg.max_depth || mid <= worst.lo || mid >= worst.hi) {
            finished.push_back(worst);
            continue;
        }
        Segment left = kronrod15(f, worst.lo, mid, worst.depth + 1, result.evaluations, side);
        Segment right = kronrod15(f, mid, worst.hi, worst.depth + 1, result.evaluations, side);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
    }

    // Re-sum in position order so the reported value does not carry the drift of
    // the incremental updates.
    while (!active.empty()) {
        finished.push_back(active.top());
        active.pop();
    }
    std::sort(finished.begin(), finished.end(),
              [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
    double value = 0.0;
    double err = 0.0;
    double side_sum = 0.0;
    for (const Segment& s : finished) {
        value += s.value;
        err += s.error;
        side_sum += s.side;
    }
    if (side_total) {
        *side_total = side_sum;
    }
    result.value = value;
    result.error_estimate = err;
    result.converged = converged && err <= tolerance(cfg, value);
    return result;
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1 || !(truncation_tail_tol > 0.0) ||
        max_subintervals < 1) {
        throw PreconditionError("quadrature config requires abs_tol > 0, rel_tol > 0, max_depth >= 1");
    }
}

DecayHint intersect(const DecayHint& a, const DecayHint& b) {
    if (std::holds_alternative<BoundedDecay>(a)) {
        return b;
    }
    if (std::holds_alternative<BoundedDecay>(b)) {
        return a;
    }
    const auto* ca = std::get_if<CompactDecay>(&a);
    const auto* cb = std::get_if<CompactDecay>(&b);
    if (ca && cb) {
        const double lo = std::max(ca->lo, cb->lo);
        const double hi = std::min(ca->hi, cb->hi);
        if (lo >= hi) {
            return CompactDecay{lo, lo};
        }
        return CompactDecay{lo, hi};
    }
    if (ca) {
        return *ca;
    }
    if (cb) {
        return *cb;
    }
    const auto& ga = std::get<GaussianDecay>(a);
    const auto& gb = std::get<GaussianDecay>(b);
    const double wa = 1.0 / (ga.scale * ga.scale);
    const double wb = 1.0 / (gb.scale * gb.scale);
    const double w = wa + wb;
    return GaussianDecay{(ga.center * wa + gb.center * wb) / w, 1.0 / std::sqrt(w)};
}

DecayHint hull(const DecayHint& a, const DecayHint& b) {
    if (std::holds_alternative<BoundedDecay>(a) || std::holds_alternative<BoundedDecay>(b)) {
        return BoundedDecay{};
    }
    const auto* ca = std::get_if<CompactDecay>(&a);
    const auto* cb = std::get_if<CompactDecay>(&b);
    if (ca && cb) {
        return CompactDecay{std::min(ca->lo, cb->lo), std::max(ca->hi, cb->hi)};
    }
    // A compact support [lo, hi] is dominated by a Gaussian bound centered at its
    // midpoint with scale equal to its half-width.
    auto as_gaussian = [](const DecayHint& d) {
        if (const auto* c = std::get_if<CompactDecay>(&d)) {
            return GaussianDecay{0.5 * (c->lo + c->hi), std::max(0.5 * (c->hi - c->lo), 1e-300)};
        }
        return std::get<GaussianDecay>(d);
    };
    const GaussianDecay ga = as_gaussian(a);
    const GaussianDecay gb = as_gaussian(b);
    const double center = 0.5 * (ga.center + gb.center);
    const double scale = std::max(ga.scale, gb.scale) + 0.5 * std::abs(ga.center - gb.center);
    return GaussianDecay{center, scale};
}

DecayHint shifted(const DecayHint& d, double offset) {
    if (const auto* g = std::get_if<GaussianDecay>(&d)) {
        return GaussianDecay{g->center + offset, g->scale};
    }
    if (const auto* c = std::get_if<CompactDecay>(&d)) {
        return CompactDecay{c->lo + offset, c->hi + offset};
    }
    return d;
}

double gaussian_window_multiplier(double tail_tol) {
    // 12 standard deviations leave a tail below 1e-30; smaller tolerances widen it.
    const double needed = std::sqrt(2.0 * std::log(1.0 / std::min(tail_tol, 0.5))) + 2.0;
    return std::max(12.0, needed);
}

std::optional<Interval> truncation_window(const DecayHint& d, double tail_tol) {
    if (const auto* g = std::get_if<GaussianDecay>(&d)) {
        const double half = gaussian_window_multiplier(tail_tol) * g->scale;
        return Interval{g->center - half, g->center + half};
    }
    if (const auto* c = std::get_if<CompactDecay>(&d)) {
        return Interval{c->lo, c->hi};
    }
    return std::nullopt;
}

void append_ridge_breakpoints(std::vector<double>& out, double center, double width,
                              Interval range) {
    if (!(width > 0.0) || !std::isfinite(center)) {
        return;
    }
    auto push = [&](double x) {
        if (x > range.lo && x < range.hi) {
            out.push_back(x);
        }
    };
    push(center);
    const double reach = std::max(std::abs(center - range.lo), std::abs(range.hi - center));
    for (double step = width; step < reach; step *= 2.0) {
        push(center - step);
        push(center + step);
    }
}

QuadratureResult integrate_1d(const Integrand1D& f, double a, double b, const QuadratureConfig& cfg,
                              std::span<const double> breakpoints) {
    return adaptive(f, a, b, cfg, breakpoints, nullptr, nullptr);
}

QuadratureResult integrate_improper(const Integrand1D& f, const QuadratureConfig& cfg,
                                    const DecayHint& decay_hint,
                                    std::span<const double> breakpoints) {
    const auto window = truncation_window(decay_hint, cfg.truncation_tail_tol);
    if (!window) {
        throw PreconditionError("improper integral needs a decaying integrand; got a bounded hint");
    }
    return integrate_1d(f, window->lo, window->hi, cfg, breakpoints);
}

QuadratureResult integrate_2d(const Integrand2D& f, Interval x1_range, const InnerDomain& x2_range,
                              const QuadratureConfig& cfg, std::span<const RidgeLine> ridges) {
    cfg.validate();
    if (!(x1_range.lo <= x1_range.hi)) {
        throw PreconditionError("integrate_2d requires x1_range.lo <= x1_range.hi");
    }

    // Split the tolerance budget so inner and outer errors add up to the target.
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.rel_tol = cfg.rel_tol / 4.0;
    inner_cfg.abs_tol = cfg.abs_tol / (4.0 * std::max(1.0, x1_range.width()));
    QuadratureConfig outer_cfg = cfg;
    outer_cfg.rel_tol = cfg.rel_tol / 2.0;
    outer_cfg.abs_tol = cfg.abs_tol / 2.0;

    long inner_evaluations = 0;
    double inner_error = 0.0;
    bool inner_ok = true;

    auto inner = [&](double x1) {
        auto slice = [&](double x2) { return f(x1, x2); };
        std::vector<double> seeds;
        QuadratureResult r;
        if (const auto* box = std::get_if<Interval>(&x2_range)) {
            for (const RidgeLine& ridge : ridges) {
                append_ridge_breakpoints(seeds, x1 + ridge.offset, ridge.width, *box);
            }
            r = integrate_1d(slice, box->lo, box->hi, inner_cfg, seeds);
        } else {
            const DecayHint hint = std::get<InnerDecay>(x2_range)(x1);
            const auto window = truncation_window(hint, inner_cfg.truncation_tail_tol);
            if (!window) {
                throw PreconditionError("whole-line inner integral needs a decaying hint");
            }
            for (const RidgeLine& ridge : ridges) {
                append_ridge_breakpoints(seeds, x1 + ridge.offset, ridge.width, *window);
            }
            r = integrate_1d(slice, window->lo, window->hi, inner_cfg, seeds);
        }
        inner_evaluations += r.evaluations;
        inner_error = r.error_estimate;
        inner_ok = inner_ok && r.converged;
        return r.value;
    };

    // A ridge leaving a finite inner box makes the inner integral drop over a width
    // comparable to the ridge width; seed the outer partition there.
    std::vector<double> outer_seeds;
    if (const auto* box = std::get_if<Interval>(&x2_range)) {
        for (const RidgeLine& ridge : ridges) {
            append_ridge_breakpoints(outer_seeds, box->lo - ridge.offset, ridge.width, x1_range);
            append_ridge_breakpoints(outer_seeds, box->hi - ridge.offset, ridge.width, x1_range);
        }
    }

    double integrated_inner_error = 0.0;
    QuadratureResult outer = adaptive(inner, x1_range.lo, x1_range.hi, outer_cfg, outer_seeds,
                                      &inner_error, &integrated_inner_error);
    QuadratureResult result;
    result.value = outer.value;
    result.error_estimate = outer.error_estimate + std::abs(integrated_inner_error);
    result.evaluations = inner_evaluations;
    result.converged = outer.converged && inner_ok &&
                       result.error_estimate <= tolerance(cfg, result.value);
    return result;
}

} // namespace mollify
