#include "cli.hpp"

#include "mollify/asymptotics.hpp"
#include "mollify/epr.hpp"
#include "mollify/errors.hpp"
#include "mollify/genfunc.hpp"
#include "mollify/mollifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#ifndef MOLLIFY_VERSION
#define MOLLIFY_VERSION "0.0.0"
#endif

namespace mollify::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string subcommand;
    std::string mollifier = "gaussian";
    std::string testfn = "gaussian";
    double eps_min = 1e-4;
    double eps_max = 1e-1;
    int points = 13;
    double x0 = 2.0;
    double sigma = 1.0;
    std::string interval = "-2,0";
    double L = 10.0;
    std::string L_sweep;
    bool box_denominator = false;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::string format = "json";
    std::string output;
    bool reproducible = false;
};

/// Everything a subcommand emits: a CSV table and a JSON summary.
struct Payload {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    ordered_json summary = ordered_json::object();
    int exit_code = ExitCode::ok;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw PreconditionError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    return values;
}

std::string format_double(double v) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(17) << v;
    return s.str();
}

ordered_json json_number(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return v;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json manifest(const Options& o) {
    ordered_json m;
    m["tool"] = "mollify";
    m["version"] = MOLLIFY_VERSION;
    m["subcommand"] = o.subcommand;
    m["format"] = o.format;
    ordered_json p;
    p["mollifier"] = o.mollifier;
    if (o.subcommand == "delta-squared") {
        p["testfn"] = o.testfn;
    }
    p["eps_max"] = o.eps_max;
    p["eps_min"] = o.eps_min;
    p["points"] = o.points;
    p["x0"] = o.x0;
    p["sigma"] = o.sigma;
    p["interval"] = o.interval;
    p["L"] = o.L;
    p["L_sweep"] = o.L_sweep;
    p["box_denominator"] = o.box_denominator;
    p["abs_tol"] = o.abs_tol;
    p["rel_tol"] = o.rel_tol;
    m["parameters"] = p;
    if (!o.reproducible) {
        m["timestamp"] = utc_timestamp();
    }
    return m;
}

epr::EprConfig scenario(const Options& o) {
    const std::vector<double> ab = parse_list(o.interval, "--interval");
    if (ab.size() != 2) {
        throw PreconditionError("--interval expects two comma-separated numbers a,b");
    }
    epr::EprConfig cfg;
    cfg.x0 = o.x0;
    cfg.sigma_x = o.sigma;
    cfg.a = ab[0];
    cfg.b = ab[1];
    cfg.L = o.L;
    cfg.mollifier = parse_mollifier_kind(o.mollifier);
    cfg.box_denominator = o.box_denominator;
    cfg.quadrature.abs_tol = o.abs_tol;
    cfg.quadrature.rel_tol = o.rel_tol;
    cfg.validate();
    return cfg;
}

epr::SweepGrid grid(const Options& o) { return {o.eps_max, o.eps_min, o.points}; }

std::vector<double> epsilons(const Options& o) {
    return geometric_grid(o.eps_max, o.eps_min, o.points);
}

ordered_json fit_json(const std::optional<PowerLawFit>& fit) {
    if (!fit) {
        return nullptr;
    }
    ordered_json j;
    j["order"] = json_number(fit->order);
    j["log_constant"] = json_number(fit->log_constant);
    j["constant"] = json_number(std::exp(fit->log_constant));
    j["r_squared"] = json_number(fit->r_squared);
    j["residual_max"] = json_number(fit->residual_max);
    return j;
}

std::optional<PowerLawFit> try_fit(const EpsilonSweep& s) {
    try {
        return fit_power_law(s);
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

ordered_json classification_json(const Classification& c) {
    ordered_json j;
    j["verdict"] = std::string(to_string(c.verdict));
    j["order"] = json_number(c.order);
    j["limit"] = json_number(c.limit);
    return j;
}

TestFunction parse_testfn(const std::string& name) {
    if (name == "gaussian") {
        return test_functions::gaussian();
    }
    if (name == "even-zero") {
        return test_functions::quadratic_gaussian();
    }
    if (name == "odd") {
        return test_functions::odd_gaussian();
    }
    if (name == "bump") {
        return test_functions::unit_bump();
    }
    throw PreconditionError("unknown test function '" + name + "'");
}

Payload delta_squared(const Options& o) {
    const epr::EprConfig cfg = scenario(o);
    const Mollifier m = cfg.kernel();
    const TestFunction psi = parse_testfn(o.testfn);
    const epr::AssociationReport assoc = epr::association_check(psi, m, grid(o), cfg.quadrature);

    Payload p;
    p.columns = {"epsilon", "value", "converged"};
    for (std::size_t i = 0; i < assoc.sweep.size(); ++i) {
        p.rows.push_back({assoc.sweep.epsilons[i], assoc.sweep.values[i],
                          assoc.sweep.converged[i] ? 1.0 : 0.0});
    }

    const EpsilonSweep box = sweep(
        [&](double eps) { return epr::delta_sq_box_integral(cfg, eps); }, o.eps_max, o.eps_min,
        o.points);

    auto& s = p.summary;
    s["mollifier"] = o.mollifier;
    s["testfn"] = o.testfn;
    s["self_energy"] = m.self_energy();
    s["value_at_zero"] = m.value_at_zero();
    s["expected_constant"] = json_number(m.self_energy() * psi(0.0));
    const Classification& c = assoc.classification;
    s["classification"] = classification_json(c);
    s["fit"] = fit_json(c.fit);
    s["order"] = json_number(c.fit ? c.fit->order : std::nan(""));
    s["constant"] = json_number(c.fit ? std::exp(c.fit->log_constant) : std::nan(""));
    s["eps_times_value_at_eps_min"] =
        json_number(assoc.sweep.epsilons.back() * assoc.sweep.values.back());
    s["failures"] = assoc.sweep.failures();
    ordered_json b;
    b["interval"] = {cfg.a, cfg.b};
    b["expected_constant"] = (cfg.b - cfg.a) * m.self_energy();
    b["fit"] = fit_json(try_fit(box));
    b["values"] = box.values;
    s["box_integral"] = b;

    if (c.verdict == Verdict::indeterminate) {
        p.exit_code = ExitCode::indeterminate;
    }
    return p;
}

Payload epr_ratio(const Options& o) {
    epr::EprConfig cfg = scenario(o);
    std::vector<double> Ls = o.L_sweep.empty() ? std::vector<double>{o.L}
                                               : parse_list(o.L_sweep, "--L-sweep");
    const std::vector<double> eps = epsilons(o);
    for (double L : Ls) {
        if (!(L > std::max(std::abs(cfg.a), std::abs(cfg.b)))) {
            throw PreconditionError("L must exceed max(|a|, |b|)");
        }
    }

    Payload p;
    p.columns = {"epsilon", "numerator", "denominator", "ratio", "L"};
    ordered_json per_L = ordered_json::array();
    for (double L : Ls) {
        cfg.L = L;
        EpsilonSweep numerators;
        EpsilonSweep denominators;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        const double expected = (cfg.b - cfg.a) / (2.0 * L);
        double worst_error = 0.0;
        for (double e : eps) {
            const epr::ProbabilityReport r = epr::relative_probability_unmodified(cfg, e);
            p.rows.push_back({e, r.numerator, r.denominator, r.ratio, L});
            for (EpsilonSweep* s : {&numerators, &denominators}) {
                s->epsilons.push_back(e);
                s->converged.push_back(true);
            }
            numerators.values.push_back(r.numerator);
            denominators.values.push_back(r.denominator);
            lo = std::min(lo, r.ratio);
            hi = std::max(hi, r.ratio);
            const double err = expected != 0.0 ? std::abs(r.ratio / expected - 1.0)
                                               : std::abs(r.ratio);
            worst_error = std::max(worst_error, err);
        }
        ordered_json j;
        j["L"] = L;
        j["expected_ratio"] = expected;
        j["ratio_min"] = lo;
        j["ratio_max"] = hi;
        j["max_ratio_spread"] = hi != 0.0 ? (hi - lo) / std::abs(hi) : hi - lo;
        j["max_relative_error"] = worst_error;
        j["numerator_fit"] = fit_json(try_fit(numerators));
        j["denominator_fit"] = fit_json(try_fit(denominators));
        j["numerator_classification"] = classification_json(classify(numerators));
        j["denominator_classification"] = classification_json(classify(denominators));
        per_L.push_back(j);
    }
    p.summary["box_denominator"] = cfg.box_denominator;
    p.summary["h"] = cfg.h;
    p.summary["results"] = per_L;
    return p;
}

Payload modified(const Options& o) {
    const epr::EprConfig cfg = scenario(o);
    if (o.eps_max > o.sigma / 10.0) {
        throw PreconditionError("--eps-max must not exceed sigma/10 for the modified wavefunction");
    }
    const Mollifier m = cfg.kernel();
    Payload p;
    p.columns = {"epsilon", "norm", "eps_times_norm", "ratio"};
    EpsilonSweep norms;
    double last_ratio = std::nan("");
    for (double e : epsilons(o)) {
        const epr::ProbabilityReport r = epr::modified_relative_probability(cfg, e);
        p.rows.push_back({e, r.denominator, e * r.denominator, r.ratio});
        norms.epsilons.push_back(e);
        norms.values.push_back(r.denominator);
        norms.converged.push_back(true);
        last_ratio = r.ratio;
    }
    const Classification c = classify(norms);
    const double target = epr::modified_ratio_limit(cfg);
    auto& s = p.summary;
    s["norm_fit"] = fit_json(c.fit);
    s["norm_order"] = json_number(c.fit ? c.fit->order : std::nan(""));
    s["norm_classification"] = classification_json(c);
    s["self_energy"] = m.self_energy();
    s["eps_times_norm_at_eps_min"] = norms.epsilons.back() * norms.values.back();
    s["limiting_ratio"] = json_number(last_ratio);
    s["closed_form_ratio"] = target;
    s["ratio_error"] = json_number(std::abs(last_ratio - target));
    return p;
}

Payload independence(const Options& o) {
    const epr::EprConfig cfg = scenario(o);
    const epr::IndependenceReport r = epr::psi_prime_independence(cfg);
    const double contrast_eps = std::min(1e-2, cfg.sigma_x / 10.0);
    const double contrast = epr::ridge_covariance(cfg, contrast_eps);
    Payload p;
    p.columns = {"covariance", "max_conditional_variation", "entangled_contrast_covariance"};
    p.rows.push_back({r.covariance, r.max_conditional_variation, contrast});
    p.summary["covariance"] = r.covariance;
    p.summary["max_conditional_variation"] = r.max_conditional_variation;
    p.summary["entangled_contrast_covariance"] = contrast;
    p.summary["contrast_epsilon"] = contrast_eps;
    return p;
}

Payload normalize(const Options& o) {
    const epr::EprConfig cfg = scenario(o);
    const std::vector<double> eps = epsilons(o);
    Payload p;
    p.columns = {"epsilon", "gaussian", "bump"};
    std::vector<std::vector<double>> values(2);
    const Mollifier kernels[] = {Mollifier::gaussian(), Mollifier::bump()};
    for (double e : eps) {
        std::vector<double> row{e};
        for (std::size_t k = 0; k < 2; ++k) {
            const double v = epr::normalized_delta_norm(kernels[k], e, cfg.quadrature);
            values[k].push_back(v);
            row.push_back(v);
        }
        p.rows.push_back(row);
    }
    ordered_json per = ordered_json::object();
    for (std::size_t k = 0; k < 2; ++k) {
        const auto [lo, hi] = std::minmax_element(values[k].begin(), values[k].end());
        ordered_json j;
        j["norm_value"] = values[k].front();
        j["closed_form"] = kernels[k].self_energy() / kernels[k].value_at_zero();
        j["eps_independence_spread"] = *hi - *lo;
        per[std::string(to_string(kernels[k].kind()))] = j;
    }
    p.summary["mollifiers"] = per;
    p.summary["cross_mollifier_relative_difference"] =
        std::abs(values[0].front() - values[1].front()) / values[0].front();
    return p;
}

std::string render_csv(const Payload& p, const ordered_json& m) {
    std::ostringstream s;
    s << "# " << m.dump() << '\n';
    for (std::size_t i = 0; i < p.columns.size(); ++i) {
        s << (i ? "," : "") << p.columns[i];
    }
    s << '\n';
    for (const auto& row : p.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            s << (i ? "," : "") << format_double(row[i]);
        }
        s << '\n';
    }
    return s.str();
}

std::string render_json(const Payload& p, const ordered_json& m) {
    ordered_json doc;
    doc["manifest"] = m;
    doc["summary"] = p.summary;
    return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw PreconditionError("cannot open output file '" + path + "'");
    }
    f << text;
}

void emit(const Options& o, const Payload& p, std::ostream& out) {
    const ordered_json m = manifest(o);
    const bool csv = o.format == "csv" || o.format == "both";
    const bool json = o.format == "json" || o.format == "both";
    if (o.output.empty()) {
        if (csv) {
            out << render_csv(p, m);
        }
        if (json) {
            out << render_json(p, m);
        }
        return;
    }
    if (o.format == "both") {
        write_file(o.output + ".csv", render_csv(p, m));
        write_file(o.output + ".json", render_json(p, m));
    } else {
        write_file(o.output, csv ? render_csv(p, m) : render_json(p, m));
    }
}

void add_shared_flags(CLI::App* sub, Options& o) {
    sub->add_option("--mollifier", o.mollifier, "Regularizing kernel")
        ->check(CLI::IsMember({"gaussian", "bump"}))
        ->capture_default_str();
    sub->add_option("--eps-min", o.eps_min, "Smallest eps of the sweep")->capture_default_str();
    sub->add_option("--eps-max", o.eps_max, "Largest eps of the sweep")->capture_default_str();
    sub->add_option("--points", o.points, "Number of geometric grid points")->capture_default_str();
    sub->add_option("--x0", o.x0, "Pair offset: ridge x2 = x1 + x0")->capture_default_str();
    sub->add_option("--sigma", o.sigma, "Envelope width sigma_x")->capture_default_str();
    sub->add_option("--interval", o.interval, "Measurement interval a,b for particle 1")
        ->capture_default_str();
    sub->add_option("--L", o.L, "Half-width of the normalization window")->capture_default_str();
    sub->add_option("--L-sweep", o.L_sweep, "Comma-separated list of L values");
    sub->add_flag("--box-denominator", o.box_denominator,
                  "Truncate x2 to [-L, L] in the normalization as well");
    sub->add_option("--abs-tol", o.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
    sub->add_option("--rel-tol", o.rel_tol, "Relative quadrature tolerance")->capture_default_str();
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    sub->add_option("--output", o.output, "Output path (stdout when omitted)");
    sub->add_flag("--reproducible", o.reproducible, "Omit the timestamp from the manifest");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical calculus of mollifier-regularized distributions and EPR delta states"};
    app.require_subcommand(1);
    Options o;

    struct Entry {
        const char* name;
        const char* help;
        Payload (*handler)(const Options&);
    };
    const Entry entries[] = {
        {"delta-squared", "Divergence order of <delta_eps^2, psi> and of the delta-squared box integral",
         delta_squared},
        {"epr-ratio", "Relative probability of the bare delta state", epr_ratio},
        {"modified", "Norm and relative probability of the enveloped delta state", modified},
        {"independence", "Covariance and conditional densities of the delta-free state",
         independence},
        {"normalize", "Norm of delta_eps / sqrt(delta_eps(0)) for each mollifier", normalize},
    };
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_shared_flags(sub, o);
        if (std::string(e.name) == "delta-squared") {
            sub->add_option("--testfn", o.testfn, "Test function paired with delta_eps^2")
                ->check(CLI::IsMember({"gaussian", "even-zero", "odd", "bump"}))
                ->capture_default_str();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    for (const Entry& e : entries) {
        if (!app.got_subcommand(e.name)) {
            continue;
        }
        o.subcommand = e.name;
        try {
            const Payload p = e.handler(o);
            emit(o, p, out);
            return p.exit_code;
        } catch (const PreconditionError& ex) {
            err << "error: " << ex.what() << '\n';
            return ExitCode::usage;
        } catch (const ConvergenceError& ex) {
            err << "numerical failure: " << ex.what() << '\n';
            return ExitCode::numerical;
        }
    }
    return ExitCode::usage;
}

} // namespace mollify::cli
