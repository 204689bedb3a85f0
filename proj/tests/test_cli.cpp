#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "mollify");
    std::vector<const char*> argv;
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = mollify::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json summary_of(const Outcome& o) { return nlohmann::json::parse(o.out).at("summary"); }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        result.push_back(line);
    }
    return result;
}

} // namespace

TEST_CASE("cli: delta-squared json") {
    const Outcome o = invoke({"delta-squared", "--points", "7", "--reproducible"});
    REQUIRE(o.code == 0);
    const nlohmann::json doc = nlohmann::json::parse(o.out);
    CHECK(doc.at("manifest").at("subcommand") == "delta-squared");
    CHECK(doc.at("manifest").at("parameters").at("points") == 7);
    CHECK_FALSE(doc.at("manifest").contains("timestamp"));
    const nlohmann::json& s = doc.at("summary");
    CHECK(s.at("classification").at("verdict") == "divergent");
    CHECK(s.at("order").get<double>() == doctest::Approx(-1.0).epsilon(0.02));
}

TEST_CASE("cli: timestamp present unless reproducible") {
    const Outcome o = invoke({"normalize"});
    REQUIRE(o.code == 0);
    CHECK(nlohmann::json::parse(o.out).at("manifest").contains("timestamp"));
}

TEST_CASE("cli: test function choices") {
    const Outcome zero = invoke({"delta-squared", "--testfn", "even-zero", "--reproducible"});
    REQUIRE(zero.code == 0);
    CHECK(summary_of(zero).at("classification").at("verdict") == "convergent");
    CHECK(summary_of(zero).at("classification").at("limit") == 0.0);

    const Outcome bump = invoke({"delta-squared", "--mollifier", "bump", "--reproducible"});
    REQUIRE(bump.code == 0);
    CHECK(summary_of(bump).at("eps_times_value_at_eps_min").get<double>() ==
          doctest::Approx(0.67511681).epsilon(1e-6));
}

TEST_CASE("cli: epr-ratio csv") {
    const Outcome o = invoke({"epr-ratio", "--points", "3", "--format", "csv", "--reproducible"});
    REQUIRE(o.code == 0);
    const std::vector<std::string> rows = lines(o.out);
    REQUIRE(rows.size() == 5);
    REQUIRE(rows[0].rfind("# ", 0) == 0);
    CHECK(nlohmann::json::parse(rows[0].substr(2)).at("format") == "csv");
    CHECK(rows[1] == "epsilon,numerator,denominator,ratio,L");
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const std::string ratio = rows[i].substr(0, rows[i].rfind(','));
        CHECK(std::stod(ratio.substr(ratio.rfind(',') + 1)) == doctest::Approx(0.1).epsilon(1e-9));
    }
}

TEST_CASE("cli: L sweep") {
    const Outcome o = invoke({"epr-ratio", "--points", "3", "--L-sweep", "10,100,1000", "--reproducible"});
    REQUIRE(o.code == 0);
    const nlohmann::json results = summary_of(o).at("results");
    REQUIRE(results.size() == 3);
    for (const nlohmann::json& r : results) {
        const double L = r.at("L").get<double>();
        CHECK(r.at("max_relative_error").get<double>() < 1e-6);
        CHECK(r.at("expected_ratio").get<double>() == doctest::Approx(1.0 / L));
    }
}

TEST_CASE("cli: modified, independence and normalize summaries") {
    const Outcome m = invoke({"modified", "--reproducible"});
    REQUIRE(m.code == 0);
    CHECK(std::abs(summary_of(m).at("limiting_ratio").get<double>() - 0.682689492) < 2e-3);

    const Outcome i = invoke({"independence", "--reproducible"});
    REQUIRE(i.code == 0);
    CHECK(std::abs(summary_of(i).at("covariance").get<double>()) <= 1e-8);
    CHECK(summary_of(i).at("entangled_contrast_covariance").get<double>() >= 0.9);

    const Outcome n = invoke({"normalize", "--reproducible"});
    REQUIRE(n.code == 0);
    CHECK(summary_of(n).at("cross_mollifier_relative_difference").get<double>() > 0.05);
}

TEST_CASE("cli: exit codes") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"no-such-command"}).code == 1);
    CHECK(invoke({"delta-squared", "--mollifier", "lorentzian"}).code == 1);
    CHECK(invoke({"delta-squared", "--eps-min", "1", "--eps-max", "0.1"}).code == 1);
    CHECK(invoke({"modified", "--sigma", "0.5", "--eps-max", "0.2"}).code == 1);
    CHECK(invoke({"epr-ratio", "--L", "1"}).code == 1);
    CHECK(invoke({"delta-squared", "--points", "1", "--eps-min", "0.01", "--eps-max", "0.01"}).code == 2);

    const Outcome bad = invoke({"epr-ratio", "--interval", "3"});
    CHECK(bad.code == 1);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("cli: reproducible output is byte identical") {
    for (const char* sub : {"delta-squared", "epr-ratio", "modified", "independence", "normalize"}) {
        CAPTURE(sub);
        const Outcome first = invoke({sub, "--points", "4", "--format", "both", "--reproducible"});
        const Outcome second = invoke({sub, "--points", "4", "--format", "both", "--reproducible"});
        REQUIRE(first.code == 0);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("cli: --output with both formats writes two files") {
    const std::filesystem::path base =
        std::filesystem::temp_directory_path() / "mollify_cli_test_output";
    const Outcome o = invoke({"normalize", "--format", "both", "--output", base.string(), "--reproducible"});
    REQUIRE(o.code == 0);
    const std::filesystem::path csv = base.string() + ".csv";
    const std::filesystem::path json = base.string() + ".json";
    CHECK(std::filesystem::exists(csv));
    REQUIRE(std::filesystem::exists(json));
    std::ifstream in(json);
    CHECK(nlohmann::json::parse(in).at("manifest").at("format") == "both");
    std::filesystem::remove(csv);
    std::filesystem::remove(json);
}
