#include "tangentcat/errors.hpp"
#include "tangentcat/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace tangentcat;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_input = 2;

struct Options {
    std::string builtin;
    std::string manifest;
    std::string json_path;
    std::size_t max_rank = 3;
    std::size_t samples = 50;
    std::size_t bound = 4;
    std::size_t depth = 2;
    std::uint64_t seed = 0;
    unsigned long p = 5;
};

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

// Flags given on the command line win over the manifest [config] table;
// TANGENTCAT_SEED wins over both.
SuiteConfig effective_config(const Options& o, const CLI::App& sub, const Manifest* m) {
    SuiteConfig c = m ? m->config : SuiteConfig{};
    auto given = [&](const char* flag) { return sub.count(flag) > 0; };
    if (!m || given("--max-rank")) c.max_rank = o.max_rank;
    if (!m || given("--sample")) c.samples = o.samples;
    if (!m || given("--bound")) c.bound = o.bound;
    if (!m || given("--depth")) c.depth = o.depth;
    if (!m || given("--seed")) c.seed = o.seed;
    if (!m || given("--p")) c.p = o.p;
    if (const char* env = std::getenv("TANGENTCAT_SEED")) {
        try {
            std::size_t used = 0;
            c.seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw ManifestParse(std::string("TANGENTCAT_SEED='") + env + "' is not a nonnegative integer");
        }
    }
    return c;
}

int run_command(const std::string& command, const Options& o, const CLI::App& sub) {
    RunSpec spec;
    spec.command = command;
    if (o.builtin.empty() == o.manifest.empty()) {
        std::cerr << "error: give exactly one of --builtin and --manifest\n";
        return exit_input;
    }
    if (!o.manifest.empty()) {
        Manifest m = load_manifest(o.manifest);
        spec.manifest = o.manifest;
        spec.config = effective_config(o, sub, &m);
    } else {
        spec.builtin = o.builtin;
        spec.config = effective_config(o, sub, nullptr);
    }
    RunResult r = run(spec);
    for (const auto& line : r.notes) std::cout << line << "\n";
    std::cout << r.report.table();
    if (!o.json_path.empty()) write_json(o.json_path, r.report.to_json(spec.config.seed));
    return r.report.ok() ? exit_pass : exit_fail;
}

int run_replay(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ManifestParse(path + ": cannot open report");
    nlohmann::json report;
    try {
        report = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ManifestParse(path + ": " + e.what());
    }
    auto outcomes = replay(report);
    std::size_t reproduced = 0;
    for (const auto& o : outcomes) {
        std::cout << (o.reproduced ? "REPRODUCED  " : "DIFFERENT   ") << o.name << "  " << o.detail << "\n";
        reproduced += o.reproduced;
    }
    std::cout << reproduced << " of " << outcomes.size() << " failures reproduced\n";
    return reproduced == outcomes.size() ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Check tangent-category axioms, differential bundles and the Eval/Ind correspondence."};
    app.require_subcommand(1);
    Options o;
    std::string report_path;

    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"verify-category", "tangent-category axioms on a built-in or manifest category"},
        {"verify-bundle", "differential-bundle axioms"},
        {"classify", "classify bundle morphisms as bundle, additive or linear"},
        {"roundtrip", "Eval o Ind on each bundle"},
        {"appendix", "naturality squares of the lineator of Ind"},
        {"suite", "a named suite (core, mutations, mutation-N) or every suite of a manifest"},
    };
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--builtin", o.builtin, "built-in selector");
        sub->add_option("--manifest", o.manifest, "TOML manifest");
        sub->add_option("--max-rank", o.max_rank, "largest object rank (default 3)");
        sub->add_option("--sample", o.samples, "random morphisms per check (default 50)");
        sub->add_option("--bound", o.bound, "pullback powers E_n provided up to n (default 4)");
        sub->add_option("--depth", o.depth, "tangent powers T^j checked up to j (default 2)");
        sub->add_option("--seed", o.seed, "random seed; TANGENTCAT_SEED overrides");
        sub->add_option("--p", o.p, "prime for the Z/p built-ins (default 5)");
        sub->add_option("--json", o.json_path, "write the JSON report here");
        subs.emplace_back(c.name, sub);
    }
    CLI::App* rep = app.add_subcommand("replay", "rerun the failures stored in a JSON report");
    rep->add_option("report", report_path, "JSON report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_input;
    }

    try {
        if (rep->parsed()) return run_replay(report_path);
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) return run_command(name, o, *sub);
    } catch (const std::exception& e) {
        // ManifestParse, UnknownBuiltin and other input errors.
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
