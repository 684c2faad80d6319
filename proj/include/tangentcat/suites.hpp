#ifndef TANGENTCAT_SUITES_HPP
#define TANGENTCAT_SUITES_HPP

#include "tangentcat/manifest.hpp"
#include "tangentcat/report.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tangentcat {

// Everything needed to rerun a command: stored with each failure as "replay".
struct RunSpec {
    // verify-category | verify-bundle | classify | roundtrip | appendix | suite
    std::string command;
    std::string builtin;
    std::string manifest;
    SuiteConfig config;

    nlohmann::json to_json() const;
    static RunSpec from_json(const nlohmann::json& j);
};

struct RunResult {
    CheckReport report;
    // Lines printed before the table (classifications).
    std::vector<std::string> notes;
};

// Throws UnknownBuiltin, ManifestParse and the errors of the checks' setup.
RunResult run(const RunSpec& spec);

std::vector<std::string> builtin_names(const std::string& command);

// The ten structural mutations, numbered 1..10.
constexpr int mutation_count = 10;
std::string mutation_description(int n);

struct ReplayOutcome {
    std::string name;
    bool reproduced = false;
    std::string detail;
};

// Reruns the spec stored with every failed check of a JSON report and
// compares the counterexample.
std::vector<ReplayOutcome> replay(const nlohmann::json& report);

} // namespace tangentcat

#endif
