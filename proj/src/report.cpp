#include "tangentcat/report.hpp"

#include "tangentcat/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tangentcat {

void CheckReport::record(const std::string& name, const std::string& anchor, bool pass, nlohmann::json counterexample) {
    auto [it, fresh] = results_.try_emplace(name);
    CheckResult& r = it->second;
    if (fresh) {
        r.name = name;
        r.anchor = anchor;
    }
    ++r.runs;
    if (!pass && r.pass) {
        r.pass = false;
        r.counterexample = counterexample.is_null() ? nlohmann::json::object() : std::move(counterexample);
    }
}

void CheckReport::guard(const std::string& name, const std::string& anchor, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        record(name, anchor, false, {{"error", e.kind()}, {"message", e.what()}});
    } catch (const std::exception& e) {
        record(name, anchor, false, {{"error", "exception"}, {"message", e.what()}});
    }
}

void CheckReport::merge(const CheckReport& other) {
    for (const auto& [name, r] : other.results_) {
        auto [it, fresh] = results_.try_emplace(name, r);
        if (fresh) continue;
        it->second.runs += r.runs;
        if (!r.pass && it->second.pass) {
            it->second.pass = false;
            it->second.counterexample = r.counterexample;
        }
    }
}

void CheckReport::annotate(const std::string& key, const nlohmann::json& value) {
    for (auto& [name, r] : results_)
        if (!r.pass) r.counterexample[key] = value;
}

std::size_t CheckReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(results_.begin(), results_.end(), [](const auto& kv) { return kv.second.pass; }));
}

std::size_t CheckReport::failed() const { return results_.size() - passed(); }

const CheckResult* CheckReport::find(const std::string& name) const {
    auto it = results_.find(name);
    return it == results_.end() ? nullptr : &it->second;
}

nlohmann::json CheckReport::to_json(std::uint64_t seed) const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& [name, r] : results_) {
        nlohmann::json c = {{"name", name}, {"anchor", r.anchor}, {"status", r.pass ? "pass" : "fail"}};
        if (!r.pass) c["counterexample"] = r.counterexample;
        checks.push_back(std::move(c));
    }
    return {{"version", 1},
            {"seed", seed},
            {"checks", std::move(checks)},
            {"summary", {{"total", results_.size()}, {"passed", passed()}, {"failed", failed()}}}};
}

std::string CheckReport::table() const {
    std::size_t width = 5;
    for (const auto& [name, r] : results_) width = std::max(width, name.size());
    std::ostringstream os;
    for (const auto& [name, r] : results_) {
        os << (r.pass ? "PASS  " : "FAIL  ") << name << std::string(width - name.size() + 2, ' ') << r.anchor;
        if (!r.pass) os << "\n      counterexample: " << r.counterexample.dump();
        os << "\n";
    }
    os << passed() << " passed, " << failed() << " failed\n";
    return os.str();
}

} // namespace tangentcat
