#ifndef TANGENTCAT_REPORT_HPP
#define TANGENTCAT_REPORT_HPP

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>

namespace tangentcat {

// mt19937_64 with a modulo draw, so sequences agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    // Uniform-ish value in [0, n); n = 0 yields 0.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }
    long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 gen_;
};

struct CheckResult {
    std::string name;
    std::string anchor;
    bool pass = true;
    std::size_t runs = 0;
    nlohmann::json counterexample;
};

// Results keyed by check name. Repeated records of one name aggregate:
// the check passes iff every run passed; the first failure is kept.
class CheckReport {
public:
    void record(const std::string& name, const std::string& anchor, bool pass,
                nlohmann::json counterexample = nullptr);
    // Runs body; an exception becomes a failure carrying the message.
    void guard(const std::string& name, const std::string& anchor, const std::function<void()>& body);
    void merge(const CheckReport& other);
    // Adds `key: value` to every counterexample (e.g. a replay spec).
    void annotate(const std::string& key, const nlohmann::json& value);

    const std::map<std::string, CheckResult>& results() const { return results_; }
    std::size_t passed() const;
    std::size_t failed() const;
    bool ok() const { return failed() == 0; }
    const CheckResult* find(const std::string& name) const;

    nlohmann::json to_json(std::uint64_t seed) const;
    std::string table() const;

private:
    std::map<std::string, CheckResult> results_;
};

} // namespace tangentcat

#endif
