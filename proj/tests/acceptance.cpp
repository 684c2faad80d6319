#include "tangentcat/equivalence.hpp"
#include "tangentcat/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace tangentcat;
using nbullet::NMatrix;

namespace {

constexpr std::size_t category_samples = 100;
constexpr std::size_t nbullet_max_rank = 4;
constexpr std::size_t poly_max_rank = 3;
constexpr std::size_t weil_max_generators = 3;
constexpr std::size_t tangent_depth = 2;
constexpr double category_seconds = 60.0;
constexpr int chain_rule_pairs = 500;
constexpr std::size_t poly_max_degree = 3;
constexpr int decompose_matrices = 200;
constexpr std::size_t decompose_max_size = 4;
constexpr long decompose_max_entry = 5;
constexpr std::size_t fixture_bound = 8;
constexpr std::size_t min_fixtures = 5;
constexpr std::size_t tensor_dim_bound = 8;
constexpr std::uint64_t seed = 20261015;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::size_t failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %d  %s  (%s)\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str());
    std::fflush(stdout);
}

RunSpec spec(const std::string& command, const std::string& builtin, std::size_t max_rank, unsigned long p = 5) {
    RunSpec s;
    s.command = command;
    s.builtin = builtin;
    s.config.max_rank = max_rank;
    s.config.samples = category_samples;
    s.config.depth = tangent_depth;
    s.config.seed = seed;
    s.config.p = p;
    return s;
}

template <class C>
struct Fixture {
    const C* cat;
    DifferentialBundle<C> bundle;
};

struct Fixtures {
    NBulletCategory nb;
    PolyCategory pq{Domain::rational()};
    PolyCategory pz{Domain::modular(5)};
    std::vector<Fixture<NBulletCategory>> nbullet;
    std::vector<Fixture<PolyCategory>> poly;

    Fixtures() {
        for (std::size_t k = 1; k <= 4; ++k) nbullet.push_back({&nb, diff_object_bundle(nb, k, fixture_bound)});
        for (const PolyCategory* c : {&pq, &pz})
            for (std::size_t m = 0; m <= 2; ++m)
                for (std::size_t v = 1; v <= 2; ++v) poly.push_back({c, trivial_bundle(*c, m, v, fixture_bound)});
    }
    std::size_t size() const { return nbullet.size() + poly.size(); }

    // Applies check to every fixture; returns passed/failed counts and the first failing name.
    template <class F>
    Outcome each(F&& check) const {
        std::size_t passed = 0, failed = 0;
        std::string first;
        auto take = [&](const std::string& who, const CheckReport& r) {
            passed += r.passed();
            failed += r.failed();
            if (first.empty())
                for (const auto& [name, res] : r.results())
                    if (!res.pass) {
                        first = who + ": " + name;
                        break;
                    }
        };
        for (const auto& f : nbullet) take(f.cat->name() + "/" + f.bundle.name, check(*f.cat, f.bundle));
        for (const auto& f : poly) take(f.cat->name() + "/" + f.bundle.name, check(*f.cat, f.bundle));
        std::string detail = std::to_string(size()) + " fixtures, " + std::to_string(passed) + " checks passed, " +
                             std::to_string(failed) + " failed";
        if (!first.empty()) detail += ", first failure " + first;
        return {failed == 0 && passed > 0 && size() >= min_fixtures, detail};
    }
};

} // namespace

int main() {
    Fixtures fixtures;

    criterion(1, "tangent-category axioms on N-bullet, Poly over Q and Z/p, Weil", [] {
        auto start = std::chrono::steady_clock::now();
        std::vector<RunSpec> runs = {spec("verify-category", "nbullet", nbullet_max_rank),
                                     spec("verify-category", "poly-rational", poly_max_rank),
                                     spec("verify-category", "weil", weil_max_generators)};
        for (unsigned long p : {2ul, 3ul, 5ul}) runs.push_back(spec("verify-category", "poly-zp", poly_max_rank, p));
        std::size_t passed = 0, failed = 0;
        for (const auto& s : runs) {
            auto r = run(s).report;
            passed += r.passed();
            failed += r.failed();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu passed, %zu failed, %.2f s of %.0f s", passed, failed, seconds,
                      category_seconds);
        return Outcome{failed == 0 && passed > 0 && seconds < category_seconds, buf};
    });

    criterion(2, "chain rule on random composable polynomial pairs", [] {
        std::size_t checked = 0, broken = 0;
        for (const Domain& dom : {Domain::rational(), Domain::modular(2), Domain::modular(3), Domain::modular(5),
                                  Domain::natural()}) {
            PolyCategory cat(dom);
            cat.sampling.degree = poly_max_degree;
            Rng rng(seed);
            for (int t = 0; t < chain_rule_pairs; ++t) {
                std::size_t a = rng.below(4), b = rng.below(4), c = rng.below(4);
                auto f = cat.sample(a, b, rng);
                auto g = cat.sample(b, c, rng);
                broken += !cat.equal(cat.tangent(cat.compose(g, f)), cat.compose(cat.tangent(g), cat.tangent(f)));
                ++checked;
            }
        }
        return Outcome{broken == 0, std::to_string(checked) + " pairs over 5 domains, " + std::to_string(broken) +
                                        " violations"};
    });

    criterion(3, "decompose_matrix reconstructs random matrices", [] {
        Rng rng(seed);
        int broken = 0;
        for (int t = 0; t < decompose_matrices; ++t) {
            NMatrix f(rng.below(decompose_max_size + 1), rng.below(decompose_max_size + 1));
            for (std::size_t i = 0; i < f.rows(); ++i)
                for (std::size_t j = 0; j < f.cols(); ++j) f.set(i, j, rng.between(0, decompose_max_entry));
            broken += nbullet::evaluate_rows(nbullet::decompose_matrix(f), f.cols()) != f;
        }
        return Outcome{broken == 0, std::to_string(decompose_matrices) + " matrices, " + std::to_string(broken) +
                                        " mismatches"};
    });

    criterion(4, "Frobenius is additive but not linear; the identity is linear", [] {
        std::string detail;
        bool ok = true;
        for (unsigned long p : {2ul, 3ul, 5ul}) {
            Domain dom = Domain::modular(p);
            PolyCategory cat(dom);
            auto b = diff_object_bundle(cat, 1);
            auto frob = poly::parse_morphism(dom, 1, {"x0^" + std::to_string(p)});
            auto c = classify_morphism(cat, b, b, frob, cat.identity(0));
            auto id = classify_morphism(cat, b, b, cat.identity(1), cat.identity(0));
            ok = ok && c.additive && !c.linear && id.cls == MorphismClass::Linear;
            detail += (detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + " frobenius " +
                      morphism_class_name(c.cls) + ", identity " + morphism_class_name(id.cls);
        }
        return Outcome{ok, detail};
    });

    criterion(5, "Eval o Ind is the identity on the fixtures",
              [&] { return fixtures.each([](const auto& cat, const auto& b) { return round_trip(cat, b); }); });

    criterion(6, "appendix naturality squares on the fixtures", [&] {
        return fixtures.each([](const auto& cat, const auto& b) { return appendix_suite(cat, b, ind(cat, b)); });
    });

    criterion(7, "lineator tensor law and uniqueness up to dimension product 8", [&] {
        std::size_t tensor_runs = 0, uniqueness_runs = 0;
        auto outcome = fixtures.each([&](const auto& cat, const auto& b) {
            FunctorCheckOptions opts;
            opts.tensor_bound = tensor_dim_bound;
            opts.samples = 10;
            opts.seed = seed;
            auto left = ind(cat, b, Nesting::Left);
            auto right = ind(cat, b, Nesting::Right);
            CheckReport rep;
            auto functor = check_differential_functor(cat, left, opts);
            for (const auto& [name, r] : functor.results())
                if (r.anchor == "differential-functor/lineator-tensor") {
                    rep.record(name, r.anchor, r.pass, r.counterexample);
                    tensor_runs += r.runs;
                }
            auto unique = check_lineator_uniqueness(cat, left, right, tensor_dim_bound);
            for (const auto& [name, r] : unique.results()) uniqueness_runs += r.runs;
            rep.merge(unique);
            return rep;
        });
        outcome.pass = outcome.pass && tensor_runs > 0 && uniqueness_runs > 0;
        outcome.detail += ", " + std::to_string(tensor_runs) + " tensor-law and " + std::to_string(uniqueness_runs) +
                          " uniqueness comparisons";
        return outcome;
    });

    criterion(8, "each mutation fails with a replayable counterexample", [] {
        int detected = 0, replayed = 0;
        std::string missed;
        for (int n = 1; n <= mutation_count; ++n) {
            RunSpec s = spec("suite", "mutation-" + std::to_string(n), 2);
            auto r = run(s).report;
            if (r.failed() == 0) {
                missed += " " + std::to_string(n);
                continue;
            }
            ++detected;
            auto outcomes = replay(r.to_json(s.config.seed));
            bool all = !outcomes.empty();
            for (const auto& o : outcomes) all = all && o.reproduced;
            replayed += all;
            if (!all) missed += " " + std::to_string(n) + "(replay)";
        }
        std::string detail = std::to_string(detected) + "/" + std::to_string(mutation_count) + " detected, " +
                             std::to_string(replayed) + " replayed";
        if (!missed.empty()) detail += ", missed:" + missed;
        return Outcome{detected == mutation_count && replayed == mutation_count, detail};
    });

    criterion(9, "identical seeds give byte-identical JSON", [] {
        RunSpec s = spec("suite", "core", 3);
        s.config.samples = 50;
        std::string a = run(s).report.to_json(s.config.seed).dump(2);
        std::string b = run(s).report.to_json(s.config.seed).dump(2);
        return Outcome{a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
    });

    std::printf("%zu of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
