#include "tangentcat/suites.hpp"

#include "tangentcat/equivalence.hpp"

#include <algorithm>
#include <map>

namespace tangentcat {

namespace {

using json = nlohmann::json;
using W = weil::Structural;

const std::vector<std::string> category_builtins = {"nbullet", "poly-rational", "poly-zp", "weil", "trivial"};
const std::vector<std::string> bundle_builtins = {"diff-object", "trivial-nbullet", "trivial-rational", "trivial-zp",
                                                  "fixtures"};
const std::vector<std::string> classify_builtins = {"frobenius", "identity", "doubling", "square"};
const std::vector<std::string> bundle_commands = {"verify-bundle", "roundtrip", "appendix", "functor"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

[[noreturn]] void unknown(const std::string& command, const std::string& name) {
    std::string list;
    for (const auto& n : builtin_names(command)) list += (list.empty() ? "" : ", ") + n;
    throw UnknownBuiltin("'" + name + "' for " + command + " (known: " + list + ")");
}

// Category checks

template <class C>
void category_checks(const C& cat, const std::vector<typename C::Object>& objects,
                     std::vector<typename C::Morphism> morphisms, const SuiteConfig& cfg, CheckReport& rep) {
    Rng rng(cfg.seed);
    auto sampled = sample_morphisms(cat, objects, cfg.samples, rng);
    morphisms.insert(morphisms.end(), sampled.begin(), sampled.end());
    rep.merge(check_tangent_category(cat, objects, morphisms, TangentCheckOptions{cfg.depth}));
}

std::vector<std::size_t> ranks(std::size_t max_rank) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k <= max_rank; ++k) out.push_back(k);
    return out;
}

void verify_category_builtin(const std::string& name, const SuiteConfig& cfg, CheckReport& rep,
                             std::optional<StructuralMutation> mutation = std::nullopt) {
    if (name == "nbullet") {
        NBulletCategory cat;
        cat.mutation = mutation;
        category_checks(cat, ranks(cfg.max_rank), {}, cfg, rep);
    } else if (name == "poly-rational" || name == "poly-zp") {
        PolyCategory cat(name == "poly-zp" ? Domain::modular(cfg.p) : Domain::rational());
        cat.mutation = mutation;
        category_checks(cat, ranks(cfg.max_rank), {}, cfg, rep);
    } else if (name == "weil") {
        WeilCategory cat;
        category_checks(cat, weil::enumerate_algebras(cfg.max_rank), {}, cfg, rep);
    } else if (name == "trivial") {
        TrivialCategory cat;
        category_checks(cat, ranks(cfg.max_rank), {}, cfg, rep);
    } else {
        unknown("verify-category", name);
    }
}

// Bundle checks

template <class C>
void bundle_checks(const C& cat, const std::vector<DifferentialBundle<C>>& bundles, const std::string& command,
                   const SuiteConfig& cfg, CheckReport& rep) {
    FunctorCheckOptions fopts;
    fopts.samples = cfg.samples;
    fopts.max_rank = cfg.max_rank;
    fopts.tensor_bound = cfg.bound;
    fopts.seed = cfg.seed;
    for (const auto& b : bundles) {
        const std::string pre = cat.name() + "/" + b.name + "/";
        if (command == "verify-bundle") {
            BundleCheckOptions opts;
            opts.depth = cfg.depth;
            rep.guard(pre + "setup", "differential-bundle/setup", [&] { rep.merge(check_differential_bundle(cat, b, opts)); });
        } else if (command == "roundtrip") {
            rep.guard(pre + "round-trip/setup", "eval-ind/round-trip", [&] { rep.merge(round_trip(cat, b)); });
        } else if (command == "appendix") {
            rep.guard(pre + "appendix/setup", "appendix/setup", [&] { rep.merge(appendix_suite(cat, b, ind(cat, b))); });
        } else if (command == "functor") {
            rep.guard(pre + "functor/setup", "differential-functor/setup", [&] {
                auto left = ind(cat, b, Nesting::Left);
                auto right = ind(cat, b, Nesting::Right);
                rep.merge(check_differential_functor(cat, left, fopts));
                rep.merge(check_lineator_uniqueness(cat, left, right, cfg.bound));
            });
        }
    }
}

std::vector<DifferentialBundle<NBulletCategory>> nbullet_bundles(const NBulletCategory& cat, const std::string& name,
                                                                 const SuiteConfig& cfg) {
    std::vector<DifferentialBundle<NBulletCategory>> out;
    if (name == "diff-object" || name == "fixtures") {
        for (std::size_t k = 1; k <= std::clamp<std::size_t>(cfg.max_rank, 1, 4); ++k) {
            out.push_back(diff_object_bundle(cat, k, cfg.bound));
            out.back().name = "diff-object(" + std::to_string(k) + ")";
        }
    }
    if (name == "trivial-nbullet")
        for (auto [m, v] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}, {1, 2}})
            out.push_back(trivial_bundle(cat, m, v, cfg.bound));
    return out;
}

std::vector<DifferentialBundle<PolyCategory>> poly_bundles(const PolyCategory& cat, const SuiteConfig& cfg) {
    std::vector<DifferentialBundle<PolyCategory>> out;
    for (std::size_t m = 0; m <= std::min<std::size_t>(cfg.max_rank, 2); ++m)
        for (std::size_t v = 1; v <= std::min<std::size_t>(std::max<std::size_t>(cfg.max_rank, 1), 2); ++v)
            out.push_back(trivial_bundle(cat, m, v, cfg.bound));
    return out;
}

void bundle_builtin(const std::string& command, const std::string& name, const SuiteConfig& cfg, CheckReport& rep) {
    if (!contains(bundle_builtins, name)) unknown(command, name);
    NBulletCategory nb;
    bundle_checks(nb, nbullet_bundles(nb, name, cfg), command, cfg, rep);
    if (name == "trivial-rational" || name == "fixtures") {
        PolyCategory pq(Domain::rational());
        bundle_checks(pq, poly_bundles(pq, cfg), command, cfg, rep);
    }
    if (name == "trivial-zp" || name == "fixtures") {
        PolyCategory pz(Domain::modular(cfg.p));
        bundle_checks(pz, poly_bundles(pz, cfg), command, cfg, rep);
    }
}

// Classification

std::optional<MorphismClass> parse_class(const std::string& s) {
    if (s == "none") return MorphismClass::None;
    if (s == "bundle") return MorphismClass::Bundle;
    if (s == "additive") return MorphismClass::Additive;
    if (s == "linear") return MorphismClass::Linear;
    return std::nullopt;
}

template <class C>
void classify_one(const C& cat, const std::string& name, const DifferentialBundle<C>& b,
                  const DifferentialBundle<C>& b2, const typename C::Morphism& f, const typename C::Morphism& g,
                  std::optional<MorphismClass> expect, RunResult& out) {
    const std::string check = cat.name() + "/classify/" + name;
    out.report.guard(check, "bundle-morphism/classification", [&] {
        Classification c = classify_morphism(cat, b, b2, f, g);
        out.notes.push_back(name + ": " + c.summary());
        bool ok = !expect || *expect == c.cls;
        json ctx = nullptr;
        if (!ok)
            ctx = {{"expected", morphism_class_name(*expect)},
                   {"got", morphism_class_name(c.cls)},
                   {"f", cat.serialize(f)},
                   {"g", cat.serialize(g)},
                   {"detail", c.detail}};
        out.report.record(check, "bundle-morphism/classification", ok, std::move(ctx));
    });
}

void classify_builtin(const std::string& name, const SuiteConfig& cfg, RunResult& out) {
    if (name == "frobenius" || name == "identity") {
        Domain dom = Domain::modular(cfg.p);
        PolyCategory cat(dom);
        auto d = diff_object_bundle(cat, 1, cfg.bound);
        d.name = "diff-object(1)";
        std::string comp = name == "frobenius" ? "x0^" + std::to_string(cfg.p) : "x0";
        auto f = poly::parse_morphism(dom, 1, {comp});
        classify_one(cat, name, d, d, f, cat.identity(0),
                     name == "frobenius" ? MorphismClass::Additive : MorphismClass::Linear, out);
    } else if (name == "doubling") {
        NBulletCategory cat;
        auto d = diff_object_bundle(cat, 1, cfg.bound);
        classify_one(cat, name, d, d, nbullet::NMatrix{{2}}, cat.identity(0), MorphismClass::Linear, out);
    } else if (name == "square") {
        PolyCategory cat(Domain::rational());
        auto d = diff_object_bundle(cat, 1, cfg.bound);
        classify_one(cat, name, d, d, poly::parse_morphism(Domain::rational(), 1, {"x0^2"}), cat.identity(0),
                     MorphismClass::Bundle, out);
    } else {
        unknown("classify", name);
    }
}

// Mutations

struct Mutation {
    std::string description;
    std::string category;  // verify-category builtin, or empty for bundle mutations
    std::optional<StructuralMutation> structural;
    std::string command;   // for bundle mutations
    nbullet::NMatrix sigma, lambda;
};

Mutation mutation(int n) {
    Mutation m;
    auto structural = [&](const char* cat, W kind, std::size_t r, std::size_t c, const std::string& what) {
        m.category = cat;
        m.structural = StructuralMutation{kind, r, c};
        m.command = "verify-category";
        m.description = what;
    };
    switch (n) {
    case 1: structural("nbullet", W::Plus, 0, 1, "nbullet: + gains entry (0,1)"); break;
    case 2: structural("nbullet", W::Ell, 1, 1, "nbullet: vertical lift gains entry (1,1)"); break;
    case 3: structural("nbullet", W::Flip, 0, 1, "nbullet: canonical flip gains entry (0,1)"); break;
    case 4: structural("nbullet", W::Zero, 1, 0, "nbullet: zero section gains entry (1,0)"); break;
    case 5: structural("nbullet", W::P, 0, 1, "nbullet: projection gains entry (0,1)"); break;
    case 6: structural("poly-rational", W::Plus, 0, 1, "poly[rational]: + gains term (0,1)"); break;
    case 7: structural("poly-zp", W::Ell, 1, 1, "poly[zp:5]: vertical lift gains term (1,1)"); break;
    case 8:
        m.command = "verify-bundle";
        m.sigma = nbullet::sigma(2);
        m.lambda = nbullet::NMatrix{{1}, {1}};
        m.description = "diff object N: lift (0,1) becomes (1,1)";
        break;
    case 9:
        m.command = "verify-bundle";
        m.sigma = nbullet::NMatrix{{1, 2}};
        m.lambda = nbullet::NMatrix{{0}, {1}};
        m.description = "diff object N: addition (1,1) becomes (1,2)";
        break;
    case 10:
        m.command = "appendix";
        m.sigma = nbullet::sigma(2);
        m.lambda = nbullet::NMatrix{{0}, {2}};
        m.description = "diff object N: lift (0,1) becomes (0,2), seen by the Weil squares";
        break;
    default: throw UnknownBuiltin("mutation-" + std::to_string(n) + " (mutations are numbered 1 to 10)");
    }
    return m;
}

void run_mutation(int n, const SuiteConfig& base, CheckReport& rep) {
    Mutation m = mutation(n);
    SuiteConfig cfg = base;
    cfg.max_rank = std::min<std::size_t>(cfg.max_rank, 2);
    cfg.samples = std::min<std::size_t>(cfg.samples, 10);
    if (n == 7) cfg.p = 5;
    if (m.structural) {
        verify_category_builtin(m.category, cfg, rep, m.structural);
        return;
    }
    NBulletCategory nb;
    auto b = diff_object_bundle(nb, 1, std::max<std::size_t>(cfg.bound, 4));
    b.name = "mutated-diff-object(1)";
    b.sigma = m.sigma;
    b.lambda = m.lambda;
    bundle_checks(nb, std::vector{b}, m.command, cfg, rep);
}

int mutation_number(const std::string& name) {
    const std::string prefix = "mutation-";
    if (name.rfind(prefix, 0) != 0) return 0;
    try {
        std::size_t used = 0;
        int n = std::stoi(name.substr(prefix.size()), &used);
        return used == name.size() - prefix.size() ? n : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

void suite_builtin(const std::string& name, const SuiteConfig& cfg, RunResult& out) {
    if (name == "core") {
        for (const auto& c : {"nbullet", "poly-rational", "poly-zp", "weil"}) verify_category_builtin(c, cfg, out.report);
        for (const auto& cmd : bundle_commands) bundle_builtin(cmd, "fixtures", cfg, out.report);
        for (const auto& c : classify_builtins) classify_builtin(c, cfg, out);
    } else if (name == "mutations") {
        for (int n = 1; n <= mutation_count; ++n) {
            CheckReport sub;
            run_mutation(n, cfg, sub);
            bool detected = sub.failed() > 0;
            out.report.record("mutation/" + std::to_string(n) + "/detected", "mutation/sensitivity", detected,
                              detected ? json(nullptr) : json{{"mutation", n}, {"description", mutation(n).description}});
            out.notes.push_back("mutation-" + std::to_string(n) + " (" + mutation(n).description + "): " +
                                std::to_string(sub.failed()) + " failing checks");
        }
    } else if (int n = mutation_number(name); n >= 1 && n <= mutation_count) {
        run_mutation(n, cfg, out.report);
    } else {
        unknown("suite", name);
    }
}

// Manifests

template <class C>
typename C::Morphism resolve(const C& cat, const Manifest& m, const std::string& name) {
    const MorphismDef& def = m.morphisms.at(name);
    if (def.poly) {
        if constexpr (std::is_same_v<C, PolyCategory>) return *def.poly;
        else throw ManifestParse(m.path + ":" + std::to_string(def.line) + ": '" + name + "' must be a matrix");
    }
    if constexpr (std::is_same_v<C, NBulletCategory>) return nbullet::NMatrix::from_linear(*def.matrix);
    else return cat.from_matrix(*def.matrix);
}

template <class C>
std::vector<DifferentialBundle<C>> manifest_bundles(const C& cat, const Manifest& m, const SuiteConfig& cfg) {
    std::vector<DifferentialBundle<C>> out;
    for (const auto& mb : m.bundles) {
        auto b = trivial_bundle(cat, mb.base, mb.fiber, cfg.bound);
        b.name = mb.name;
        const std::size_t e = mb.base + mb.fiber;
        auto take = [&](const std::optional<std::string>& ref, typename C::Morphism& slot, std::size_t src,
                        std::size_t dst, const char* what) {
            if (!ref) return;
            auto f = resolve(cat, m, *ref);
            if (cat.source(f) != src || cat.target(f) != dst)
                throw ManifestParse(m.path + ":" + std::to_string(mb.line) + ": " + what + " of bundle '" + mb.name +
                                    "' must map rank " + std::to_string(src) + " to rank " + std::to_string(dst));
            slot = f;
        };
        take(mb.zeta, b.zeta, mb.base, e, "zeta");
        take(mb.sigma, b.sigma, mb.base + 2 * mb.fiber, e, "sigma");
        take(mb.lambda, b.lambda, e, 2 * e, "lambda");
        out.push_back(std::move(b));
    }
    return out;
}

template <class C>
void manifest_command(const C& cat, const Manifest& m, const std::string& command, const SuiteConfig& cfg,
                      RunResult& out) {
    if (command == "verify-category") {
        std::vector<typename C::Morphism> declared;
        for (const auto& [name, def] : m.morphisms) declared.push_back(resolve(cat, m, name));
        category_checks(cat, ranks(cfg.max_rank), declared, cfg, out.report);
        return;
    }
    if (contains(bundle_commands, command)) {
        if (m.bundles.empty()) throw ManifestParse(m.path + ": no bundles declared for " + command);
        bundle_checks(cat, manifest_bundles(cat, m, cfg), command, cfg, out.report);
        return;
    }
    if (command == "classify") {
        if (m.pairs.empty()) throw ManifestParse(m.path + ": no maps declared for classify");
        auto bundles = manifest_bundles(cat, m, cfg);
        auto find = [&](const std::string& n) -> const DifferentialBundle<C>& {
            for (const auto& b : bundles)
                if (b.name == n) return b;
            throw ManifestParse(m.path + ": unknown bundle '" + n + "'");
        };
        for (const auto& p : m.pairs) {
            std::optional<MorphismClass> expect;
            if (p.expect) expect = parse_class(*p.expect);
            classify_one(cat, p.name, find(p.source), find(p.target), resolve(cat, m, p.f), resolve(cat, m, p.g),
                         expect, out);
        }
    }
}

void run_manifest(const RunSpec& spec, RunResult& out) {
    Manifest m = load_manifest(spec.manifest);
    std::vector<std::string> commands;
    if (spec.command == "suite") {
        commands = m.suites;
        if (commands.empty()) {
            commands.push_back("verify-category");
            if (!m.bundles.empty()) commands.insert(commands.end(), bundle_commands.begin(), bundle_commands.end());
            if (!m.pairs.empty()) commands.push_back("classify");
        }
    } else {
        commands.push_back(spec.command);
    }
    for (const auto& cmd : commands) {
        if (m.category == "nbullet") {
            NBulletCategory cat;
            manifest_command(cat, m, cmd, spec.config, out);
        } else {
            PolyCategory cat(m.domain);
            manifest_command(cat, m, cmd, spec.config, out);
        }
    }
}

void run_builtin(const RunSpec& spec, RunResult& out) {
    const std::string& cmd = spec.command;
    if (cmd == "verify-category") verify_category_builtin(spec.builtin, spec.config, out.report);
    else if (contains(bundle_commands, cmd)) bundle_builtin(cmd, spec.builtin, spec.config, out.report);
    else if (cmd == "classify") classify_builtin(spec.builtin, spec.config, out);
    else if (cmd == "suite") suite_builtin(spec.builtin, spec.config, out);
    else throw UnknownBuiltin("command '" + cmd + "'");
}

} // namespace

json RunSpec::to_json() const {
    json j = {{"command", command},
              {"config",
               {{"max_rank", config.max_rank},
                {"samples", config.samples},
                {"bound", config.bound},
                {"depth", config.depth},
                {"seed", config.seed},
                {"p", config.p}}}};
    if (!builtin.empty()) j["builtin"] = builtin;
    if (!manifest.empty()) j["manifest"] = manifest;
    return j;
}

RunSpec RunSpec::from_json(const json& j) {
    RunSpec s;
    s.command = j.at("command").get<std::string>();
    s.builtin = j.value("builtin", std::string());
    s.manifest = j.value("manifest", std::string());
    const json& c = j.at("config");
    s.config.max_rank = c.at("max_rank").get<std::size_t>();
    s.config.samples = c.at("samples").get<std::size_t>();
    s.config.bound = c.at("bound").get<std::size_t>();
    s.config.depth = c.at("depth").get<std::size_t>();
    s.config.seed = c.at("seed").get<std::uint64_t>();
    s.config.p = c.at("p").get<unsigned long>();
    return s;
}

RunResult run(const RunSpec& spec) {
    if (!is_prime(spec.config.p)) throw DomainError("--p " + std::to_string(spec.config.p) + " is not prime");
    RunResult out;
    if (!spec.manifest.empty()) run_manifest(spec, out);
    else run_builtin(spec, out);
    out.report.annotate("replay", spec.to_json());
    return out;
}

std::vector<std::string> builtin_names(const std::string& command) {
    if (command == "verify-category") return category_builtins;
    if (contains(bundle_commands, command)) return bundle_builtins;
    if (command == "classify") return classify_builtins;
    if (command == "suite") {
        std::vector<std::string> out = {"core", "mutations"};
        for (int n = 1; n <= mutation_count; ++n) out.push_back("mutation-" + std::to_string(n));
        return out;
    }
    return {};
}

std::string mutation_description(int n) { return mutation(n).description; }

std::vector<ReplayOutcome> replay(const json& report) {
    std::vector<ReplayOutcome> out;
    std::map<std::string, json> reruns;
    for (const auto& check : report.at("checks")) {
        if (check.value("status", "") != "fail") continue;
        ReplayOutcome o;
        o.name = check.at("name").get<std::string>();
        const json& ce = check.value("counterexample", json::object());
        if (!ce.is_object() || !ce.contains("replay")) {
            o.detail = "no replay spec stored";
            out.push_back(o);
            continue;
        }
        const std::string key = ce.at("replay").dump();
        if (!reruns.count(key)) {
            RunSpec spec = RunSpec::from_json(ce.at("replay"));
            reruns[key] = run(spec).report.to_json(spec.config.seed);
        }
        const json& again = reruns[key];
        o.detail = "check not produced by the rerun";
        for (const auto& c : again.at("checks")) {
            if (c.at("name") != check.at("name")) continue;
            if (c.value("status", "") != "fail") o.detail = "check passes on rerun";
            else if (c.value("counterexample", json()) != ce) o.detail = "rerun produced a different counterexample";
            else {
                o.reproduced = true;
                o.detail = "reproduced";
            }
            break;
        }
        out.push_back(o);
    }
    return out;
}

} // namespace tangentcat
