#include "tangentcat/manifest.hpp"

#include "tangentcat/errors.hpp"

#include <toml.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace tangentcat {

namespace {

class Reader {
public:
    explicit Reader(std::string path) : path_(std::move(path)) {}

    [[noreturn]] void fail(const toml::source_region& at, const std::string& what, std::size_t extra_column = 0) const {
        throw ManifestParse(path_ + ":" + std::to_string(at.begin.line) + ":" +
                            std::to_string(at.begin.column + extra_column) + ": " + what);
    }
    [[noreturn]] void fail(const toml::node& at, const std::string& what) const { fail(at.source(), what); }

    void only_keys(const toml::table& t, const std::set<std::string>& allowed, const std::string& where) const {
        for (const auto& [k, v] : t)
            if (!allowed.count(std::string(k.str())))
                fail(v, "unknown key '" + std::string(k.str()) + "' in " + where);
    }

    std::string string(const toml::table& t, const std::string& key, const toml::node& ctx) const {
        const toml::node* n = t.get(key);
        if (!n) fail(ctx, "missing key '" + key + "'");
        if (!n->is_string()) fail(*n, "'" + key + "' must be a string");
        return **n->as_string();
    }

    std::optional<std::string> optional_string(const toml::table& t, const std::string& key) const {
        const toml::node* n = t.get(key);
        if (!n) return std::nullopt;
        if (!n->is_string()) fail(*n, "'" + key + "' must be a string");
        return **n->as_string();
    }

    std::size_t count(const toml::node& n, const std::string& key) const {
        if (!n.is_integer() || **n.as_integer() < 0) fail(n, "'" + key + "' must be a nonnegative integer");
        return static_cast<std::size_t>(**n.as_integer());
    }

    std::size_t count(const toml::table& t, const std::string& key, const toml::node& ctx) const {
        const toml::node* n = t.get(key);
        if (!n) fail(ctx, "missing key '" + key + "'");
        return count(*n, key);
    }

    mpq_class entry(const toml::node& n, const Domain& dom) const {
        if (!n.is_integer()) fail(n, "matrix entries must be integers");
        long v = static_cast<long>(**n.as_integer());
        if (v < 0 && !dom.is_field()) fail(n, "negative entry over the naturals");
        return dom.reduce(mpq_class(v));
    }

    linalg::Matrix matrix(const toml::node& n, const Domain& dom) const {
        if (const auto* t = n.as_table()) {
            only_keys(*t, {"rows", "cols", "entries"}, "a matrix");
            std::size_t r = count(*t, "rows", n), c = count(*t, "cols", n);
            const toml::node* e = t->get("entries");
            const toml::array* arr = e ? e->as_array() : nullptr;
            if (e && !arr) fail(*e, "'entries' must be an array");
            std::size_t have = arr ? arr->size() : 0;
            if (have != r * c) fail(n, "expected " + std::to_string(r * c) + " entries, found " + std::to_string(have));
            linalg::Matrix m(dom, r, c);
            for (std::size_t i = 0; i < have; ++i) m(i / c, i % c) = entry(*arr->get(i), dom);
            return m;
        }
        const toml::array* rows = n.as_array();
        if (!rows || rows->empty()) fail(n, "a matrix is an array of rows or a {rows, cols, entries} table");
        std::size_t cols = 0;
        for (std::size_t i = 0; i < rows->size(); ++i) {
            const toml::array* row = rows->get(i)->as_array();
            if (!row) fail(*rows->get(i), "matrix rows must be arrays");
            if (i == 0) cols = row->size();
            else if (row->size() != cols) fail(*rows->get(i), "ragged matrix row");
        }
        linalg::Matrix m(dom, rows->size(), cols);
        for (std::size_t i = 0; i < rows->size(); ++i) {
            const toml::array& row = *rows->get(i)->as_array();
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(*row.get(j), dom);
        }
        return m;
    }

    poly::PolyMorphism polynomials(const toml::table& t, const toml::node& ctx, const Domain& dom) const {
        only_keys(t, {"source", "components"}, "a polynomial morphism");
        std::size_t source = count(t, "source", ctx);
        const toml::node* c = t.get("components");
        if (!c || !c->is_array()) fail(ctx, "'components' must be an array of polynomial strings");
        std::vector<poly::Polynomial> comps;
        for (const auto& item : *c->as_array()) {
            if (!item.is_string()) fail(item, "polynomial components must be strings");
            try {
                comps.push_back(poly::parse(**item.as_string(), dom, source));
            } catch (const PolynomialParse& e) {
                // The string starts one column after its opening quote.
                auto at = item.source();
                if (e.line() > 1) at.begin.line += static_cast<toml::source_index>(e.line() - 1);
                fail(at, e.what(), e.line() > 1 ? 0 : e.column());
            }
        }
        return poly::PolyMorphism(dom, source, std::move(comps));
    }

private:
    std::string path_;
};

} // namespace

Manifest parse_manifest(const std::string& text, const std::string& path) {
    Reader rd(path);
    toml::table root;
    try {
        root = toml::parse(text, path);
    } catch (const toml::parse_error& e) {
        rd.fail(e.source(), std::string(e.description()));
    }
    rd.only_keys(root, {"category", "domain", "suites", "config", "morphisms", "bundles", "maps"}, "the manifest");

    Manifest m;
    m.path = path;
    const toml::node* cat = root.get("category");
    if (!cat) throw ManifestParse(path + ":1:1: missing key 'category' (nbullet or poly)");
    if (!cat->is_string()) rd.fail(*cat, "'category' must be a string");
    m.category = **cat->as_string();
    if (m.category != "nbullet" && m.category != "poly")
        rd.fail(*cat, "unknown category '" + m.category + "' (expected nbullet or poly)");
    if (const toml::node* dom = root.get("domain")) {
        if (!dom->is_string()) rd.fail(*dom, "'domain' must be a string");
        try {
            m.domain = Domain::parse(**dom->as_string());
        } catch (const Error& e) {
            rd.fail(*dom, e.what());
        }
        if (m.category == "nbullet" && m.domain.kind() != DomainKind::Natural)
            rd.fail(*dom, "the nbullet category is over the naturals");
    } else {
        m.domain = m.category == "nbullet" ? Domain::natural() : Domain::rational();
    }

    if (const toml::node* s = root.get("suites")) {
        if (!s->is_array()) rd.fail(*s, "'suites' must be an array of command names");
        static const std::set<std::string> known = {"verify-category", "verify-bundle", "classify", "roundtrip",
                                                    "appendix", "functor"};
        for (const auto& item : *s->as_array()) {
            if (!item.is_string() || !known.count(**item.as_string())) rd.fail(item, "unknown suite");
            m.suites.push_back(**item.as_string());
        }
    }

    if (const toml::node* c = root.get("config")) {
        const toml::table* t = c->as_table();
        if (!t) rd.fail(*c, "'config' must be a table");
        rd.only_keys(*t, {"max_rank", "samples", "bound", "depth", "seed", "p"}, "[config]");
        for (const auto& [k, v] : *t) {
            std::string key(k.str());
            std::size_t n = rd.count(v, key);
            if (key == "max_rank") m.config.max_rank = n;
            else if (key == "samples") m.config.samples = n;
            else if (key == "bound") m.config.bound = n;
            else if (key == "depth") m.config.depth = n;
            else if (key == "seed") m.config.seed = n;
            else {
                if (!is_prime(n)) rd.fail(v, "'p' must be prime");
                m.config.p = n;
            }
            m.config_keys.push_back(key);
        }
    }

    if (const toml::node* ms = root.get("morphisms")) {
        const toml::table* t = ms->as_table();
        if (!t) rd.fail(*ms, "'morphisms' must be a table");
        for (const auto& [k, v] : *t) {
            MorphismDef def;
            def.line = v.source().begin.line;
            if (const toml::table* pt = v.as_table(); pt && !pt->contains("rows")) {
                if (m.category == "nbullet") rd.fail(v, "nbullet morphisms are matrices");
                def.poly = rd.polynomials(*pt, v, m.domain);
            } else {
                def.matrix = rd.matrix(v, m.domain);
            }
            m.morphisms.emplace(std::string(k.str()), std::move(def));
        }
    }

    auto check_ref = [&](const toml::node& at, const std::optional<std::string>& name) {
        if (name && !m.morphisms.count(*name)) rd.fail(at, "unknown morphism '" + *name + "'");
    };

    if (const toml::node* bs = root.get("bundles")) {
        const toml::array* arr = bs->as_array();
        if (!arr) rd.fail(*bs, "'bundles' must be an array of tables ([[bundles]])");
        std::set<std::string> names;
        for (const auto& item : *arr) {
            const toml::table* t = item.as_table();
            if (!t) rd.fail(item, "each bundle is a table");
            rd.only_keys(*t, {"name", "base", "fiber", "trivial", "zeta", "sigma", "lambda"}, "a bundle");
            ManifestBundle b;
            b.line = item.source().begin.line;
            b.name = rd.string(*t, "name", item);
            if (!names.insert(b.name).second) rd.fail(item, "duplicate bundle '" + b.name + "'");
            if (const toml::node* tr = t->get("trivial")) {
                const toml::table* tt = tr->as_table();
                if (!tt) rd.fail(*tr, "'trivial' must be {base, fiber}");
                rd.only_keys(*tt, {"base", "fiber"}, "'trivial'");
                b.base = rd.count(*tt, "base", *tr);
                b.fiber = rd.count(*tt, "fiber", *tr);
                if (t->contains("base") || t->contains("fiber")) rd.fail(item, "give either trivial or base/fiber");
            } else {
                b.base = rd.count(*t, "base", item);
                b.fiber = rd.count(*t, "fiber", item);
            }
            b.zeta = rd.optional_string(*t, "zeta");
            b.sigma = rd.optional_string(*t, "sigma");
            b.lambda = rd.optional_string(*t, "lambda");
            check_ref(item, b.zeta);
            check_ref(item, b.sigma);
            check_ref(item, b.lambda);
            m.bundles.push_back(std::move(b));
        }
    }

    if (const toml::node* ps = root.get("maps")) {
        const toml::array* arr = ps->as_array();
        if (!arr) rd.fail(*ps, "'maps' must be an array of tables ([[maps]])");
        for (const auto& item : *arr) {
            const toml::table* t = item.as_table();
            if (!t) rd.fail(item, "each map is a table");
            rd.only_keys(*t, {"name", "source", "target", "f", "g", "expect"}, "a map");
            ManifestMorphism p;
            p.line = item.source().begin.line;
            p.name = rd.string(*t, "name", item);
            p.source = rd.string(*t, "source", item);
            p.target = rd.string(*t, "target", item);
            p.f = rd.string(*t, "f", item);
            p.g = rd.string(*t, "g", item);
            p.expect = rd.optional_string(*t, "expect");
            if (p.expect && *p.expect != "none" && *p.expect != "bundle" && *p.expect != "additive" &&
                *p.expect != "linear")
                rd.fail(item, "'expect' must be none, bundle, additive or linear");
            check_ref(item, p.f);
            check_ref(item, p.g);
            auto known_bundle = [&](const std::string& n) {
                for (const auto& b : m.bundles)
                    if (b.name == n) return true;
                return false;
            };
            if (!known_bundle(p.source)) rd.fail(item, "unknown bundle '" + p.source + "'");
            if (!known_bundle(p.target)) rd.fail(item, "unknown bundle '" + p.target + "'");
            m.pairs.push_back(std::move(p));
        }
    }
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ManifestParse(path + ": cannot open manifest");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str(), path);
}

} // namespace tangentcat
