#include "tangentcat/weil.hpp"

#include "tangentcat/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace tangentcat::weil {

namespace {

constexpr std::size_t kMaxGenerators = 16;

std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& classes) {
    std::map<std::size_t, std::size_t> relabel;
    std::vector<std::size_t> out;
    out.reserve(classes.size());
    for (auto c : classes) {
        auto it = relabel.find(c);
        if (it == relabel.end()) it = relabel.emplace(c, relabel.size()).first;
        out.push_back(it->second);
    }
    return out;
}

Monomial lex_key(Monomial m, std::size_t n) {
    Monomial k = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (m >> i & 1) k |= Monomial(1) << (n - 1 - i);
    return k;
}

} // namespace

Algebra::Algebra(std::vector<std::size_t> classes) : classes_(canonical_labels(classes)) {
    std::size_t n = classes_.size();
    if (n > kMaxGenerators) throw Error("TooManyGenerators", std::to_string(n) + " generators");
    std::size_t full = std::size_t(1) << n;
    index_.assign(full, -1);
    for (Monomial m = 0; m < full; ++m) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!(m >> i & 1)) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if ((m >> j & 1) && classes_[i] == classes_[j]) {
                    ok = false;
                    break;
                }
        }
        if (ok) basis_.push_back(m);
    }
    std::sort(basis_.begin(), basis_.end(),
              [n](Monomial a, Monomial b) { return lex_key(a, n) < lex_key(b, n); });
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<long>(i);
    std::size_t d = basis_.size();
    mult_.assign(d * d, -1);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            if ((basis_[a] & basis_[b]) == 0) mult_[a * d + b] = index_[basis_[a] | basis_[b]];
}

long Algebra::index_of(Monomial m) const {
    if (m >= index_.size()) return -1;
    return index_[m];
}

bool Algebra::is_power() const { return class_count() <= 1; }

std::size_t Algebra::class_count() const {
    std::size_t k = 0;
    for (auto c : classes_) k = std::max(k, c + 1);
    return k;
}

std::string Algebra::monomial_name(Monomial m) const {
    if (m == 0) return "1";
    std::string s;
    for (std::size_t i = 0; i < classes_.size(); ++i)
        if (m >> i & 1) {
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(i + 1);
        }
    return s;
}

std::string Algebra::name() const {
    if (classes_.empty()) return "N";
    if (is_canonical(*this)) {
        auto blocks = decompose(*this).blocks;
        std::string s;
        for (auto b : blocks) {
            if (!s.empty()) s += "(x)";
            s += b == 1 ? "W" : "W^" + std::to_string(b);
        }
        return s;
    }
    std::string s = "N[x1..x" + std::to_string(classes_.size()) + "]/";
    for (std::size_t c = 0; c < class_count(); ++c) {
        s += "{";
        bool first = true;
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (classes_[i] == c) {
                if (!first) s += ",";
                s += std::to_string(i + 1);
                first = false;
            }
        s += "}";
    }
    return s;
}

Element Element::constant(const mpz_class& c) { return monomial(0, c); }

Element Element::monomial(Monomial m, const mpz_class& c) {
    Element e;
    if (c != 0) e.coeffs[m] = c;
    return e;
}

Element add(const Element& a, const Element& b) {
    Element r = a;
    for (const auto& [m, c] : b.coeffs) r.coeffs[m] += c;
    return r;
}

Element multiply(const Algebra& alg, const Element& a, const Element& b) {
    Element r;
    for (const auto& [ma, ca] : a.coeffs)
        for (const auto& [mb, cb] : b.coeffs) {
            if (ma & mb) continue;
            if (alg.index_of(ma | mb) < 0) continue;
            r.coeffs[ma | mb] += ca * cb;
        }
    return r;
}

std::string to_string(const Algebra& alg, const Element& e) {
    if (e.is_zero()) return "0";
    std::vector<std::pair<long, Monomial>> order;
    for (const auto& [m, c] : e.coeffs) order.emplace_back(alg.index_of(m), m);
    std::sort(order.rbegin(), order.rend());
    std::string s;
    for (const auto& [idx, m] : order) {
        const mpz_class& c = e.coeffs.at(m);
        if (!s.empty()) s += " + ";
        if (m == 0) s += c.get_str();
        else if (c == 1) s += alg.monomial_name(m);
        else s += c.get_str() + "*" + alg.monomial_name(m);
    }
    return s;
}

Morphism::Morphism(Algebra source, Algebra target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.generator_count())
        throw InvalidWeilMorphism("expected " + std::to_string(source_.generator_count()) +
                                  " generator images, got " + std::to_string(images_.size()));
    for (std::size_t i = 0; i < images_.size(); ++i)
        for (const auto& [m, c] : images_[i].coeffs) {
            if (c == 0) throw InvalidWeilMorphism("zero coefficient stored in image");
            if (target_.index_of(m) < 0)
                throw InvalidWeilMorphism("image of x" + std::to_string(i + 1) + " uses " +
                                          target_.monomial_name(m) + ", which is zero in the target");
        }
    for (std::size_t i = 0; i < images_.size(); ++i)
        for (std::size_t j = i; j < images_.size(); ++j)
            if (source_.related(i, j) && !multiply(target_, images_[i], images_[j]).is_zero())
                throw InvalidWeilMorphism("relation x" + std::to_string(i + 1) + "*x" +
                                          std::to_string(j + 1) + " = 0 is not preserved");
}

Algebra make_algebra(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& related_pairs) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (auto [i, j] : related_pairs) {
        if (i < 1 || j < 1 || i > n || j > n)
            throw RelationNotEquivalence("pair {" + std::to_string(i) + "," + std::to_string(j) +
                                         "} outside 1.." + std::to_string(n));
        rel[i - 1][j - 1] = rel[j - 1][i - 1] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!rel[i][i])
            throw RelationNotEquivalence("missing diagonal pair {" + std::to_string(i + 1) + "," +
                                         std::to_string(i + 1) + "}");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (rel[i][j] && rel[j][k] && !rel[i][k])
                    throw RelationNotEquivalence("not transitive: " + std::to_string(i + 1) + "~" +
                                                 std::to_string(j + 1) + "~" + std::to_string(k + 1));
    std::vector<std::size_t> classes(n);
    for (std::size_t i = 0; i < n; ++i) {
        classes[i] = i;
        for (std::size_t j = 0; j < i; ++j)
            if (rel[i][j]) {
                classes[i] = classes[j];
                break;
            }
    }
    return Algebra(classes);
}

Algebra unit() { return Algebra(); }
Algebra W() { return Algebra(std::vector<std::size_t>{0}); }
Algebra power(std::size_t n) { return Algebra(std::vector<std::size_t>(n, 0)); }

Algebra tensor(const Algebra& a, const Algebra& b) {
    std::vector<std::size_t> c = a.classes();
    std::size_t shift = a.class_count();
    for (auto x : b.classes()) c.push_back(x + shift);
    return Algebra(c);
}

Algebra product(const Algebra& a, const Algebra& b) {
    if (!a.is_power() || !b.is_power())
        throw ProductUndefined("product of " + a.name() + " and " + b.name() + " is only defined for powers of W");
    return power(a.generator_count() + b.generator_count());
}

bool is_canonical(const Algebra& a) {
    const auto& c = a.classes();
    return std::is_sorted(c.begin(), c.end());
}

Algebra recompose(const std::vector<std::size_t>& blocks) {
    std::vector<std::size_t> c;
    for (std::size_t b = 0; b < blocks.size(); ++b) c.insert(c.end(), blocks[b], b);
    return Algebra(c);
}

Decomposition decompose(const Algebra& a) {
    std::vector<std::size_t> blocks(a.class_count(), 0);
    std::vector<std::vector<std::size_t>> members(a.class_count());
    for (std::size_t i = 0; i < a.generator_count(); ++i) {
        ++blocks[a.classes()[i]];
        members[a.classes()[i]].push_back(i);
    }
    Algebra canon = recompose(blocks);
    std::vector<Element> images;
    for (const auto& cls : members)
        for (auto g : cls) images.push_back(Element::monomial(Monomial(1) << g));
    return Decomposition{blocks, Morphism(canon, a, std::move(images))};
}

const char* structural_name(Structural s) {
    switch (s) {
    case Structural::P: return "p";
    case Structural::Zero: return "zero";
    case Structural::Plus: return "plus";
    case Structural::Ell: return "ell";
    case Structural::Flip: return "c";
    }
    return "?";
}

Morphism structural_map(Structural kind) {
    switch (kind) {
    case Structural::P: return Morphism(W(), unit(), {Element{}});
    case Structural::Zero: return Morphism(unit(), W(), {});
    case Structural::Plus: return Morphism(power(2), W(), {Element::monomial(1), Element::monomial(1)});
    case Structural::Ell: return Morphism(W(), tensor(W(), W()), {Element::monomial(0b11)});
    case Structural::Flip:
        return Morphism(tensor(W(), W()), tensor(W(), W()), {Element::monomial(0b10), Element::monomial(0b01)});
    }
    throw Error("InvalidStructural", "unknown structural kind");
}

Morphism structural_map(Structural kind, const Algebra& at) { return tensor(structural_map(kind), identity(at)); }

Morphism identity(const Algebra& a) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < a.generator_count(); ++i) images.push_back(Element::monomial(Monomial(1) << i));
    return Morphism(a, a, std::move(images));
}

Element apply(const Morphism& f, const Element& e) {
    Element r;
    for (const auto& [m, c] : e.coeffs) {
        if (f.source().index_of(m) < 0)
            throw CompositionMismatch(f.source().monomial_name(m) + " is not a basis monomial of the source");
        Element term = Element::constant(c);
        for (std::size_t i = 0; i < f.source().generator_count(); ++i)
            if (m >> i & 1) term = multiply(f.target(), term, f.images()[i]);
        r = add(r, term);
    }
    return r;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.target() != g.source())
        throw CompositionMismatch("cannot compose " + g.source().name() + " -> " + g.target().name() +
                                  " after " + f.source().name() + " -> " + f.target().name());
    std::vector<Element> images;
    images.reserve(f.images().size());
    for (const auto& e : f.images()) images.push_back(apply(g, e));
    return Morphism(f.source(), g.target(), std::move(images));
}

bool equals(const Morphism& f, const Morphism& g) { return f == g; }

Morphism tensor(const Morphism& f, const Morphism& g) {
    std::size_t shift = f.target().generator_count();
    std::vector<Element> images = f.images();
    for (const auto& e : g.images()) {
        Element s;
        for (const auto& [m, c] : e.coeffs) s.coeffs[m << shift] = c;
        images.push_back(std::move(s));
    }
    return Morphism(tensor(f.source(), g.source()), tensor(f.target(), g.target()), std::move(images));
}

linalg::Matrix basis_matrix(const Morphism& f) {
    const auto& src = f.source();
    const auto& dst = f.target();
    linalg::Matrix m(Domain::natural(), dst.dimension(), src.dimension());
    for (std::size_t col = 0; col < src.dimension(); ++col) {
        Element img = apply(f, Element::monomial(src.basis()[col]));
        for (const auto& [mono, c] : img.coeffs) m(static_cast<std::size_t>(dst.index_of(mono)), col) = mpq_class(c);
    }
    return m;
}

Morphism inverse(const Morphism& f) {
    std::size_t n = f.source().generator_count();
    if (f.target().generator_count() != n) throw InvalidWeilMorphism("not invertible: generator counts differ");
    std::vector<Element> images(n);
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = f.images()[i];
        if (e.coeffs.size() != 1 || e.coeffs.begin()->second != 1 || std::popcount(e.coeffs.begin()->first) != 1)
            throw InvalidWeilMorphism("not a generator permutation");
        std::size_t j = static_cast<std::size_t>(std::countr_zero(e.coeffs.begin()->first));
        if (hit[j]) throw InvalidWeilMorphism("not a generator permutation");
        hit[j] = true;
        images[j] = Element::monomial(Monomial(1) << i);
    }
    return Morphism(f.target(), f.source(), std::move(images));
}

Algebra weil_tangent(const Algebra& a) { return tensor(W(), a); }
Morphism weil_tangent(const Morphism& f) { return tensor(identity(W()), f); }

Morphism projection(std::size_t n, std::size_t i) {
    std::vector<Element> images(n);
    images[i] = Element::monomial(1);
    return Morphism(power(n), W(), std::move(images));
}

Morphism augmentation(const Algebra& a) {
    return Morphism(a, unit(), std::vector<Element>(a.generator_count()));
}

Morphism unit_map(const Algebra& a) { return Morphism(unit(), a, {}); }

Morphism product_projection(std::size_t m, std::size_t n, bool second) {
    std::vector<Element> images(m + n);
    if (!second)
        for (std::size_t i = 0; i < m; ++i) images[i] = Element::monomial(Monomial(1) << i);
    else
        for (std::size_t i = 0; i < n; ++i) images[m + i] = Element::monomial(Monomial(1) << i);
    return Morphism(power(m + n), power(second ? n : m), std::move(images));
}

std::vector<Algebra> enumerate_algebras(std::size_t max_generators) {
    std::vector<Algebra> out;
    for (std::size_t n = 0; n <= max_generators; ++n) {
        std::vector<std::size_t> rgs(n, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t used) {
            if (pos == n) {
                out.emplace_back(rgs);
                return;
            }
            for (std::size_t c = 0; c <= used && c < n; ++c) {
                rgs[pos] = c;
                rec(pos + 1, std::max(used, c + 1));
            }
        };
        rec(0, 0);
    }
    return out;
}

std::string to_string(const Morphism& f) {
    std::ostringstream os;
    os << f.source().name() << " -> " << f.target().name() << " {";
    for (std::size_t i = 0; i < f.images().size(); ++i) {
        if (i) os << ", ";
        os << "x" << i + 1 << " |-> " << to_string(f.target(), f.images()[i]);
    }
    os << "}";
    return os.str();
}

} // namespace tangentcat::weil
