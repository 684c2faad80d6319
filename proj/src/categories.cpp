#include "tangentcat/categories.hpp"

#include "tangentcat/errors.hpp"

namespace tangentcat {

namespace {

nlohmann::json integer_json(const mpz_class& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

nlohmann::json matrix_json(const linalg::Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const mpq_class& v = m(i, j);
            if (v.get_den() == 1) row.push_back(integer_json(v.get_num()));
            else row.push_back(format_value(v));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Row combine_rows(const Domain& dom, const Row& coeffs, const std::vector<Row>& comps, std::size_t width) {
    Row r(width);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        for (std::size_t c = 0; c < width; ++c)
            if (comps[j][c] != 0) r[c] = dom.add(r[c], coeffs[j] * comps[j][c]);
    }
    return r;
}

bool applies(const std::optional<StructuralMutation>& m, weil::Structural kind, std::size_t rows, std::size_t cols) {
    return m && m->kind == kind && m->row < rows && m->col < cols;
}

} // namespace

// N-bullet

NBulletCategory::Morphism NBulletCategory::compose(const Morphism& g, const Morphism& f) const {
    if (g.cols() != f.rows())
        throw CompositionMismatch("N^" + std::to_string(g.cols()) + " -> N^" + std::to_string(g.rows()) + " after N^" +
                                  std::to_string(f.cols()) + " -> N^" + std::to_string(f.rows()));
    return g * f;
}

NBulletCategory::Morphism NBulletCategory::structural(weil::Structural kind, Object k) const {
    Morphism m = nbullet::structural(kind, k);
    if (applies(mutation, kind, m.rows(), m.cols())) m = perturb(m, mutation->row, mutation->col);
    return m;
}

NBulletCategory::Morphism NBulletCategory::tangent_power_projection(std::size_t n, std::size_t i, Object k) const {
    if (i >= n) throw ArityMismatch("projection " + std::to_string(i) + " of T_" + std::to_string(n));
    return nbullet::vstack({nbullet::block_projection(n + 1, k, 0), nbullet::block_projection(n + 1, k, i + 1)},
                           (n + 1) * k);
}

std::vector<NBulletCategory::Component> NBulletCategory::components(const Morphism& f) const {
    std::vector<Component> rows(f.rows(), Component(f.cols()));
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) rows[i][j] = f(i, j);
    return rows;
}

NBulletCategory::Morphism NBulletCategory::assemble(Object src, Object dst, const std::vector<Component>& comps) const {
    if (comps.size() != dst) throw ArityMismatch("assembling " + std::to_string(comps.size()) + " rows into N^" + std::to_string(dst));
    Morphism m(dst, src);
    for (std::size_t i = 0; i < dst; ++i) {
        if (comps[i].size() != src) throw ArityMismatch("row width differs from source rank");
        for (std::size_t j = 0; j < src; ++j) {
            if (comps[i][j].get_den() != 1 || comps[i][j] < 0)
                throw DomainError("entry " + format_value(comps[i][j]) + " is not a natural number");
            m.set(i, j, comps[i][j].get_num());
        }
    }
    return m;
}

NBulletCategory::Component NBulletCategory::combine(const Row& coeffs, const std::vector<Component>& comps, Object src) const {
    return combine_rows(Domain::rational(), coeffs, comps, src);
}

NBulletCategory::Morphism NBulletCategory::sample(Object src, Object dst, Rng& rng) const {
    Morphism m(dst, src);
    for (std::size_t i = 0; i < dst; ++i)
        for (std::size_t j = 0; j < src; ++j) m.set(i, j, rng.between(0, sampling.max_entry));
    return m;
}

nlohmann::json NBulletCategory::serialize(const Morphism& f) const {
    return {{"source", f.cols()}, {"target", f.rows()}, {"matrix", matrix_json(f.to_linear())}};
}

NBulletCategory::Morphism NBulletCategory::perturb(const Morphism& f, std::size_t row, std::size_t col) const {
    Morphism m = f;
    m.set(row, col, f(row, col) + 1);
    return m;
}

// Poly_F

PolyCategory::Morphism PolyCategory::structural(weil::Structural kind, Object k) const {
    Morphism m = poly::structural(dom_, kind, k);
    if (applies(mutation, kind, m.target(), m.source())) m = perturb(m, mutation->row, mutation->col);
    return m;
}

PolyCategory::Morphism PolyCategory::tangent_power_projection(std::size_t n, std::size_t i, Object k) const {
    return poly::from_matrix(dom_, NBulletCategory().tangent_power_projection(n, i, k).to_linear());
}

PolyCategory::Morphism PolyCategory::assemble(Object src, Object dst, const std::vector<Component>& comps) const {
    if (comps.size() != dst) throw ArityMismatch("assembling " + std::to_string(comps.size()) + " components into F^" + std::to_string(dst));
    return Morphism(dom_, src, comps);
}

PolyCategory::Component PolyCategory::combine(const Row& coeffs, const std::vector<Component>& comps, Object src) const {
    poly::Polynomial r(dom_, src);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (dom_.reduce(coeffs[j]) == 0) continue;
        for (const auto& [e, c] : comps[j].terms()) r.add_term(e, dom_.mul(dom_.reduce(coeffs[j]), c));
    }
    return r;
}

PolyCategory::Morphism PolyCategory::sample(Object src, Object dst, Rng& rng) const {
    std::vector<poly::Polynomial> comps;
    for (std::size_t r = 0; r < dst; ++r) {
        poly::Polynomial p(dom_, src);
        std::size_t terms = rng.below(4);
        for (std::size_t t = 0; t < terms; ++t) {
            poly::Exponent e(src, 0);
            std::size_t deg = src == 0 ? 0 : rng.below(sampling.degree + 1);
            for (std::size_t u = 0; u < deg; ++u) ++e[rng.below(src)];
            mpq_class c;
            switch (dom_.kind()) {
            case DomainKind::Natural:
                c = rng.between(1, 3);
                break;
            case DomainKind::Modular:
                c = rng.between(1, static_cast<long>(dom_.prime()) - 1);
                break;
            case DomainKind::Rational: {
                long num = rng.between(1, 3) * (rng.chance(1, 2) ? -1 : 1);
                static const long dens[] = {1, 1, 1, 2, 3};
                c = mpq_class(num, dens[rng.below(5)]);
                c.canonicalize();
                break;
            }
            }
            p.add_term(e, c);
        }
        comps.push_back(std::move(p));
    }
    return Morphism(dom_, src, std::move(comps));
}

nlohmann::json PolyCategory::serialize(const Morphism& f) const {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : f.components()) comps.push_back(c.to_string());
    return {{"domain", dom_.tag()}, {"source", f.source()}, {"components", std::move(comps)}};
}

PolyCategory::Morphism PolyCategory::perturb(const Morphism& f, std::size_t row, std::size_t col) const {
    auto comps = f.components();
    comps[row] = comps[row] + poly::Polynomial::variable(dom_, f.source(), col);
    return Morphism(dom_, f.source(), std::move(comps));
}

// Weil

WeilCategory::Morphism WeilCategory::tangent_power_projection(std::size_t n, std::size_t i, const Object& a) const {
    return weil::tensor(weil::projection(n, i), weil::identity(a));
}

std::vector<WeilCategory::Component> WeilCategory::components(const Morphism& f) const {
    linalg::Matrix m = weil::basis_matrix(f);
    std::vector<Component> rows(m.rows(), Component(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

WeilCategory::Morphism WeilCategory::assemble(const Object& src, const Object& dst, const std::vector<Component>& comps) const {
    if (comps.size() != dst.dimension()) throw ArityMismatch("assembling rows into " + dst.name());
    std::vector<weil::Element> images;
    for (std::size_t g = 0; g < src.generator_count(); ++g) {
        long col = src.index_of(weil::Monomial(1) << g);
        weil::Element e;
        for (std::size_t r = 0; r < comps.size(); ++r) {
            const mpq_class& v = comps[r][static_cast<std::size_t>(col)];
            if (v == 0) continue;
            if (v.get_den() != 1 || v < 0) throw DomainError("coefficient " + format_value(v) + " is not a natural number");
            e.coeffs[dst.basis()[r]] = v.get_num();
        }
        images.push_back(std::move(e));
    }
    Morphism f(src, dst, std::move(images));
    if (components(f) != comps) throw PullbackUnavailable("coordinates do not define a Weil morphism " + src.name() + " -> " + dst.name());
    return f;
}

WeilCategory::Component WeilCategory::combine(const Row& coeffs, const std::vector<Component>& comps, const Object& src) const {
    return combine_rows(Domain::rational(), coeffs, comps, src.dimension());
}

WeilCategory::Morphism WeilCategory::sample(const Object& src, const Object& dst, Rng& rng) const {
    std::size_t n = src.generator_count();
    std::vector<weil::Element> images(n);
    std::vector<weil::Monomial> nonunit(dst.basis().begin() + 1, dst.basis().end());
    std::size_t classes = src.class_count();
    for (std::size_t cls = 0; cls < classes; ++cls) {
        std::vector<std::size_t> members;
        for (std::size_t g = 0; g < n; ++g)
            if (src.classes()[g] == cls) members.push_back(g);
        for (int attempt = 0; attempt < 8 && !nonunit.empty(); ++attempt) {
            std::vector<weil::Element> trial;
            for (std::size_t k = 0; k < members.size(); ++k) {
                if (rng.chance(1, 4)) {
                    trial.emplace_back();
                    continue;
                }
                trial.push_back(weil::Element::monomial(nonunit[rng.below(nonunit.size())], rng.between(1, 2)));
            }
            bool ok = true;
            for (std::size_t a = 0; a < trial.size() && ok; ++a)
                for (std::size_t b = a; b < trial.size() && ok; ++b)
                    if (!weil::multiply(dst, trial[a], trial[b]).is_zero()) ok = false;
            if (!ok) continue;
            for (std::size_t k = 0; k < members.size(); ++k) images[members[k]] = trial[k];
            break;
        }
    }
    return Morphism(src, dst, std::move(images));
}

nlohmann::json WeilCategory::serialize(const Morphism& f) const {
    nlohmann::json images = nlohmann::json::array();
    for (const auto& e : f.images()) images.push_back(weil::to_string(f.target(), e));
    return {{"source", f.source().name()}, {"target", f.target().name()}, {"images", std::move(images)}};
}

} // namespace tangentcat
