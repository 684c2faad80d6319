#include "tangentcat/polycat.hpp"

#include "tangentcat/errors.hpp"
#include "tangentcat/nbullet.hpp"

namespace tangentcat::poly {

PolyMorphism::PolyMorphism(Domain dom, std::size_t source, std::vector<Polynomial> components)
    : dom_(dom), source_(source), comps_(std::move(components)) {
    for (const auto& c : comps_) {
        if (c.domain() != dom_) throw DomainMismatch("component over " + c.domain().tag() + " in a " + dom_.tag() + " morphism");
        if (c.variable_count() != source_)
            throw ArityMismatch("component in " + std::to_string(c.variable_count()) + " variables, expected " +
                                std::to_string(source_));
    }
}

std::string PolyMorphism::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (i) s += ", ";
        s += comps_[i].to_string();
    }
    return s + ")";
}

PolyMorphism identity(Domain dom, std::size_t m) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < m; ++i) comps.push_back(Polynomial::variable(dom, m, i));
    return PolyMorphism(dom, m, std::move(comps));
}

PolyMorphism compose(const PolyMorphism& g, const PolyMorphism& f) {
    if (g.domain() != f.domain()) throw DomainMismatch(g.domain().tag() + " after " + f.domain().tag());
    if (g.source() != f.target())
        throw ArityMismatch("composing F^" + std::to_string(g.source()) + " -> F^" + std::to_string(g.target()) +
                            " after F^" + std::to_string(f.source()) + " -> F^" + std::to_string(f.target()));
    std::vector<Polynomial> comps;
    comps.reserve(g.target());
    for (const auto& c : g.components()) comps.push_back(substitute(c, f.components(), f.source()));
    return PolyMorphism(f.domain(), f.source(), std::move(comps));
}

bool equals(const PolyMorphism& f, const PolyMorphism& g) {
    if (f.domain() != g.domain()) throw DomainMismatch(f.domain().tag() + " vs " + g.domain().tag());
    return f == g;
}

PolyMorphism parse_morphism(Domain dom, std::size_t arity, const std::vector<std::string>& components) {
    std::vector<Polynomial> comps;
    for (const auto& c : components) comps.push_back(parse(c, dom, arity));
    return PolyMorphism(dom, arity, std::move(comps));
}

std::vector<std::vector<Polynomial>> jacobian(const PolyMorphism& f) {
    std::vector<std::vector<Polynomial>> j;
    for (const auto& c : f.components()) {
        std::vector<Polynomial> row;
        for (std::size_t i = 0; i < f.source(); ++i) row.push_back(partial(c, i));
        j.push_back(std::move(row));
    }
    return j;
}

namespace {

// Re-express a polynomial in `nvars` variables, sending x_i to x_{offset+i}.
Polynomial shift(const Polynomial& p, std::size_t nvars, std::size_t offset) {
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < p.variable_count(); ++i) vars.push_back(Polynomial::variable(p.domain(), nvars, offset + i));
    return substitute(p, vars, nvars);
}

// I_d (x) m, the action of a linear map on d stacked blocks.
linalg::Matrix block_diagonal(const linalg::Matrix& m, std::size_t d) {
    linalg::Matrix r(m.domain(), d * m.rows(), d * m.cols());
    for (std::size_t b = 0; b < d; ++b)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r(b * m.rows() + i, b * m.cols() + j) = m(i, j);
    return r;
}

} // namespace

PolyMorphism tangent_power(const PolyMorphism& f, std::size_t n) {
    if (auto lin = linear_part(f)) return from_matrix(f.domain(), block_diagonal(*lin, n + 1));
    const Domain& dom = f.domain();
    std::size_t m = f.source();
    weil::Algebra a = weil::power(n);
    std::size_t d = a.dimension();
    std::size_t nvars = m * d;
    auto jac = jacobian(f);
    std::vector<std::vector<Polynomial>> jac_shifted(jac.size());
    for (std::size_t r = 0; r < jac.size(); ++r)
        for (const auto& p : jac[r]) jac_shifted[r].push_back(shift(p, nvars, 0));
    std::vector<Polynomial> comps;
    for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t r = 0; r < f.target(); ++r) {
            if (b == 0) {
                comps.push_back(shift(f.components()[r], nvars, 0));
                continue;
            }
            Polynomial acc(dom, nvars);
            for (std::size_t i = 0; i < m; ++i) {
                if (jac_shifted[r][i].is_zero()) continue;
                acc = acc + jac_shifted[r][i] * Polynomial::variable(dom, nvars, b * m + i);
            }
            comps.push_back(std::move(acc));
        }
    }
    return PolyMorphism(dom, nvars, std::move(comps));
}

PolyMorphism tangent(const PolyMorphism& f) { return tangent_power(f, 1); }

PolyMorphism from_matrix(Domain dom, const linalg::Matrix& m) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Polynomial p(dom, m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            Exponent e(m.cols(), 0);
            e[j] = 1;
            p.add_term(e, m(i, j));
        }
        comps.push_back(std::move(p));
    }
    return PolyMorphism(dom, m.cols(), std::move(comps));
}

std::optional<linalg::Matrix> linear_part(const PolyMorphism& f) {
    linalg::Matrix m(f.domain(), f.target(), f.source());
    for (std::size_t i = 0; i < f.target(); ++i)
        for (const auto& [e, c] : f.components()[i].terms()) {
            std::size_t deg = 0, at = 0;
            for (std::size_t j = 0; j < e.size(); ++j)
                if (e[j]) {
                    deg += e[j];
                    at = j;
                }
            if (deg != 1) return std::nullopt;
            m(i, at) = c;
        }
    return m;
}

PolyMorphism structural(Domain dom, weil::Structural kind, std::size_t k) {
    return from_matrix(dom, nbullet::structural(kind, k).to_linear());
}

std::size_t weil_action(const weil::Algebra& a, std::size_t k) { return a.dimension() * k; }

PolyMorphism weil_action_on_theta(Domain dom, const weil::Morphism& theta, std::size_t k) {
    return from_matrix(dom, nbullet::weil_action_on_theta(theta, k).to_linear());
}

PolyMorphism weil_action_on_f(const weil::Algebra& a, const PolyMorphism& f) {
    if (a.generator_count() == 0) return f;
    if (auto lin = linear_part(f)) return from_matrix(f.domain(), block_diagonal(*lin, a.dimension()));
    auto dec = weil::decompose(a);
    if (!weil::is_canonical(a)) {
        weil::Algebra canon = dec.iso.source();
        PolyMorphism inner = weil_action_on_f(canon, f);
        return compose(weil_action_on_theta(f.domain(), dec.iso, f.target()),
                       compose(inner, weil_action_on_theta(f.domain(), weil::inverse(dec.iso), f.source())));
    }
    if (dec.blocks.size() == 1) return tangent_power(f, dec.blocks[0]);
    std::vector<std::size_t> rest(dec.blocks.begin() + 1, dec.blocks.end());
    return tangent_power(weil_action_on_f(weil::recompose(rest), f), dec.blocks[0]);
}

} // namespace tangentcat::poly
