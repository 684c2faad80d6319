#include "tangentcat/errors.hpp"
#include "tangentcat/report.hpp"
#include "tangentcat/weil.hpp"

#include <doctest.h>

using namespace tangentcat;
using namespace tangentcat::weil;

namespace {

std::vector<Monomial> monomials(std::initializer_list<Monomial> ms) { return ms; }

Element poly_element(std::initializer_list<std::pair<Monomial, long>> terms) {
    Element e;
    for (auto [m, c] : terms) e = add(e, Element::monomial(m, c));
    return e;
}

// Independent basis count: subsets of generators with no two related.
std::size_t count_independent(const Algebra& a) {
    std::size_t n = a.generator_count(), count = 0;
    for (Monomial m = 0; m < (Monomial{1} << n); ++m) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                if ((m >> i & 1) && (m >> j & 1) && a.related(i, j)) ok = false;
        count += ok;
    }
    return count;
}

} // namespace

TEST_CASE("make_algebra builds W, the unit and W tensor W") {
    Algebra w = make_algebra(1, {{1, 1}});
    CHECK(w.basis() == monomials({0, 1}));
    CHECK(w == W());
    CHECK(make_algebra(0, {}).dimension() == 1);
    Algebra ww = make_algebra(2, {{1, 1}, {2, 2}});
    CHECK(ww.dimension() == 4);
    CHECK(ww == tensor(W(), W()));
}

TEST_CASE("make_algebra rejects relations that are not equivalences") {
    CHECK_THROWS_AS(make_algebra(2, {{1, 1}}), RelationNotEquivalence);
    CHECK_THROWS_AS(make_algebra(3, {{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}}), RelationNotEquivalence);
}

TEST_CASE("tensor and product") {
    CHECK(tensor(W(), unit()) == W());
    Algebra wxw = product(W(), W());
    CHECK(wxw.dimension() == 3);
    CHECK(wxw == power(2));
    CHECK(tensor(W(), W()).dimension() == 4);
    CHECK_THROWS_AS(product(tensor(W(), W()), W()), ProductUndefined);
}

TEST_CASE("dimensions agree with basis enumeration") {
    for (std::size_t n = 0; n <= 8; ++n) CHECK(power(n).dimension() == n + 1);
    for (const auto& a : enumerate_algebras(4)) {
        CHECK(a.dimension() == count_independent(a));
        CHECK(weil_tangent(a).dimension() == 2 * a.dimension());
        for (const auto& b : enumerate_algebras(2)) CHECK(tensor(a, b).dimension() == a.dimension() * b.dimension());
    }
}

TEST_CASE("decompose") {
    CHECK(decompose(tensor(W(), W())).blocks == std::vector<std::size_t>{1, 1});
    CHECK(decompose(product(W(), W())).blocks == std::vector<std::size_t>{2});
    CHECK(decompose(unit()).blocks.empty());
}

TEST_CASE("decompose and recompose give a generator permutation for every algebra up to six generators") {
    std::size_t seen = 0;
    for (const auto& a : enumerate_algebras(6)) {
        auto d = decompose(a);
        Algebra r = recompose(d.blocks);
        REQUIRE(d.iso.source() == r);
        REQUIRE(d.iso.target() == a);
        CHECK(equals(compose(inverse(d.iso), d.iso), identity(r)));
        CHECK(equals(compose(d.iso, inverse(d.iso)), identity(a)));
        for (const auto& img : d.iso.images()) {
            REQUIRE(img.coeffs.size() == 1);
            CHECK(__builtin_popcountll(img.coeffs.begin()->first) == 1);
            CHECK(img.coeffs.begin()->second == 1);
        }
        ++seen;
    }
    CHECK(seen == 1 + 1 + 2 + 5 + 15 + 52 + 203);
}

TEST_CASE("structural maps") {
    Morphism p = structural_map(Structural::P);
    Morphism z = structural_map(Structural::Zero);
    Morphism ell = structural_map(Structural::Ell);
    Morphism c = structural_map(Structural::Flip);
    CHECK(apply(p, poly_element({{1, 4}, {0, 7}})) == Element::constant(7));
    CHECK(equals(compose(p, z), identity(unit())));
    CHECK(apply(ell, poly_element({{1, 2}, {0, 3}})) == poly_element({{3, 2}, {0, 3}}));
    CHECK(apply(c, Element::monomial(1)) == Element::monomial(2));
    CHECK(apply(c, Element::monomial(2)) == Element::monomial(1));
    CHECK(apply(c, Element::monomial(3)) == Element::monomial(3));
    CHECK(equals(compose(c, c), identity(tensor(W(), W()))));
    CHECK(equals(compose(c, ell), ell));
}

TEST_CASE("composition with identities on random morphisms") {
    Rng rng(11);
    auto algebras = enumerate_algebras(3);
    for (int t = 0; t < 100; ++t) {
        const auto& a = algebras[rng.below(algebras.size())];
        const auto& b = algebras[rng.below(algebras.size())];
        std::vector<Element> images;
        for (std::size_t i = 0; i < a.generator_count(); ++i) {
            Element e;
            for (std::size_t k = 1; k < b.dimension(); ++k)
                if (rng.chance(1, 3)) e = add(e, Element::monomial(b.basis()[k], rng.between(1, 3)));
            images.push_back(e);
        }
        try {
            Morphism f(a, b, images);
            CHECK(equals(compose(f, identity(a)), f));
            CHECK(equals(compose(identity(b), f), f));
        } catch (const InvalidWeilMorphism&) {
            // Random images of related generators may multiply to nonzero.
        }
    }
}

TEST_CASE("images violating a relation are rejected") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        // x -> c + (monomials) over W (x) W: a nonzero constant squares to nonzero.
        Element e = Element::constant(rng.between(1, 4));
        if (rng.chance(1, 2)) e = add(e, Element::monomial(1));
        CHECK_THROWS_AS(Morphism(W(), tensor(W(), W()), {e}), InvalidWeilMorphism);
    }
    CHECK_THROWS_AS(Morphism(W(), tensor(W(), W()), {poly_element({{1, 1}, {2, 1}})}), InvalidWeilMorphism);
    CHECK_NOTHROW(Morphism(W(), tensor(W(), W()), {poly_element({{1, 1}, {3, 2}})}));
}

TEST_CASE("weil_tangent on objects and morphisms") {
    CHECK(weil_tangent(unit()) == W());
    CHECK(weil_tangent(W()) == tensor(W(), W()));
    Morphism p = structural_map(Structural::P);
    CHECK(equals(weil_tangent(p), tensor(identity(W()), p)));
}

TEST_CASE("basis matrices compose") {
    Morphism ell = structural_map(Structural::Ell);
    Morphism c = structural_map(Structural::Flip);
    Morphism p = structural_map(Structural::P);
    Morphism z = structural_map(Structural::Zero);
    CHECK(basis_matrix(compose(c, ell)) == basis_matrix(c) * basis_matrix(ell));
    CHECK(basis_matrix(compose(p, z)) == linalg::Matrix::identity(Domain::natural(), 1));
    CHECK(basis_matrix(compose(z, p)) == basis_matrix(z) * basis_matrix(p));
}
