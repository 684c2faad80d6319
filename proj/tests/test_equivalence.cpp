#include "oracles.hpp"

#include "tangentcat/equivalence.hpp"

#include <doctest.h>

using namespace tangentcat;
using nbullet::NMatrix;

TEST_CASE("lineator of the differential object N^1 at W") {
    NBulletCategory cat;
    auto b = diff_object_bundle(cat, 1, 8);
    auto F = ind(cat, b);
    // T(sigma) o <0 o pi_0, lambda o pi_1> written out on T(E_2) = N^4 (basis-major).
    NMatrix t_sigma = oracle::matrix(2, 4, {1, 1, 0, 0, 0, 0, 1, 1});
    NMatrix paired = oracle::matrix(4, 2, {1, 0, 0, 0, 0, 0, 0, 1});
    NMatrix expected = oracle::product(t_sigma, paired);
    CHECK(expected == NMatrix::identity(2));
    CHECK(F.lineator(weil::W(), 1) == expected);
}

TEST_CASE("lineator at the unit algebra is the identity") {
    NBulletCategory nb;
    PolyCategory pq(Domain::rational());
    auto b = diff_object_bundle(nb, 2, 8);
    auto t = trivial_bundle(pq, 1, 1, 8);
    auto F = ind(nb, b);
    auto G = ind(pq, t);
    for (std::size_t k = 0; k <= 3; ++k) {
        CHECK(F.lineator(weil::unit(), k) == nb.identity(F.object(k)));
        CHECK(pq.equal(G.lineator(weil::unit(), k), pq.identity(G.object(k))));
    }
}

TEST_CASE("lineator at W tensor W expands into four lifted terms") {
    NBulletCategory cat;
    auto b = diff_object_bundle(cat, 1, 8);
    auto F = ind(cat, b);
    // For the differential object N^1 the lineator at W (x) W is a
    // coordinate permutation N^4 -> T_{W (x) W} N^1 = N^4.
    NMatrix a = F.lineator(weil::tensor(weil::W(), weil::W()), 1);
    REQUIRE(a.rows() == 4);
    REQUIRE(a.cols() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        mpz_class row = 0, col = 0;
        for (std::size_t j = 0; j < 4; ++j) row += a(i, j), col += a(j, i);
        CHECK(row == 1);
        CHECK(col == 1);
    }
    auto rep = appendix_suite(cat, b, F);
    CHECK(rep.ok());
    bool expansion = false;
    for (const auto& [name, r] : rep.results())
        if (r.anchor == "appendix/tensor-expansion") expansion = true;
    CHECK(expansion);
}

TEST_CASE("hom-module laws") {
    NBulletCategory cat;
    auto b = diff_object_bundle(cat, 1, 8);
    auto pi0 = hom_element(cat, b, 2, NMatrix{{1, 0}});
    auto pi1 = hom_element(cat, b, 2, NMatrix{{0, 1}});
    CHECK(hom_scale(cat, b, 3, pi0).h == NMatrix{{3, 0}});
    CHECK(hom_add(cat, b, pi0, hom_zero(cat, b, 2)).h == pi0.h);
    CHECK(hom_add(cat, b, pi0, pi1).h == hom_add(cat, b, pi1, pi0).h);
    CHECK(hom_scale(cat, b, 0, pi1).h == hom_zero(cat, b, 2).h);

    PolyCategory pq(Domain::rational());
    auto t = trivial_bundle(pq, 1, 1, 8);
    CHECK_THROWS_AS(hom_element(pq, t, 2, poly::parse_morphism(Domain::rational(), 3, {"x0 + 1", "x1"})),
                    NotOverBase);
    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        auto fiber = [&] {
            return poly::parse_morphism(Domain::rational(), 3,
                                        {"x0", std::to_string(rng.between(0, 3)) + "*x1 + " +
                                                   std::to_string(rng.between(0, 3)) + "*x2 + x0^" +
                                                   std::to_string(rng.between(0, 2))});
        };
        auto f = hom_element(pq, t, 2, fiber());
        auto g = hom_element(pq, t, 2, fiber());
        auto h = hom_element(pq, t, 2, fiber());
        CHECK(pq.equal(hom_add(pq, t, f, g).h, hom_add(pq, t, g, f).h));
        CHECK(pq.equal(hom_add(pq, t, hom_add(pq, t, f, g), h).h, hom_add(pq, t, f, hom_add(pq, t, g, h)).h));
        CHECK(pq.equal(hom_add(pq, t, f, hom_zero(pq, t, 2)).h, f.h));
    }
}

TEST_CASE("Ind of a matrix uses the hom-module") {
    NBulletCategory cat;
    auto b = diff_object_bundle(cat, 2, 8);
    auto F = ind(cat, b);
    NMatrix a{{2, 1}};
    // E_2 = N^4 with blocks (e_1, e_2); 2 e_1 + e_2 acts coordinatewise on N^2.
    CHECK(F.morphism(a) == NMatrix({{2, 0, 1, 0}, {0, 2, 0, 1}}));
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        std::size_t i = rng.below(4), j = rng.below(4), k = rng.below(4);
        NMatrix f = oracle::random_matrix(rng, j, i, 3), g = oracle::random_matrix(rng, k, j, 3);
        CHECK(F.morphism(g * f) == F.morphism(g) * F.morphism(f));
    }
    CHECK(F.morphism(NMatrix::identity(3)) == NMatrix::identity(6));
}

TEST_CASE("Eval of the identity functor and the entry embedding") {
    NBulletCategory nb;
    auto e = eval(nb, identity_functor(nb));
    auto d = nbullet::diff_object(1);
    CHECK(e.E == 1);
    CHECK(e.M == 0);
    CHECK(e.sigma == d.sigma);
    CHECK(e.zeta == d.zeta);
    CHECK(e.lambda == d.lambda);

    PolyCategory pq(Domain::rational());
    auto p = eval(pq, entry_embedding(pq));
    auto ref = diff_object_bundle(pq, 1);
    CHECK(pq.equal(p.sigma, ref.sigma));
    CHECK(pq.equal(p.zeta, ref.zeta));
    CHECK(pq.equal(p.lambda, ref.lambda));
    CHECK(check_differential_bundle(pq, p).ok());
}

TEST_CASE("identity functor and entry embedding are strong differential functors") {
    NBulletCategory nb;
    PolyCategory pq(Domain::rational());
    FunctorCheckOptions opts;
    opts.samples = 20;
    auto i = identity_functor(nb);
    auto e = entry_embedding(pq);
    CHECK(i.strong);
    CHECK(e.strong);
    CHECK(check_differential_functor(nb, i, opts).ok());
    CHECK(check_differential_functor(pq, e, opts).ok());
}

TEST_CASE("Ind of bundles is a differential functor, strong over the terminal object") {
    NBulletCategory nb;
    PolyCategory pz(Domain::modular(5));
    FunctorCheckOptions opts;
    opts.samples = 20;
    auto d = ind(nb, diff_object_bundle(nb, 1, 8));
    CHECK(d.strong);
    CHECK(check_differential_functor(nb, d, opts).ok());
    auto t = ind(pz, trivial_bundle(pz, 1, 1, 8));
    CHECK(!t.strong);
    CHECK(check_differential_functor(pz, t, opts).ok());
}

TEST_CASE("round trip and appendix on small fixtures") {
    NBulletCategory nb;
    PolyCategory pq(Domain::rational());
    for (std::size_t k = 1; k <= 2; ++k) {
        auto b = diff_object_bundle(nb, k, 8);
        CHECK(round_trip(nb, b).ok());
        CHECK(appendix_suite(nb, b, ind(nb, b)).ok());
    }
    auto t = trivial_bundle(pq, 1, 1, 8);
    CHECK(round_trip(pq, t).ok());
    CHECK(appendix_suite(pq, t, ind(pq, t)).ok());
}

TEST_CASE("Eval of Ind needs the provider bound") {
    NBulletCategory nb;
    auto b = diff_object_bundle(nb, 1, 2);
    auto F = ind(nb, b);
    CHECK_THROWS_AS(F.object(3), ProviderBoundTooSmall);
}

TEST_CASE("lineators built with either nesting agree") {
    NBulletCategory nb;
    PolyCategory pz(Domain::modular(5));
    auto b = diff_object_bundle(nb, 2, 8);
    CHECK(check_lineator_uniqueness(nb, ind(nb, b, Nesting::Left), ind(nb, b, Nesting::Right), 8).ok());
    auto t = trivial_bundle(pz, 1, 1, 8);
    auto rep = check_lineator_uniqueness(pz, ind(pz, t, Nesting::Left), ind(pz, t, Nesting::Right), 8);
    CHECK(rep.ok());
    CHECK(rep.passed() > 0);
}

TEST_CASE("Ind on morphisms") {
    NBulletCategory nb;
    auto b = diff_object_bundle(nb, 1, 8);
    auto F = ind(nb, b);
    auto doubling = ind_morphism(nb, b, b, NMatrix{{2}}, NMatrix(0, 0));
    for (std::size_t k = 0; k <= 4; ++k) {
        NMatrix two(k, k);
        for (std::size_t i = 0; i < k; ++i) two.set(i, i, 2);
        CHECK(doubling.component(k) == two);
    }
    CHECK(doubling.linear);
    CHECK(check_transformation(nb, F, F, doubling).ok());

    auto id = ind_morphism(nb, b, b, NMatrix::identity(1), NMatrix(0, 0));
    for (std::size_t k = 0; k <= 3; ++k) CHECK(id.component(k) == NMatrix::identity(k));

    PolyCategory pq(Domain::rational());
    auto t = trivial_bundle(pq, 1, 1, 8);
    CHECK_THROWS_AS(ind_morphism(pq, t, t, poly::parse_morphism(Domain::rational(), 2, {"x0", "x1^2"}),
                                 pq.identity(1)),
                    NotAdditive);
}

TEST_CASE("Frobenius induces a natural transformation that is not linear") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Domain dom = Domain::modular(p);
        PolyCategory cat(dom);
        auto d = diff_object_bundle(cat, 1, 8);
        auto frob = poly::parse_morphism(dom, 1, {"x0^" + std::to_string(p)});
        auto phi = ind_morphism(cat, d, d, frob, cat.identity(0));
        CHECK(!phi.linear);
        CHECK(cat.equal(phi.component(1), frob));
        auto e = "x0^" + std::to_string(p), f = "x1^" + std::to_string(p);
        CHECK(cat.equal(phi.component(2), poly::parse_morphism(dom, 2, {e, f})));
        auto F = ind(cat, d);
        CHECK(check_transformation(cat, F, F, phi).ok());
        auto m = eval_morphism(cat, F, F, phi);
        CHECK(m.classification.cls == MorphismClass::Additive);
    }
}

TEST_CASE("Eval of a linear transformation classifies linear") {
    NBulletCategory nb;
    auto b = diff_object_bundle(nb, 2, 8);
    auto F = ind(nb, b);
    auto phi = ind_morphism(nb, b, b, NMatrix{{1, 1}, {0, 1}}, NMatrix(0, 0));
    CHECK(phi.linear);
    CHECK(eval_morphism(nb, F, F, phi).classification.cls == MorphismClass::Linear);
}

TEST_CASE("Ind preserves composites of additive morphisms up to N^3") {
    Domain dom = Domain::modular(3);
    PolyCategory cat(dom);
    auto b1 = trivial_bundle(cat, 1, 1, 8);
    auto b2 = trivial_bundle(cat, 1, 2, 8);
    auto b3 = trivial_bundle(cat, 2, 1, 8);
    auto f1 = poly::parse_morphism(dom, 2, {"2*x0", "x1^3", "x1 + x1^3"});
    auto g1 = poly::parse_morphism(dom, 1, {"2*x0"});
    auto f2 = poly::parse_morphism(dom, 3, {"x0", "x0 + 1", "x1 + 2*x2"});
    auto g2 = poly::parse_morphism(dom, 1, {"x0", "x0 + 1"});
    auto phi = ind_morphism(cat, b1, b2, f1, g1);
    auto psi = ind_morphism(cat, b2, b3, f2, g2);
    auto both = ind_morphism(cat, b1, b3, cat.compose(f2, f1), cat.compose(g2, g1));
    auto composed = compose_transformations(cat, psi, phi);
    for (std::size_t k = 0; k <= 3; ++k) CHECK(cat.equal(both.component(k), composed.component(k)));
}

TEST_CASE("determinism check") {
    NBulletCategory nb;
    auto b = diff_object_bundle(nb, 1, 8);
    auto flat = ind_morphism(nb, b, b, NMatrix{{3}}, NMatrix(0, 0), PairingOrder::Flat);
    auto nested = ind_morphism(nb, b, b, NMatrix{{3}}, NMatrix(0, 0), PairingOrder::Nested);
    CHECK(determinism_check(nb, flat, nested, 4).ok());
    CHECK(determinism_check(nb, flat, flat, 4).ok());
    auto perturbed = nested;
    perturbed.component = [inner = nested.component, &nb](std::size_t k) {
        auto m = inner(k);
        return k == 2 ? nb.perturb(m, 0, 1) : m;
    };
    auto rep = determinism_check(nb, flat, perturbed, 4);
    CHECK(rep.failed() == 1);
}

TEST_CASE("Eval rejects a functor without lineator") {
    NBulletCategory nb;
    auto f = identity_functor(nb);
    f.lineator = nullptr;
    CHECK_THROWS_AS(eval(nb, f), NotADifferentialFunctor);
}

TEST_CASE("small algebras") {
    auto algebras = small_algebras(4);
    for (const auto& a : algebras) {
        CHECK(a.dimension() <= 4);
        CHECK(a.generator_count() <= 3);
    }
    CHECK(algebras.size() == 1 + 1 + 2 + 1);
}
