#include "tangentcat/bundles.hpp"

#include <doctest.h>

using namespace tangentcat;
using nbullet::NMatrix;

namespace {

struct RandomMap {
    poly::PolyMorphism f;
    poly::PolyMorphism g;
};

// (x, e) |-> (G x, H x + K e + c e_j^p) between trivial bundles over Z/p.
RandomMap random_map(const Domain& dom, std::size_t m, std::size_t v, std::size_t m2, std::size_t v2, Rng& rng) {
    const long p = static_cast<long>(dom.prime());
    const bool h_zero = rng.chance(1, 2);
    const bool frobenius = rng.chance(1, 3);
    linalg::Matrix full(dom, m2 + v2, m + v), base(dom, m2, m);
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < m; ++j) full(i, j) = base(i, j) = dom.from_integer(rng.between(0, p - 1));
    for (std::size_t i = 0; i < v2; ++i) {
        for (std::size_t j = 0; j < m && !h_zero; ++j) full(m2 + i, j) = dom.from_integer(rng.between(0, p - 1));
        for (std::size_t j = 0; j < v; ++j) full(m2 + i, m + j) = dom.from_integer(rng.between(0, p - 1));
    }
    auto f = poly::from_matrix(dom, full);
    if (frobenius && v > 0 && v2 > 0) {
        auto comps = f.components();
        poly::Exponent e(m + v, 0);
        e[m + rng.below(v)] = static_cast<std::uint32_t>(p);
        comps[m2 + rng.below(v2)].add_term(e, dom.from_integer(rng.between(1, p - 1)));
        f = poly::PolyMorphism(dom, m + v, comps);
    }
    return {f, poly::from_matrix(dom, base)};
}

} // namespace

TEST_CASE("the trivial bundle over N^0 with fiber N^1 is the differential object N^1") {
    NBulletCategory cat;
    auto b = trivial_bundle(cat, 0, 1);
    auto d = nbullet::diff_object(1);
    CHECK(b.E == 1);
    CHECK(b.M == 0);
    CHECK(b.q == NMatrix(0, 1));
    CHECK(b.zeta == d.zeta);
    CHECK(b.sigma == d.sigma);
    CHECK(b.lambda == d.lambda);
    CHECK(b.sigma == NMatrix{{1, 1}});
}

TEST_CASE("trivial bundle coordinates in Poly") {
    PolyCategory pq(Domain::rational());
    auto b = trivial_bundle(pq, 1, 1);
    CHECK(b.E == 2);
    CHECK(b.M == 1);
    CHECK(b.q == poly::parse_morphism(Domain::rational(), 2, {"x0"}));

    Domain z3 = Domain::modular(3);
    PolyCategory pz(z3);
    auto c = trivial_bundle(pz, 2, 1);
    CHECK(c.E == 3);
    CHECK(c.lambda == poly::parse_morphism(z3, 3, {"x0", "x1", "0", "0", "0", "x2"}));
    CHECK(check_differential_bundle(pz, c).ok());
}

TEST_CASE("differential objects of N-bullet up to rank 4 pass") {
    NBulletCategory cat;
    for (std::size_t k = 0; k <= 4; ++k) {
        auto rep = check_differential_bundle(cat, diff_object_bundle(cat, k));
        INFO(k);
        CHECK(rep.ok());
        CHECK(rep.passed() > 0);
    }
}

TEST_CASE("trivial bundles of rank up to 3 pass in every coordinate category") {
    NBulletCategory nb;
    PolyCategory pq(Domain::rational());
    std::vector<PolyCategory> zp = {PolyCategory(Domain::modular(2)), PolyCategory(Domain::modular(3)),
                                    PolyCategory(Domain::modular(5))};
    BundleCheckOptions opts;
    opts.depth = 1;
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t v = 0; v <= 3; ++v) {
            INFO(m << " " << v);
            CHECK(check_differential_bundle(nb, trivial_bundle(nb, m, v), opts).ok());
            CHECK(check_differential_bundle(pq, trivial_bundle(pq, m, v), opts).ok());
            for (const auto& cat : zp)
                if (m + v <= 3) CHECK(check_differential_bundle(cat, trivial_bundle(cat, m, v), opts).ok());
        }
}

TEST_CASE("symmetric universality and the informational isomorphism hold for differential objects") {
    NBulletCategory cat;
    BundleCheckOptions opts;
    opts.symmetric = true;
    opts.informational = true;
    for (std::size_t k = 1; k <= 3; ++k) CHECK(check_differential_bundle(cat, diff_object_bundle(cat, k), opts).ok());
}

TEST_CASE("a wrong lift fails") {
    NBulletCategory cat;
    auto b = diff_object_bundle(cat, 1);
    b.lambda = NMatrix{{1}, {1}};
    auto rep = check_differential_bundle(cat, b);
    CHECK(rep.failed() > 0);
    for (const auto& [name, r] : rep.results())
        if (!r.pass) CHECK(!r.counterexample.is_null());
}

TEST_CASE("the checker needs E_3") {
    NBulletCategory cat;
    CHECK_THROWS_AS(check_differential_bundle(cat, diff_object_bundle(cat, 1, 2)), ProviderBoundTooSmall);
}

TEST_CASE("Frobenius is additive but not linear") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Domain dom = Domain::modular(p);
        PolyCategory cat(dom);
        auto b = diff_object_bundle(cat, 1);
        auto frob = poly::parse_morphism(dom, 1, {"x0^" + std::to_string(p)});
        auto c = classify_morphism(cat, b, b, frob, cat.identity(0));
        INFO(p);
        CHECK(c.bundle);
        CHECK(c.additive);
        CHECK(!c.linear);
        CHECK(c.cls == MorphismClass::Additive);
        CHECK(c.summary().find("additive: yes, linear: no") != std::string::npos);

        auto id = classify_morphism(cat, b, b, cat.identity(1), cat.identity(0));
        CHECK(id.cls == MorphismClass::Linear);
    }
}

TEST_CASE("a quadratic map is a bundle morphism only") {
    Domain q = Domain::rational();
    PolyCategory cat(q);
    auto b = diff_object_bundle(cat, 1);
    auto c = classify_morphism(cat, b, b, poly::parse_morphism(q, 1, {"x0^2 + x0"}), cat.identity(0));
    CHECK(c.bundle);
    CHECK(!c.additive);
    CHECK(!c.linear);
    CHECK(c.cls == MorphismClass::Bundle);
    CHECK(std::string(morphism_class_name(c.cls)) == "bundle");
}

TEST_CASE("a map not over the base is no bundle morphism") {
    NBulletCategory cat;
    auto b = trivial_bundle(cat, 1, 1);
    auto c = classify_morphism(cat, b, b, NMatrix{{0, 1}, {1, 0}}, NMatrix{{1}});
    CHECK(c.cls == MorphismClass::None);
}

TEST_CASE("linear implies additive on 200 random morphisms") {
    Domain dom = Domain::modular(3);
    PolyCategory cat(dom);
    Rng rng(77);
    std::size_t counts[4] = {0, 0, 0, 0};
    for (int t = 0; t < 200; ++t) {
        std::size_t m = rng.below(3), v = rng.between(1, 2), m2 = rng.below(3), v2 = rng.between(1, 2);
        auto b = trivial_bundle(cat, m, v), b2 = trivial_bundle(cat, m2, v2);
        auto r = random_map(dom, m, v, m2, v2, rng);
        auto c = classify_morphism(cat, b, b2, r.f, r.g);
        if (c.linear) CHECK(c.additive);
        if (c.additive) CHECK(c.bundle);
        ++counts[static_cast<int>(c.cls)];
    }
    CHECK(counts[static_cast<int>(MorphismClass::Bundle)] > 0);
    CHECK(counts[static_cast<int>(MorphismClass::Additive)] > 0);
    CHECK(counts[static_cast<int>(MorphismClass::Linear)] > 0);
}

TEST_CASE("composites of additive maps are additive and of linear maps linear") {
    Domain dom = Domain::modular(3);
    PolyCategory cat(dom);
    Rng rng(78);
    std::size_t additive_pairs = 0, linear_pairs = 0;
    for (int t = 0; t < 100; ++t) {
        std::size_t m[3], v[3];
        for (int i = 0; i < 3; ++i) m[i] = rng.below(3), v[i] = rng.between(1, 2);
        std::vector<DifferentialBundle<PolyCategory>> bs;
        for (int i = 0; i < 3; ++i) bs.push_back(trivial_bundle(cat, m[i], v[i]));
        auto r1 = random_map(dom, m[0], v[0], m[1], v[1], rng);
        auto r2 = random_map(dom, m[1], v[1], m[2], v[2], rng);
        auto c1 = classify_morphism(cat, bs[0], bs[1], r1.f, r1.g);
        auto c2 = classify_morphism(cat, bs[1], bs[2], r2.f, r2.g);
        auto c = classify_morphism(cat, bs[0], bs[2], cat.compose(r2.f, r1.f), cat.compose(r2.g, r1.g));
        if (c1.additive && c2.additive) {
            ++additive_pairs;
            CHECK(c.additive);
        }
        if (c1.linear && c2.linear) {
            ++linear_pairs;
            CHECK(c.linear);
        }
    }
    CHECK(additive_pairs > 0);
    CHECK(linear_pairs > 0);
}
