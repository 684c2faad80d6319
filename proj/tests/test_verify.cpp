#include "tangentcat/categories.hpp"
#include "tangentcat/verify.hpp"

#include <doctest.h>

using namespace tangentcat;
using nbullet::NMatrix;
using W = weil::Structural;

namespace {

template <class C>
CheckReport run(const C& cat, const std::vector<typename C::Object>& objects, std::size_t samples,
                std::uint64_t seed = 1) {
    Rng rng(seed);
    return check_tangent_category(cat, objects, sample_morphisms(cat, objects, samples, rng));
}

void require_failures_carry_counterexamples(const CheckReport& rep) {
    for (const auto& [name, r] : rep.results())
        if (!r.pass) {
            INFO(name);
            CHECK(r.counterexample.is_object());
            CHECK(!r.counterexample.empty());
        }
}

} // namespace

TEST_CASE("the tangent bundle of N^1 is an additive bundle") {
    NBulletCategory cat;
    CheckReport rep;
    check_additive_bundle(cat, tangent_bundle(cat, std::size_t{1}), "T(N^1)/", rep);
    CHECK(rep.failed() == 0);
    CHECK(rep.passed() >= 5);
}

TEST_CASE("swapping the rows of + breaks unitality") {
    NBulletCategory cat;
    auto b = tangent_bundle(cat, std::size_t{1});
    b.sigma = NMatrix{{0, 1, 1}, {1, 0, 0}};
    CheckReport rep;
    check_additive_bundle(cat, b, "swap/", rep);
    const CheckResult* unit = rep.find("swap/unitality");
    REQUIRE(unit);
    CHECK(!unit->pass);
    CHECK(unit->counterexample.contains("lhs"));
    CHECK(unit->counterexample.contains("rhs"));
}

TEST_CASE("built-in tangent categories pass at small sizes") {
    CHECK(run(NBulletCategory{}, {0, 1, 2}, 20).ok());
    CHECK(run(PolyCategory(Domain::rational()), {0, 1, 2}, 20).ok());
    CHECK(run(PolyCategory(Domain::modular(3)), {0, 1, 2}, 20).ok());
    CHECK(run(WeilCategory{}, weil::enumerate_algebras(2), 20).ok());
}

TEST_CASE("the trivial tangent structure passes") {
    auto rep = run(TrivialCategory{}, {0, 1, 2, 3}, 20);
    CHECK(rep.ok());
    CHECK(rep.passed() > 0);
}

TEST_CASE("a structural mutation is detected with a counterexample") {
    const std::vector<StructuralMutation> mutations = {
        {W::Plus, 0, 1}, {W::Ell, 1, 1}, {W::Flip, 0, 1}, {W::Zero, 1, 0}, {W::P, 0, 1}};
    for (const auto& m : mutations) {
        NBulletCategory cat;
        cat.mutation = m;
        auto rep = run(cat, {0, 1, 2}, 10);
        INFO(weil::structural_name(m.kind));
        CHECK(rep.failed() > 0);
        require_failures_carry_counterexamples(rep);
    }
}

TEST_CASE("foundational pullbacks") {
    NBulletCategory nb;
    auto rep = check_foundational_pullbacks(nb, weil::W(), weil::W(), weil::W(), std::size_t{1});
    CHECK(rep.ok());
    CHECK(rep.passed() > 0);
    CHECK(check_foundational_pullbacks(nb, weil::unit(), weil::W(), weil::W(), std::size_t{1}).ok());
    PolyCategory pq(Domain::rational());
    CHECK(check_foundational_pullbacks(pq, weil::W(), weil::W(), weil::W(), std::size_t{1}).ok());
}

TEST_CASE("pullback_failure explains a non-pullback") {
    NBulletCategory cat;
    // N^1 with two identity legs over the identity cospan is not the product N^2.
    auto why = pullback_failure(cat, std::size_t{1}, {NMatrix::identity(1), NMatrix::identity(1)},
                                {NMatrix(0, 1), NMatrix(0, 1)});
    CHECK(why.has_value());
    CHECK(!pullback_failure(cat, std::size_t{2}, {NMatrix{{1, 0}}, NMatrix{{0, 1}}}, {NMatrix(0, 1), NMatrix(0, 1)}));
}

TEST_CASE("tangent_iterate") {
    NBulletCategory cat;
    CHECK(tangent_iterate(cat, std::size_t{3}, 2) == 12);
    CHECK(tangent_iterate(cat, NMatrix{{2}}, 2) == NMatrix{{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}});
}
