#include "oracles.hpp"

#include "tangentcat/categories.hpp"
#include "tangentcat/errors.hpp"

#include <doctest.h>

using namespace tangentcat;
using namespace tangentcat::poly;
using W = weil::Structural;

namespace {

PolyMorphism parsed(Domain dom, std::size_t arity, const std::vector<std::string>& comps) {
    return parse_morphism(dom, arity, comps);
}

std::vector<Domain> domains() {
    return {Domain::rational(), Domain::modular(2), Domain::modular(3), Domain::modular(5), Domain::natural()};
}

} // namespace

TEST_CASE("composition examples") {
    auto g = parsed(Domain::rational(), 1, {"x0^2"});
    auto f = parsed(Domain::rational(), 1, {"x0 + 1"});
    CHECK(compose(g, f) == parsed(Domain::rational(), 1, {"x0^2 + 2*x0 + 1"}));
    CHECK(compose(identity(Domain::rational(), 1), f) == f);
    auto g2 = parsed(Domain::modular(2), 1, {"x0^2"});
    auto f2 = parsed(Domain::modular(2), 1, {"x0 + 1"});
    CHECK(compose(g2, f2) == parsed(Domain::modular(2), 1, {"x0^2 + 1"}));
}

TEST_CASE("composition errors") {
    auto f = parsed(Domain::rational(), 2, {"x0", "x1"});
    auto g = parsed(Domain::rational(), 3, {"x0"});
    CHECK_THROWS_AS(compose(g, f), ArityMismatch);
    auto h = parsed(Domain::modular(3), 2, {"x0"});
    CHECK_THROWS_AS(compose(h, f), DomainMismatch);
}

TEST_CASE("partial derivatives") {
    Domain q = Domain::rational();
    CHECK(partial(parse("x0^2*x2 - 1", q, 3), 0) == parse("2*x0*x2", q, 3));
    CHECK(partial(parse("7", q, 1), 0).is_zero());
    CHECK(partial(parse("x0^3", Domain::modular(3), 1), 0).is_zero());
    auto jac = jacobian(parsed(q, 3, {"x0^2*x2 - 1", "x1^3*x2 + 2*x0"}));
    CHECK(jac[1][0] == parse("2", q, 3));
    CHECK(jac[1][1] == parse("3*x1^2*x2", q, 3));
    CHECK(jac[1][2] == parse("x1^3", q, 3));
}

TEST_CASE("tangent examples") {
    Domain q = Domain::rational();
    CHECK(tangent(parsed(q, 1, {"x0^2"})) == parsed(q, 2, {"x0^2", "2*x0*x1"}));
    CHECK(tangent(identity(q, 3)) == identity(q, 6));
    Domain z2 = Domain::modular(2);
    CHECK(tangent(parsed(z2, 1, {"x0^2"})) == parsed(z2, 2, {"x0^2", "0"}));
}

TEST_CASE("structural maps") {
    Domain q = Domain::rational();
    CHECK(structural(q, W::Plus, 1) == parsed(q, 3, {"x0", "x1 + x2"}));
    CHECK(structural(q, W::P, 2) == parsed(q, 4, {"x0", "x1"}));
    CHECK(compose(structural(q, W::Zero, 1), structural(q, W::P, 1)) == parsed(q, 2, {"x0", "0"}));
    CHECK(compose(structural(q, W::Zero, 1), structural(q, W::P, 1)) != identity(q, 2));
    CHECK(weil_action_on_theta(q, weil::structural_map(W::Ell), 1) == parsed(q, 2, {"x0", "0", "0", "x1"}));
}

TEST_CASE("chain rule on 500 random composable pairs per domain") {
    for (const Domain& dom : domains()) {
        PolyCategory cat(dom);
        Rng rng(31);
        for (int t = 0; t < 500; ++t) {
            std::size_t a = rng.below(4), b = rng.below(4), c = rng.below(4);
            auto f = cat.sample(a, b, rng);
            auto g = cat.sample(b, c, rng);
            REQUIRE(tangent(compose(g, f)) == compose(tangent(g), tangent(f)));
        }
    }
}

TEST_CASE("Weil action agrees with evaluation in the algebra") {
    for (const Domain& dom : {Domain::rational(), Domain::modular(3)}) {
        PolyCategory cat(dom);
        Rng rng(17);
        for (const auto& a : weil::enumerate_algebras(3))
            for (int t = 0; t < 3; ++t) {
                auto f = cat.sample(rng.between(1, 2), rng.between(0, 2), rng);
                CHECK(weil_action_on_f(a, f) == oracle::weil_evaluation(a, f));
            }
    }
}

TEST_CASE("Weil action at W is the tangent functor and at N the identity") {
    PolyCategory cat(Domain::rational());
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        auto f = cat.sample(rng.below(3), rng.below(3), rng);
        CHECK(weil_action_on_f(weil::W(), f) == tangent(f));
        CHECK(weil_action_on_f(weil::unit(), f) == f);
        CHECK(weil_action(weil::W(), f.source()) == 2 * f.source());
    }
}

TEST_CASE("polynomial grammar") {
    Domain q = Domain::rational();
    CHECK(parse("2*x0^2*x1 + 3", q, 2).degree() == 3);
    CHECK(parse("1/2*x0", q, 1) + parse("1/2*x0", q, 1) == parse("x0", q, 1));
    CHECK(parse("4 mod 3 * x0", Domain::modular(3), 1) == parse("x0", Domain::modular(3), 1));
    CHECK(parse(" ( x0 + 1 ) ^ 2 ", q, 1) == parse("x0^2 + 2*x0 + 1", q, 1));
    try {
        parse("x0 + * 2", q, 1);
        FAIL("expected a parse error");
    } catch (const PolynomialParse& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 6);
    }
    CHECK_THROWS_AS(parse("x2", q, 2), PolynomialParse);
    CHECK_THROWS_AS(parse("x0^-1", q, 1), PolynomialParse);
}

TEST_CASE("linear part") {
    Domain q = Domain::rational();
    auto lin = linear_part(parsed(q, 2, {"x0 + 2*x1", "3*x1"}));
    REQUIRE(lin);
    CHECK((*lin)(0, 1) == 2);
    CHECK(!linear_part(parsed(q, 1, {"x0 + 1"})));
    CHECK(!linear_part(parsed(q, 1, {"x0^2"})));
}
