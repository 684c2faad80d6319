#ifndef TANGENTCAT_VERIFY_HPP
#define TANGENTCAT_VERIFY_HPP

#include "tangentcat/categories.hpp"
#include "tangentcat/errors.hpp"
#include "tangentcat/linalg.hpp"
#include "tangentcat/report.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tangentcat {

// Why a square (apex, legs, cospan) fails to be a pullback, or nullopt.
// The comparison into the coordinate pullback must be linear; over a field
// it is inverted exactly, over the naturals it must be a permutation.
template <class C>
std::optional<std::string> pullback_failure(const C& cat, const typename C::Object& apex,
                                            const std::vector<typename C::Morphism>& legs,
                                            const std::vector<typename C::Morphism>& cospan);

// A pullback with a cached comparison inverse, used to pair maps into it.
template <class C>
class PullbackCone {
public:
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;

    // Throws PullbackUnavailable unless the square is a pullback.
    PullbackCone(const C& cat, Object apex, std::vector<Morphism> legs, std::vector<Morphism> cospan);

    const Object& apex() const { return apex_; }
    const std::vector<Morphism>& legs() const { return legs_; }
    // The unique map h with legs[i] o h = fs[i]; the fs must agree over the cospan.
    Morphism pair(const std::vector<Morphism>& fs) const;

private:
    const C* cat_;
    Object apex_;
    std::vector<Morphism> legs_;
    std::vector<Morphism> cospan_;
    std::vector<std::size_t> free_;
    linalg::Matrix inverse_;
};

// An additive bundle q: E -> M with addition sigma: E_2 -> E and zero
// zeta: M -> E. power(n) yields E_n and its projections to E.
template <class C>
struct AdditiveBundle {
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;

    Object E;
    Object M;
    Morphism q;
    Morphism sigma;
    Morphism zeta;
    std::function<std::pair<Object, std::vector<Morphism>>(std::size_t)> power;

    PullbackCone<C> cone(const C& cat, std::size_t n) const {
        auto [obj, legs] = power(n);
        return PullbackCone<C>(cat, obj, legs, std::vector<Morphism>(n, q));
    }
};

struct TangentCheckOptions {
    // T-powers over which the universality and foundational pullbacks are checked.
    std::size_t depth = 2;
};

template <class C>
void expect_equal(CheckReport& rep, const C& cat, const std::string& name, const std::string& anchor,
                  const typename C::Morphism& lhs, const typename C::Morphism& rhs,
                  nlohmann::json context = nlohmann::json::object()) {
    if (cat.equal(lhs, rhs)) {
        rep.record(name, anchor, true);
        return;
    }
    context["category"] = cat.name();
    context["lhs"] = cat.serialize(lhs);
    context["rhs"] = cat.serialize(rhs);
    rep.record(name, anchor, false, std::move(context));
}

template <class C>
void expect_pullback(CheckReport& rep, const C& cat, const std::string& name, const std::string& anchor,
                     const typename C::Object& apex, const std::vector<typename C::Morphism>& legs,
                     const std::vector<typename C::Morphism>& cospan,
                     nlohmann::json context = nlohmann::json::object()) {
    auto why = pullback_failure(cat, apex, legs, cospan);
    if (!why) {
        rep.record(name, anchor, true);
        return;
    }
    context["category"] = cat.name();
    context["apex"] = cat.describe(apex);
    context["reason"] = *why;
    nlohmann::json l = nlohmann::json::array(), c = nlohmann::json::array();
    for (const auto& f : legs) l.push_back(cat.serialize(f));
    for (const auto& f : cospan) c.push_back(cat.serialize(f));
    context["legs"] = std::move(l);
    context["cospan"] = std::move(c);
    rep.record(name, anchor, false, std::move(context));
}

template <class C>
typename C::Object tangent_iterate(const C& cat, typename C::Object x, std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) x = cat.tangent(x);
    return x;
}

template <class C>
typename C::Morphism tangent_iterate(const C& cat, typename C::Morphism f, std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) f = cat.tangent(f);
    return f;
}

// (TM, M, p, +, 0) with T_n M as pullback powers.
template <class C>
AdditiveBundle<C> tangent_bundle(const C& cat, const typename C::Object& m);

// nu = T(+) o <l o pi_0, 0_T o pi_1> : T_2 M -> T^2 M.
template <class C>
typename C::Morphism vertical_lift_comparison(const C& cat, const typename C::Object& m);

template <class C>
void check_additive_bundle(const C& cat, const AdditiveBundle<C>& b, const std::string& prefix, CheckReport& rep);

// (f, g) from (E, M, ...) to (E', M', ...): over the base, preserves sigma and zeta.
template <class C>
void check_additive_morphism(const C& cat, const AdditiveBundle<C>& src, const AdditiveBundle<C>& dst,
                             const typename C::Morphism& f, const typename C::Morphism& g,
                             const std::string& prefix, const std::string& anchor, CheckReport& rep);

template <class C>
CheckReport check_tangent_category(const C& cat, const std::vector<typename C::Object>& objects,
                                   const std::vector<typename C::Morphism>& morphisms,
                                   const TangentCheckOptions& opts = {});

// T-tilde of the square A (x) (B x C) -> A (x) B, A (x) C -> A at x, with
// B and C powers of W.
template <class C>
CheckReport check_foundational_pullbacks(const C& cat, const weil::Algebra& a, const weil::Algebra& b,
                                         const weil::Algebra& c, const typename C::Object& x);

template <class C>
std::vector<typename C::Morphism> sample_morphisms(const C& cat, const std::vector<typename C::Object>& objects,
                                                   std::size_t count, Rng& rng) {
    std::vector<typename C::Morphism> out;
    if (objects.empty()) return out;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& src = objects[rng.below(objects.size())];
        const auto& dst = objects[rng.below(objects.size())];
        out.push_back(cat.sample(src, dst, rng));
    }
    return out;
}

} // namespace tangentcat

#include "tangentcat/verify_impl.hpp"

#endif
