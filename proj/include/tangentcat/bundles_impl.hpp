#ifndef TANGENTCAT_BUNDLES_IMPL_HPP
#define TANGENTCAT_BUNDLES_IMPL_HPP

// Template definitions for bundles.hpp.

namespace tangentcat {

namespace detail {

// Copies `src` into `dst` with its top-left corner at (r, c).
inline void place(linalg::Matrix& dst, const linalg::Matrix& src, std::size_t r, std::size_t c) {
    for (std::size_t i = 0; i < src.rows(); ++i)
        for (std::size_t j = 0; j < src.cols(); ++j) dst(r + i, c + j) = src(i, j);
}

} // namespace detail

template <class C>
DifferentialBundle<C> trivial_bundle(const C& cat, std::size_t m, std::size_t v, const LinearDiffObject& fiber,
                                     std::size_t bound) {
    const Domain nat = Domain::natural();
    const std::size_t e = m + v;
    const linalg::Matrix im = linalg::Matrix::identity(nat, m);
    const linalg::Matrix iv = linalg::Matrix::identity(nat, v);

    DifferentialBundle<C> b;
    b.name = "trivial(" + std::to_string(m) + "," + std::to_string(v) + ")";
    b.E = e;
    b.M = m;
    b.bound = bound;

    linalg::Matrix q(nat, m, e);
    detail::place(q, im, 0, 0);
    b.q = cat.from_matrix(q);

    linalg::Matrix zeta(nat, e, m);
    detail::place(zeta, im, 0, 0);
    b.zeta = cat.from_matrix(zeta);

    linalg::Matrix sigma(nat, e, m + 2 * v);
    detail::place(sigma, im, 0, 0);
    detail::place(sigma, fiber.sigma, m, m);
    b.sigma = cat.from_matrix(sigma);

    // T(M x V) = (x_M, x_V, dx_M, dx_V); lambda = 0_M x lambda_V.
    linalg::Matrix lambda(nat, 2 * e, e);
    detail::place(lambda, im, 0, 0);
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) {
            lambda(m + i, m + j) = fiber.lambda(i, j);
            lambda(e + m + i, m + j) = fiber.lambda(v + i, j);
        }
    b.lambda = cat.from_matrix(lambda);

    b.provider = [&cat, m, v, im, iv](std::size_t n) {
        const Domain d = Domain::natural();
        PowerData<C> p;
        p.object = m + n * v;
        for (std::size_t i = 0; i < n; ++i) {
            linalg::Matrix pr(d, m + v, m + n * v);
            detail::place(pr, im, 0, 0);
            detail::place(pr, iv, m, m + i * v);
            p.projections.push_back(cat.from_matrix(pr));
        }
        return p;
    };
    return b;
}

template <class C>
CheckReport check_differential_bundle(const C& cat, const DifferentialBundle<C>& b, const BundleCheckOptions& opts) {
    using W = weil::Structural;
    using Morphism = typename C::Morphism;
    if (b.bound < 3)
        throw ProviderBoundTooSmall(b.name + " provides pullback powers up to " + std::to_string(b.bound) +
                                    ", the checks need E_3");
    CheckReport rep;
    const std::string pre = cat.name() + "/" + b.name + "/";
    const std::string db = "differential-bundle/";

    AdditiveBundle<C> ab = b.additive(cat);
    check_additive_bundle(cat, ab, pre + "additive-bundle/", rep);

    AdditiveBundle<C> tab{cat.tangent(b.E), cat.tangent(b.M), cat.tangent(b.q), cat.tangent(b.sigma),
                          cat.tangent(b.zeta), nullptr};
    tab.power = [&](std::size_t n) {
        auto p = b.power(cat, n);
        std::vector<Morphism> legs;
        for (const auto& pr : p.projections) legs.push_back(cat.tangent(pr));
        return std::make_pair(cat.tangent(p.object), std::move(legs));
    };
    rep.guard(pre + "lift-over-zero", db + "lift-additive-over-zero", [&] {
        check_additive_morphism(cat, ab, tab, b.lambda, cat.structural(W::Zero, b.M), pre + "lift-over-zero/",
                                db + "lift-additive-over-zero", rep);
    });
    rep.guard(pre + "lift-over-zeta", db + "lift-additive-over-zeta", [&] {
        AdditiveBundle<C> te = tangent_bundle(cat, b.E);
        check_additive_morphism(cat, ab, te, b.lambda, b.zeta, pre + "lift-over-zeta/", db + "lift-additive-over-zeta",
                                rep);
    });
    rep.guard(pre + "lift-coassociativity", db + "lift-coassociativity", [&] {
        expect_equal(rep, cat, pre + "lift-coassociativity", db + "lift-coassociativity",
                     cat.compose(cat.structural(W::Ell, b.E), b.lambda), cat.compose(cat.tangent(b.lambda), b.lambda));
    });

    auto mu = [&](bool lift_first) {
        auto e2 = b.power(cat, 2);
        std::vector<Morphism> tlegs, tcospan;
        for (const auto& pr : e2.projections) {
            tlegs.push_back(cat.tangent(pr));
            tcospan.push_back(cat.tangent(b.q));
        }
        PullbackCone<C> te2(cat, cat.tangent(e2.object), tlegs, tcospan);
        auto zero = cat.structural(W::Zero, b.E);
        auto first = cat.compose(lift_first ? b.lambda : zero, e2.projections[0]);
        auto second = cat.compose(lift_first ? zero : b.lambda, e2.projections[1]);
        return cat.compose(cat.tangent(b.sigma), te2.pair({first, second}));
    };
    for (bool lift_first : {true, false}) {
        if (!lift_first && !opts.symmetric) continue;
        for (std::size_t j = 0; j <= opts.depth; ++j) {
            const std::string name = pre + (lift_first ? "universality" : "universality-symmetric") + "/T^" + std::to_string(j);
            rep.guard(name, db + "vertical-lift-universality", [&] {
                auto e2 = b.power(cat, 2);
                auto base = cat.compose(b.q, e2.projections[0]);
                expect_pullback(rep, cat, name, db + "vertical-lift-universality", tangent_iterate(cat, e2.object, j),
                                {tangent_iterate(cat, mu(lift_first), j), tangent_iterate(cat, base, j)},
                                {tangent_iterate(cat, cat.tangent(b.q), j),
                                 tangent_iterate(cat, cat.structural(W::Zero, b.M), j)});
            });
        }
    }
    for (std::size_t n : {2, 3})
        for (std::size_t j = 0; j <= opts.depth; ++j) {
            const std::string name = pre + "power-preservation/E_" + std::to_string(n) + "/T^" + std::to_string(j);
            rep.guard(name, db + "pullback-powers", [&] {
                auto p = b.power(cat, n);
                std::vector<Morphism> legs, cospan;
                for (const auto& pr : p.projections) {
                    legs.push_back(tangent_iterate(cat, pr, j));
                    cospan.push_back(tangent_iterate(cat, b.q, j));
                }
                expect_pullback(rep, cat, name, db + "pullback-powers", tangent_iterate(cat, p.object, j), legs, cospan);
            });
        }
    if (opts.informational && cat.rank(b.M) == 0) {
        const std::string name = pre + "lift-isomorphism";
        rep.guard(name, "differential-object/lift-isomorphism", [&] {
            auto m = cat.linear_matrix(mu(false));
            bool ok = m && linalg::invert(*m).has_value();
            rep.record(name, "differential-object/lift-isomorphism", ok,
                       ok ? nlohmann::json(nullptr) : nlohmann::json{{"map", cat.serialize(mu(false))}});
        });
    }
    return rep;
}

template <class C>
Classification classify_morphism(const C& cat, const DifferentialBundle<C>& b, const DifferentialBundle<C>& b2,
                                 const typename C::Morphism& f, const typename C::Morphism& g) {
    Classification out;
    auto attempt = [&](const char* key, auto&& body) {
        try {
            return body();
        } catch (const Error& e) {
            out.detail[key] = e.what();
            return false;
        }
    };
    out.bundle = attempt("bundle", [&] { return cat.equal(cat.compose(b2.q, f), cat.compose(g, b.q)); });
    if (out.bundle) {
        out.additive = attempt("additive", [&] {
            if (!cat.equal(cat.compose(f, b.zeta), cat.compose(b2.zeta, g))) return false;
            const auto& src = b.cone(cat, 2);
            const auto& pr = src.legs();
            auto rhs = cat.compose(b2.sigma, b2.cone(cat, 2).pair({cat.compose(f, pr[0]), cat.compose(f, pr[1])}));
            return cat.equal(cat.compose(f, b.sigma), rhs);
        });
        out.linear = attempt("linear", [&] {
            return cat.equal(cat.compose(b2.lambda, f), cat.compose(cat.tangent(f), b.lambda));
        });
    }
    if (!out.bundle) out.cls = MorphismClass::None;
    else if (out.additive && out.linear) out.cls = MorphismClass::Linear;
    else if (out.additive) out.cls = MorphismClass::Additive;
    else out.cls = MorphismClass::Bundle;
    return out;
}

} // namespace tangentcat

#endif
