#ifndef TANGENTCAT_VERIFY_IMPL_HPP
#define TANGENTCAT_VERIFY_IMPL_HPP

// Template definitions for verify.hpp.

namespace tangentcat {

namespace detail {

template <class C>
struct ConeAnalysis {
    std::optional<std::string> failure;
    std::vector<std::size_t> free;
    linalg::Matrix inverse;
};

template <class C>
linalg::Matrix linear_or_throw(const C& cat, const typename C::Morphism& f) {
    auto m = cat.linear_matrix(f);
    if (!m) throw NonLinearComparison("morphism " + cat.serialize(f).dump() + " is not linear");
    return *m;
}

template <class C>
ConeAnalysis<C> analyse_cone(const C& cat, const typename C::Object& apex,
                             const std::vector<typename C::Morphism>& legs,
                             const std::vector<typename C::Morphism>& cospan) {
    if (legs.empty() || legs.size() != cospan.size())
        throw ArityMismatch("cone with " + std::to_string(legs.size()) + " legs over a cospan of " +
                            std::to_string(cospan.size()));
    std::vector<linalg::Matrix> l, u;
    for (const auto& f : legs) l.push_back(linear_or_throw(cat, f));
    for (const auto& f : cospan) u.push_back(linear_or_throw(cat, f));
    ConeAnalysis<C> out;
    for (std::size_t i = 0; i < legs.size(); ++i) {
        if (l[i].rows() != u[i].cols() || l[i].cols() != cat.rank(apex)) {
            out.failure = "leg " + std::to_string(i) + " does not match the cospan";
            return out;
        }
        if (!(u[i] * l[i] == u[0] * l[0])) {
            out.failure = "square does not commute at leg " + std::to_string(i);
            return out;
        }
    }
    auto cone = linalg::solve_cospan(u, cat.scalar_domain());
    if (!cone) throw PullbackUnavailable("cone over the cospan is not reachable by elimination over N");
    if (cone->free.size() != cat.rank(apex)) {
        out.failure = "comparison is " + std::to_string(cone->free.size()) + "x" + std::to_string(cat.rank(apex)) +
                      ", not square";
        return out;
    }
    linalg::Matrix stacked = linalg::Matrix::vstack(l);
    auto inv = linalg::invert(stacked.select_rows(cone->free));
    if (!inv) {
        out.failure = "comparison into the coordinate pullback is not invertible";
        return out;
    }
    out.free = cone->free;
    out.inverse = *inv;
    return out;
}

} // namespace detail

template <class C>
std::optional<std::string> pullback_failure(const C& cat, const typename C::Object& apex,
                                            const std::vector<typename C::Morphism>& legs,
                                            const std::vector<typename C::Morphism>& cospan) {
    return detail::analyse_cone(cat, apex, legs, cospan).failure;
}

template <class C>
PullbackCone<C>::PullbackCone(const C& cat, Object apex, std::vector<Morphism> legs, std::vector<Morphism> cospan)
    : cat_(&cat), apex_(std::move(apex)), legs_(std::move(legs)), cospan_(std::move(cospan)) {
    auto a = detail::analyse_cone(cat, apex_, legs_, cospan_);
    if (a.failure) throw PullbackUnavailable(cat.describe(apex_) + ": " + *a.failure);
    free_ = std::move(a.free);
    inverse_ = std::move(a.inverse);
}

template <class C>
typename C::Morphism PullbackCone<C>::pair(const std::vector<Morphism>& fs) const {
    const C& cat = *cat_;
    if (fs.size() != legs_.size())
        throw ArityMismatch("pairing " + std::to_string(fs.size()) + " maps into a " + std::to_string(legs_.size()) +
                            "-fold pullback");
    auto x = cat.source(fs[0]);
    auto base = cat.compose(cospan_[0], fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i)
        if (!cat.equal(cat.compose(cospan_[i], fs[i]), base))
            throw PullbackUnavailable("pairing into " + cat.describe(apex_) + ": component " + std::to_string(i) +
                                      " lies over a different base point");
    std::vector<typename C::Component> all;
    for (const auto& f : fs) {
        auto c = cat.components(f);
        all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
    }
    std::vector<typename C::Component> free;
    free.reserve(free_.size());
    for (auto v : free_) free.push_back(all[v]);
    std::vector<typename C::Component> out;
    out.reserve(inverse_.rows());
    Row coeffs(inverse_.cols());
    for (std::size_t r = 0; r < inverse_.rows(); ++r) {
        for (std::size_t c = 0; c < inverse_.cols(); ++c) coeffs[c] = inverse_(r, c);
        out.push_back(cat.combine(coeffs, free, x));
    }
    return cat.assemble(x, apex_, out);
}

template <class C>
AdditiveBundle<C> tangent_bundle(const C& cat, const typename C::Object& m) {
    using W = weil::Structural;
    AdditiveBundle<C> b{cat.tangent(m), m, cat.structural(W::P, m), cat.structural(W::Plus, m),
                        cat.structural(W::Zero, m), nullptr};
    b.power = [&cat, m](std::size_t n) {
        std::vector<typename C::Morphism> legs;
        for (std::size_t i = 0; i < n; ++i) legs.push_back(cat.tangent_power_projection(n, i, m));
        return std::make_pair(cat.tangent_power(n, m), std::move(legs));
    };
    return b;
}

template <class C>
typename C::Morphism vertical_lift_comparison(const C& cat, const typename C::Object& m) {
    using W = weil::Structural;
    auto pi0 = cat.tangent_power_projection(2, 0, m);
    auto pi1 = cat.tangent_power_projection(2, 1, m);
    auto t2 = cat.tangent_power(2, m);
    auto p = cat.structural(W::P, m);
    PullbackCone<C> tt2(cat, cat.tangent(t2), {cat.tangent(pi0), cat.tangent(pi1)}, {cat.tangent(p), cat.tangent(p)});
    auto tm = cat.tangent(m);
    auto lifted = cat.compose(cat.structural(W::Ell, m), pi0);
    auto zeroed = cat.compose(cat.structural(W::Zero, tm), pi1);
    return cat.compose(cat.tangent(cat.structural(W::Plus, m)), tt2.pair({lifted, zeroed}));
}

template <class C>
void check_additive_bundle(const C& cat, const AdditiveBundle<C>& b, const std::string& prefix, CheckReport& rep) {
    const std::string a = "additive-bundle/";
    rep.guard(prefix + "base-of-sum", a + "base-of-sum", [&] {
        auto [e2, pr] = b.power(2);
        auto qs = cat.compose(b.q, b.sigma);
        expect_equal(rep, cat, prefix + "base-of-sum", a + "base-of-sum", qs, cat.compose(b.q, pr[0]));
        expect_equal(rep, cat, prefix + "base-of-sum", a + "base-of-sum", qs, cat.compose(b.q, pr[1]));
    });
    rep.guard(prefix + "base-of-zero", a + "base-of-zero", [&] {
        expect_equal(rep, cat, prefix + "base-of-zero", a + "base-of-zero", cat.compose(b.q, b.zeta), cat.identity(b.M));
    });
    rep.guard(prefix + "commutativity", a + "commutativity", [&] {
        auto e2 = b.cone(cat, 2);
        const auto& pr = e2.legs();
        auto swapped = cat.compose(b.sigma, e2.pair({pr[1], pr[0]}));
        expect_equal(rep, cat, prefix + "commutativity", a + "commutativity", swapped, b.sigma);
    });
    rep.guard(prefix + "unitality", a + "unitality", [&] {
        auto e2 = b.cone(cat, 2);
        auto id = cat.identity(b.E);
        auto zq = cat.compose(b.zeta, b.q);
        expect_equal(rep, cat, prefix + "unitality", a + "unitality", cat.compose(b.sigma, e2.pair({id, zq})), id,
                     {{"side", "right"}});
        expect_equal(rep, cat, prefix + "unitality", a + "unitality", cat.compose(b.sigma, e2.pair({zq, id})), id,
                     {{"side", "left"}});
    });
    rep.guard(prefix + "associativity", a + "associativity", [&] {
        auto e2 = b.cone(cat, 2);
        auto e3 = b.cone(cat, 3);
        const auto& pr = e3.legs();
        auto left = cat.compose(b.sigma, e2.pair({cat.compose(b.sigma, e2.pair({pr[0], pr[1]})), pr[2]}));
        auto right = cat.compose(b.sigma, e2.pair({pr[0], cat.compose(b.sigma, e2.pair({pr[1], pr[2]}))}));
        expect_equal(rep, cat, prefix + "associativity", a + "associativity", left, right);
    });
}

template <class C>
void check_additive_morphism(const C& cat, const AdditiveBundle<C>& src, const AdditiveBundle<C>& dst,
                             const typename C::Morphism& f, const typename C::Morphism& g,
                             const std::string& prefix, const std::string& anchor, CheckReport& rep) {
    rep.guard(prefix + "over-base", anchor, [&] {
        expect_equal(rep, cat, prefix + "over-base", anchor, cat.compose(dst.q, f), cat.compose(g, src.q));
    });
    rep.guard(prefix + "preserves-addition", anchor, [&] {
        auto [s2, pr] = src.power(2);
        auto d2 = dst.cone(cat, 2);
        auto rhs = cat.compose(dst.sigma, d2.pair({cat.compose(f, pr[0]), cat.compose(f, pr[1])}));
        expect_equal(rep, cat, prefix + "preserves-addition", anchor, cat.compose(f, src.sigma), rhs);
    });
    rep.guard(prefix + "preserves-zero", anchor, [&] {
        expect_equal(rep, cat, prefix + "preserves-zero", anchor, cat.compose(f, src.zeta), cat.compose(dst.zeta, g));
    });
}

template <class C>
CheckReport check_tangent_category(const C& cat, const std::vector<typename C::Object>& objects,
                                   const std::vector<typename C::Morphism>& morphisms,
                                   const TangentCheckOptions& opts) {
    using W = weil::Structural;
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;
    const std::string tc = "tangent-category/";
    CheckReport rep;

    for (const Object& m : objects) {
        const std::string pre = cat.name() + "/" + cat.describe(m) + "/";
        const Object tm = cat.tangent(m);
        const Object ttm = cat.tangent(tm);

        AdditiveBundle<C> tb = tangent_bundle(cat, m);
        check_additive_bundle(cat, tb, pre + "tangent-bundle/", rep);

        // (T^2 M, TM, T(p), T(+), T(0)) with T(T_n M) as pullback powers.
        AdditiveBundle<C> ttb{ttm, tm, cat.tangent(tb.q), cat.tangent(tb.sigma), cat.tangent(tb.zeta), nullptr};
        ttb.power = [&cat, m](std::size_t n) {
            std::vector<Morphism> legs;
            for (std::size_t i = 0; i < n; ++i) legs.push_back(cat.tangent(cat.tangent_power_projection(n, i, m)));
            return std::make_pair(cat.tangent(cat.tangent_power(n, m)), std::move(legs));
        };
        AdditiveBundle<C> tbt = tangent_bundle(cat, tm);

        rep.guard(pre + "lift-additive", tc + "lift-additive", [&] {
            check_additive_morphism(cat, tb, ttb, cat.structural(W::Ell, m), cat.structural(W::Zero, m),
                                    pre + "lift-additive/", tc + "lift-additive", rep);
        });
        rep.guard(pre + "flip-additive", tc + "flip-additive", [&] {
            check_additive_morphism(cat, ttb, tbt, cat.structural(W::Flip, m), cat.identity(tm),
                                    pre + "flip-additive/", tc + "flip-additive", rep);
        });

        rep.guard(pre + "flip-involution", tc + "flip-involution", [&] {
            auto c = cat.structural(W::Flip, m);
            expect_equal(rep, cat, pre + "flip-involution", tc + "flip-involution", cat.compose(c, c), cat.identity(ttm));
        });
        rep.guard(pre + "flip-lift", tc + "flip-lift", [&] {
            auto l = cat.structural(W::Ell, m);
            expect_equal(rep, cat, pre + "flip-lift", tc + "flip-lift", cat.compose(cat.structural(W::Flip, m), l), l);
        });
        rep.guard(pre + "lift-coassociativity", tc + "lift-coassociativity", [&] {
            auto l = cat.structural(W::Ell, m);
            expect_equal(rep, cat, pre + "lift-coassociativity", tc + "lift-coassociativity",
                         cat.compose(cat.tangent(l), l), cat.compose(cat.structural(W::Ell, tm), l));
        });
        rep.guard(pre + "flip-braid", tc + "flip-braid", [&] {
            auto tc_ = cat.tangent(cat.structural(W::Flip, m));
            auto ct = cat.structural(W::Flip, tm);
            expect_equal(rep, cat, pre + "flip-braid", tc + "flip-braid", cat.compose(tc_, cat.compose(ct, tc_)),
                         cat.compose(ct, cat.compose(tc_, ct)));
        });
        rep.guard(pre + "lift-flip", tc + "lift-flip", [&] {
            auto c = cat.structural(W::Flip, m);
            auto lhs = cat.compose(cat.structural(W::Flip, tm),
                                   cat.compose(cat.tangent(c), cat.structural(W::Ell, tm)));
            auto rhs = cat.compose(cat.tangent(cat.structural(W::Ell, m)), c);
            expect_equal(rep, cat, pre + "lift-flip", tc + "lift-flip", lhs, rhs);
        });

        for (std::size_t j = 0; j <= opts.depth; ++j) {
            const std::string name = pre + "vertical-lift-universality/T^" + std::to_string(j);
            rep.guard(name, tc + "vertical-lift-universality", [&] {
                auto t2 = cat.tangent_power(2, m);
                auto nu = vertical_lift_comparison(cat, m);
                auto base = cat.compose(tb.q, cat.tangent_power_projection(2, 0, m));
                auto tp = cat.tangent(tb.q);
                auto zero = tb.zeta;
                expect_pullback(rep, cat, name, tc + "vertical-lift-universality", tangent_iterate(cat, t2, j),
                                {tangent_iterate(cat, nu, j), tangent_iterate(cat, base, j)},
                                {tangent_iterate(cat, tp, j), tangent_iterate(cat, zero, j)});
            });
        }
        for (std::size_t n : {2, 3})
            for (std::size_t j = 0; j <= opts.depth; ++j) {
                const std::string name = pre + "foundational-pullback/T_" + std::to_string(n) + "/T^" + std::to_string(j);
                rep.guard(name, tc + "foundational-pullbacks", [&] {
                    auto [tn, legs] = tb.power(n);
                    std::vector<Morphism> l, c;
                    for (const auto& leg : legs) {
                        l.push_back(tangent_iterate(cat, leg, j));
                        c.push_back(tangent_iterate(cat, tb.q, j));
                    }
                    expect_pullback(rep, cat, name, tc + "foundational-pullbacks", tangent_iterate(cat, tn, j), l, c);
                });
            }
    }

    const std::string pre = cat.name() + "/";
    for (const Morphism& f : morphisms) {
        nlohmann::json ctx = {{"morphism", cat.serialize(f)}};
        const Object x = cat.source(f), y = cat.target(f);
        rep.guard(pre + "category/unit-laws", "category/unit-laws", [&] {
            expect_equal(rep, cat, pre + "category/unit-laws", "category/unit-laws", cat.compose(f, cat.identity(x)), f, ctx);
            expect_equal(rep, cat, pre + "category/unit-laws", "category/unit-laws", cat.compose(cat.identity(y), f), f, ctx);
        });
        rep.guard(pre + "category/associativity", "category/associativity", [&] {
            auto tf = cat.tangent(f);
            auto py = cat.structural(W::P, y);
            auto zx = cat.structural(W::Zero, x);
            expect_equal(rep, cat, pre + "category/associativity", "category/associativity",
                         cat.compose(cat.compose(py, tf), zx), cat.compose(py, cat.compose(tf, zx)), ctx);
        });
        rep.guard(pre + "naturality/p", tc + "naturality", [&] {
            expect_equal(rep, cat, pre + "naturality/p", tc + "naturality",
                         cat.compose(cat.structural(W::P, y), cat.tangent(f)), cat.compose(f, cat.structural(W::P, x)), ctx);
        });
        rep.guard(pre + "naturality/zero", tc + "naturality", [&] {
            expect_equal(rep, cat, pre + "naturality/zero", tc + "naturality",
                         cat.compose(cat.tangent(f), cat.structural(W::Zero, x)),
                         cat.compose(cat.structural(W::Zero, y), f), ctx);
        });
        rep.guard(pre + "naturality/plus", tc + "naturality", [&] {
            auto tf = cat.tangent(f);
            auto ty2 = tangent_bundle(cat, y).cone(cat, 2);
            auto t2f = ty2.pair({cat.compose(tf, cat.tangent_power_projection(2, 0, x)),
                                 cat.compose(tf, cat.tangent_power_projection(2, 1, x))});
            expect_equal(rep, cat, pre + "naturality/plus", tc + "naturality",
                         cat.compose(tf, cat.structural(W::Plus, x)), cat.compose(cat.structural(W::Plus, y), t2f), ctx);
        });
        rep.guard(pre + "naturality/ell", tc + "naturality", [&] {
            auto tf = cat.tangent(f);
            expect_equal(rep, cat, pre + "naturality/ell", tc + "naturality",
                         cat.compose(cat.tangent(tf), cat.structural(W::Ell, x)),
                         cat.compose(cat.structural(W::Ell, y), tf), ctx);
        });
        rep.guard(pre + "naturality/c", tc + "naturality", [&] {
            auto ttf = cat.tangent(cat.tangent(f));
            expect_equal(rep, cat, pre + "naturality/c", tc + "naturality",
                         cat.compose(ttf, cat.structural(W::Flip, x)), cat.compose(cat.structural(W::Flip, y), ttf), ctx);
        });
    }
    return rep;
}

template <class C>
CheckReport check_foundational_pullbacks(const C& cat, const weil::Algebra& a, const weil::Algebra& b,
                                         const weil::Algebra& c, const typename C::Object& x) {
    CheckReport rep;
    const std::string name = cat.name() + "/" + cat.describe(x) + "/foundational/" + a.name() + "(x)(" + b.name() +
                             " x " + c.name() + ")";
    const std::string anchor = "tangent-category/foundational-pullbacks";
    rep.guard(name, anchor, [&] {
        weil::Algebra bc = weil::product(b, c);
        auto ida = weil::identity(a);
        std::size_t m = b.generator_count(), n = c.generator_count();
        auto apex = cat.act_object(weil::tensor(a, bc), x);
        std::vector<typename C::Morphism> legs = {
            cat.act_theta(weil::tensor(ida, weil::product_projection(m, n, false)), x),
            cat.act_theta(weil::tensor(ida, weil::product_projection(m, n, true)), x)};
        std::vector<typename C::Morphism> cospan = {cat.act_theta(weil::tensor(ida, weil::augmentation(b)), x),
                                                    cat.act_theta(weil::tensor(ida, weil::augmentation(c)), x)};
        expect_pullback(rep, cat, name, anchor, apex, legs, cospan);
    });
    return rep;
}

} // namespace tangentcat

#endif
