#ifndef TANGENTCAT_EQUIVALENCE_IMPL_HPP
#define TANGENTCAT_EQUIVALENCE_IMPL_HPP

// Template definitions for equivalence.hpp.

#include <optional>
#include <tuple>

namespace tangentcat {

template <class C>
HomElement<C> hom_element(const C& cat, const DifferentialBundle<C>& b, std::size_t n, typename C::Morphism h) {
    if (!cat.equal(cat.compose(b.q, h), b.base_map(cat, n)))
        throw NotOverBase(cat.serialize(h).dump() + " does not lie over q o pi_0 of E_" + std::to_string(n));
    return {n, std::move(h)};
}

template <class C>
HomElement<C> hom_add(const C& cat, const DifferentialBundle<C>& b, const HomElement<C>& f, const HomElement<C>& g) {
    if (f.n != g.n)
        throw ArityMismatch("adding maps out of E_" + std::to_string(f.n) + " and E_" + std::to_string(g.n));
    return {f.n, cat.compose(b.sigma, b.cone(cat, 2).pair({f.h, g.h}))};
}

template <class C>
HomElement<C> hom_zero(const C& cat, const DifferentialBundle<C>& b, std::size_t n) {
    return {n, cat.compose(b.zeta, b.base_map(cat, n))};
}

template <class C>
HomElement<C> hom_scale(const C& cat, const DifferentialBundle<C>& b, const mpz_class& k, const HomElement<C>& f) {
    if (k < 0) throw DomainError("negative multiple " + k.get_str() + " in a hom-monoid");
    if (k == 0) return hom_zero(cat, b, f.n);
    HomElement<C> acc = f;
    for (mpz_class i = 1; i < k; ++i) acc = hom_add(cat, b, acc, f);
    return acc;
}

namespace detail {

template <class C>
class IndState {
public:
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;

    IndState(const C& cat, const DifferentialBundle<C>& b, Nesting nesting) : cat_(cat), b_(b), nesting_(nesting) {}

    const DifferentialBundle<C>& bundle() const { return b_; }

    Object object(std::size_t k) const { return b_.power(cat_, k).object; }

    // Row i of A is sum_j a_ij pi_j in Hom_{/M}(E_k, E); the rows are then paired.
    Morphism morphism(const nbullet::NMatrix& a) const {
        const std::size_t k = a.cols(), r = a.rows();
        if (r == 0) return b_.base_map(cat_, k);
        std::vector<Morphism> rows;
        for (std::size_t i = 0; i < r; ++i) {
            std::optional<HomElement<C>> acc;
            for (std::size_t j = 0; j < k; ++j) {
                if (a(i, j) == 0) continue;
                HomElement<C> term = hom_scale(cat_, b_, a(i, j), HomElement<C>{k, b_.cone(cat_, k).legs()[j]});
                acc = acc ? hom_add(cat_, b_, *acc, term) : term;
            }
            rows.push_back(acc ? acc->h : hom_zero(cat_, b_, k).h);
        }
        if (r == 1) return rows[0];
        return b_.cone(cat_, r).pair(rows);
    }

    Morphism lineator(const weil::Algebra& a, std::size_t l) {
        const Key key{a.classes(), l, 0};
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = alpha_.find(key);
            if (it != alpha_.end()) return it->second;
        }
        Morphism out = build(a, l);
        std::lock_guard<std::mutex> lock(mutex_);
        return alpha_.emplace(key, std::move(out)).first->second;
    }

private:
    using Key = std::tuple<std::vector<std::size_t>, std::size_t, int>;

    Morphism build(const weil::Algebra& a, std::size_t l) {
        using W = weil::Structural;
        const C& cat = cat_;
        if (a.generator_count() == 0) return cat.identity(object(l));
        if (l == 0) return cat.act_theta(weil::unit_map(a), b_.M);
        if (!weil::is_canonical(a)) {
            auto dec = weil::decompose(a);
            weil::Algebra canon = weil::recompose(dec.blocks);
            auto to_canon = morphism(nbullet::weil_action_on_theta(weil::inverse(dec.iso), l));
            return cat.compose(cat.act_theta(dec.iso, object(l)), cat.compose(lineator(canon, l), to_canon));
        }
        const auto blocks = weil::decompose(a).blocks;
        if (blocks.size() >= 2) {
            if (nesting_ == Nesting::Left) {
                weil::Algebra head = weil::power(blocks.front());
                weil::Algebra rest = weil::recompose(std::vector<std::size_t>(blocks.begin() + 1, blocks.end()));
                return cat.compose(cat.act_morphism(head, lineator(rest, l)), lineator(head, l * rest.dimension()));
            }
            weil::Algebra init = weil::recompose(std::vector<std::size_t>(blocks.begin(), blocks.end() - 1));
            weil::Algebra last = weil::power(blocks.back());
            return cat.compose(cat.act_morphism(init, lineator(last, l)), lineator(init, l * last.dimension()));
        }
        const std::size_t n = blocks.front();
        if (l >= 2) {
            // Pair the restrictions to each factor of E_l into T_A(E_l).
            std::vector<Morphism> parts;
            for (std::size_t j = 0; j < l; ++j) {
                nbullet::NMatrix e(1, l);
                e.set(0, j, 1);
                parts.push_back(cat.compose(lineator(a, 1), morphism(nbullet::weil_action_on_f(a, e))));
            }
            return cone(a, l, 0).pair(parts);
        }
        if (n == 1) {
            const auto& e2 = b_.cone(cat, 2).legs();
            auto zero = cat.compose(cat.structural(W::Zero, b_.E), e2[0]);
            auto lift = cat.compose(b_.lambda, e2[1]);
            return cat.compose(cat.tangent(b_.sigma), cone(a, 2, 2).pair({zero, lift}));
        }
        std::vector<Morphism> parts;
        for (std::size_t i = 0; i < n; ++i)
            parts.push_back(cat.compose(lineator(weil::W(), 1),
                                        morphism(nbullet::weil_action_on_theta(weil::projection(n, i), 1))));
        return cone(a, 1, 1).pair(parts);
    }

    // kind 0: T_A(E_l) over T_A(M) with legs T_A(pi_j).
    // kind 1: T_{W^n}(E) over E with legs T_{pi_i}(E).
    // kind 2: T(E_2) over T(M) with legs T(pi_j).
    const PullbackCone<C>& cone(const weil::Algebra& a, std::size_t l, int kind) {
        const Key key{a.classes(), l, kind};
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cones_.find(key);
            if (it != cones_.end()) return *it->second;
        }
        const C& cat = cat_;
        std::vector<Morphism> legs, cospan;
        Object apex;
        if (kind == 0) {
            auto p = b_.power(cat, l);
            apex = cat.act_object(a, p.object);
            for (const auto& pr : p.projections) {
                legs.push_back(cat.act_morphism(a, pr));
                cospan.push_back(cat.act_morphism(a, b_.q));
            }
        } else if (kind == 1) {
            const std::size_t n = a.generator_count();
            apex = cat.act_object(a, b_.E);
            for (std::size_t i = 0; i < n; ++i) {
                legs.push_back(cat.act_theta(weil::projection(n, i), b_.E));
                cospan.push_back(cat.act_theta(weil::structural_map(weil::Structural::P), b_.E));
            }
        } else {
            auto p = b_.power(cat, l);
            apex = cat.tangent(p.object);
            for (const auto& pr : p.projections) {
                legs.push_back(cat.tangent(pr));
                cospan.push_back(cat.tangent(b_.q));
            }
        }
        auto c = std::make_shared<PullbackCone<C>>(cat, apex, legs, cospan);
        std::lock_guard<std::mutex> lock(mutex_);
        return *cones_.emplace(key, std::move(c)).first->second;
    }

    const C& cat_;
    DifferentialBundle<C> b_;
    Nesting nesting_;
    std::mutex mutex_;
    std::map<Key, Morphism> alpha_;
    std::map<Key, std::shared_ptr<PullbackCone<C>>> cones_;
};

inline nbullet::NMatrix random_nmatrix(Rng& rng, std::size_t rows, std::size_t cols, long max_entry) {
    nbullet::NMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng.between(0, max_entry));
    return m;
}

inline nbullet::NMatrix row_matrix(std::initializer_list<long> entries) {
    nbullet::NMatrix m(1, entries.size());
    std::size_t j = 0;
    for (long e : entries) m.set(0, j++, e);
    return m;
}

struct NamedGenerator {
    std::string name;
    nbullet::NMatrix matrix;
};

// sigma: N^2 -> N, Delta: N -> N^2, zeta: N^0 -> N, pi_i: N^k -> N (k <= 3), !: N -> N^0.
inline std::vector<NamedGenerator> nbullet_generators() {
    std::vector<NamedGenerator> out;
    out.push_back({"sigma", nbullet::sigma(2)});
    out.push_back({"delta", nbullet::delta(2)});
    out.push_back({"zeta", nbullet::NMatrix(1, 0)});
    out.push_back({"bang", nbullet::NMatrix(0, 1)});
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t i = 0; i < k; ++i)
            out.push_back({"pi_" + std::to_string(i) + "^" + std::to_string(k), nbullet::block_projection(k, 1, i)});
    return out;
}

struct NamedTheta {
    std::string name;
    weil::Morphism theta;
};

inline std::vector<NamedTheta> weil_generators() {
    using W = weil::Structural;
    std::vector<NamedTheta> out;
    for (W kind : {W::Zero, W::P, W::Plus, W::Ell, W::Flip})
        out.push_back({weil::structural_name(kind), weil::structural_map(kind)});
    return out;
}

} // namespace detail

template <class C>
DifferentialFunctor<C> ind(const C& cat, const DifferentialBundle<C>& b, Nesting nesting) {
    auto state = std::make_shared<detail::IndState<C>>(cat, b, nesting);
    DifferentialFunctor<C> f;
    f.name = "ind(" + b.name + ")";
    f.object = [state](std::size_t k) { return state->object(k); };
    f.morphism = [state](const nbullet::NMatrix& a) { return state->morphism(a); };
    f.lineator = [state](const weil::Algebra& a, std::size_t l) { return state->lineator(a, l); };
    f.strong = cat.rank(b.M) == 0;
    f.bound = b.bound;
    return f;
}

template <class C>
DifferentialBundle<C> eval(const C& cat, const DifferentialFunctor<C>& f) {
    DifferentialBundle<C> out;
    out.name = "eval(" + f.name + ")";
    if (!f.object || !f.morphism || !f.lineator)
        throw NotADifferentialFunctor(f.name + ": object, morphism and lineator maps are all required");
    try {
        out.E = f.object(1);
        out.M = f.object(0);
        out.q = f.morphism(nbullet::NMatrix(0, 1));
        out.sigma = f.morphism(nbullet::sigma(2));
        out.zeta = f.morphism(nbullet::NMatrix(1, 0));
        nbullet::NMatrix lift(2, 1);
        lift.set(1, 0, 1);
        out.lambda = cat.compose(f.lineator(weil::W(), 1), f.morphism(lift));
        out.bound = f.bound;
        out.provider = [f](std::size_t n) {
            PowerData<C> p;
            p.object = f.object(n);
            for (std::size_t i = 0; i < n; ++i) p.projections.push_back(f.morphism(nbullet::block_projection(n, 1, i)));
            return p;
        };
        out.cone(cat, 2);
    } catch (const Error& e) {
        throw NotADifferentialFunctor(f.name + ": " + e.what());
    }
    return out;
}

template <class C>
DiffNatTransformation<C> ind_morphism(const C& cat, const DifferentialBundle<C>& b, const DifferentialBundle<C>& b2,
                                      const typename C::Morphism& f, const typename C::Morphism& g,
                                      PairingOrder order) {
    using Morphism = typename C::Morphism;
    Classification cls = classify_morphism(cat, b, b2, f, g);
    if (!cls.additive)
        throw NotAdditive("(" + cat.serialize(f).dump() + ", " + cat.serialize(g).dump() + ") is " +
                          morphism_class_name(cls.cls));
    auto src = std::make_shared<DifferentialBundle<C>>(b);
    auto dst = std::make_shared<DifferentialBundle<C>>(b2);
    DiffNatTransformation<C> phi;
    phi.name = "ind(" + b.name + " -> " + b2.name + ")";
    phi.linear = cls.linear;
    auto component = std::make_shared<std::function<Morphism(std::size_t)>>();
    *component = [&cat, src, dst, f, g, order, self = std::weak_ptr(component)](std::size_t k) -> Morphism {
        if (k == 0) return g;
        if (k == 1) return f;
        const auto& legs = src->cone(cat, k).legs();
        std::vector<Morphism> parts;
        if (order == PairingOrder::Flat) {
            for (const auto& pr : legs) parts.push_back(cat.compose(f, pr));
        } else {
            // Through E_{k-1}: the first k-1 factors, then the last one.
            auto d = src->cone(cat, k - 1).pair(std::vector<Morphism>(legs.begin(), legs.end() - 1));
            auto prev = cat.compose((*self.lock())(k - 1), d);
            const auto& legs2 = dst->cone(cat, k - 1).legs();
            for (std::size_t i = 0; i + 1 < k; ++i) parts.push_back(cat.compose(legs2[i], prev));
            parts.push_back(cat.compose(f, legs.back()));
        }
        return dst->cone(cat, k).pair(parts);
    };
    phi.component = [component](std::size_t k) { return (*component)(k); };
    return phi;
}

template <class C>
DiffNatTransformation<C> compose_transformations(const C& cat, const DiffNatTransformation<C>& psi,
                                                 const DiffNatTransformation<C>& phi) {
    DiffNatTransformation<C> out;
    out.name = psi.name + " o " + phi.name;
    out.linear = psi.linear && phi.linear;
    out.component = [&cat, psi, phi](std::size_t k) { return cat.compose(psi.component(k), phi.component(k)); };
    return out;
}

template <class C>
BundleMorphism<C> eval_morphism(const C& cat, const DifferentialFunctor<C>& f, const DifferentialFunctor<C>& g,
                                const DiffNatTransformation<C>& phi) {
    auto b = eval(cat, f);
    auto b2 = eval(cat, g);
    return make_bundle_morphism(cat, b, b2, phi.component(1), phi.component(0));
}

template <class C>
CheckReport check_differential_functor(const C& cat, const DifferentialFunctor<C>& f, const FunctorCheckOptions& opts) {
    using Morphism = typename C::Morphism;
    CheckReport rep;
    Rng rng(opts.seed);
    const std::string pre = cat.name() + "/" + f.name + "/";
    const std::string df = "differential-functor/";
    const std::size_t rank = std::min(opts.max_rank, f.bound);
    const std::size_t tb = std::min(opts.tensor_bound, f.bound);

    for (std::size_t k = 0; k <= rank; ++k)
        rep.guard(pre + "functor/identity", df + "functor-laws", [&] {
            expect_equal(rep, cat, pre + "functor/identity", df + "functor-laws",
                         f.morphism(nbullet::NMatrix::identity(k)), cat.identity(f.object(k)), {{"k", k}});
        });
    for (std::size_t s = 0; s < opts.samples; ++s) {
        std::size_t a = rng.below(rank + 1), b = rng.below(rank + 1), c = rng.below(rank + 1);
        auto m1 = detail::random_nmatrix(rng, b, a, opts.max_entry);
        auto m2 = detail::random_nmatrix(rng, c, b, opts.max_entry);
        rep.guard(pre + "functor/composition", df + "functor-laws", [&] {
            expect_equal(rep, cat, pre + "functor/composition", df + "functor-laws", f.morphism(m2 * m1),
                         cat.compose(f.morphism(m2), f.morphism(m1)),
                         {{"first", m1.to_string()}, {"second", m2.to_string()}});
        });
    }

    for (std::size_t l = 0; l <= rank; ++l)
        rep.guard(pre + "lineator/unit", df + "lineator-unit", [&] {
            expect_equal(rep, cat, pre + "lineator/unit", df + "lineator-unit", f.lineator(weil::unit(), l),
                         cat.identity(f.object(l)), {{"l", l}});
        });
    const auto algebras = small_algebras(tb);
    for (const auto& a : algebras)
        for (const auto& b : algebras)
            for (std::size_t l = 1; a.dimension() * b.dimension() * l <= tb; ++l) {
                const std::string name = pre + "lineator/tensor";
                nlohmann::json ctx = {{"A", a.name()}, {"B", b.name()}, {"l", l}};
                rep.guard(name, df + "lineator-tensor", [&] {
                    auto lhs = f.lineator(weil::tensor(a, b), l);
                    auto rhs = cat.compose(cat.act_morphism(a, f.lineator(b, l)), f.lineator(a, b.dimension() * l));
                    expect_equal(rep, cat, name, df + "lineator-tensor", lhs, rhs, ctx);
                });
            }

    auto thetas = detail::weil_generators();
    for (std::size_t n = 2; n <= 3; ++n)
        for (std::size_t i = 0; i < n; ++i)
            thetas.push_back({"pi_" + std::to_string(i) + "^" + std::to_string(n), weil::projection(n, i)});
    for (const auto& [tname, theta] : thetas)
        for (std::size_t l = 1; l <= 2; ++l) {
            const std::size_t need = std::max(theta.source().dimension(), theta.target().dimension()) * l;
            if (need > f.bound) continue;
            const std::string name = pre + "naturality/weil/" + tname;
            rep.guard(name, df + "weil-naturality", [&] {
                auto lhs = cat.compose(f.lineator(theta.target(), l),
                                       f.morphism(nbullet::weil_action_on_theta(theta, l)));
                auto rhs = cat.compose(cat.act_theta(theta, f.object(l)), f.lineator(theta.source(), l));
                expect_equal(rep, cat, name, df + "weil-naturality", lhs, rhs, {{"l", l}});
            });
        }

    const std::vector<weil::Algebra> actors = {weil::W(), weil::power(2), weil::tensor(weil::W(), weil::W())};
    auto square = [&](const weil::Algebra& a, const nbullet::NMatrix& g, const std::string& name,
                      const std::string& anchor) {
        rep.guard(name, anchor, [&] {
            auto lhs = cat.compose(f.lineator(a, g.rows()), f.morphism(nbullet::weil_action_on_f(a, g)));
            auto rhs = cat.compose(cat.act_morphism(a, f.morphism(g)), f.lineator(a, g.cols()));
            expect_equal(rep, cat, name, anchor, lhs, rhs, {{"A", a.name()}, {"g", g.to_string()}});
        });
    };
    for (const auto& a : actors)
        for (const auto& gen : detail::nbullet_generators())
            if (a.dimension() * std::max(gen.matrix.rows(), gen.matrix.cols()) <= f.bound)
                square(a, gen.matrix, pre + "naturality/nbullet/" + a.name() + "/" + gen.name, df + "nbullet-naturality");
    for (std::size_t s = 0; s < opts.samples; ++s) {
        const auto& a = actors[rng.below(actors.size())];
        const std::size_t lim = std::min(rank, f.bound / a.dimension());
        auto g = detail::random_nmatrix(rng, rng.below(lim + 1), rng.below(lim + 1), opts.max_entry);
        square(a, g, pre + "naturality/nbullet/random", df + "nbullet-naturality");
    }

    for (std::size_t k = 2; k <= std::min<std::size_t>(3, f.bound); ++k) {
        const std::string name = pre + "terminal-pullback/N^" + std::to_string(k);
        rep.guard(name, df + "terminal-pullbacks", [&] {
            std::vector<Morphism> legs, cospan;
            for (std::size_t i = 0; i < k; ++i) {
                legs.push_back(f.morphism(nbullet::block_projection(k, 1, i)));
                cospan.push_back(f.morphism(nbullet::NMatrix(0, 1)));
            }
            expect_pullback(rep, cat, name, df + "terminal-pullbacks", f.object(k), legs, cospan);
        });
    }

    for (const auto& a : {weil::W(), weil::power(2)})
        for (const auto& gen : detail::nbullet_generators()) {
            if (a.dimension() * std::max(gen.matrix.rows(), gen.matrix.cols()) > f.bound) continue;
            const std::string name = pre + "cartesian/" + a.name() + "/" + gen.name;
            rep.guard(name, df + "cartesian-lineator", [&] {
                const auto& g = gen.matrix;
                expect_pullback(rep, cat, name, df + "cartesian-lineator", f.object(a.dimension() * g.cols()),
                                {f.lineator(a, g.cols()), f.morphism(nbullet::weil_action_on_f(a, g))},
                                {cat.act_morphism(a, f.morphism(g)), f.lineator(a, g.rows())});
            });
        }

    if (f.strong) {
        rep.guard(pre + "strong/terminal", df + "strong", [&] {
            bool ok = cat.rank(f.object(0)) == 0;
            rep.record(pre + "strong/terminal", df + "strong", ok,
                       ok ? nlohmann::json(nullptr) : nlohmann::json{{"F(N^0)", cat.describe(f.object(0))}});
        });
        for (const auto& a : algebras)
            if (a.dimension() <= f.bound)
                rep.guard(pre + "strong/lineator-invertible", df + "strong", [&] {
                    auto m = cat.linear_matrix(f.lineator(a, 1));
                    bool ok = m && m->rows() == m->cols() && linalg::invert(*m).has_value();
                    rep.record(pre + "strong/lineator-invertible", df + "strong", ok,
                               ok ? nlohmann::json(nullptr)
                                  : nlohmann::json{{"A", a.name()}, {"lineator", cat.serialize(f.lineator(a, 1))}});
                });
    }
    return rep;
}

template <class C>
CheckReport check_transformation(const C& cat, const DifferentialFunctor<C>& f, const DifferentialFunctor<C>& g,
                                 const DiffNatTransformation<C>& phi, const FunctorCheckOptions& opts) {
    CheckReport rep;
    Rng rng(opts.seed);
    const std::string pre = cat.name() + "/" + phi.name + "/";
    const std::string an = "transformation/naturality";
    const std::size_t bound = std::min(f.bound, g.bound);
    auto square = [&](const nbullet::NMatrix& m, const std::string& name) {
        rep.guard(name, an, [&] {
            expect_equal(rep, cat, name, an, cat.compose(g.morphism(m), phi.component(m.cols())),
                         cat.compose(phi.component(m.rows()), f.morphism(m)), {{"matrix", m.to_string()}});
        });
    };
    for (const auto& gen : detail::nbullet_generators())
        if (std::max(gen.matrix.rows(), gen.matrix.cols()) <= bound) square(gen.matrix, pre + "naturality/" + gen.name);
    const std::size_t rank = std::min(opts.max_rank, bound);
    for (std::size_t s = 0; s < opts.samples; ++s) {
        std::size_t r = rng.below(rank + 1), c = rng.below(rank + 1);
        square(detail::random_nmatrix(rng, r, c, opts.max_entry), pre + "naturality/random");
    }
    if (phi.linear)
        for (const auto& a : {weil::W(), weil::power(2)}) {
            if (a.dimension() > bound) continue;
            const std::string name = pre + "linearity/" + a.name();
            rep.guard(name, "transformation/linearity", [&] {
                expect_equal(rep, cat, name, "transformation/linearity",
                             cat.compose(g.lineator(a, 1), phi.component(a.dimension())),
                             cat.compose(cat.act_morphism(a, phi.component(1)), f.lineator(a, 1)));
            });
        }
    return rep;
}

template <class C>
CheckReport check_lineator_uniqueness(const C& cat, const DifferentialFunctor<C>& f, const DifferentialFunctor<C>& g,
                                      std::size_t bound) {
    CheckReport rep;
    const std::string name = cat.name() + "/" + f.name + "/lineator-uniqueness";
    bound = std::min({bound, f.bound, g.bound});
    for (const auto& a : small_algebras(bound))
        for (std::size_t l = 0; a.dimension() * l <= bound; ++l)
            rep.guard(name, "differential-functor/lineator-uniqueness", [&] {
                expect_equal(rep, cat, name, "differential-functor/lineator-uniqueness", f.lineator(a, l),
                             g.lineator(a, l), {{"A", a.name()}, {"l", l}});
            });
    return rep;
}

template <class C>
CheckReport determinism_check(const C& cat, const DiffNatTransformation<C>& phi, const DiffNatTransformation<C>& psi,
                              std::size_t k_max) {
    CheckReport rep;
    const std::string name = cat.name() + "/" + phi.name + "/determined-by-low-components";
    for (std::size_t k = 0; k <= k_max; ++k)
        rep.guard(name, "transformation/determination", [&] {
            expect_equal(rep, cat, name, "transformation/determination", phi.component(k), psi.component(k), {{"k", k}});
        });
    return rep;
}

template <class C>
CheckReport round_trip(const C& cat, const DifferentialBundle<C>& b) {
    CheckReport rep;
    const std::string pre = cat.name() + "/" + b.name + "/round-trip/";
    const std::string an = "eval-ind/round-trip";
    DifferentialFunctor<C> f = ind(cat, b);
    DifferentialBundle<C> e = eval(cat, f);
    auto same_object = [&](const std::string& name, const typename C::Object& x, const typename C::Object& y) {
        bool ok = x == y;
        rep.record(pre + name, an, ok,
                   ok ? nlohmann::json(nullptr) : nlohmann::json{{"lhs", cat.describe(x)}, {"rhs", cat.describe(y)}});
    };
    same_object("E", e.E, b.E);
    same_object("M", e.M, b.M);
    expect_equal(rep, cat, pre + "q", an, e.q, b.q);
    expect_equal(rep, cat, pre + "sigma", an, e.sigma, b.sigma);
    expect_equal(rep, cat, pre + "zeta", an, e.zeta, b.zeta);
    expect_equal(rep, cat, pre + "lambda", an, e.lambda, b.lambda);
    for (std::size_t n : {2, 3}) {
        const std::string name = "E_" + std::to_string(n);
        rep.guard(pre + name, an, [&] {
            auto lhs = e.power(cat, n), rhs = b.power(cat, n);
            same_object(name, lhs.object, rhs.object);
            for (std::size_t i = 0; i < n; ++i)
                expect_equal(rep, cat, pre + name, an, lhs.projections[i], rhs.projections[i], {{"projection", i}});
        });
    }
    return rep;
}

template <class C>
CheckReport appendix_suite(const C& cat, const DifferentialBundle<C>& b, const DifferentialFunctor<C>& f) {
    using W = weil::Structural;
    using Morphism = typename C::Morphism;
    CheckReport rep;
    const std::string pre = cat.name() + "/" + b.name + "/appendix/";

    const std::string an = "appendix/nbullet-naturality";
    for (std::size_t n = 1; n <= 3; ++n) {
        weil::Algebra a = weil::power(n);
        for (const auto& gen : detail::nbullet_generators()) {
            const auto& g = gen.matrix;
            if (a.dimension() * std::max(g.rows(), g.cols()) > f.bound) continue;
            const std::string name = pre + "nbullet/" + a.name() + "/" + gen.name;
            rep.guard(name, an, [&] {
                auto lhs = cat.compose(f.lineator(a, g.rows()), f.morphism(nbullet::weil_action_on_f(a, g)));
                auto rhs = cat.compose(cat.act_morphism(a, f.morphism(g)), f.lineator(a, g.cols()));
                expect_equal(rep, cat, name, an, lhs, rhs);
            });
        }
    }

    const std::string aw = "appendix/weil-naturality";
    for (const auto& [tname, theta] : detail::weil_generators()) {
        if (std::max(theta.source().dimension(), theta.target().dimension()) > f.bound) continue;
        const std::string name = pre + "weil/" + tname;
        rep.guard(name, aw, [&] {
            auto lhs = cat.compose(f.lineator(theta.target(), 1), f.morphism(nbullet::weil_action_on_theta(theta, 1)));
            auto rhs = cat.compose(cat.act_theta(theta, b.E), f.lineator(theta.source(), 1));
            expect_equal(rep, cat, name, aw, lhs, rhs);
        });
    }

    if (f.bound >= 4) {
        const std::string name = pre + "tensor-expansion/W(x)W";
        rep.guard(name, "appendix/tensor-expansion", [&] {
            weil::Algebra ww = weil::tensor(weil::W(), weil::W());
            const auto& e4 = b.cone(cat, 4).legs();
            auto zero = cat.structural(W::Zero, b.E);
            std::vector<Morphism> terms;
            for (std::size_t i = 0; i < 4; ++i) {
                weil::Monomial m = ww.basis()[i];
                bool outer = m & 1, inner = m & 2;
                auto first = cat.compose(outer ? b.lambda : zero, e4[i]);
                terms.push_back(cat.compose(cat.tangent(inner ? b.lambda : zero), first));
            }
            auto p4 = b.power(cat, 4);
            std::vector<Morphism> legs, cospan;
            for (const auto& pr : p4.projections) {
                legs.push_back(cat.tangent(cat.tangent(pr)));
                cospan.push_back(cat.tangent(cat.tangent(b.q)));
            }
            PullbackCone<C> tt(cat, cat.tangent(cat.tangent(p4.object)), legs, cospan);
            const auto& e2 = b.cone(cat, 2);
            auto sum01 = cat.compose(b.sigma, e2.pair({e4[0], e4[1]}));
            auto sum23 = cat.compose(b.sigma, e2.pair({e4[2], e4[3]}));
            auto total = cat.compose(b.sigma, e2.pair({sum01, sum23}));
            auto display = cat.compose(cat.tangent(cat.tangent(total)), tt.pair(terms));
            expect_equal(rep, cat, name, "appendix/tensor-expansion", f.lineator(ww, 1), display);
        });
    }

    const std::string ac = "appendix/tensor-compatibility";
    for (const auto& a : {weil::unit(), weil::W()}) {
        weil::Algebra bc = weil::product(weil::W(), weil::W());
        weil::Algebra abc = weil::tensor(a, bc);
        if (abc.dimension() > f.bound) continue;
        auto ida = weil::identity(a);
        const std::string name = pre + "tensor-compatibility/" + a.name();
        rep.guard(name + "/pullback", ac, [&] {
            std::vector<Morphism> legs, cospan;
            for (bool second : {false, true}) {
                legs.push_back(cat.act_theta(weil::tensor(ida, weil::product_projection(1, 1, second)), b.E));
                cospan.push_back(cat.act_theta(weil::tensor(ida, weil::augmentation(weil::W())), b.E));
            }
            expect_pullback(rep, cat, name + "/pullback", ac, cat.act_object(abc, b.E), legs, cospan);
        });
        for (bool second : {false, true}) {
            const std::string sub = name + (second ? "/second" : "/first");
            rep.guard(sub, ac, [&] {
                auto theta = weil::tensor(ida, weil::product_projection(1, 1, second));
                auto lhs = cat.compose(f.lineator(theta.target(), 1), f.morphism(nbullet::weil_action_on_theta(theta, 1)));
                auto rhs = cat.compose(cat.act_theta(theta, b.E), f.lineator(abc, 1));
                expect_equal(rep, cat, sub, ac, lhs, rhs);
            });
        }
    }
    return rep;
}

} // namespace tangentcat

#endif
