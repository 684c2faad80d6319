#ifndef TANGENTCAT_BUNDLES_HPP
#define TANGENTCAT_BUNDLES_HPP

#include "tangentcat/verify.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace tangentcat {

template <class C>
struct PowerData {
    typename C::Object object;
    std::vector<typename C::Morphism> projections;
};

// (E, M, q, zeta, sigma, lambda) with pullback powers E_n supplied by a
// provider for 2 <= n <= bound. E_0 = M and E_1 = E.
template <class C>
class DifferentialBundle {
public:
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;

    std::string name;
    Object E{};
    Object M{};
    Morphism q;
    Morphism zeta;
    Morphism sigma;
    Morphism lambda;
    std::size_t bound = 4;
    std::function<PowerData<C>(std::size_t)> provider;

    PowerData<C> power(const C& cat, std::size_t n) const {
        if (n == 0) return {M, {}};
        if (n == 1) return {E, {cat.identity(E)}};
        if (n > bound)
            throw ProviderBoundTooSmall("E_" + std::to_string(n) + " requested from " + name + " with bound " +
                                        std::to_string(bound));
        return provider(n);
    }

    // Pullback cone of E_n over M, for n >= 1; memoised per bundle value.
    const PullbackCone<C>& cone(const C& cat, std::size_t n) const {
        std::lock_guard<std::mutex> lock(memo_.mutex);
        auto it = memo_.cones.find(n);
        if (it != memo_.cones.end()) return *it->second;
        auto p = power(cat, n);
        auto c = std::make_shared<PullbackCone<C>>(cat, p.object, p.projections, std::vector<Morphism>(n, q));
        return *memo_.cones.emplace(n, std::move(c)).first->second;
    }

    // E_n -> M: the identity for n = 0, q o pi_0 otherwise.
    Morphism base_map(const C& cat, std::size_t n) const {
        if (n == 0) return cat.identity(M);
        return cat.compose(q, cone(cat, n).legs()[0]);
    }

    AdditiveBundle<C> additive(const C& cat) const {
        AdditiveBundle<C> b{E, M, q, sigma, zeta, nullptr};
        b.power = [this, &cat](std::size_t n) {
            auto p = power(cat, n);
            return std::make_pair(p.object, p.projections);
        };
        return b;
    }

private:
    // Copies start with an empty memo so edited fields never see stale cones.
    struct Memo {
        Memo() = default;
        Memo(const Memo&) {}
        Memo& operator=(const Memo&) {
            cones.clear();
            return *this;
        }
        std::mutex mutex;
        std::map<std::size_t, std::shared_ptr<PullbackCone<C>>> cones;
    };
    mutable Memo memo_;
};

// A differential object structure on N^v given by matrices:
// zeta: v x 0, sigma: v x 2v, lambda: 2v x v.
struct LinearDiffObject {
    linalg::Matrix zeta;
    linalg::Matrix sigma;
    linalg::Matrix lambda;

    static LinearDiffObject standard(std::size_t v);
};

// M x V -> M for a Cartesian category with coordinate objects (N-bullet, Poly).
template <class C>
DifferentialBundle<C> trivial_bundle(const C& cat, std::size_t m, std::size_t v,
                                     const LinearDiffObject& fiber, std::size_t bound = 4);

template <class C>
DifferentialBundle<C> trivial_bundle(const C& cat, std::size_t m, std::size_t v, std::size_t bound = 4) {
    return trivial_bundle(cat, m, v, LinearDiffObject::standard(v), bound);
}

// The differential object N^k (resp. F^k): the trivial bundle over rank 0.
template <class C>
DifferentialBundle<C> diff_object_bundle(const C& cat, std::size_t k, std::size_t bound = 4) {
    return trivial_bundle(cat, 0, k, bound);
}

struct BundleCheckOptions {
    std::size_t depth = 2;
    // Also check the pullback with the lift on the second leg.
    bool symmetric = false;
    // For differential objects: sigma o (lambda x 0) is invertible.
    bool informational = false;
};

template <class C>
CheckReport check_differential_bundle(const C& cat, const DifferentialBundle<C>& b, const BundleCheckOptions& opts = {});

enum class MorphismClass { None, Bundle, Additive, Linear };
const char* morphism_class_name(MorphismClass c);

struct Classification {
    bool bundle = false;
    bool additive = false;
    bool linear = false;
    MorphismClass cls = MorphismClass::None;
    nlohmann::json detail = nlohmann::json::object();

    std::string summary() const;
};

template <class C>
struct BundleMorphism {
    typename C::Morphism f;
    typename C::Morphism g;
    Classification classification;
};

template <class C>
Classification classify_morphism(const C& cat, const DifferentialBundle<C>& b, const DifferentialBundle<C>& b2,
                                 const typename C::Morphism& f, const typename C::Morphism& g);

template <class C>
BundleMorphism<C> make_bundle_morphism(const C& cat, const DifferentialBundle<C>& b, const DifferentialBundle<C>& b2,
                                       const typename C::Morphism& f, const typename C::Morphism& g) {
    return {f, g, classify_morphism(cat, b, b2, f, g)};
}

} // namespace tangentcat

#include "tangentcat/bundles_impl.hpp"

#endif
