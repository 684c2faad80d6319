#ifndef TANGENTCAT_EQUIVALENCE_HPP
#define TANGENTCAT_EQUIVALENCE_HPP

#include "tangentcat/bundles.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace tangentcat {

// A functor N-bullet -> C with lineator alpha-hat_{A, N^l}: F(D_A N^l) -> T_A F(N^l).
// Objects N^k are indexed by k; D_A N^l = N^{dim A * l}.
template <class C>
struct DifferentialFunctor {
    using Object = typename C::Object;
    using Morphism = typename C::Morphism;

    std::string name;
    std::function<Object(std::size_t)> object;
    std::function<Morphism(const nbullet::NMatrix&)> morphism;
    std::function<Morphism(const weil::Algebra&, std::size_t)> lineator;
    bool strong = false;
    // Largest k for which F(N^k) is available.
    std::size_t bound = 4;
};

// Order in which alpha-hat is assembled for A = W^{b_0} (x) ... (x) W^{b_r}:
// Left splits off W^{b_0}, Right splits off W^{b_r}.
enum class Nesting { Left, Right };
const char* nesting_name(Nesting n);

// Hom_{/M}(E_n, E): maps h with q o h = q o pi_0 (the identity of M for n = 0).
template <class C>
struct HomElement {
    std::size_t n = 0;
    typename C::Morphism h;
};

template <class C>
HomElement<C> hom_element(const C& cat, const DifferentialBundle<C>& b, std::size_t n, typename C::Morphism h);
template <class C>
HomElement<C> hom_add(const C& cat, const DifferentialBundle<C>& b, const HomElement<C>& f, const HomElement<C>& g);
template <class C>
HomElement<C> hom_zero(const C& cat, const DifferentialBundle<C>& b, std::size_t n);
template <class C>
HomElement<C> hom_scale(const C& cat, const DifferentialBundle<C>& b, const mpz_class& k, const HomElement<C>& f);

// The functor F_E with its lineator. `cat` must outlive the result.
template <class C>
DifferentialFunctor<C> ind(const C& cat, const DifferentialBundle<C>& b, Nesting nesting = Nesting::Left);

// The identity functor on N-bullet and the entry embedding N-bullet -> Poly,
// both with the identity lineator.
DifferentialFunctor<NBulletCategory> identity_functor(const NBulletCategory& cat, std::size_t bound = 8);
DifferentialFunctor<PolyCategory> entry_embedding(const PolyCategory& cat, std::size_t bound = 8);

// (F(N), F(N^0), F(q), F(sigma), F(zeta), alpha o F(lambda)) with E_n = F(N^n).
template <class C>
DifferentialBundle<C> eval(const C& cat, const DifferentialFunctor<C>& f);

// Components phi_k: F(N^k) -> G(N^k).
template <class C>
struct DiffNatTransformation {
    std::string name;
    std::function<typename C::Morphism(std::size_t)> component;
    bool linear = false;
};

enum class PairingOrder { Flat, Nested };

// phi_0 = g, phi_1 = f and phi_k the induced map of pullback powers.
template <class C>
DiffNatTransformation<C> ind_morphism(const C& cat, const DifferentialBundle<C>& b, const DifferentialBundle<C>& b2,
                                      const typename C::Morphism& f, const typename C::Morphism& g,
                                      PairingOrder order = PairingOrder::Flat);

template <class C>
DiffNatTransformation<C> compose_transformations(const C& cat, const DiffNatTransformation<C>& psi,
                                                 const DiffNatTransformation<C>& phi);

template <class C>
BundleMorphism<C> eval_morphism(const C& cat, const DifferentialFunctor<C>& f, const DifferentialFunctor<C>& g,
                                const DiffNatTransformation<C>& phi);

struct FunctorCheckOptions {
    std::size_t samples = 50;
    std::size_t max_rank = 3;
    // Tensor-law checks cover dim A * dim B * l up to this and the functor bound.
    std::size_t tensor_bound = 8;
    long max_entry = 3;
    std::uint64_t seed = 0;
};

template <class C>
CheckReport check_differential_functor(const C& cat, const DifferentialFunctor<C>& f,
                                       const FunctorCheckOptions& opts = {});

// Naturality on generators and random matrices; the linearity square if phi is linear.
template <class C>
CheckReport check_transformation(const C& cat, const DifferentialFunctor<C>& f, const DifferentialFunctor<C>& g,
                                 const DiffNatTransformation<C>& phi, const FunctorCheckOptions& opts = {});

// Two lineators agree wherever both are materialised within the bound.
template <class C>
CheckReport check_lineator_uniqueness(const C& cat, const DifferentialFunctor<C>& f, const DifferentialFunctor<C>& g,
                                      std::size_t bound);

template <class C>
CheckReport determinism_check(const C& cat, const DiffNatTransformation<C>& phi, const DiffNatTransformation<C>& psi,
                              std::size_t k_max);

// eval(ind(b)) against b: six components and the E_2, E_3 pullback data.
template <class C>
CheckReport round_trip(const C& cat, const DifferentialBundle<C>& b);

template <class C>
CheckReport appendix_suite(const C& cat, const DifferentialBundle<C>& b, const DifferentialFunctor<C>& f);

// Algebras on up to three generators with dimension at most `max_dim`.
std::vector<weil::Algebra> small_algebras(std::size_t max_dim);

} // namespace tangentcat

#include "tangentcat/equivalence_impl.hpp"

#endif
