#include "tangentcat/equivalence.hpp"

namespace tangentcat {

const char* nesting_name(Nesting n) { return n == Nesting::Left ? "left" : "right"; }

DifferentialFunctor<NBulletCategory> identity_functor(const NBulletCategory& cat, std::size_t bound) {
    DifferentialFunctor<NBulletCategory> f;
    f.name = "identity";
    f.object = [](std::size_t k) { return k; };
    f.morphism = [](const nbullet::NMatrix& a) { return a; };
    f.lineator = [&cat](const weil::Algebra& a, std::size_t l) { return cat.identity(a.dimension() * l); };
    f.strong = true;
    f.bound = bound;
    return f;
}

DifferentialFunctor<PolyCategory> entry_embedding(const PolyCategory& cat, std::size_t bound) {
    DifferentialFunctor<PolyCategory> f;
    f.name = "entry-embedding";
    f.object = [](std::size_t k) { return k; };
    f.morphism = [&cat](const nbullet::NMatrix& a) { return cat.from_matrix(a.to_linear()); };
    f.lineator = [&cat](const weil::Algebra& a, std::size_t l) { return cat.identity(a.dimension() * l); };
    f.strong = true;
    f.bound = bound;
    return f;
}

std::vector<weil::Algebra> small_algebras(std::size_t max_dim) {
    std::vector<weil::Algebra> out;
    if (max_dim == 0) return out;
    for (auto& a : weil::enumerate_algebras(max_dim - 1))
        if (a.dimension() <= max_dim) out.push_back(std::move(a));
    return out;
}

} // namespace tangentcat
