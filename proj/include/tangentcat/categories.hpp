#ifndef TANGENTCAT_CATEGORIES_HPP
#define TANGENTCAT_CATEGORIES_HPP

#include "tangentcat/linalg.hpp"
#include "tangentcat/nbullet.hpp"
#include "tangentcat/polycat.hpp"
#include "tangentcat/report.hpp"
#include "tangentcat/weil.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

// Concrete tangent categories as duck-typed policies. Each provides:
//   Object, Morphism, Component
//   name, scalar_domain, describe, rank, source, target, identity, compose, equal
//   tangent (objects and morphisms), structural(kind, X)
//   tangent_power(n, X), tangent_power_projection(n, i, X)     T_n X and its legs
//   act_object(A, X), act_morphism(A, f), act_theta(theta, X)  the Weil action
//   components, assemble, combine       coordinate view used for pairings
//   linear_matrix, sample, serialize
namespace tangentcat {

using Row = std::vector<mpq_class>;

// Adds one to a single entry of every structural map of the given kind
// whose shape contains (row, col).
struct StructuralMutation {
    weil::Structural kind;
    std::size_t row;
    std::size_t col;
};

struct SampleConfig {
    std::size_t degree = 3;   // polynomial degree bound
    long max_entry = 3;       // natural matrix entries
};

class NBulletCategory {
public:
    using Object = std::size_t;
    using Morphism = nbullet::NMatrix;
    using Component = Row;

    std::optional<StructuralMutation> mutation;
    SampleConfig sampling;

    std::string name() const { return "nbullet"; }
    Domain scalar_domain() const { return Domain::natural(); }
    std::string describe(Object k) const { return "N^" + std::to_string(k); }
    std::size_t rank(Object k) const { return k; }
    Object source(const Morphism& f) const { return f.cols(); }
    Object target(const Morphism& f) const { return f.rows(); }

    Morphism identity(Object k) const { return Morphism::identity(k); }
    Morphism compose(const Morphism& g, const Morphism& f) const;
    bool equal(const Morphism& f, const Morphism& g) const { return f == g; }

    Object tangent(Object k) const { return 2 * k; }
    Morphism tangent(const Morphism& f) const { return nbullet::d_morphism(f); }
    Morphism structural(weil::Structural kind, Object k) const;
    Object tangent_power(std::size_t n, Object k) const { return (n + 1) * k; }
    Morphism tangent_power_projection(std::size_t n, std::size_t i, Object k) const;

    Object act_object(const weil::Algebra& a, Object k) const { return nbullet::weil_action(a, k); }
    Morphism act_morphism(const weil::Algebra& a, const Morphism& f) const { return nbullet::weil_action_on_f(a, f); }
    Morphism act_theta(const weil::Morphism& theta, Object k) const { return nbullet::weil_action_on_theta(theta, k); }

    std::vector<Component> components(const Morphism& f) const;
    Morphism assemble(Object src, Object dst, const std::vector<Component>& comps) const;
    Component combine(const Row& coeffs, const std::vector<Component>& comps, Object src) const;
    std::optional<linalg::Matrix> linear_matrix(const Morphism& f) const { return f.to_linear(); }

    Morphism sample(Object src, Object dst, Rng& rng) const;
    nlohmann::json serialize(const Morphism& f) const;

    Object terminal() const { return 0; }
    Morphism from_matrix(const linalg::Matrix& m) const { return Morphism::from_linear(m); }
    Morphism perturb(const Morphism& f, std::size_t row, std::size_t col) const;
};

class PolyCategory {
public:
    using Object = std::size_t;
    using Morphism = poly::PolyMorphism;
    using Component = poly::Polynomial;

    explicit PolyCategory(Domain dom) : dom_(dom) {}

    std::optional<StructuralMutation> mutation;
    SampleConfig sampling;

    std::string name() const { return "poly[" + dom_.tag() + "]"; }
    Domain scalar_domain() const { return dom_; }
    std::string describe(Object k) const { return "F^" + std::to_string(k); }
    std::size_t rank(Object k) const { return k; }
    Object source(const Morphism& f) const { return f.source(); }
    Object target(const Morphism& f) const { return f.target(); }

    Morphism identity(Object k) const { return poly::identity(dom_, k); }
    Morphism compose(const Morphism& g, const Morphism& f) const { return poly::compose(g, f); }
    bool equal(const Morphism& f, const Morphism& g) const { return poly::equals(f, g); }

    Object tangent(Object k) const { return 2 * k; }
    Morphism tangent(const Morphism& f) const { return poly::tangent(f); }
    Morphism structural(weil::Structural kind, Object k) const;
    Object tangent_power(std::size_t n, Object k) const { return (n + 1) * k; }
    Morphism tangent_power_projection(std::size_t n, std::size_t i, Object k) const;

    Object act_object(const weil::Algebra& a, Object k) const { return poly::weil_action(a, k); }
    Morphism act_morphism(const weil::Algebra& a, const Morphism& f) const { return poly::weil_action_on_f(a, f); }
    Morphism act_theta(const weil::Morphism& theta, Object k) const {
        return poly::weil_action_on_theta(dom_, theta, k);
    }

    std::vector<Component> components(const Morphism& f) const { return f.components(); }
    Morphism assemble(Object src, Object dst, const std::vector<Component>& comps) const;
    Component combine(const Row& coeffs, const std::vector<Component>& comps, Object src) const;
    std::optional<linalg::Matrix> linear_matrix(const Morphism& f) const { return poly::linear_part(f); }

    Morphism sample(Object src, Object dst, Rng& rng) const;
    nlohmann::json serialize(const Morphism& f) const;

    Object terminal() const { return 0; }
    Morphism from_matrix(const linalg::Matrix& m) const { return poly::from_matrix(dom_, m); }
    Morphism perturb(const Morphism& f, std::size_t row, std::size_t col) const;

private:
    Domain dom_;
};

// Weil with the tangent structure W (x) -.
class WeilCategory {
public:
    using Object = weil::Algebra;
    using Morphism = weil::Morphism;
    using Component = Row;

    std::string name() const { return "weil"; }
    Domain scalar_domain() const { return Domain::natural(); }
    std::string describe(const Object& a) const { return a.name(); }
    std::size_t rank(const Object& a) const { return a.dimension(); }
    Object source(const Morphism& f) const { return f.source(); }
    Object target(const Morphism& f) const { return f.target(); }

    Morphism identity(const Object& a) const { return weil::identity(a); }
    Morphism compose(const Morphism& g, const Morphism& f) const { return weil::compose(g, f); }
    bool equal(const Morphism& f, const Morphism& g) const { return weil::equals(f, g); }

    Object tangent(const Object& a) const { return weil::weil_tangent(a); }
    Morphism tangent(const Morphism& f) const { return weil::weil_tangent(f); }
    Morphism structural(weil::Structural kind, const Object& a) const { return weil::structural_map(kind, a); }
    Object tangent_power(std::size_t n, const Object& a) const { return weil::tensor(weil::power(n), a); }
    Morphism tangent_power_projection(std::size_t n, std::size_t i, const Object& a) const;

    Object act_object(const weil::Algebra& b, const Object& a) const { return weil::tensor(b, a); }
    Morphism act_morphism(const weil::Algebra& b, const Morphism& f) const {
        return weil::tensor(weil::identity(b), f);
    }
    Morphism act_theta(const weil::Morphism& theta, const Object& a) const {
        return weil::tensor(theta, weil::identity(a));
    }

    std::vector<Component> components(const Morphism& f) const;
    Morphism assemble(const Object& src, const Object& dst, const std::vector<Component>& comps) const;
    Component combine(const Row& coeffs, const std::vector<Component>& comps, const Object& src) const;
    std::optional<linalg::Matrix> linear_matrix(const Morphism& f) const { return weil::basis_matrix(f); }

    Morphism sample(const Object& src, const Object& dst, Rng& rng) const;
    nlohmann::json serialize(const Morphism& f) const;
};

// N-bullet with the identity functor as tangent structure.
class TrivialCategory {
public:
    using Object = std::size_t;
    using Morphism = nbullet::NMatrix;
    using Component = Row;

    std::string name() const { return "trivial"; }
    Domain scalar_domain() const { return Domain::natural(); }
    std::string describe(Object k) const { return "N^" + std::to_string(k); }
    std::size_t rank(Object k) const { return k; }
    Object source(const Morphism& f) const { return f.cols(); }
    Object target(const Morphism& f) const { return f.rows(); }

    Morphism identity(Object k) const { return Morphism::identity(k); }
    Morphism compose(const Morphism& g, const Morphism& f) const { return base_.compose(g, f); }
    bool equal(const Morphism& f, const Morphism& g) const { return f == g; }

    Object tangent(Object k) const { return k; }
    Morphism tangent(const Morphism& f) const { return f; }
    Morphism structural(weil::Structural, Object k) const { return identity(k); }
    Object tangent_power(std::size_t, Object k) const { return k; }
    Morphism tangent_power_projection(std::size_t, std::size_t, Object k) const { return identity(k); }

    Object act_object(const weil::Algebra&, Object k) const { return k; }
    Morphism act_morphism(const weil::Algebra&, const Morphism& f) const { return f; }
    Morphism act_theta(const weil::Morphism&, Object k) const { return identity(k); }

    std::vector<Component> components(const Morphism& f) const { return base_.components(f); }
    Morphism assemble(Object src, Object dst, const std::vector<Component>& comps) const {
        return base_.assemble(src, dst, comps);
    }
    Component combine(const Row& coeffs, const std::vector<Component>& comps, Object src) const {
        return base_.combine(coeffs, comps, src);
    }
    std::optional<linalg::Matrix> linear_matrix(const Morphism& f) const { return f.to_linear(); }

    Morphism sample(Object src, Object dst, Rng& rng) const { return base_.sample(src, dst, rng); }
    nlohmann::json serialize(const Morphism& f) const { return base_.serialize(f); }

private:
    NBulletCategory base_;
};

} // namespace tangentcat

#endif
