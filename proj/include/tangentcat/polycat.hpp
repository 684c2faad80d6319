#ifndef TANGENTCAT_POLYCAT_HPP
#define TANGENTCAT_POLYCAT_HPP

#include "tangentcat/linalg.hpp"
#include "tangentcat/polynomial.hpp"
#include "tangentcat/weil.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tangentcat::poly {

// A morphism F^source -> F^target given by target-many polynomials.
class PolyMorphism {
public:
    PolyMorphism() = default;
    PolyMorphism(Domain dom, std::size_t source, std::vector<Polynomial> components);

    const Domain& domain() const { return dom_; }
    std::size_t source() const { return source_; }
    std::size_t target() const { return comps_.size(); }
    const std::vector<Polynomial>& components() const { return comps_; }

    bool operator==(const PolyMorphism& o) const {
        return dom_ == o.dom_ && source_ == o.source_ && comps_ == o.comps_;
    }
    bool operator!=(const PolyMorphism& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    Domain dom_;
    std::size_t source_ = 0;
    std::vector<Polynomial> comps_;
};

PolyMorphism identity(Domain dom, std::size_t m);
PolyMorphism compose(const PolyMorphism& g, const PolyMorphism& f);
bool equals(const PolyMorphism& f, const PolyMorphism& g);
PolyMorphism parse_morphism(Domain dom, std::size_t arity, const std::vector<std::string>& components);

// J[i][j] = d f_i / d x_j.
std::vector<std::vector<Polynomial>> jacobian(const PolyMorphism& f);
// (x, v) |-> (f(x), J_f(x) v).
PolyMorphism tangent(const PolyMorphism& f);
// T_{W^n}: (f(x), J_f(x) v_b) over the basis of W^n.
PolyMorphism tangent_power(const PolyMorphism& f, std::size_t n);

PolyMorphism structural(Domain dom, weil::Structural kind, std::size_t k);

std::size_t weil_action(const weil::Algebra& a, std::size_t k);
PolyMorphism weil_action_on_f(const weil::Algebra& a, const PolyMorphism& f);
PolyMorphism weil_action_on_theta(Domain dom, const weil::Morphism& theta, std::size_t k);

// Linear morphism with the given matrix (entries read in `dom`).
PolyMorphism from_matrix(Domain dom, const linalg::Matrix& m);
// Matrix of f if every term has degree exactly one.
std::optional<linalg::Matrix> linear_part(const PolyMorphism& f);

} // namespace tangentcat::poly

#endif
