#ifndef TANGENTCAT_WEIL_HPP
#define TANGENTCAT_WEIL_HPP

#include "tangentcat/linalg.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tangentcat::weil {

// Monomials are bitmasks: bit i stands for generator x_{i+1}.
using Monomial = std::uint64_t;

// N[x_1..x_n] / <x_i x_j | i ~ j> for an equivalence relation ~.
// The relation is stored as class labels numbered by first occurrence.
// Basis: independent monomials ordered lexicographically by exponent vector
// with x_1 most significant, so that the basis of tensor(A, B) is A-major.
class Algebra {
public:
    Algebra() : Algebra(std::vector<std::size_t>{}) {}
    explicit Algebra(std::vector<std::size_t> classes);

    std::size_t generator_count() const { return classes_.size(); }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<Monomial>& basis() const { return basis_; }
    const std::vector<std::size_t>& classes() const { return classes_; }
    // Index of a monomial in the basis, or -1 if it is zero in the algebra.
    long index_of(Monomial m) const;
    bool related(std::size_t i, std::size_t j) const { return classes_[i] == classes_[j]; }
    // Product of two basis monomials: the union, or nullopt-like -1 when zero.
    long multiply_index(std::size_t a, std::size_t b) const { return mult_[a * basis_.size() + b]; }
    // True if all generators are pairwise related (W^n, including N = W^0).
    bool is_power() const;
    std::size_t class_count() const;

    std::string monomial_name(Monomial m) const;
    // e.g. "W^2(x)W" for canonical algebras, a class listing otherwise.
    std::string name() const;

    bool operator==(const Algebra& o) const { return classes_ == o.classes_; }
    bool operator!=(const Algebra& o) const { return !(*this == o); }
    bool operator<(const Algebra& o) const { return classes_ < o.classes_; }

private:
    std::vector<std::size_t> classes_;
    std::vector<Monomial> basis_;
    std::vector<long> index_;
    std::vector<long> mult_;
};

// Coefficients over the basis monomials; zero coefficients are absent.
struct Element {
    std::map<Monomial, mpz_class> coeffs;

    static Element constant(const mpz_class& c);
    static Element monomial(Monomial m, const mpz_class& c = 1);
    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const Element& o) const { return coeffs == o.coeffs; }
};

Element add(const Element& a, const Element& b);
Element multiply(const Algebra& alg, const Element& a, const Element& b);
std::string to_string(const Algebra& alg, const Element& e);

class Morphism {
public:
    // Throws InvalidWeilMorphism unless related generators have images with
    // zero product and all images live in the target basis.
    Morphism(Algebra source, Algebra target, std::vector<Element> images);

    const Algebra& source() const { return source_; }
    const Algebra& target() const { return target_; }
    const std::vector<Element>& images() const { return images_; }

    bool operator==(const Morphism& o) const {
        return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
    }

private:
    Algebra source_;
    Algebra target_;
    std::vector<Element> images_;
};

// pairs use 1-based generator indices; every {i,i} must be present.
Algebra make_algebra(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& related_pairs);

Algebra unit();         // N
Algebra W();            // N[x]/x^2
Algebra power(std::size_t n);  // W^n
Algebra tensor(const Algebra& a, const Algebra& b);
Algebra product(const Algebra& a, const Algebra& b);

struct Decomposition {
    std::vector<std::size_t> blocks;
    // recompose(blocks) -> A, a generator permutation.
    Morphism iso;
};
Decomposition decompose(const Algebra& a);
Algebra recompose(const std::vector<std::size_t>& blocks);
bool is_canonical(const Algebra& a);

enum class Structural { P, Zero, Plus, Ell, Flip };
const char* structural_name(Structural s);
Morphism structural_map(Structural kind);
// kind (x) 1_A.
Morphism structural_map(Structural kind, const Algebra& at);

Morphism identity(const Algebra& a);
Morphism compose(const Morphism& g, const Morphism& f);
Element apply(const Morphism& f, const Element& e);
bool equals(const Morphism& f, const Morphism& g);
Morphism tensor(const Morphism& f, const Morphism& g);
// Columns indexed by source basis, rows by target basis.
linalg::Matrix basis_matrix(const Morphism& f);
// Inverse of an invertible morphism (a generator permutation).
Morphism inverse(const Morphism& f);

Algebra weil_tangent(const Algebra& a);
Morphism weil_tangent(const Morphism& f);

// i-th projection W^n -> W (0-based), augmentation A -> N, unit N -> A,
// and the projections of product(W^m, W^n) onto its factors.
Morphism projection(std::size_t n, std::size_t i);
Morphism augmentation(const Algebra& a);
Morphism unit_map(const Algebra& a);
Morphism product_projection(std::size_t m, std::size_t n, bool second);

// Every admissible algebra on 0..max_generators generators (set partitions).
std::vector<Algebra> enumerate_algebras(std::size_t max_generators);

std::string to_string(const Morphism& f);

} // namespace tangentcat::weil

#endif
