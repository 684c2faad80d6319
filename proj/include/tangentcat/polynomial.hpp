#ifndef TANGENTCAT_POLYNOMIAL_HPP
#define TANGENTCAT_POLYNOMIAL_HPP

#include "tangentcat/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tangentcat::poly {

using Exponent = std::vector<std::uint32_t>;

// Graded-lex order, largest first: higher total degree, then lex.
struct GradedLex {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class Polynomial {
public:
    using Terms = std::map<Exponent, mpq_class, GradedLex>;

    Polynomial() : Polynomial(Domain::rational(), 0) {}
    Polynomial(Domain dom, std::size_t nvars) : dom_(dom), nvars_(nvars) {}

    static Polynomial constant(Domain dom, std::size_t nvars, const mpq_class& c);
    static Polynomial variable(Domain dom, std::size_t nvars, std::size_t i);

    const Domain& domain() const { return dom_; }
    std::size_t variable_count() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint32_t degree() const;
    // Adds c * x^e, dropping the term if it cancels.
    void add_term(const Exponent& e, const mpq_class& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const mpq_class& c) const;
    Polynomial pow(std::uint32_t k) const;

    bool operator==(const Polynomial& o) const {
        return dom_ == o.dom_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check(const Polynomial& o) const;

    Domain dom_;
    std::size_t nvars_;
    Terms terms_;
};

// Formal partial derivative with respect to x_i (0-based); the exponent k
// is read as an element of the domain.
Polynomial partial(const Polynomial& p, std::size_t i);

// Substitute values[j] for x_j; every value has the same variable count.
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& values, std::size_t nvars);

// Grammar: variables x0..x{m-1}; integer, a/b or "k mod p" coefficients;
// + - * ^ and parentheses. Throws PolynomialParse with a line/column.
Polynomial parse(std::string_view text, Domain dom, std::size_t nvars);

} // namespace tangentcat::poly

#endif
