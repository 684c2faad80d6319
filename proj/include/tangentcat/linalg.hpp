#ifndef TANGENTCAT_LINALG_HPP
#define TANGENTCAT_LINALG_HPP

#include "tangentcat/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tangentcat::linalg {

// Dense matrix with entries canonical in `dom`.
class Matrix {
public:
    Matrix() = default;
    Matrix(Domain dom, std::size_t rows, std::size_t cols)
        : dom_(dom), rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(Domain dom, std::size_t n);

    const Domain& domain() const { return dom_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    // Rows of this matrix at the given indices, in order.
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    // Stack matrices with equal column counts.
    static Matrix vstack(const std::vector<Matrix>& parts);

    std::string to_string() const;

private:
    Domain dom_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpq_class> a_;
};

// Inverse over the matrix domain. Over the naturals only permutation
// matrices have an inverse with natural entries.
std::optional<Matrix> invert(const Matrix& m);

// Parametrisation of the solution set of a cospan u_0, ..., u_{n-1}
// (all with the same codomain): the tuples (x_0, ..., x_{n-1}) with
// u_0 x_0 = u_i x_i. Variables are the concatenated coordinates of the x_i.
// Every solution is param * t for a unique t; `free` lists the variables
// that t copies verbatim.
struct ConeSolution {
    std::size_t variables = 0;
    std::vector<std::size_t> free;
    Matrix param;
};

// Over a field this is a kernel computation. Over the naturals the solution
// monoid is found by elimination (coordinates forced to zero, coordinates
// equal to a natural combination of others); returns nullopt if the monoid
// is not reached that way.
std::optional<ConeSolution> solve_cospan(const std::vector<Matrix>& cospan, Domain dom);

} // namespace tangentcat::linalg

#endif
