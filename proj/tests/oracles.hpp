#ifndef TANGENTCAT_TESTS_ORACLES_HPP
#define TANGENTCAT_TESTS_ORACLES_HPP

#include "tangentcat/nbullet.hpp"
#include "tangentcat/polycat.hpp"
#include "tangentcat/report.hpp"
#include "tangentcat/weil.hpp"

#include <vector>

// Reference computations written against the definitions directly, without
// going through the library's recursive constructions.
namespace oracle {

using namespace tangentcat;

inline nbullet::NMatrix matrix(std::size_t rows, std::size_t cols, const std::vector<long>& entries) {
    nbullet::NMatrix m(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) m.set(i / cols, i % cols, entries[i]);
    return m;
}

inline nbullet::NMatrix product(const nbullet::NMatrix& a, const nbullet::NMatrix& b) {
    nbullet::NMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            mpz_class s = 0;
            for (std::size_t t = 0; t < a.cols(); ++t) s += a(i, t) * b(t, j);
            out.set(i, j, s);
        }
    return out;
}

// I_n (x) f, i.e. n diagonal copies of f.
inline nbullet::NMatrix block_diagonal(const nbullet::NMatrix& f, std::size_t n) {
    nbullet::NMatrix out(n * f.rows(), n * f.cols());
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j) out.set(b * f.rows() + i, b * f.cols() + j, f(i, j));
    return out;
}

inline nbullet::NMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long max_entry) {
    nbullet::NMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng.between(0, max_entry));
    return m;
}

// Elements of A (x) F[y] as polynomial coefficients over the basis of A.
using AlgebraPoly = std::vector<poly::Polynomial>;

inline AlgebraPoly multiply(const weil::Algebra& a, const AlgebraPoly& u, const AlgebraPoly& v) {
    AlgebraPoly out(u.size(), poly::Polynomial(u[0].domain(), u[0].variable_count()));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            long k = a.multiply_index(i, j);
            if (k >= 0 && !v[j].is_zero()) out[k] = out[k] + u[i] * v[j];
        }
    }
    return out;
}

// T_A(f) by evaluating f at the generic point sum_b y_{b*m+i} e_b of A (x) F^m.
inline poly::PolyMorphism weil_evaluation(const weil::Algebra& a, const poly::PolyMorphism& f) {
    const Domain dom = f.domain();
    const std::size_t d = a.dimension(), m = f.source(), nvars = d * m;
    std::vector<AlgebraPoly> point(m, AlgebraPoly(d, poly::Polynomial(dom, nvars)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t b = 0; b < d; ++b) point[i][b] = poly::Polynomial::variable(dom, nvars, b * m + i);
    std::vector<poly::Polynomial> out(d * f.target(), poly::Polynomial(dom, nvars));
    for (std::size_t r = 0; r < f.target(); ++r) {
        AlgebraPoly acc(d, poly::Polynomial(dom, nvars));
        for (const auto& [e, c] : f.components()[r].terms()) {
            AlgebraPoly term(d, poly::Polynomial(dom, nvars));
            term[0] = poly::Polynomial::constant(dom, nvars, c);
            for (std::size_t i = 0; i < m; ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) term = multiply(a, term, point[i]);
            for (std::size_t b = 0; b < d; ++b) acc[b] = acc[b] + term[b];
        }
        for (std::size_t b = 0; b < d; ++b) out[b * f.target() + r] = acc[b];
    }
    return poly::PolyMorphism(dom, nvars, std::move(out));
}

} // namespace oracle

#endif
