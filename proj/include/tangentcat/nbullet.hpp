#ifndef TANGENTCAT_NBULLET_HPP
#define TANGENTCAT_NBULLET_HPP

#include "tangentcat/linalg.hpp"
#include "tangentcat/weil.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace tangentcat::nbullet {

// A morphism N^cols -> N^rows.
class NMatrix {
public:
    NMatrix() = default;
    NMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    NMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static NMatrix identity(std::size_t n);
    static NMatrix zero(std::size_t rows, std::size_t cols) { return NMatrix(rows, cols); }
    // From a linear map with natural entries.
    static NMatrix from_linear(const linalg::Matrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    // Entries must stay nonnegative; set() enforces it.
    void set(std::size_t i, std::size_t j, const mpz_class& v);

    NMatrix operator*(const NMatrix& o) const;
    bool operator==(const NMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const NMatrix& o) const { return !(*this == o); }

    linalg::Matrix to_linear() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> a_;
};

NMatrix kron(const NMatrix& a, const NMatrix& b);
NMatrix direct_sum(const NMatrix& a, const NMatrix& b);
NMatrix vstack(const std::vector<NMatrix>& parts, std::size_t cols);
NMatrix hstack(const std::vector<NMatrix>& parts, std::size_t rows);

std::size_t d_object(std::size_t k);
NMatrix d_morphism(const NMatrix& f);
NMatrix structural(weil::Structural kind, std::size_t k);

std::size_t weil_action(const weil::Algebra& a, std::size_t k);
NMatrix weil_action_on_theta(const weil::Morphism& theta, std::size_t k);
NMatrix weil_action_on_f(const weil::Algebra& a, const NMatrix& f);

struct DiffObject {
    NMatrix zeta;
    NMatrix sigma;
    NMatrix lambda;
};
DiffObject diff_object(std::size_t k);

// Projection N^{parts*k} -> N^k onto block i; sigma_k, Delta_k.
NMatrix block_projection(std::size_t parts, std::size_t k, std::size_t i);
NMatrix sigma(std::size_t k);
NMatrix delta(std::size_t k);

// Syntax tree over sigma_k, Delta_k, projections, pairings and composites.
struct GeneratorTerm {
    enum class Kind { Sigma, Delta, Proj, Pair, Compose };
    Kind kind = Kind::Sigma;
    std::size_t k = 0;      // Sigma/Delta arity, Proj index
    std::size_t m = 0;      // Proj domain rank, Pair domain rank
    std::vector<GeneratorTerm> children;  // Compose lists outermost first

    static GeneratorTerm sigma(std::size_t k);
    static GeneratorTerm delta(std::size_t k);
    static GeneratorTerm proj(std::size_t i, std::size_t m);
    static GeneratorTerm pair(std::vector<GeneratorTerm> parts, std::size_t domain);
    static GeneratorTerm compose(std::vector<GeneratorTerm> parts);

    std::size_t domain() const;
    std::size_t codomain() const;
    NMatrix evaluate() const;
    std::string to_string() const;
};

std::vector<GeneratorTerm> decompose_matrix(const NMatrix& f);
// Pairing of the row terms, evaluated.
NMatrix evaluate_rows(const std::vector<GeneratorTerm>& rows, std::size_t cols);

} // namespace tangentcat::nbullet

#endif
