#include "tangentcat/nbullet.hpp"

#include "tangentcat/errors.hpp"

#include <sstream>

namespace tangentcat::nbullet {

NMatrix::NMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.resize(rows_ * cols_);
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ArityMismatch("ragged matrix literal");
        std::size_t j = 0;
        for (long v : r) set(i, j++, v);
        ++i;
    }
}

NMatrix NMatrix::identity(std::size_t n) {
    NMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

NMatrix NMatrix::from_linear(const linalg::Matrix& m) {
    NMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const mpq_class& v = m(i, j);
            if (v.get_den() != 1) throw DomainError("non-integral entry " + format_value(v));
            r.set(i, j, v.get_num());
        }
    return r;
}

void NMatrix::set(std::size_t i, std::size_t j, const mpz_class& v) {
    if (v < 0) throw DomainError("negative entry in an N-matrix");
    a_[i * cols_ + j] = v;
}

NMatrix NMatrix::operator*(const NMatrix& o) const {
    if (cols_ != o.rows_)
        throw CompositionMismatch("matrix product " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                  " * " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    NMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& x = a_[i * cols_ + k];
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const mpz_class& y = o.a_[k * o.cols_ + j];
                if (y != 0) r.a_[i * o.cols_ + j] += x * y;
            }
        }
    return r;
}

linalg::Matrix NMatrix::to_linear() const {
    linalg::Matrix m(Domain::natural(), rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = mpq_class(a_[i * cols_ + j]);
    return m;
}

std::string NMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << a_[i * cols_ + j].get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

NMatrix kron(const NMatrix& a, const NMatrix& b) {
    NMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (b(k, l) != 0) r.set(i * b.rows() + k, j * b.cols() + l, a(i, j) * b(k, l));
        }
    return r;
}

NMatrix direct_sum(const NMatrix& a, const NMatrix& b) {
    NMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.set(a.rows() + i, a.cols() + j, b(i, j));
    return r;
}

NMatrix vstack(const std::vector<NMatrix>& parts, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) throw ArityMismatch("vstack width mismatch");
        rows += p.rows();
    }
    NMatrix r(rows, cols);
    std::size_t at = 0;
    for (const auto& p : parts)
        for (std::size_t i = 0; i < p.rows(); ++i, ++at)
            for (std::size_t j = 0; j < cols; ++j) r.set(at, j, p(i, j));
    return r;
}

NMatrix hstack(const std::vector<NMatrix>& parts, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows) throw ArityMismatch("hstack height mismatch");
        cols += p.cols();
    }
    NMatrix r(rows, cols);
    std::size_t at = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) r.set(i, at + j, p(i, j));
        at += p.cols();
    }
    return r;
}

std::size_t d_object(std::size_t k) { return 2 * k; }

NMatrix d_morphism(const NMatrix& f) { return direct_sum(f, f); }

NMatrix block_projection(std::size_t parts, std::size_t k, std::size_t i) {
    NMatrix r(k, parts * k);
    for (std::size_t j = 0; j < k; ++j) r.set(j, i * k + j, 1);
    return r;
}

NMatrix sigma(std::size_t k) {
    NMatrix r(1, k);
    for (std::size_t j = 0; j < k; ++j) r.set(0, j, 1);
    return r;
}

NMatrix delta(std::size_t k) {
    NMatrix r(k, 1);
    for (std::size_t j = 0; j < k; ++j) r.set(j, 0, 1);
    return r;
}

namespace {

// Block matrix whose (i, j) block is I_k when pattern[i][j] is set.
NMatrix blocks(const std::vector<std::vector<int>>& pattern, std::size_t k) {
    std::size_t br = pattern.size(), bc = pattern.empty() ? 0 : pattern[0].size();
    NMatrix r(br * k, bc * k);
    for (std::size_t i = 0; i < br; ++i)
        for (std::size_t j = 0; j < bc; ++j)
            if (pattern[i][j])
                for (std::size_t t = 0; t < k; ++t) r.set(i * k + t, j * k + t, 1);
    return r;
}

} // namespace

NMatrix structural(weil::Structural kind, std::size_t k) {
    switch (kind) {
    case weil::Structural::P: return blocks({{1, 0}}, k);
    case weil::Structural::Zero: return blocks({{1}, {0}}, k);
    case weil::Structural::Plus: return blocks({{1, 0, 0}, {0, 1, 1}}, k);
    case weil::Structural::Ell: return blocks({{1, 0}, {0, 0}, {0, 0}, {0, 1}}, k);
    case weil::Structural::Flip: return blocks({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}, k);
    }
    throw Error("InvalidStructural", "unknown structural kind");
}

std::size_t weil_action(const weil::Algebra& a, std::size_t k) { return a.dimension() * k; }

NMatrix weil_action_on_theta(const weil::Morphism& theta, std::size_t k) {
    return kron(NMatrix::from_linear(weil::basis_matrix(theta)), NMatrix::identity(k));
}

NMatrix weil_action_on_f(const weil::Algebra& a, const NMatrix& f) {
    return kron(NMatrix::identity(a.dimension()), f);
}

DiffObject diff_object(std::size_t k) {
    return DiffObject{NMatrix(k, 0), hstack({NMatrix::identity(k), NMatrix::identity(k)}, k),
                      vstack({NMatrix(k, k), NMatrix::identity(k)}, k)};
}

GeneratorTerm GeneratorTerm::sigma(std::size_t k) { return GeneratorTerm{Kind::Sigma, k, 0, {}}; }
GeneratorTerm GeneratorTerm::delta(std::size_t k) { return GeneratorTerm{Kind::Delta, k, 0, {}}; }
GeneratorTerm GeneratorTerm::proj(std::size_t i, std::size_t m) {
    if (i >= m) throw ArityMismatch("projection index out of range");
    return GeneratorTerm{Kind::Proj, i, m, {}};
}
GeneratorTerm GeneratorTerm::pair(std::vector<GeneratorTerm> parts, std::size_t domain) {
    for (const auto& p : parts)
        if (p.domain() != domain) throw ArityMismatch("pairing components with different domains");
    return GeneratorTerm{Kind::Pair, 0, domain, std::move(parts)};
}
GeneratorTerm GeneratorTerm::compose(std::vector<GeneratorTerm> parts) {
    if (parts.empty()) throw ArityMismatch("empty composite");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i].domain() != parts[i + 1].codomain()) throw ArityMismatch("ill-typed composite");
    return GeneratorTerm{Kind::Compose, 0, 0, std::move(parts)};
}

std::size_t GeneratorTerm::domain() const {
    switch (kind) {
    case Kind::Sigma: return k;
    case Kind::Delta: return 1;
    case Kind::Proj: return m;
    case Kind::Pair: return m;
    case Kind::Compose: return children.back().domain();
    }
    return 0;
}

std::size_t GeneratorTerm::codomain() const {
    switch (kind) {
    case Kind::Sigma: return 1;
    case Kind::Delta: return k;
    case Kind::Proj: return 1;
    case Kind::Pair: {
        std::size_t n = 0;
        for (const auto& c : children) n += c.codomain();
        return n;
    }
    case Kind::Compose: return children.front().codomain();
    }
    return 0;
}

NMatrix GeneratorTerm::evaluate() const {
    switch (kind) {
    case Kind::Sigma: return nbullet::sigma(k);
    case Kind::Delta: return nbullet::delta(k);
    case Kind::Proj: return block_projection(m, 1, k);
    case Kind::Pair: {
        std::vector<NMatrix> parts;
        for (const auto& c : children) parts.push_back(c.evaluate());
        return vstack(parts, m);
    }
    case Kind::Compose: {
        NMatrix r = children.back().evaluate();
        for (std::size_t i = children.size() - 1; i-- > 0;) r = children[i].evaluate() * r;
        return r;
    }
    }
    throw Error("InvalidTerm", "unknown generator term");
}

std::string GeneratorTerm::to_string() const {
    switch (kind) {
    case Kind::Sigma: return "sigma" + std::to_string(k);
    case Kind::Delta: return "Delta" + std::to_string(k);
    case Kind::Proj: return "pi" + std::to_string(k + 1);
    case Kind::Pair: {
        std::string s = "<";
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (i) s += ", ";
            s += children[i].to_string();
        }
        return s + ">";
    }
    case Kind::Compose: {
        std::string s;
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (i) s += " o ";
            s += children[i].to_string();
        }
        return s;
    }
    }
    return "?";
}

std::vector<GeneratorTerm> decompose_matrix(const NMatrix& f) {
    std::vector<GeneratorTerm> rows;
    std::size_t m = f.cols();
    for (std::size_t i = 0; i < f.rows(); ++i) {
        auto multiple = [&](std::size_t j) {
            if (!f(i, j).fits_ulong_p()) throw DomainError("matrix entry too large to decompose");
            std::size_t a = f(i, j).get_ui();
            return std::vector<GeneratorTerm>{GeneratorTerm::sigma(a), GeneratorTerm::delta(a)};
        };
        if (m == 1) {
            rows.push_back(GeneratorTerm::compose(multiple(0)));
            continue;
        }
        std::vector<GeneratorTerm> parts;
        for (std::size_t j = 0; j < m; ++j) {
            auto chain = multiple(j);
            chain.push_back(GeneratorTerm::proj(j, m));
            parts.push_back(GeneratorTerm::compose(std::move(chain)));
        }
        rows.push_back(GeneratorTerm::compose({GeneratorTerm::sigma(m), GeneratorTerm::pair(std::move(parts), m)}));
    }
    return rows;
}

NMatrix evaluate_rows(const std::vector<GeneratorTerm>& rows, std::size_t cols) {
    std::vector<NMatrix> parts;
    for (const auto& r : rows) parts.push_back(r.evaluate());
    return vstack(parts, cols);
}

} // namespace tangentcat::nbullet
